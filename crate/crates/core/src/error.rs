use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the set where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The data cannot produce a finite statistic (zero trace, zero smallest eigenvalue, ...).
    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e}, matrix norm {norm:.3e})")]
    Convergence { sweeps: usize, off_norm: f64, norm: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid Tracy-Widom table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
