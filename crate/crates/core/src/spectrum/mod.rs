//! Observations, sample covariance and the eigenvalue statistics built on it.

mod eigen;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use eigen::{
    hermitian_eigenvalues, jacobi_eigenvalues, tridiagonal_ql_eigenvalues, HermitianMatrix, JACOBI_MAX_DIM,
    JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE,
};

/// `K × N` complex observations, one row per sensor, one column per snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotMatrix {
    sensors: usize,
    snapshots: usize,
    data: Vec<Complex64>,
}

impl SnapshotMatrix {
    /// `data` is row-major (`data[k * snapshots + n]`). Requires
    /// `1 ≤ K < N` and finite entries.
    pub fn new(sensors: usize, snapshots: usize, data: Vec<Complex64>) -> Result<Self> {
        if sensors == 0 {
            return domain("at least one sensor is required");
        }
        if snapshots <= sensors {
            return domain(format!("need more snapshots than sensors (K = {sensors}, N = {snapshots})"));
        }
        if data.len() != sensors * snapshots {
            return domain(format!("expected {} entries, got {}", sensors * snapshots, data.len()));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain(format!(
                "entry ({}, {}) is not finite",
                pos / snapshots,
                pos % snapshots
            ));
        }
        Ok(Self { sensors, snapshots, data })
    }

    /// Scalar-sensor matrices (`K = 1`) are allowed with any `N ≥ 1`.
    pub fn single_sensor(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return domain("at least one snapshot is required");
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("non-finite entry");
        }
        Ok(Self { sensors: 1, snapshots: data.len(), data })
    }

    pub fn sensors(&self) -> usize {
        self.sensors
    }

    pub fn snapshots(&self) -> usize {
        self.snapshots
    }

    /// `K / N`.
    pub fn ratio(&self) -> f64 {
        self.sensors as f64 / self.snapshots as f64
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.data[k * self.snapshots..(k + 1) * self.snapshots]
    }

    pub fn get(&self, k: usize, n: usize) -> Complex64 {
        self.data[k * self.snapshots + n]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            sensors: self.sensors,
            snapshots: self.snapshots,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }
}

/// `R̂ = Y Yᴴ / N`, computed on the upper triangle and mirrored.
pub fn sample_covariance(y: &SnapshotMatrix) -> HermitianMatrix {
    let k = y.sensors();
    let inv_n = 1.0 / y.snapshots() as f64;
    let mut upper = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        let ri = y.row(i);
        for j in i..k {
            upper[i * k + j] = inner_conj(ri, y.row(j)) * inv_n;
        }
    }
    HermitianMatrix::from_upper(k, upper)
}

/// `Σ a[n]·conj(b[n])` with four independent accumulators.
fn inner_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut re = [0.0f64; 4];
    let mut im = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        for l in 0..4 {
            let x = a[4 * c + l];
            let y = b[4 * c + l];
            re[l] += x.re * y.re + x.im * y.im;
            im[l] += x.im * y.re - x.re * y.im;
        }
    }
    for idx in 4 * chunks..a.len() {
        let x = a[idx];
        let y = b[idx];
        re[0] += x.re * y.re + x.im * y.im;
        im[0] += x.im * y.re - x.re * y.im;
    }
    Complex64::new((re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3]))
}

/// `T_N = λ₁ / ((1/K) tr R̂)`.
pub fn glr_statistic(eigenvalues: &[f64], trace_mean: f64) -> Result<f64> {
    if eigenvalues.is_empty() {
        return domain("no eigenvalues");
    }
    if !(trace_mean > 0.0) {
        return Err(Error::Degenerate(format!("mean eigenvalue is {trace_mean}; the data carry no energy")));
    }
    Ok(eigenvalues[0] / trace_mean)
}

/// Log of the generalized likelihood ratio as a function of `T_N`:
/// `(K−1)N log(1−1/K) − N log T − (K−1)N log(1−T/K)`.
///
/// Equals `−N[log T + (K−1) log((K−T)/(K−1))]`, which vanishes at `T = 1`.
pub fn log_glr(t: f64, sensors: usize, snapshots: usize) -> Result<f64> {
    let k = sensors as f64;
    let n = snapshots as f64;
    if sensors < 2 {
        return domain("the likelihood ratio needs at least two sensors");
    }
    if !(t > 1.0 && t < k) {
        return domain(format!("T must lie in (1, K) = (1, {sensors}), got {t}"));
    }
    Ok((k - 1.0) * n * (-1.0 / k).ln_1p() - n * t.ln() - (k - 1.0) * n * (-t / k).ln_1p())
}

/// `U_N = λ₁ / λ_K`.
pub fn condition_number(eigenvalues: &[f64]) -> Result<f64> {
    let (Some(first), Some(last)) = (eigenvalues.first(), eigenvalues.last()) else {
        return domain("no eigenvalues");
    };
    if !(*last > 0.0) {
        return Err(Error::Degenerate(format!("smallest eigenvalue is {last}; the condition number is unbounded")));
    }
    Ok(first / last)
}

/// `b_N = (1+√c)(1/√c + 1)^{1/3}`, the Tracy-Widom scale of `λ₁`.
pub fn largest_eigenvalue_scale(c: f64) -> f64 {
    let s = c.sqrt();
    (1.0 + s) * (1.0 / s + 1.0).cbrt()
}

/// `(√c − 1)(c^{−1/2} − 1)^{1/3}`, the (negative) Tracy-Widom scale of `λ_K`.
pub fn smallest_eigenvalue_scale(c: f64) -> f64 {
    let s = c.sqrt();
    (s - 1.0) * (1.0 / s - 1.0).cbrt()
}

/// Centered and scaled extreme eigenvalues `(Λ₁, Λ_K)` with `c_N = K/N`.
pub fn center_statistics(eigenvalues: &[f64], sensors: usize, snapshots: usize) -> Result<(f64, f64)> {
    let (Some(first), Some(last)) = (eigenvalues.first(), eigenvalues.last()) else {
        return domain("no eigenvalues");
    };
    let c = ratio_in_unit_interval(sensors, snapshots)?;
    let s = c.sqrt();
    let n23 = (snapshots as f64).powf(2.0 / 3.0);
    let top = n23 * (first - (1.0 + s) * (1.0 + s)) / largest_eigenvalue_scale(c);
    let bottom = n23 * (last - (1.0 - s) * (1.0 - s)) / smallest_eigenvalue_scale(c);
    Ok((top, bottom))
}

pub(crate) fn ratio_in_unit_interval(sensors: usize, snapshots: usize) -> Result<f64> {
    let c = sensors as f64 / snapshots as f64;
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("K/N must lie in (0, 1), got {sensors}/{snapshots}"));
    }
    Ok(c)
}

/// Everything the detectors need from one observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub sensors: usize,
    pub snapshots: usize,
    /// Eigenvalues of `R̂`, descending and nonnegative.
    pub eigenvalues: Vec<f64>,
    /// `(1/K) tr R̂`.
    pub trace_mean: f64,
    pub t_stat: f64,
    /// `None` when `λ_K = 0`.
    pub u_stat: Option<f64>,
    pub lambda1_centered: f64,
    pub lambda_k_centered: f64,
}

impl SpectrumSummary {
    pub fn from_snapshots(y: &SnapshotMatrix) -> Result<Self> {
        let r = sample_covariance(y);
        let eig = hermitian_eigenvalues(&r)?;
        Self::from_eigenvalues(eig, r.trace() / y.sensors() as f64, y.sensors(), y.snapshots())
    }

    /// Takes descending eigenvalues of a sample covariance. Negative values
    /// within `1e-12·λ₁` of zero are clamped; anything below is rejected.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, trace_mean: f64, sensors: usize, snapshots: usize) -> Result<Self> {
        if eigenvalues.len() != sensors {
            return domain(format!("expected {sensors} eigenvalues, got {}", eigenvalues.len()));
        }
        if !eigenvalues.windows(2).all(|w| w[0] >= w[1]) {
            return domain("eigenvalues must be sorted in descending order");
        }
        let top = eigenvalues[0].max(0.0);
        for v in &mut eigenvalues {
            if *v < 0.0 {
                if *v < -1e-12 * top {
                    return domain(format!("covariance eigenvalue {v} is materially negative"));
                }
                *v = 0.0;
            }
        }
        let t_stat = glr_statistic(&eigenvalues, trace_mean)?;
        let u_stat = condition_number(&eigenvalues).ok();
        let (lambda1_centered, lambda_k_centered) = center_statistics(&eigenvalues, sensors, snapshots)?;
        Ok(Self {
            sensors,
            snapshots,
            eigenvalues,
            trace_mean,
            t_stat,
            u_stat,
            lambda1_centered,
            lambda_k_centered,
        })
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }
}
