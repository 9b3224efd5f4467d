pub mod detectors;
pub mod error;
pub mod ldp;
pub mod mp_law;
pub mod simulate;
pub mod numeric;
pub mod spectrum;
pub mod tracy_widom;

pub use error::{Error, Result};
