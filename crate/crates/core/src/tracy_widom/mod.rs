//! The β = 2 Tracy-Widom distribution.
//!
//! [`TwCdf`] tabulates `F₂` and its density on `[-13, 8]` with spacing 0.02
//! from the Airy-kernel Fredholm determinant (64-point Gauss-Legendre by
//! default) and interpolates with monotone cubic Hermite segments. Outside
//! the table, and on `[-13, -7)` where the determinant underflows relative
//! to rounding, the classical tail expansions are used:
//!
//! ```text
//! log F₂(s)   = −|s|³/12 − ⅛·log|s| + log τ₂ + 3/(64|s|³) + O(|s|⁻⁶),  s → −∞
//! 1 − F₂(s)   ~ exp(−⁴⁄₃ s^{3/2}) / (16π s^{3/2}),                        s → +∞
//! ```
//!
//! The right tail is matched to the table value at the last node.

pub mod airy;
mod combo;
mod fredholm;

use std::fmt::Write as _;
use std::sync::OnceLock;

pub use airy::airy_ai;
pub use combo::ComboQuantiler;

use crate::error::{domain, Error, Result};
use crate::numeric::bisect_increasing;
use fredholm::AiryDeterminant;

pub const DEFAULT_ORDER: usize = 64;
pub const TABLE_START: f64 = -13.0;
pub const TABLE_END: f64 = 8.0;
pub const TABLE_STEP: f64 = 0.02;

/// Below this abscissa the table is filled from the left-tail expansion.
const LEFT_ASYMPTOTIC_BELOW: f64 = -7.0;

/// `log τ₂ = ln(2)/24 + ζ′(−1)`.
const LOG_TAU2: f64 = 0.028_881_132_523_331_05 - 0.165_421_143_700_450_93;

/// Tabulated β = 2 Tracy-Widom c.d.f.
#[derive(Debug, Clone)]
pub struct TwCdf {
    start: f64,
    step: f64,
    cdf: Vec<f64>,
    ccdf: Vec<f64>,
    pdf: Vec<f64>,
    order: Option<usize>,
}

/// Direct Fredholm-determinant evaluation of `F₂(s)` without the table.
pub fn fredholm_cdf(s: f64, order: usize) -> f64 {
    AiryDeterminant::new(order).evaluate(s).cdf
}

fn left_tail_log_cdf(s: f64) -> f64 {
    let a = -s;
    -a * a * a / 12.0 - 0.125 * a.ln() + LOG_TAU2 + 3.0 / (64.0 * a * a * a)
}

fn left_tail_log_cdf_derivative(s: f64) -> f64 {
    s * s / 4.0 - 1.0 / (8.0 * s) + 9.0 / (64.0 * s.powi(4))
}

fn right_tail_log_ccdf(s: f64) -> f64 {
    let p = s * s.sqrt();
    -4.0 / 3.0 * p - (16.0 * std::f64::consts::PI * p).ln()
}

impl TwCdf {
    /// Builds the table with the default quadrature order.
    pub fn new() -> Self {
        Self::with_order(DEFAULT_ORDER)
    }

    pub fn with_order(order: usize) -> Self {
        let det = AiryDeterminant::new(order);
        let n = ((TABLE_END - TABLE_START) / TABLE_STEP).round() as usize + 1;
        let mut cdf = Vec::with_capacity(n);
        let mut ccdf = Vec::with_capacity(n);
        let mut pdf = Vec::with_capacity(n);
        for i in 0..n {
            let s = TABLE_START + i as f64 * TABLE_STEP;
            if s < LEFT_ASYMPTOTIC_BELOW {
                let f = left_tail_log_cdf(s).exp();
                cdf.push(f);
                ccdf.push(1.0 - f);
                pdf.push(f * left_tail_log_cdf_derivative(s));
            } else {
                let p = det.evaluate(s);
                cdf.push(p.cdf);
                ccdf.push(p.ccdf);
                pdf.push(p.pdf);
            }
        }
        let mut table = Self {
            start: TABLE_START,
            step: TABLE_STEP,
            cdf,
            ccdf,
            pdf,
            order: Some(order),
        };
        table.enforce_monotone_slopes();
        table
    }

    /// Process-wide table, built on first use unless one was installed.
    pub fn global() -> &'static TwCdf {
        global_cell().get_or_init(TwCdf::new)
    }

    /// Installs `table` as the process-wide table. Fails (returning the
    /// table) when a global table already exists.
    pub fn install_global(table: TwCdf) -> std::result::Result<(), TwCdf> {
        global_cell().set(table)
    }

    /// Quadrature order used to build the table; `None` for a loaded table.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.cdf.len()).map(move |i| self.start + i as f64 * self.step)
    }

    pub fn node_values(&self) -> &[f64] {
        &self.cdf
    }

    fn end(&self) -> f64 {
        self.start + (self.cdf.len() - 1) as f64 * self.step
    }

    /// Fritsch-Carlson limiter: keeps every Hermite segment monotone.
    fn enforce_monotone_slopes(&mut self) {
        for i in 0..self.cdf.len() - 1 {
            let delta = (self.cdf[i + 1] - self.cdf[i]) / self.step;
            if delta <= 0.0 {
                self.pdf[i] = 0.0;
                self.pdf[i + 1] = 0.0;
                continue;
            }
            let alpha = self.pdf[i] / delta;
            let beta = self.pdf[i + 1] / delta;
            let r2 = alpha * alpha + beta * beta;
            if r2 > 9.0 {
                let tau = 3.0 / r2.sqrt();
                self.pdf[i] = tau * alpha * delta;
                self.pdf[i + 1] = tau * beta * delta;
            }
        }
    }

    fn segment(&self, x: f64) -> (usize, f64) {
        let pos = (x - self.start) / self.step;
        let i = (pos.floor() as usize).min(self.cdf.len() - 2);
        (i, pos - i as f64)
    }

    fn hermite(&self, values: &[f64], slope_sign: f64, x: f64) -> f64 {
        let (i, t) = self.segment(x);
        let h = self.step;
        let (y0, y1) = (values[i], values[i + 1]);
        let (m0, m1) = (slope_sign * self.pdf[i], slope_sign * self.pdf[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * m1
    }

    /// `F₂(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x < self.start {
            return self.cdf[0] * (left_tail_log_cdf(x) - left_tail_log_cdf(self.start)).exp();
        }
        if x > self.end() {
            return 1.0 - self.ccdf(x);
        }
        if self.cdf_segment_is_upper(x) {
            return 1.0 - self.hermite(&self.ccdf, -1.0, x);
        }
        self.hermite(&self.cdf, 1.0, x).clamp(0.0, 1.0)
    }

    /// `1 − F₂(x)`, accurate in relative terms in the right tail.
    pub fn ccdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x > self.end() {
            let last = *self.ccdf.last().expect("non-empty table");
            return last * (right_tail_log_ccdf(x) - right_tail_log_ccdf(self.end())).exp();
        }
        if x < self.start || !self.cdf_segment_is_upper(x) {
            return 1.0 - self.cdf(x);
        }
        self.hermite(&self.ccdf, -1.0, x).clamp(0.0, 1.0)
    }

    fn cdf_segment_is_upper(&self, x: f64) -> bool {
        let (i, _) = self.segment(x);
        self.cdf[i] > 0.5
    }

    /// Density, the derivative of the interpolated c.d.f.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < self.start {
            return self.cdf(x) * left_tail_log_cdf_derivative(x);
        }
        if x > self.end() {
            // d/dx of the matched right-tail model
            let s = x.sqrt();
            return self.ccdf(x) * (2.0 * s + 1.5 / x);
        }
        let (i, t) = self.segment(x);
        let h = self.step;
        let (y0, y1) = (self.cdf[i], self.cdf[i + 1]);
        let (m0, m1) = (self.pdf[i], self.pdf[i + 1]);
        let t2 = t * t;
        let d = (6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * h * m0 + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * h * m1;
        (d / h).max(0.0)
    }

    /// Inverse c.d.f. for `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("Tracy-Widom quantile requires p in (0, 1), got {p}"));
        }
        if p <= 0.5 {
            Ok(bisect_increasing(|x| self.cdf(x), p, -60.0, 60.0, 1e-13))
        } else {
            Ok(self.upper_quantile(1.0 - p))
        }
    }

    /// `x` with `1 − F₂(x) = q`, resolving upper tail probabilities below
    /// the spacing of doubles near one.
    pub fn complementary_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("Tracy-Widom tail probability must lie in (0, 1), got {q}"));
        }
        if q >= 0.5 {
            return self.quantile(1.0 - q);
        }
        Ok(self.upper_quantile(q))
    }

    fn upper_quantile(&self, q: f64) -> f64 {
        bisect_increasing(|x| -self.ccdf(x), -q, -60.0, 60.0, 1e-13)
    }

    /// Serializes the table as CSV with a `# start=... step=...` header and
    /// `x,cdf,ccdf,pdf` rows. Floats use shortest round-trip formatting, so
    /// [`TwCdf::from_csv`] restores the table exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cdf.len() * 96);
        let _ = writeln!(out, "# start={:e} step={:e}", self.start, self.step);
        out.push_str("x,cdf,ccdf,pdf\n");
        for (i, x) in self.abscissae().enumerate() {
            let _ = writeln!(out, "{x:e},{:e},{:e},{:e}", self.cdf[i], self.ccdf[i], self.pdf[i]);
        }
        out
    }

    /// Loads a table written by [`TwCdf::to_csv`].
    ///
    /// Rows must be uniformly spaced, `cdf` nondecreasing and `ccdf`
    /// nonincreasing in `[0, 1]`, and `pdf` nonnegative.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut start = None;
        let mut step = None;
        let mut rows: Vec<[f64; 4]> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |msg: String| Error::Table(format!("line {}: {msg}", lineno + 1));
            let number = |v: &str| -> Result<f64> {
                v.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(format!("bad number {v:?}")))
            };
            if let Some(meta) = line.strip_prefix('#') {
                for item in meta.split_whitespace() {
                    match item.split_once('=') {
                        Some(("start", v)) => start = Some(number(v)?),
                        Some(("step", v)) => step = Some(number(v)?),
                        _ => {}
                    }
                }
                continue;
            }
            if line.is_empty() || line == "x,cdf,ccdf,pdf" {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            }
            let mut row = [0.0; 4];
            for (slot, field) in row.iter_mut().zip(&fields) {
                *slot = number(field)?;
            }
            rows.push(row);
        }
        let (Some(start), Some(step)) = (start, step) else {
            return Err(Error::Table("missing \"# start=... step=...\" header".into()));
        };
        if rows.len() < 3 {
            return Err(Error::Table("need at least three rows".into()));
        }
        if !(step > 0.0) {
            return Err(Error::Table("step must be positive".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if (r[0] - (start + i as f64 * step)).abs() > 1e-9 * step.max(r[0].abs()) {
                return Err(Error::Table(format!("row {} breaks uniform spacing", i + 1)));
            }
            if !((0.0..=1.0).contains(&r[1]) && (0.0..=1.0).contains(&r[2]) && r[3] >= 0.0) {
                return Err(Error::Table(format!("row {} is not a probability row", i + 1)));
            }
        }
        for (i, w) in rows.windows(2).enumerate() {
            if w[1][1] < w[0][1] || w[1][2] > w[0][2] {
                return Err(Error::Table(format!("values not monotone at row {}", i + 2)));
            }
        }
        Ok(Self {
            start,
            step,
            cdf: rows.iter().map(|r| r[1]).collect(),
            ccdf: rows.iter().map(|r| r[2]).collect(),
            pdf: rows.iter().map(|r| r[3]).collect(),
            order: None,
        })
    }
}

impl Default for TwCdf {
    fn default() -> Self {
        Self::new()
    }
}

fn global_cell() -> &'static OnceLock<TwCdf> {
    static TABLE: OnceLock<TwCdf> = OnceLock::new();
    &TABLE
}

/// `F₂(x)` from the process-wide table.
pub fn tw2_cdf(x: f64) -> f64 {
    TwCdf::global().cdf(x)
}

/// Density of `F₂` from the process-wide table.
pub fn tw2_pdf(x: f64) -> f64 {
    TwCdf::global().pdf(x)
}

/// Quantile of `F₂` from the process-wide table.
pub fn tw2_quantile(p: f64) -> Result<f64> {
    TwCdf::global().quantile(p)
}
