//! The two executable tests: the GLRT on `T_N` with Tracy-Widom threshold
//! and p-value, and the condition-number test on `U_N` with a threshold from
//! the law of `aX + bY`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectrum::{largest_eigenvalue_scale, ratio_in_unit_interval, SnapshotMatrix, SpectrumSummary};
use crate::tracy_widom::{ComboQuantiler, TwCdf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestKind {
    Glrt,
    Condition,
}

impl std::fmt::Display for TestKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TestKind::Glrt => "glrt",
            TestKind::Condition => "cond",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub test_kind: TestKind,
    pub statistic_value: f64,
    pub threshold: f64,
    pub p_value: Option<f64>,
    pub reject_null: bool,
    pub sensors: usize,
    pub snapshots: usize,
    pub alpha: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("level alpha must lie in (0, 1), got {alpha}"));
    }
    Ok(())
}

fn check_sensors(sensors: usize) -> Result<()> {
    if sensors < 2 {
        return domain("detection needs at least two sensors");
    }
    Ok(())
}

/// Asymptotic GLRT threshold on `T_N`:
/// `(1+√c_N)² + b_N N^{−2/3} F̄₂⁻¹(α)`.
pub fn glrt_threshold(sensors: usize, snapshots: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let c = ratio_in_unit_interval(sensors, snapshots)?;
    let q = TwCdf::global().complementary_quantile(alpha)?;
    let edge = (1.0 + c.sqrt()).powi(2);
    Ok(edge + largest_eigenvalue_scale(c) / (snapshots as f64).powf(2.0 / 3.0) * q)
}

/// Asymptotic p-value `1 − F₂(N^{2/3}(T − (1+√c_N)²)/b_N)`.
pub fn glrt_pvalue(t: f64, sensors: usize, snapshots: usize) -> Result<f64> {
    let c = ratio_in_unit_interval(sensors, snapshots)?;
    let edge = (1.0 + c.sqrt()).powi(2);
    let z = (snapshots as f64).powf(2.0 / 3.0) * (t - edge) / largest_eigenvalue_scale(c);
    Ok(TwCdf::global().ccdf(z))
}

pub fn glrt_decide(y: &SnapshotMatrix, alpha: f64) -> Result<Decision> {
    check_alpha(alpha)?;
    check_sensors(y.sensors())?;
    let summary = SpectrumSummary::from_snapshots(y)?;
    glrt_decide_summary(&summary, alpha)
}

/// GLRT decision from an already computed spectrum.
///
/// The decision is `T_N > threshold`. When `T_N` sits within the quantile
/// resolution of the threshold the p-value is moved to the matching side of
/// `alpha`, so `reject ⇔ p < alpha` holds exactly.
pub fn glrt_decide_summary(summary: &SpectrumSummary, alpha: f64) -> Result<Decision> {
    check_alpha(alpha)?;
    check_sensors(summary.sensors)?;
    let threshold = glrt_threshold(summary.sensors, summary.snapshots, alpha)?;
    let mut p = glrt_pvalue(summary.t_stat, summary.sensors, summary.snapshots)?;
    let reject = summary.t_stat > threshold;
    if reject && p >= alpha {
        p = next_below(alpha);
    } else if !reject && p < alpha {
        p = alpha;
    }
    Ok(Decision {
        test_kind: TestKind::Glrt,
        statistic_value: summary.t_stat,
        threshold,
        p_value: Some(p),
        reject_null: reject,
        sensors: summary.sensors,
        snapshots: summary.snapshots,
        alpha,
    })
}

fn next_below(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

/// Weights `(a, b)` of the limit `N^{2/3}(U_N − λ⁺/λ⁻) → aX + bY`.
///
/// From `λ₁ ≈ λ⁺ + b_N N^{−2/3} X` and `λ_K ≈ λ⁻ + s_K N^{−2/3} Y` with
/// `s_K = (√c − 1)(c^{−1/2} − 1)^{1/3} < 0`, the first-order expansion of
/// `λ₁/λ_K` gives `a = b_N/λ⁻` and `b = −λ⁺ s_K/(λ⁻)²`, i.e.
///
/// ```text
/// a = (1+√c)/(1−√c)² · (1/√c + 1)^{1/3}
/// b = (1+√c)²/(1−√c)³ · (1/√c − 1)^{1/3}
/// ```
///
/// `b` is positive: a small `λ_K` (large `Y`) inflates the ratio.
pub fn condition_weights(c: f64) -> Result<(f64, f64)> {
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("ratio must lie in (0, 1), got {c}"));
    }
    let s = c.sqrt();
    let a = (1.0 + s) / (1.0 - s).powi(2) * (1.0 / s + 1.0).cbrt();
    let b = (1.0 + s).powi(2) / (1.0 - s).powi(3) * (1.0 / s - 1.0).cbrt();
    Ok((a, b))
}

fn combo_for(a: f64, b: f64) -> Result<Arc<ComboQuantiler<'static>>> {
    type Cache = Mutex<HashMap<(u64, u64), Arc<ComboQuantiler<'static>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (a.to_bits(), b.to_bits());
    if let Some(q) = cache.lock().map_err(|_| Error::Config("combination cache poisoned".into()))?.get(&key) {
        return Ok(q.clone());
    }
    let built = Arc::new(ComboQuantiler::new(TwCdf::global(), a, b)?);
    let mut guard = cache.lock().map_err(|_| Error::Config("combination cache poisoned".into()))?;
    Ok(guard.entry(key).or_insert(built).clone())
}

/// Asymptotic condition-number threshold on `U_N`:
/// `λ⁺/λ⁻ + N^{−2/3} F⁻¹_{aX+bY}(1 − α)` evaluated at `c_N`.
pub fn cond_threshold(sensors: usize, snapshots: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let c = ratio_in_unit_interval(sensors, snapshots)?;
    let (a, b) = condition_weights(c)?;
    let q = combo_for(a, b)?.quantile(1.0 - alpha)?;
    let s = c.sqrt();
    let edge_ratio = (1.0 + s).powi(2) / (1.0 - s).powi(2);
    Ok(edge_ratio + q / (snapshots as f64).powf(2.0 / 3.0))
}

pub fn cond_decide(y: &SnapshotMatrix, alpha: f64) -> Result<Decision> {
    check_alpha(alpha)?;
    check_sensors(y.sensors())?;
    let summary = SpectrumSummary::from_snapshots(y)?;
    cond_decide_summary(&summary, alpha)
}

pub fn cond_decide_summary(summary: &SpectrumSummary, alpha: f64) -> Result<Decision> {
    check_alpha(alpha)?;
    check_sensors(summary.sensors)?;
    let u = summary
        .u_stat
        .ok_or_else(|| Error::Degenerate("smallest eigenvalue is zero; the condition number is unbounded".into()))?;
    let threshold = cond_threshold(summary.sensors, summary.snapshots, alpha)?;
    Ok(Decision {
        test_kind: TestKind::Condition,
        statistic_value: u,
        threshold,
        p_value: None,
        reject_null: u > threshold,
        sensors: summary.sensors,
        snapshots: summary.snapshots,
        alpha,
    })
}
