//! Large-deviation rate functions of the extreme eigenvalues and the error
//! exponents and error-exponent curves they induce for the two tests.
//!
//! Rates are measured in nats per snapshot: a probability `p_N` with rate
//! `I` behaves like `exp(−N·I)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::mp_law::MpLaw;
use crate::numeric::{bisect_increasing, golden_section_min};

/// A value in `ℝ ∪ {+∞}`, used for rate functions outside their effective domain.
///
/// There is deliberately no arithmetic on this type. Callers either test
/// [`ExtReal::is_finite`] or unwrap with [`ExtReal::expect_finite`].
#[derive(Debug, Clone, Copy)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);

    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "ExtReal::finite called with {value}");
        ExtReal(value)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn value(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    /// The finite value. Panics on `+∞`.
    pub fn expect_finite(self) -> f64 {
        assert!(self.is_finite(), "arithmetic on +∞ rate value");
        self.0
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) => s.serialize_f64(v),
            None => s.serialize_str("inf"),
        }
    }
}

/// One achievable pair of error exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    /// Exponent of the false-alarm probability.
    pub a: f64,
    /// Exponent of the miss probability.
    pub b: f64,
}

/// Both curves compared at one false-alarm exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominancePoint {
    pub a: f64,
    pub b_glrt: f64,
    /// `None` when `a` lies beyond the range of the condition-number curve.
    pub b_cond: Option<f64>,
}

/// Spiked limit `(1 + ρ)(1 + c/ρ)` of the largest eigenvalue.
pub fn lambda_spike(rho: f64, c: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return domain(format!("SNR must be positive and finite, got {rho}"));
    }
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("ratio must lie in (0, 1), got {c}"));
    }
    Ok((1.0 + rho) * (1.0 + c / rho))
}

/// High-SNR approximation of the GLRT miss exponent:
/// `log ρ − (1+√c) − (1−c) log(1+√c) − (c/2) log c`.
pub fn high_snr_exponent(c: f64, rho: f64) -> f64 {
    let s = c.sqrt();
    rho.ln() - (1.0 + s) - (1.0 - c) * (1.0 + s).ln() - 0.5 * c * c.ln()
}

/// Offset from the interval ends used when sampling curves on open intervals.
const CURVE_EDGE: f64 = 1e-5;
/// Grid size of the bracketing stage in the contraction minimization.
const GAMMA_GRID: usize = 1024;
const GAMMA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdpContext {
    c: f64,
    rho: f64,
    lambda_plus: f64,
    lambda_minus: f64,
    lambda_spk: f64,
    #[serde(skip)]
    mp: Option<MpLaw>,
}

impl LdpContext {
    pub fn new(c: f64, rho: f64) -> Result<Self> {
        let lambda_spk = lambda_spike(rho, c)?;
        let mp = MpLaw::new(c)?;
        Ok(Self {
            c,
            rho,
            lambda_plus: mp.lambda_plus(),
            lambda_minus: mp.lambda_minus(),
            lambda_spk,
            mp: Some(mp),
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }

    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    pub fn lambda_spk(&self) -> f64 {
        self.lambda_spk
    }

    /// `ρ > √c`: the spike separates from the bulk.
    pub fn is_supercritical(&self) -> bool {
        self.rho > self.c.sqrt()
    }

    fn mp(&self) -> MpLaw {
        // Deserialized contexts lose the cached law; rebuilding it is cheap.
        self.mp.unwrap_or_else(|| MpLaw::new(self.c).expect("context holds a valid ratio"))
    }

    fn f_plus(&self, x: f64) -> f64 {
        self.mp().log_potential_plus(x.max(self.lambda_plus)).expect("clamped to the right edge")
    }

    fn f_minus(&self, y: f64) -> f64 {
        self.mp().log_potential_minus(y.min(self.lambda_minus)).expect("clamped to the left edge")
    }

    fn stieltjes_right(&self, x: f64) -> f64 {
        self.mp().stieltjes(x.max(self.lambda_plus)).expect("clamped to the right edge")
    }

    fn supercritical_or_err(&self) -> Result<()> {
        if !self.is_supercritical() {
            return domain(format!(
                "ρ = {} does not exceed √c = {}; the spiked rate function is not defined",
                self.rho,
                self.c.sqrt()
            ));
        }
        Ok(())
    }

    fn i0_finite(&self, x: f64) -> f64 {
        let (c, lp) = (self.c, self.lambda_plus);
        x - lp - (1.0 - c) * (x / lp).ln() - 2.0 * c * (self.f_plus(x) - self.f_plus(lp))
    }

    fn irho_finite(&self, x: f64) -> f64 {
        let (c, ls) = (self.c, self.lambda_spk);
        (x - ls) / (1.0 + self.rho) - (1.0 - c) * (x / ls).ln() - c * (self.f_plus(x) - self.f_plus(ls))
    }

    fn iminus_finite(&self, y: f64) -> f64 {
        let (c, lm) = (self.c, self.lambda_minus);
        y - lm - (1.0 - c) * (y / lm).ln() - 2.0 * c * (self.f_minus(y) - self.f_minus(lm))
    }

    /// Rate of the largest eigenvalue under the null hypothesis.
    pub fn rate_i0_plus(&self, x: f64) -> ExtReal {
        if !(x >= self.lambda_plus) || !x.is_finite() {
            return ExtReal::INFINITY;
        }
        ExtReal::finite(self.i0_finite(x))
    }

    /// `dI₀⁺/dx = 1 − (1−c)/x + 2c·f(x)` on `[λ⁺, ∞)`.
    pub fn rate_i0_plus_derivative(&self, x: f64) -> Result<f64> {
        let f = self.mp().stieltjes(x)?;
        if x < self.lambda_plus {
            return domain("derivative of I₀⁺ is taken on [λ⁺, ∞)");
        }
        Ok(1.0 - (1.0 - self.c) / x + 2.0 * self.c * f)
    }

    /// Rate of the largest eigenvalue under the spiked alternative.
    pub fn rate_irho_plus(&self, x: f64) -> Result<ExtReal> {
        self.supercritical_or_err()?;
        if !(x >= self.lambda_plus) || !x.is_finite() {
            return Ok(ExtReal::INFINITY);
        }
        Ok(ExtReal::finite(self.irho_finite(x)))
    }

    /// Rate of the smallest eigenvalue, finite on `(0, λ⁻]`.
    pub fn rate_i_minus(&self, y: f64) -> ExtReal {
        if !(y > 0.0 && y <= self.lambda_minus) {
            return ExtReal::INFINITY;
        }
        ExtReal::finite(self.iminus_finite(y))
    }

    /// `dI⁻/dy = 1 − (1−c)/y + 2c·f(y)` on `(0, λ⁻]`.
    pub fn rate_i_minus_derivative(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y <= self.lambda_minus) {
            return domain("derivative of I⁻ is taken on (0, λ⁻]");
        }
        let f = self.mp().stieltjes(y)?;
        Ok(1.0 - (1.0 - self.c) / y + 2.0 * self.c * f)
    }

    /// Limit of `(1/N) log` of the rank-one spherical integral, defined for `x ≥ λ⁺`.
    pub fn appendix_j_rho(&self, x: f64) -> Result<f64> {
        if !(x >= self.lambda_plus) || !x.is_finite() {
            return domain(format!("J_ρ requires x ≥ λ⁺ = {}, got {x}", self.lambda_plus));
        }
        let (c, rho) = (self.c, self.rho);
        let log_k = (rho / (c * (1.0 + rho))).ln();
        if !self.is_supercritical() && x <= self.lambda_spk {
            Ok(rho / c - log_k - self.f_plus(self.lambda_spk))
        } else {
            Ok(rho * x / (c * (1.0 + rho)) - 1.0 - log_k - self.f_plus(x))
        }
    }

    /// `G_ρ(x) = x/(1+ρ) − (1−c) log x − c F⁺(x) + c + c log(ρ/(c(1+ρ)))`.
    ///
    /// On the supercritical side `I_ρ⁺ = G_ρ − G_ρ(λ_spk)`.
    pub fn appendix_g_rho(&self, x: f64) -> Result<f64> {
        if !(x >= self.lambda_plus) || !x.is_finite() {
            return domain(format!("G_ρ requires x ≥ λ⁺ = {}, got {x}", self.lambda_plus));
        }
        let (c, rho) = (self.c, self.rho);
        Ok(x / (1.0 + rho) - (1.0 - c) * x.ln() - c * self.f_plus(x) + c + c * (rho / (c * (1.0 + rho))).ln())
    }

    /// `G_ρ′(x) = 1/(1+ρ) − (1−c)/x + c·f(x)`.
    pub fn appendix_g_rho_derivative(&self, x: f64) -> Result<f64> {
        if !(x >= self.lambda_plus) {
            return domain(format!("G_ρ′ requires x ≥ λ⁺ = {}, got {x}", self.lambda_plus));
        }
        Ok(1.0 / (1.0 + self.rho) - (1.0 - self.c) / x + self.c * self.stieltjes_right(x))
    }

    /// `Φ(y) = −y + (1−c) log y + 2c F⁺(y)` against the Marčenko-Pastur law, `y ≥ λ⁺`.
    pub fn appendix_phi(&self, y: f64) -> Result<f64> {
        if !(y >= self.lambda_plus) || !y.is_finite() {
            return domain(format!("Φ requires y ≥ λ⁺ = {}, got {y}", self.lambda_plus));
        }
        Ok(-y + (1.0 - self.c) * y.ln() + 2.0 * self.c * self.f_plus(y))
    }

    /// GLRT miss exponent at fixed level: `I_ρ⁺(λ⁺)` above the detectability threshold, else 0.
    pub fn error_exponent_t(&self) -> f64 {
        if self.is_supercritical() {
            self.irho_finite(self.lambda_plus)
        } else {
            0.0
        }
    }

    /// Samples `{(I₀⁺(x), I_ρ⁺(x)) : x ∈ (λ⁺, λ_spk)}`.
    ///
    /// Empty below the detectability threshold, where the curve is empty.
    pub fn ee_curve_t(&self, n_points: usize) -> Result<Vec<CurvePoint>> {
        check_points(n_points)?;
        if !self.is_supercritical() {
            return Ok(Vec::new());
        }
        Ok(open_grid(self.lambda_plus, self.lambda_spk, n_points)
            .into_iter()
            .map(|x| CurvePoint { a: self.i0_finite(x), b: self.irho_finite(x) })
            .collect())
    }

    /// `inf { I₀⁺(x) + I⁻(y) : x/y = t }`.
    pub fn gamma_0(&self, t: f64) -> Result<ExtReal> {
        self.contraction(t, |x| self.i0_finite(x))
    }

    /// `inf { I_ρ⁺(x) + I⁻(y) : x/y = t }`.
    pub fn gamma_rho(&self, t: f64) -> Result<ExtReal> {
        self.supercritical_or_err()?;
        self.contraction(t, |x| self.irho_finite(x))
    }

    /// Minimizes `y ↦ I(t·y) + I⁻(y)` over `y ∈ [λ⁺/t, λ⁻]`.
    ///
    /// The objective is not known to be unimodal, so a dense grid locates
    /// the best cell and golden-section search refines inside it. Both
    /// interval ends are always candidates.
    fn contraction(&self, t: f64, upper_rate: impl Fn(f64) -> f64) -> Result<ExtReal> {
        if !(t > 1.0) || t.is_nan() {
            return domain(format!("contraction argument must exceed 1, got {t}"));
        }
        if !t.is_finite() {
            return Ok(ExtReal::INFINITY);
        }
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        let lo = lp / t;
        let hi = lm;
        if lo > hi {
            return Ok(ExtReal::INFINITY);
        }
        let objective = |y: f64| upper_rate((t * y).max(lp)) + self.iminus_finite(y.clamp(lo, hi));
        let mut best = objective(hi).min(objective(lo));
        if hi - lo > 0.0 {
            let step = (hi - lo) / (GAMMA_GRID - 1) as f64;
            let mut arg = 0usize;
            let mut grid_best = f64::INFINITY;
            for i in 0..GAMMA_GRID {
                let v = objective(lo + step * i as f64);
                if v < grid_best {
                    grid_best = v;
                    arg = i;
                }
            }
            let a = lo + step * arg.saturating_sub(1) as f64;
            let b = (lo + step * (arg + 1) as f64).min(hi);
            let (_, refined) = golden_section_min(objective, a, b, GAMMA_TOL);
            best = best.min(grid_best).min(refined);
        }
        Ok(ExtReal::finite(best))
    }

    /// Samples `{(Γ₀(t), Γ_ρ(t)) : t ∈ (λ⁺/λ⁻, λ_spk/λ⁻)}`.
    pub fn ee_curve_u(&self, n_points: usize) -> Result<Vec<CurvePoint>> {
        check_points(n_points)?;
        if !self.is_supercritical() {
            return Ok(Vec::new());
        }
        let (t_lo, t_hi) = self.ratio_interval();
        open_grid(t_lo, t_hi, n_points)
            .into_iter()
            .map(|t| {
                Ok(CurvePoint {
                    a: self.gamma_0(t)?.expect_finite(),
                    b: self.gamma_rho(t)?.expect_finite(),
                })
            })
            .collect()
    }

    fn ratio_interval(&self) -> (f64, f64) {
        (self.lambda_plus / self.lambda_minus, self.lambda_spk / self.lambda_minus)
    }

    /// Compares both curves at the false-alarm exponents of the GLRT curve.
    ///
    /// For each sample `x` of the GLRT curve, `t` is solved from
    /// `Γ₀(t) = I₀⁺(x)` and the miss exponents `I_ρ⁺(x)` and `Γ_ρ(t)` are
    /// reported side by side.
    pub fn dominance(&self, n_points: usize) -> Result<Vec<DominancePoint>> {
        check_points(n_points)?;
        if !self.is_supercritical() {
            return Ok(Vec::new());
        }
        let (t_lo, t_hi) = self.ratio_interval();
        let a_max = self.gamma_0(t_hi)?.expect_finite();
        let g0 = |t: f64| self.gamma_0(t).map(ExtReal::expect_finite).unwrap_or(f64::INFINITY);
        open_grid(self.lambda_plus, self.lambda_spk, n_points)
            .into_iter()
            .map(|x| {
                let a = self.i0_finite(x);
                let b_cond = if a < a_max {
                    let t = bisect_increasing(g0, a, t_lo, t_hi, 1e-13 * t_hi);
                    Some(self.gamma_rho(t)?.expect_finite())
                } else {
                    None
                };
                Ok(DominancePoint { a, b_glrt: self.irho_finite(x), b_cond })
            })
            .collect()
    }
}

fn check_points(n_points: usize) -> Result<()> {
    if n_points < 2 {
        return domain(format!("a curve needs at least two points, got {n_points}"));
    }
    Ok(())
}

/// Strictly increasing grid inside `(lo, hi)`, uniform in `log(x − lo)`.
fn open_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let width = hi - lo;
    let (u0, u1) = (CURVE_EDGE.ln(), (1.0 - CURVE_EDGE).ln());
    (0..n)
        .map(|i| lo + width * (u0 + (u1 - u0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (1..=n).map(move |i| lo + (hi - lo) * i as f64 / (n + 1) as f64)
    }

    #[test]
    fn spike_location() {
        assert_eq!(lambda_spike(1.0, 0.5).unwrap(), 3.0);
        assert!((lambda_spike(10.0, 0.2).unwrap() - 11.22).abs() < 1e-12);
        let c: f64 = 0.3;
        assert!((lambda_spike(c.sqrt(), c).unwrap() - (1.0 + c.sqrt()).powi(2)).abs() < 1e-14);
        assert!(lambda_spike(0.0, 0.5).is_err());
        assert!(lambda_spike(1.0, 1.0).is_err());
    }

    #[test]
    fn extended_real_ordering() {
        let one = ExtReal::finite(1.0);
        assert!(one < ExtReal::INFINITY);
        assert_eq!(ExtReal::INFINITY, ExtReal::INFINITY);
        assert_eq!(ExtReal::INFINITY.value(), None);
        assert_eq!(ExtReal::INFINITY.to_string(), "inf");
    }

    #[test]
    #[should_panic(expected = "arithmetic on +∞")]
    fn extended_real_refuses_infinite_unwrap() {
        ExtReal::INFINITY.expect_finite();
    }

    #[test]
    fn zeros_and_indicators() {
        let ctx = LdpContext::new(0.5, 1.0).unwrap();
        assert!(ctx.rate_i0_plus(ctx.lambda_plus()).expect_finite().abs() < 1e-12);
        assert!(ctx.rate_irho_plus(3.0).unwrap().expect_finite().abs() < 1e-12);
        assert!(ctx.rate_i_minus(ctx.lambda_minus()).expect_finite().abs() < 1e-12);
        assert!(!ctx.rate_i0_plus(ctx.lambda_plus() - 1e-9).is_finite());
        assert!(!ctx.rate_irho_plus(1.0).unwrap().is_finite());
        assert!(!ctx.rate_i_minus(ctx.lambda_minus() + 1e-9).is_finite());
        assert!(!ctx.rate_i_minus(0.0).is_finite());
        assert!(ctx.rate_i_minus(0.5 * ctx.lambda_minus()).expect_finite() > 0.0);
    }

    #[test]
    fn derivative_at_right_edge_vanishes() {
        for c in [0.05, 0.2, 0.5, 0.9] {
            let ctx = LdpContext::new(c, 1.0).unwrap();
            assert!(ctx.rate_i0_plus_derivative(ctx.lambda_plus()).unwrap().abs() < 1e-10);
            assert!(ctx.rate_i_minus_derivative(ctx.lambda_minus()).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn subcritical_rejections() {
        let ctx = LdpContext::new(0.25, 0.5).unwrap();
        assert!(!ctx.is_supercritical());
        assert!(ctx.rate_irho_plus(5.0).is_err());
        assert!(ctx.gamma_rho(20.0).is_err());
        assert_eq!(ctx.error_exponent_t(), 0.0);
        assert!(ctx.ee_curve_t(16).unwrap().is_empty());
        assert!(ctx.ee_curve_u(16).unwrap().is_empty());
    }

    #[test]
    fn monotonicity_on_dense_grids() {
        let ctx = LdpContext::new(0.5, 1.0).unwrap();
        let mut prev = -1.0;
        for x in grid(ctx.lambda_plus(), 20.0, 1000) {
            let v = ctx.rate_i0_plus(x).expect_finite();
            assert!(v > prev);
            prev = v;
        }
        let mut prev = f64::INFINITY;
        for x in grid(ctx.lambda_plus(), ctx.lambda_spk(), 1000) {
            let v = ctx.rate_irho_plus(x).unwrap().expect_finite();
            assert!(v < prev);
            prev = v;
        }
        let mut prev = 0.0;
        for x in grid(ctx.lambda_spk(), 20.0, 1000) {
            let v = ctx.rate_irho_plus(x).unwrap().expect_finite();
            assert!(v > prev);
            prev = v;
        }
        let mut prev = f64::INFINITY;
        for y in grid(0.0, ctx.lambda_minus(), 1000) {
            let v = ctx.rate_i_minus(y).expect_finite();
            assert!(v < prev && v > 0.0);
            prev = v;
        }
    }

    #[test]
    fn appendix_identities() {
        for (c, rho) in [(0.2, 10.0), (0.5, 2.0), (0.5, 1.0)] {
            let ctx = LdpContext::new(c, rho).unwrap();
            assert!(ctx.appendix_g_rho_derivative(ctx.lambda_spk()).unwrap().abs() < 1e-8);
            let g_spk = ctx.appendix_g_rho(ctx.lambda_spk()).unwrap();
            for x in grid(ctx.lambda_plus(), 3.0 * ctx.lambda_spk(), 200) {
                let g = ctx.appendix_g_rho(x).unwrap();
                let i = ctx.rate_irho_plus(x).unwrap().expect_finite();
                assert!((i - (g - g_spk)).abs() < 1e-10);
                // Φ + cJ_ρ as composed equals −G_ρ.
                let composed = ctx.appendix_phi(x).unwrap() + c * ctx.appendix_j_rho(x).unwrap();
                assert!((composed + g).abs() < 1e-10);
                if (x - ctx.lambda_spk()).abs() > 1e-6 {
                    assert!(g > g_spk);
                }
            }
        }
    }

    #[test]
    fn j_rho_branches_meet_at_spike() {
        let ctx = LdpContext::new(0.5, 0.4).unwrap();
        let ls = ctx.lambda_spk();
        let c = ctx.c();
        let k = (0.4 / (c * 1.4f64)).ln();
        let fp = ctx.mp().log_potential_plus(ls).unwrap();
        let flat = 0.4 / c - k - fp;
        let slope = 0.4 * ls / (c * 1.4) - 1.0 - k - fp;
        assert!((flat - slope).abs() < 1e-12);
        assert_eq!(ctx.appendix_j_rho(ls).unwrap(), flat);
        assert!((ctx.appendix_j_rho(ls * (1.0 + 1e-12)).unwrap() - flat).abs() < 1e-9);
        assert!(ctx.appendix_j_rho(ctx.lambda_plus() - 0.1).is_err());
    }

    #[test]
    fn high_snr_asymptote() {
        let mut prev = f64::INFINITY;
        for rho in [10.0, 100.0, 1000.0, 10000.0] {
            let ctx = LdpContext::new(0.2, rho).unwrap();
            let gap = (ctx.error_exponent_t() - high_snr_exponent(0.2, rho)).abs();
            assert!(gap < prev);
            prev = gap;
            if rho == 1000.0 {
                assert!(gap < 0.02);
            }
        }
    }

    #[test]
    fn curves_have_monotone_tradeoff() {
        let ctx = LdpContext::new(0.2, 10.0).unwrap();
        let st = ctx.ee_curve_t(256).unwrap();
        assert_eq!(st.len(), 256);
        for w in st.windows(2) {
            assert!(w[1].a > w[0].a && w[1].b < w[0].b);
        }
        assert!(st.iter().all(|p| p.a > 0.0 && p.b > 0.0));
        assert!(st[0].a < 1e-6 && (st[0].b - ctx.error_exponent_t()).abs() < 1e-3);
        assert!(st[255].b < 1e-6);
        assert_eq!(ctx.ee_curve_t(2).unwrap().len(), 2);
        assert!(ctx.ee_curve_t(1).is_err());
    }

    #[test]
    fn contraction_boundaries() {
        let ctx = LdpContext::new(0.2, 10.0).unwrap();
        let lm = ctx.lambda_minus();
        assert!(ctx.gamma_rho(ctx.lambda_spk() / lm).unwrap().expect_finite().abs() < 1e-10);
        assert!(!ctx.gamma_0(1.5).unwrap().is_finite());
        assert!(ctx.gamma_0(1.0).is_err());
        assert!(ctx.gamma_0(0.5).is_err());
        let at_edge = ctx.gamma_rho(ctx.lambda_plus() / lm).unwrap().expect_finite();
        assert!((at_edge - ctx.error_exponent_t()).abs() < 1e-8);
    }
}
