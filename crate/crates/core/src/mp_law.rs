//! Marčenko-Pastur law with ratio `c ∈ (0, 1)` and unit variance.
//!
//! Besides the density this module evaluates, on the real axis outside the
//! support, the Stieltjes transform `f(x) = ∫ dμ(y)/(y − x)`, its companion
//! `f̃(x) = c·f(x) − (1 − c)/x`, and the two log-potentials
//!
//! ```text
//! F⁺(x) = ∫ log(x − y) dμ(y),   x ≥ λ⁺
//! F⁻(x) = ∫ log(y − x) dμ(y),   0 < x ≤ λ⁻
//! ```
//!
//! in closed form. All of them satisfy `(F±)′ = −f`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpLaw {
    c: f64,
    lambda_minus: f64,
    lambda_plus: f64,
}

impl MpLaw {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return domain(format!("Marčenko-Pastur ratio must lie in (0, 1), got {c}"));
        }
        let s = c.sqrt();
        Ok(Self {
            c,
            lambda_minus: (1.0 - s) * (1.0 - s),
            lambda_plus: (1.0 + s) * (1.0 + s),
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Lower edge `(1 − √c)²`.
    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    /// Upper edge `(1 + √c)²`.
    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }

    pub fn pdf(&self, y: f64) -> f64 {
        if y <= self.lambda_minus || y >= self.lambda_plus {
            return 0.0;
        }
        ((self.lambda_plus - y) * (y - self.lambda_minus)).sqrt() / (2.0 * std::f64::consts::PI * self.c * y)
    }

    fn check_outside_support(&self, x: f64) -> Result<Side> {
        if x >= self.lambda_plus {
            Ok(Side::Right)
        } else if x > 0.0 && x <= self.lambda_minus {
            Ok(Side::Left)
        } else {
            Err(Error::Domain(format!(
                "x = {x} is not on the real axis outside the support (0, {}] ∪ [{}, ∞)",
                self.lambda_minus, self.lambda_plus
            )))
        }
    }

    /// Stieltjes transform `f(x)`, defined for `x ≥ λ⁺` or `0 < x ≤ λ⁻`.
    ///
    /// At the edges the discriminant vanishes and the square root is clamped
    /// to zero, which gives the continuous limit.
    pub fn stieltjes(&self, x: f64) -> Result<f64> {
        let side = self.check_outside_support(x)?;
        Ok(self.stieltjes_unchecked(x, side))
    }

    fn stieltjes_unchecked(&self, x: f64, side: Side) -> f64 {
        let b = 1.0 - x - self.c;
        // (1 − x − c)² − 4cx factors as (x − λ⁺)(x − λ⁻)
        let disc = ((x - self.lambda_plus) * (x - self.lambda_minus)).max(0.0).sqrt();
        // Both branches are written as 2/(b ∓ √D) so no subtraction cancels.
        match side {
            Side::Right => 2.0 / (b - disc),
            Side::Left => 2.0 / (b + disc),
        }
    }

    /// Companion transform `f̃(x) = c·f(x) − (1 − c)/x`.
    pub fn stieltjes_tilde(&self, x: f64) -> Result<f64> {
        let side = self.check_outside_support(x)?;
        Ok(self.tilde_from(x, self.stieltjes_unchecked(x, side)))
    }

    fn tilde_from(&self, x: f64, f: f64) -> f64 {
        self.c * f - (1.0 - self.c) / x
    }

    /// `F⁺(x) = ∫ log(x − y) dμ(y)` for `x ≥ λ⁺`.
    pub fn log_potential_plus(&self, x: f64) -> Result<f64> {
        if !(x >= self.lambda_plus) {
            return domain(format!("F⁺ requires x ≥ λ⁺ = {}, got {x}", self.lambda_plus));
        }
        let f = self.stieltjes_unchecked(x, Side::Right);
        let ft = self.tilde_from(x, f);
        Ok(x.ln() + (self.c * f).ln_1p() / self.c + ft.ln_1p() + x * f * ft)
    }

    /// `F⁻(x) = ∫ log(y − x) dμ(y)` for `0 < x ≤ λ⁻`.
    pub fn log_potential_minus(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= self.lambda_minus) {
            return domain(format!("F⁻ requires 0 < x ≤ λ⁻ = {}, got {x}", self.lambda_minus));
        }
        let f = self.stieltjes_unchecked(x, Side::Left);
        let ft = self.tilde_from(x, f);
        Ok(x.ln() + (self.c * f).ln_1p() / self.c + (-(1.0 + ft)).ln() + x * f * ft)
    }
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Left,
    Right,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_residual(law: &MpLaw, x: f64) -> f64 {
        let f = law.stieltjes(x).unwrap();
        let c = law.c();
        let r = c * x * f * f + (x + c - 1.0) * f + 1.0;
        r / (c * x * f * f).abs().max((x + c - 1.0).abs() * f.abs()).max(1.0)
    }

    #[test]
    fn edges_match_closed_form() {
        for c in [0.01, 0.2, 0.5, 0.99] {
            let law = MpLaw::new(c).unwrap();
            assert_eq!(law.lambda_plus(), (1.0 + c.sqrt()).powi(2));
            assert_eq!(law.lambda_minus(), (1.0 - c.sqrt()).powi(2));
        }
    }

    #[test]
    fn constructor_rejects_ratio_outside_unit_interval() {
        for c in [0.0, 1.0, -0.3, 1.5, f64::NAN] {
            assert!(matches!(MpLaw::new(c), Err(Error::Domain(_))), "c={c}");
        }
    }

    #[test]
    fn density_vanishes_at_and_outside_edges() {
        let law = MpLaw::new(0.5).unwrap();
        assert_eq!(law.pdf(law.lambda_plus()), 0.0);
        assert_eq!(law.pdf(law.lambda_minus()), 0.0);
        assert_eq!(law.pdf(10.0), 0.0);
        assert_eq!(law.pdf(0.0), 0.0);
        assert!(law.pdf(1.0) > 0.0);
    }

    #[test]
    fn stieltjes_at_upper_edge() {
        let law = MpLaw::new(0.25).unwrap();
        assert_eq!(law.lambda_plus(), 2.25);
        let f = law.stieltjes(2.25).unwrap();
        assert!((f + 4.0 / 3.0).abs() < 1e-15, "f = {f}");
    }

    #[test]
    fn stieltjes_quadratic_identity_on_both_sides() {
        for c in [0.05, 0.2, 0.5, 0.8] {
            let law = MpLaw::new(c).unwrap();
            for i in 0..=400 {
                let t = i as f64 / 400.0;
                let right = law.lambda_plus() * (1.0 + 20.0 * t * t);
                let left = law.lambda_minus() * (1e-3 + (1.0 - 1e-3) * t);
                for x in [right, left] {
                    let r = quadratic_residual(&law, x);
                    assert!(r.abs() < 1e-12, "c={c} x={x} residual={r}");
                }
            }
        }
        let law = MpLaw::new(0.5).unwrap();
        assert!(quadratic_residual(&law, 5.0).abs() < 1e-12);
    }

    #[test]
    fn stieltjes_decays_from_below() {
        let law = MpLaw::new(0.5).unwrap();
        let mut prev = law.stieltjes(10.0).unwrap();
        for x in [1e2, 1e4, 1e8, 1e12] {
            let f = law.stieltjes(x).unwrap();
            assert!(f < 0.0 && f > prev);
            assert!((f * x + 1.0).abs() < 2.0 / x.sqrt());
            prev = f;
        }
    }

    #[test]
    fn stieltjes_rejects_bulk_and_nonpositive() {
        let law = MpLaw::new(0.5).unwrap();
        for x in [1.0, 0.5, 2.0, 0.0, -1.0] {
            assert!(law.stieltjes(x).is_err(), "x={x}");
            assert!(law.stieltjes_tilde(x).is_err(), "x={x}");
        }
    }

    #[test]
    fn companion_system_holds() {
        let law = MpLaw::new(0.5).unwrap();
        for x in [5.0, law.lambda_plus(), 0.05, law.lambda_minus()] {
            let f = law.stieltjes(x).unwrap();
            let ft = law.stieltjes_tilde(x).unwrap();
            assert!((f + 1.0 / (x * (1.0 + ft))).abs() < 1e-10, "x={x}");
            assert!((ft + 1.0 / (x * (1.0 + law.c() * f))).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn companion_sign_on_each_side() {
        for c in [0.1, 0.5, 0.9] {
            let law = MpLaw::new(c).unwrap();
            for i in 0..200 {
                let t = i as f64 / 200.0;
                let right = law.lambda_plus() + 50.0 * t;
                assert!(1.0 + law.stieltjes_tilde(right).unwrap() > 0.0);
                let left = law.lambda_minus() * (1.0 - 0.999 * t);
                assert!(1.0 + law.stieltjes_tilde(left).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn log_potential_plus_tends_to_log() {
        let law = MpLaw::new(0.5).unwrap();
        let mut prev = f64::INFINITY;
        for x in [10.0, 100.0, 1e4, 1e6] {
            let gap = (law.log_potential_plus(x).unwrap() - x.ln()).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn log_potential_derivatives_are_minus_stieltjes() {
        let law = MpLaw::new(0.5).unwrap();
        let h = 1e-5;
        let x = 4.0;
        let d = (law.log_potential_plus(x + h).unwrap() - law.log_potential_plus(x - h).unwrap()) / (2.0 * h);
        assert!((d + law.stieltjes(x).unwrap()).abs() < 1e-6);
        let x = 0.05;
        let d = (law.log_potential_minus(x + h).unwrap() - law.log_potential_minus(x - h).unwrap()) / (2.0 * h);
        assert!((d + law.stieltjes(x).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn lower_edge_identity() {
        for c in [0.1, 0.5, 0.9] {
            let law = MpLaw::new(c).unwrap();
            let s = c.sqrt();
            let v = 1.0 - (1.0 + s) / (1.0 - s) + 2.0 * c * law.stieltjes(law.lambda_minus()).unwrap();
            assert!(v.abs() < 1e-10, "c={c} v={v}");
        }
    }

    #[test]
    fn log_potential_domains() {
        let law = MpLaw::new(0.5).unwrap();
        assert!(law.log_potential_plus(2.0).is_err());
        assert!(law.log_potential_plus(law.lambda_plus()).is_ok());
        assert!(law.log_potential_minus(0.0).is_err());
        assert!(law.log_potential_minus(0.5).is_err());
        assert!(law.log_potential_minus(law.lambda_minus()).is_ok());
    }
}
