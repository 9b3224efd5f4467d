//! `F₂(s) = det(I − K_Ai)` on `L²(s, ∞)` by Nyström discretization.
//!
//! The half line is mapped to `(0, 1)` by `u = s + t/(1 − t)` and sampled at
//! Gauss-Legendre nodes. The symmetrized matrix `A = W^{1/2} K W^{1/2}` is
//! positive semidefinite with spectrum in `[0, 1)`. Besides the determinant,
//! `(∂ₓ + ∂ᵧ)K(x, y) = −Ai(x)Ai(y)` gives the density
//! `F₂′(s) = F₂(s)·aᵀ(I − A)⁻¹a` with `aᵢ = √wᵢ·Ai(uᵢ)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::airy::airy_pair;
use crate::numeric::gauss_legendre;

/// One evaluation of the determinant at a point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FredholmPoint {
    pub cdf: f64,
    pub ccdf: f64,
    pub pdf: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct AiryDeterminant {
    t: Vec<f64>,
    w: Vec<f64>,
}

impl AiryDeterminant {
    pub fn new(order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        Self {
            t: x.iter().map(|x| 0.5 * (x + 1.0)).collect(),
            w: w.iter().map(|w| 0.5 * w).collect(),
        }
    }

    pub fn evaluate(&self, s: f64) -> FredholmPoint {
        let n = self.t.len();
        let mut ai = vec![0.0; n];
        let mut dai = vec![0.0; n];
        let mut u = vec![0.0; n];
        let mut sw = vec![0.0; n];
        for i in 0..n {
            let t = self.t[i];
            let one_minus = 1.0 - t;
            u[i] = s + t / one_minus;
            sw[i] = (self.w[i] / (one_minus * one_minus)).sqrt();
            let (a, d) = airy_pair(u[i]);
            ai[i] = a;
            dai[i] = d;
        }
        let kernel = DMatrix::from_fn(n, n, |i, j| {
            let k = if i == j {
                dai[i] * dai[i] - u[i] * ai[i] * ai[i]
            } else {
                (ai[i] * dai[j] - dai[i] * ai[j]) / (u[i] - u[j])
            };
            sw[i] * k * sw[j]
        });
        let a = DVector::from_fn(n, |i, _| sw[i] * ai[i]);
        let trace = kernel.trace();

        let identity = DMatrix::<f64>::identity(n, n);
        let system = &identity - &kernel;

        // Near the right tail the determinant is 1 − O(tr A); take the
        // logarithm from the spectrum so 1 − F keeps its relative accuracy.
        let (log_det, quad) = if trace < 0.5 {
            let eig = SymmetricEigen::new(kernel.clone());
            let log_det: f64 = eig.eigenvalues.iter().map(|mu| (-mu).ln_1p()).sum();
            let proj = eig.eigenvectors.transpose() * &a;
            let quad: f64 = proj
                .iter()
                .zip(eig.eigenvalues.iter())
                .map(|(p, mu)| p * p / (1.0 - mu))
                .sum();
            (log_det, quad)
        } else {
            match system.clone().cholesky() {
                Some(ch) => {
                    let log_det = 2.0 * ch.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
                    let x = ch.solve(&a);
                    (log_det, a.dot(&x))
                }
                None => {
                    let lu = system.lu();
                    let det = lu.determinant();
                    let x = lu.solve(&a).unwrap_or_else(|| DVector::zeros(n));
                    (det.max(f64::MIN_POSITIVE).ln(), a.dot(&x))
                }
            }
        };
        let cdf = log_det.exp();
        FredholmPoint {
            cdf,
            ccdf: -log_det.exp_m1(),
            pdf: cdf * quad,
        }
    }
}
