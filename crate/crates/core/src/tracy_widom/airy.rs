//! Airy function `Ai` and its derivative.
//!
//! For `x ≥ 9` the classical asymptotic expansion is used; at `ζ = ⅔x^{3/2} ≥ 18`
//! its smallest term is below 1e-15. From that anchor the ODE `y″ = x·y` is
//! integrated downward with an exact Taylor recurrence to a table of knots
//! spaced 1/4 apart, which is the stable direction (the `Bi` component
//! decays). Any other point is a short Taylor expansion from its nearest knot.

use std::sync::OnceLock;

use crate::error::{domain, Result};

const KNOT_STEP: f64 = 0.25;
const KNOT_HI: f64 = 9.0;
const KNOT_LO: f64 = -25.0;

/// Public evaluation range of [`airy_ai`].
pub const AIRY_RANGE: (f64, f64) = (-20.0, 20.0);

/// `Ai(x)` on `[-20, 20]`, absolute error below 1e-10.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !(x >= AIRY_RANGE.0 && x <= AIRY_RANGE.1) {
        return domain(format!("Ai is evaluated on [{}, {}], got {x}", AIRY_RANGE.0, AIRY_RANGE.1));
    }
    Ok(airy_pair(x).0)
}

/// `(Ai(x), Ai′(x))` for any `x ≥ -25`.
pub(crate) fn airy_pair(x: f64) -> (f64, f64) {
    debug_assert!(x >= KNOT_LO, "Airy evaluation below {KNOT_LO}");
    if x >= KNOT_HI {
        return asymptotic_positive(x);
    }
    let knots = knots();
    let idx = ((x - KNOT_LO) / KNOT_STEP).round().clamp(0.0, (knots.len() - 1) as f64) as usize;
    let x0 = KNOT_LO + idx as f64 * KNOT_STEP;
    let (y, dy) = knots[idx];
    taylor_step(x0, y, dy, x - x0)
}

fn knots() -> &'static [(f64, f64)] {
    static KNOTS: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    KNOTS.get_or_init(|| {
        let n = ((KNOT_HI - KNOT_LO) / KNOT_STEP).round() as usize;
        let mut table = vec![(0.0, 0.0); n + 1];
        table[n] = asymptotic_positive(KNOT_HI);
        for i in (0..n).rev() {
            let x0 = KNOT_LO + (i + 1) as f64 * KNOT_STEP;
            let (y, dy) = table[i + 1];
            table[i] = taylor_step(x0, y, dy, -KNOT_STEP);
        }
        table
    })
}

/// Advances `(y, y′)` of `y″ = x·y` from `x0` by `h` using the series
/// `y(x0 + h) = Σ aₙ hⁿ`, `(n+2)(n+1)a_{n+2} = x0·aₙ + a_{n−1}`.
fn taylor_step(x0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    let mut a = [0.0f64; 3]; // a_{n-1}, a_n, a_{n+1}
    a[1] = y;
    a[2] = dy;
    let mut value = y + dy * h;
    let mut deriv = dy;
    let mut hp = h; // h^{n+1}
    let scale = y.abs() + dy.abs();
    for n in 0..200usize {
        let next = (x0 * a[1] + a[0]) / ((n + 2) as f64 * (n + 1) as f64);
        // term a_{n+2} h^{n+2}; derivative term (n+2) a_{n+2} h^{n+1}
        let dterm = (n + 2) as f64 * next * hp;
        hp *= h;
        let term = next * hp;
        value += term;
        deriv += dterm;
        a = [a[1], a[2], next];
        if n > 4 && term.abs() + dterm.abs() <= 1e-18 * scale && (a[1] * hp).abs() <= 1e-18 * scale {
            break;
        }
    }
    (value, deriv)
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let pre = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let q = x.sqrt().sqrt();
    let mut u = 1.0;
    let mut sum_u = 1.0;
    let mut sum_v = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zk *= -1.0 / zeta;
        let term = u * zk;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum_u += term;
        sum_v += v * zk;
        if last < 1e-17 {
            break;
        }
    }
    (pre / q * sum_u, -pre * q * sum_v)
}
