//! Tracy-Widom evaluation against an independent Painlevé II solution,
//! published moments and Monte Carlo sampling.

mod common;

use common::{integrate, TW2_MEAN, TW2_REFERENCE, TW2_VARIANCE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spike_detect::detectors::condition_weights;
use spike_detect::simulate::kolmogorov_distance;
use spike_detect::tracy_widom::{fredholm_cdf, tw2_cdf, tw2_pdf, tw2_quantile, ComboQuantiler, TwCdf};

#[test]
fn table_matches_painleve_solution() {
    for &(s, f, pdf) in &TW2_REFERENCE {
        assert!((tw2_cdf(s) - f).abs() < 1e-9, "cdf at {s}");
        assert!((tw2_pdf(s) - pdf).abs() < 1e-8, "pdf at {s}");
        if f < 1e-3 {
            assert!(((tw2_cdf(s) - f) / f).abs() < 1e-4, "relative cdf at {s}");
        }
    }
    let tw = TwCdf::global();
    assert!((tw.ccdf(6.0) / 3.817_232_659_009_458_991_4e-12 - 1.0).abs() < 1e-4);
    assert!((tw.ccdf(4.0) / 4.957_912_153_331_047_018_7e-8 - 1.0).abs() < 1e-6);
}

#[test]
fn doubling_quadrature_order_is_stable() {
    for s in [-6.0, -4.0, -2.0, 0.0, 2.0] {
        let diff = (fredholm_cdf(s, 64) - fredholm_cdf(s, 128)).abs();
        assert!(diff < 1e-9, "s={s}: {diff:e}");
    }
}

#[test]
fn moments_match_published_values() {
    let mass = integrate(tw2_pdf, -14.0, 9.0, 1e-13);
    let mean = integrate(|s| s * tw2_pdf(s), -14.0, 9.0, 1e-13);
    let second = integrate(|s| s * s * tw2_pdf(s), -14.0, 9.0, 1e-13);
    assert!((mass - 1.0).abs() < 1e-6);
    assert!((mean - TW2_MEAN).abs() < 1e-6, "mean {mean}");
    assert!((second - mean * mean - TW2_VARIANCE).abs() < 1e-6, "variance {}", second - mean * mean);
}

#[test]
fn density_is_nonnegative() {
    for i in 0..=4000 {
        let s = -15.0 + 25.0 * i as f64 / 4000.0;
        assert!(tw2_pdf(s) >= 0.0, "s={s}");
    }
}

#[test]
fn quantiles_invert_cdf() {
    for p in [1e-9, 1e-4, 0.01, 0.3, 0.5, 0.9, 0.99, 0.999_999] {
        let q = tw2_quantile(p).unwrap();
        assert!((tw2_cdf(q) - p).abs() < 1e-12 + 1e-9 * p, "p={p}");
    }
}

#[test]
fn combination_matches_monte_carlo() {
    let tw = TwCdf::global();
    let (a, b) = condition_weights(0.2).unwrap();
    let combo = ComboQuantiler::new(tw, a, b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    // Inverse-transform sampling through a dense quantile table.
    let table: Vec<f64> = (0..=200_000)
        .map(|i| {
            let p = (i as f64 / 200_000.0).clamp(1e-12, 1.0 - 1e-12);
            tw.quantile(p).unwrap()
        })
        .collect();
    let draw = |u: f64| {
        let x = u * 200_000.0;
        let i = (x as usize).min(199_999);
        table[i] + (x - i as f64) * (table[i + 1] - table[i])
    };
    let mut z: Vec<f64> = (0..1_000_000)
        .map(|_| a * draw(rng.gen::<f64>()) + b * draw(rng.gen::<f64>()))
        .collect();
    let d = kolmogorov_distance(&mut z, |x| combo.cdf_at(x));
    assert!(d <= 0.002, "Kolmogorov distance {d}");
}
