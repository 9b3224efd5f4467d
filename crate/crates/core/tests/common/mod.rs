//! Independent numerical oracles shared by the integration tests.

#![allow(dead_code)]

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss-Kronrod (7, 15) quadrature with bisection of the worst panel.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut panels = vec![(a, b, kronrod15(&f, a, b))];
    for _ in 0..20_000 {
        let err: f64 = panels.iter().map(|p| p.2 .1).sum();
        if err < tol {
            break;
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        panels.push((lo, mid, kronrod15(&f, lo, mid)));
        panels.push((mid, hi, kronrod15(&f, mid, hi)));
    }
    panels.iter().map(|p| p.2 .0).sum()
}

/// Nelder-Mead minimisation with restarts until the best value stalls.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, start: &[f64], step: f64) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut best = start.to_vec();
    let mut best_val = f(&best);
    let mut scale = step;
    for _ in 0..40 {
        let (x, v) = nelder_mead_once(&f, &best, scale);
        let improved = best_val - v;
        if v < best_val {
            best = x;
            best_val = v;
        }
        if improved.abs() < 1e-15 * (1.0 + best_val.abs()) {
            break;
        }
        scale = (scale * 0.5).max(1e-4);
    }
    let _ = n;
    (best, best_val)
}

fn nelder_mead_once(f: &impl Fn(&[f64]) -> f64, start: &[f64], step: f64) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    for _ in 0..20_000 {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        if (vals[n] - vals[0]).abs() <= 1e-16 * (1.0 + vals[0].abs()) {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|j| centroid[j] + t * (simplex[n][j] - centroid[j])).collect() };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let xc = if fr < vals[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = (0..n).map(|j| simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j])).collect();
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let i = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    (simplex[i].clone(), vals[i])
}

/// Golden-section search written independently of the library's.
pub fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-12 * (1.0 + a.abs()) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 { (x1, f1) } else { (x2, f2) }
}

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `−N [log det Σ + tr(Σ⁻¹ R)]`, the Gaussian log-likelihood up to a constant.
pub fn log_likelihood(sigma: &DMatrix<Complex64>, r: &DMatrix<Complex64>, n: usize) -> f64 {
    let det = sigma.determinant();
    let inv = sigma.clone().try_inverse().expect("covariance is invertible");
    -(n as f64) * (det.re.ln() + (inv * r).trace().re)
}

/// Naive `R = Y Yᴴ / N` from row-major `K × N` data.
pub fn naive_covariance(data: &[Complex64], k: usize, n: usize) -> DMatrix<Complex64> {
    let mut r = DMatrix::from_element(k, k, Complex64::new(0.0, 0.0));
    for i in 0..k {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                acc += data[i * n + m] * data[j * n + m].conj();
            }
            r[(i, j)] = acc / n as f64;
        }
    }
    r
}

/// Log GLR by direct numerical maximisation of both likelihoods:
/// golden section over `log σ²` outside, Nelder-Mead over `h ∈ ℂᴷ` inside.
pub fn mle_log_glr(data: &[Complex64], k: usize, n: usize) -> f64 {
    let r = naive_covariance(data, k, n);
    let scale = r.trace().re / k as f64;
    let eye = DMatrix::<Complex64>::identity(k, k);
    let null = |ls: f64| -log_likelihood(&(eye.clone() * Complex64::new(ls.exp(), 0.0)), &r, n);
    let (_, null_min) = golden(null, scale.ln() - 5.0, scale.ln() + 5.0);

    let start: Vec<f64> = (0..k)
        .flat_map(|i| {
            let v = r[(i, 0)] / r[(0, 0)].re.sqrt();
            [v.re, v.im]
        })
        .collect();
    let inner = |ls: f64| {
        let s2 = ls.exp();
        let objective = |p: &[f64]| {
            let h = DMatrix::from_fn(k, 1, |i, _| Complex64::new(p[2 * i], p[2 * i + 1]));
            let sigma = &h * h.adjoint() + eye.clone() * Complex64::new(s2, 0.0);
            -log_likelihood(&sigma, &r, n)
        };
        nelder_mead(objective, &start, 0.3).1
    };
    let (_, alt_min) = golden(inner, scale.ln() - 6.0, scale.ln() + 0.5);
    null_min - alt_min
}

/// `(s, F₂(s), F₂′(s))` from a 90-digit Painlevé II solve (`tests/oracle/painleve_tw2.py`).
pub const TW2_REFERENCE: [(f64, f64, f64); 14] = [
    (6.0, 0.999_999_999_996_182_767_34, 1.957_541_219_525_739_823_8e-11),
    (4.0, 0.999_999_950_420_878_466_69, 2.143_793_201_353_733_197_1e-7),
    (2.0, 0.999_887_553_698_309_172_93, 0.000_379_199_111_693_617_262_93),
    (1.0, 0.997_505_438_149_389_249_38, 0.007_023_835_292_213_994_416_4),
    (0.0, 0.969_372_828_355_262_668_35, 0.066_975_307_132_779_311_68),
    (-1.0, 0.807_214_241_999_285_292_48, 0.285_550_938_236_154_318_17),
    (-1.5, 0.631_380_876_420_726_046_62, 0.409_669_379_010_723_268_29),
    (-2.0, 0.413_224_142_505_122_554_69, 0.441_381_801_861_778_401_93),
    (-3.0, 0.080_319_552_939_334_548_081, 0.184_246_683_828_359_469_58),
    (-3.5, 0.020_967_691_492_766_543_251, 0.064_988_128_078_921_893_356),
    (-4.0, 0.003_544_553_595_509_200_296_3, 0.014_291_400_601_748_643_777),
    (-5.0, 0.000_021_359_969_847_411_157_699, 0.000_134_039_172_234_774_643_63),
    (-6.0, 1.062_254_674_124_451_068_8e-8, 9.582_544_316_852_528_851e-8),
    (-8.0, 1.985_900_425_763_657_479_3e-19, 3.180_550_617_409_375_055e-18),
];

/// Published first two moments of the β = 2 Tracy-Widom law.
pub const TW2_MEAN: f64 = -1.771_086_807_411_6;
pub const TW2_VARIANCE: f64 = 0.813_194_792_832_9;
