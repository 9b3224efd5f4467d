//! Seeded Monte Carlo engine for the signal model
//! `y(n) = h·s(n) + w(n)` with circular complex Gaussian `s` and `w`.
//!
//! Complex Gaussian entries are drawn as `√(v/2)·(g₁ + i·g₂)` with `g₁, g₂`
//! independent standard normals (`rand_distr::StandardNormal`), so the
//! per-entry variance is `v`. Trials run sequentially; each uses its own
//! random streams (see [`rng`]).

pub mod rng;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::detectors::{glrt_threshold, TestKind};
use crate::error::{Error, Result};
use crate::spectrum::{SnapshotMatrix, SpectrumSummary};
use crate::tracy_widom::TwCdf;
use rng::{stream, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelMode {
    /// `h = √(ρσ²)·e₁`.
    DeterministicAxis,
    /// Uniformly distributed direction with `‖h‖² = ρσ²`.
    RandomIsotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    Null,
    Alternative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub sensors: usize,
    pub snapshots: usize,
    pub sigma2: f64,
    /// Linear SNR `‖h‖²/σ²`.
    pub rho: f64,
    pub channel_mode: ChannelMode,
    pub trials: usize,
    pub seed: u64,
    pub alpha: Option<f64>,
}

impl SimConfig {
    pub fn new(sensors: usize, snapshots: usize, rho: f64, trials: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            sensors,
            snapshots,
            sigma2: 1.0,
            rho,
            channel_mode: ChannelMode::DeterministicAxis,
            trials,
            seed,
            alpha: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = Some(alpha);
        self.validate()?;
        Ok(self)
    }

    pub fn with_sigma2(mut self, sigma2: f64) -> Result<Self> {
        self.sigma2 = sigma2;
        self.validate()?;
        Ok(self)
    }

    pub fn with_channel(mut self, mode: ChannelMode) -> Self {
        self.channel_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.sensors == 0 || self.sensors >= self.snapshots {
            return bad(format!("need 1 ≤ K < N, got K={} N={}", self.sensors, self.snapshots));
        }
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return bad(format!("noise variance must be positive, got {}", self.sigma2));
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return bad(format!("SNR must be nonnegative, got {}", self.rho));
        }
        if self.trials == 0 {
            return bad("at least one trial is required".into());
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a < 1.0) {
                return bad(format!("alpha must lie in (0, 1), got {a}"));
            }
        }
        Ok(())
    }

    fn alpha_or_err(&self) -> Result<f64> {
        self.alpha.ok_or_else(|| Error::Config("this run needs a level alpha".into()))
    }
}

fn complex_gaussian<R: Rng>(rng: &mut R, variance: f64) -> Complex64 {
    let scale = (0.5 * variance).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(scale * re, scale * im)
}

fn noise(cfg: &SimConfig, trial: u64, role: Role) -> Vec<Complex64> {
    let mut rng = stream(cfg.seed, trial, role);
    (0..cfg.sensors * cfg.snapshots).map(|_| complex_gaussian(&mut rng, cfg.sigma2)).collect()
}

/// Noise-only observation for one trial.
pub fn gen_h0(cfg: &SimConfig, trial: u64) -> Result<SnapshotMatrix> {
    cfg.validate()?;
    SnapshotMatrix::new(cfg.sensors, cfg.snapshots, noise(cfg, trial, Role::NullNoise))
}

/// The channel vector of one trial, with `‖h‖² = ρσ²`.
pub fn channel(cfg: &SimConfig, trial: u64) -> Vec<Complex64> {
    let norm = (cfg.rho * cfg.sigma2).sqrt();
    let mut h = vec![Complex64::new(0.0, 0.0); cfg.sensors];
    match cfg.channel_mode {
        ChannelMode::DeterministicAxis => h[0] = Complex64::new(norm, 0.0),
        ChannelMode::RandomIsotropic => {
            let mut rng = stream(cfg.seed, trial, Role::Channel);
            for v in &mut h {
                *v = complex_gaussian(&mut rng, 1.0);
            }
            let len = h.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            for v in &mut h {
                *v *= norm / len;
            }
        }
    }
    h
}

/// Observation `Y = h·sᵀ + W` for one trial.
pub fn gen_h1(cfg: &SimConfig, trial: u64) -> Result<SnapshotMatrix> {
    cfg.validate()?;
    let mut data = noise(cfg, trial, Role::AltNoise);
    let h = channel(cfg, trial);
    let mut rng = stream(cfg.seed, trial, Role::Signal);
    let s: Vec<Complex64> = (0..cfg.snapshots).map(|_| complex_gaussian(&mut rng, 1.0)).collect();
    for (k, hk) in h.iter().enumerate() {
        for (n, sn) in s.iter().enumerate() {
            data[k * cfg.snapshots + n] += hk * sn;
        }
    }
    SnapshotMatrix::new(cfg.sensors, cfg.snapshots, data)
}

pub fn generate(cfg: &SimConfig, hypothesis: Hypothesis, trial: u64) -> Result<SnapshotMatrix> {
    match hypothesis {
        Hypothesis::Null => gen_h0(cfg, trial),
        Hypothesis::Alternative => gen_h1(cfg, trial),
    }
}

/// Both statistics of every trial under one hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatisticSamples {
    pub t: Vec<f64>,
    /// `+∞` when the smallest eigenvalue vanished.
    pub u: Vec<f64>,
    pub largest: Vec<f64>,
}

pub fn sample_statistics(cfg: &SimConfig, hypothesis: Hypothesis) -> Result<StatisticSamples> {
    cfg.validate()?;
    let mut out = StatisticSamples {
        t: Vec::with_capacity(cfg.trials),
        u: Vec::with_capacity(cfg.trials),
        largest: Vec::with_capacity(cfg.trials),
    };
    for trial in 0..cfg.trials as u64 {
        let summary = SpectrumSummary::from_snapshots(&generate(cfg, hypothesis, trial)?)?;
        out.t.push(summary.t_stat);
        out.u.push(summary.u_stat.unwrap_or(f64::INFINITY));
        out.largest.push(summary.largest());
    }
    Ok(out)
}

/// A binomial proportion with its Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

const Z95: f64 = 1.959_963_984_540_054;

impl Proportion {
    pub fn wilson(successes: usize, trials: usize) -> Self {
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self {
            successes,
            trials,
            estimate: p,
            // The interval reaches the boundary exactly when the count does.
            ci_low: if successes == 0 { 0.0 } else { (centre - half).max(0.0) },
            ci_high: if successes == trials { 1.0 } else { (centre + half).min(1.0) },
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PfaEstimate {
    pub threshold: f64,
    pub alpha: Option<f64>,
    pub pfa: Proportion,
}

/// Fraction of null trials whose `T_N` exceeds the asymptotic GLRT threshold at `cfg.alpha`.
pub fn empirical_pfa(cfg: &SimConfig) -> Result<PfaEstimate> {
    let alpha = cfg.alpha_or_err()?;
    let threshold = glrt_threshold(cfg.sensors, cfg.snapshots, alpha)?;
    let mut est = empirical_pfa_at(cfg, threshold)?;
    est.alpha = Some(alpha);
    Ok(est)
}

/// Fraction of null trials whose `T_N` exceeds a given threshold.
pub fn empirical_pfa_at(cfg: &SimConfig, threshold: f64) -> Result<PfaEstimate> {
    let samples = sample_statistics(cfg, Hypothesis::Null)?;
    let hits = samples.t.iter().filter(|&&t| t > threshold).count();
    Ok(PfaEstimate { threshold, alpha: None, pfa: Proportion::wilson(hits, cfg.trials) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub threshold: f64,
    pub pfa: f64,
    pub power: f64,
    pub null_trials: usize,
    pub alt_trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub test_kind: TestKind,
    /// Ordered by increasing false-alarm rate.
    pub points: Vec<RocPoint>,
}

impl RocCurve {
    /// Empirical operating points for raw thresholds on one statistic.
    pub fn from_samples(test_kind: TestKind, null: &[f64], alt: &[f64], thresholds: &[f64]) -> Self {
        let rate = |xs: &[f64], thr: f64| xs.iter().filter(|&&x| x > thr).count() as f64 / xs.len() as f64;
        let mut points: Vec<RocPoint> = thresholds
            .iter()
            .map(|&thr| RocPoint {
                threshold: thr,
                pfa: rate(null, thr),
                power: rate(alt, thr),
                null_trials: null.len(),
                alt_trials: alt.len(),
            })
            .collect();
        points.sort_by(|a, b| a.pfa.total_cmp(&b.pfa).then(b.threshold.total_cmp(&a.threshold)));
        Self { test_kind, points }
    }
}

/// How the ROC thresholds are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdGrid {
    /// Raw thresholds for `T_N` and for `U_N`.
    Raw { t: Vec<f64>, u: Vec<f64> },
    /// Target false-alarm rates. Each test uses the empirical null quantile,
    /// so both curves are evaluated at matched PFA.
    Pfa(Vec<f64>),
}

/// Paired simulation: every trial feeds the same matrices to both tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocRun {
    pub glrt: RocCurve,
    pub cond: RocCurve,
    /// One entry per matched-PFA target, in grid order. Empty for raw grids.
    pub comparison: Vec<PowerGap>,
}

/// Both tests at one matched false-alarm target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerGap {
    pub pfa_target: f64,
    pub glrt: RocPoint,
    pub cond: RocPoint,
    /// `power_glrt − power_cond`.
    pub difference: f64,
    /// Standard error of `difference` from the per-trial paired indicators.
    pub paired_se: f64,
}

/// Threshold with empirical exceedance rate at most `p`: the `⌈n(1−p)⌉`-th order statistic.
fn empirical_upper_quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let allowed = (p * n as f64).floor() as usize;
    if allowed >= n {
        return f64::NEG_INFINITY;
    }
    sorted[n - 1 - allowed]
}

pub fn roc_curves(cfg: &SimConfig, grid: &ThresholdGrid) -> Result<RocRun> {
    let null = sample_statistics(cfg, Hypothesis::Null)?;
    let alt = sample_statistics(cfg, Hypothesis::Alternative)?;
    Ok(roc_from_samples(&null, &alt, grid))
}

pub fn roc_from_samples(null: &StatisticSamples, alt: &StatisticSamples, grid: &ThresholdGrid) -> RocRun {
    match grid {
        ThresholdGrid::Raw { t, u } => RocRun {
            glrt: RocCurve::from_samples(TestKind::Glrt, &null.t, &alt.t, t),
            cond: RocCurve::from_samples(TestKind::Condition, &null.u, &alt.u, u),
            comparison: Vec::new(),
        },
        ThresholdGrid::Pfa(targets) => {
            let sorted = |xs: &[f64]| {
                let mut v = xs.to_vec();
                v.sort_by(f64::total_cmp);
                v
            };
            let (st, su) = (sorted(&null.t), sorted(&null.u));
            let tt: Vec<f64> = targets.iter().map(|&p| empirical_upper_quantile(&st, p)).collect();
            let tu: Vec<f64> = targets.iter().map(|&p| empirical_upper_quantile(&su, p)).collect();
            let glrt = RocCurve::from_samples(TestKind::Glrt, &null.t, &alt.t, &tt);
            let cond = RocCurve::from_samples(TestKind::Condition, &null.u, &alt.u, &tu);
            let comparison = targets
                .iter()
                .zip(tt.iter().zip(&tu))
                .map(|(&p, (&a, &b))| {
                    let (difference, paired_se) = paired_gap(&alt.t, a, &alt.u, b);
                    PowerGap {
                        pfa_target: p,
                        glrt: RocCurve::from_samples(TestKind::Glrt, &null.t, &alt.t, &[a]).points[0],
                        cond: RocCurve::from_samples(TestKind::Condition, &null.u, &alt.u, &[b]).points[0],
                        difference,
                        paired_se,
                    }
                })
                .collect();
            RocRun { glrt, cond, comparison }
        }
    }
}

fn paired_gap(t: &[f64], t_thr: f64, u: &[f64], u_thr: f64) -> (f64, f64) {
    let n = t.len() as f64;
    let d: Vec<f64> = t
        .iter()
        .zip(u)
        .map(|(&x, &y)| f64::from(u8::from(x > t_thr)) - f64::from(u8::from(y > u_thr)))
        .collect();
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Kolmogorov distance between the empirical law of the centered largest
/// eigenvalue `Λ₁` and the Tracy-Widom law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluctuationCheck {
    pub hypothesis: Hypothesis,
    pub trials: usize,
    pub distance: f64,
}

/// Eigenvalues are divided by the known `σ²` before centering.
pub fn tw_fluctuation_check(cfg: &SimConfig, hypothesis: Hypothesis) -> Result<FluctuationCheck> {
    let samples = sample_statistics(cfg, hypothesis)?;
    let c = cfg.sensors as f64 / cfg.snapshots as f64;
    let edge = (1.0 + c.sqrt()).powi(2);
    let scale = crate::spectrum::largest_eigenvalue_scale(c);
    let n23 = (cfg.snapshots as f64).powf(2.0 / 3.0);
    let mut centered: Vec<f64> = samples.largest.iter().map(|l| n23 * (l / cfg.sigma2 - edge) / scale).collect();
    Ok(FluctuationCheck { hypothesis, trials: cfg.trials, distance: kolmogorov_distance(&mut centered, |x| TwCdf::global().cdf(x)) })
}

/// `sup |F_n − F|` for the empirical c.d.f. of `xs` (sorted in place).
pub fn kolmogorov_distance(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
