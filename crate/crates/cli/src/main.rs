//! `spike-detect`: single-source detection with an uncalibrated sensor array.
//!
//! Exit status: 0 on success (for `detect`, the null hypothesis is kept),
//! 2 when `detect` rejects the null hypothesis, 1 on any error.

mod matrix_file;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spike_detect::detectors::{cond_decide, cond_threshold, glrt_decide, glrt_pvalue, glrt_threshold, TestKind};
use spike_detect::ldp::{CurvePoint, LdpContext};
use spike_detect::simulate::{
    empirical_pfa, roc_curves, tw_fluctuation_check, ChannelMode, Hypothesis, SimConfig, ThresholdGrid,
};
use spike_detect::tracy_widom::TwCdf;
use thiserror::Error;

use report::{Payload, RunReport, SimResult};

pub const TW_CACHE_ENV: &str = "SPIKE_DETECT_TW_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] spike_detect::Error),
    #[error("{0}")]
    Usage(String),
    #[error("could not encode report: {0}")]
    Json(#[from] serde_json::Error),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

#[derive(Debug, Parser)]
#[command(name = "spike-detect", version, about = "GLRT and condition-number detection of a single source")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Test {
    Glrt,
    Cond,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "T")]
    T,
    #[value(name = "U")]
    U,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Pfa,
    Roc,
    Twcheck,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Channel {
    Axis,
    Isotropic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a test on a matrix file ("K,N" header, then K lines of 2N re,im fields).
    Detect {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "glrt")]
        test: Test,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Asymptotic threshold of a test at level alpha.
    Threshold {
        #[arg(long = "K")]
        sensors: usize,
        #[arg(long = "N")]
        snapshots: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "glrt")]
        test: Test,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Asymptotic GLRT p-value of an observed T statistic.
    Pvalue {
        #[arg(long = "K")]
        sensors: usize,
        #[arg(long = "N")]
        snapshots: usize,
        #[arg(long = "t")]
        statistic: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Error-exponent curves as CSV rows "curve,a,b" (T: GLRT, U: condition number).
    Curves {
        #[arg(long)]
        c: f64,
        /// Linear SNR.
        #[arg(long, conflicts_with = "rho_db", required_unless_present = "rho_db")]
        rho: Option<f64>,
        /// SNR in dB, converted as 10^(dB/10).
        #[arg(long)]
        rho_db: Option<f64>,
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Seeded Monte Carlo runs.
    ///
    /// CSV payloads by mode:
    ///   pfa:     alpha,threshold,rejections,trials,pfa,ci_low,ci_high
    ///   roc:     pfa_target,glrt_threshold,glrt_pfa,glrt_power,cond_threshold,cond_pfa,cond_power,power_gap,paired_se
    ///   twcheck: hypothesis,trials,kolmogorov_distance
    #[command(verbatim_doc_comment)]
    Simulate {
        #[arg(long = "K")]
        sensors: usize,
        #[arg(long = "N")]
        snapshots: usize,
        /// SNR in dB, converted as 10^(dB/10).
        #[arg(long, conflicts_with = "rho_linear")]
        rho_db: Option<f64>,
        #[arg(long)]
        rho_linear: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "pfa")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "axis")]
        channel: Channel,
        /// Matched false-alarm targets for --mode roc.
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.02,0.05,0.1,0.2,0.3,0.4,0.5")]
        pfa_grid: Vec<f64>,
        /// For --mode twcheck: draw from the spiked alternative instead of noise.
        #[arg(long)]
        alternative: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Build the Tracy-Widom table and write it as CSV (stdout when no path is given).
    TwTable {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Formats with 10 significant digits, plain decimal where reasonable.
pub fn sig10(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-4..10).contains(&exp) {
        format!("{:.*}", (9 - exp) as usize, x)
    } else {
        sci
    }
}

fn test_kind(test: Test) -> TestKind {
    match test {
        Test::Glrt => TestKind::Glrt,
        Test::Cond => TestKind::Condition,
    }
}

/// Loads the Tracy-Widom table from the cache named by the environment, or
/// builds it and writes the cache.
fn install_tw_cache() -> Result<(), CliError> {
    let Some(path) = std::env::var_os(TW_CACHE_ENV).map(PathBuf::from) else {
        return Ok(());
    };
    let table = if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
        TwCdf::from_csv(&text)?
    } else {
        let table = TwCdf::new();
        std::fs::write(&path, table.to_csv()).map_err(io_err(&path))?;
        table
    };
    // Only fails if a table is already installed, which cannot happen before dispatch.
    let _ = TwCdf::install_global(table);
    Ok(())
}

struct Outcome {
    stdout: String,
    code: u8,
}

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome { stdout, code: 0 })
}

fn json(report: &RunReport) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

fn rho_value(linear: Option<f64>, db: Option<f64>) -> Result<f64, CliError> {
    match (linear, db) {
        (Some(r), None) => Ok(r),
        (None, Some(d)) => Ok(10f64.powf(d / 10.0)),
        (None, None) => Err(CliError::Usage("give the SNR with --rho-db or --rho-linear".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("give the SNR only once".into())),
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Detect { file, test, alpha, format } => {
            let text = std::fs::read_to_string(&file).map_err(io_err(&file))?;
            let y = matrix_file::parse(&text)?;
            let decision = match test {
                Test::Glrt => glrt_decide(&y, alpha)?,
                Test::Cond => cond_decide(&y, alpha)?,
            };
            let code = if decision.reject_null { 2 } else { 0 };
            let stdout = match format {
                Format::Json | Format::Text => {
                    json(&RunReport::new(Payload::Detect { input: file.display().to_string(), decision }))?
                }
                Format::Csv => format!(
                    "# spike-detect {} detect file={}\ntest,statistic,threshold,p_value,reject,K,N,alpha\n{},{},{},{},{},{},{},{}\n",
                    env!("CARGO_PKG_VERSION"),
                    file.display(),
                    decision.test_kind,
                    sig10(decision.statistic_value),
                    sig10(decision.threshold),
                    decision.p_value.map(sig10).unwrap_or_default(),
                    decision.reject_null,
                    decision.sensors,
                    decision.snapshots,
                    sig10(decision.alpha),
                ),
            };
            Ok(Outcome { stdout, code })
        }
        Command::Threshold { sensors, snapshots, alpha, test, format } => {
            let threshold = match test {
                Test::Glrt => glrt_threshold(sensors, snapshots, alpha)?,
                Test::Cond => cond_threshold(sensors, snapshots, alpha)?,
            };
            ok(match format {
                Format::Text => sig10(threshold) + "\n",
                Format::Csv => format!(
                    "# spike-detect {} threshold\ntest,K,N,alpha,threshold\n{},{sensors},{snapshots},{},{}\n",
                    env!("CARGO_PKG_VERSION"),
                    test_kind(test),
                    sig10(alpha),
                    sig10(threshold)
                ),
                Format::Json => json(&RunReport::new(Payload::Threshold { test: test_kind(test), sensors, snapshots, alpha, threshold }))?,
            })
        }
        Command::Pvalue { sensors, snapshots, statistic, format } => {
            let p = glrt_pvalue(statistic, sensors, snapshots)?;
            ok(match format {
                Format::Text => sig10(p) + "\n",
                Format::Csv => format!(
                    "# spike-detect {} pvalue\nK,N,t,p_value\n{sensors},{snapshots},{},{}\n",
                    env!("CARGO_PKG_VERSION"),
                    sig10(statistic),
                    sig10(p)
                ),
                Format::Json => json(&RunReport::new(Payload::Pvalue { sensors, snapshots, statistic, p_value: p }))?,
            })
        }
        Command::Curves { c, rho, rho_db, points, which, format } => {
            let rho = rho_value(rho, rho_db)?;
            let ctx = LdpContext::new(c, rho)?;
            let (want_t, want_u) = match which {
                Which::T => (true, false),
                Which::U => (false, true),
                Which::Both => (true, true),
            };
            let glrt = if want_t { ctx.ee_curve_t(points)? } else { Vec::new() };
            let cond = if want_u { ctx.ee_curve_u(points)? } else { Vec::new() };
            let status = if ctx.is_supercritical() {
                "ok".to_string()
            } else {
                format!("empty: rho = {} does not exceed sqrt(c) = {}, no exponentially detectable spike", sig10(rho), sig10(c.sqrt()))
            };
            let which_name = match which {
                Which::T => "T",
                Which::U => "U",
                Which::Both => "both",
            };
            ok(match format {
                Format::Json => json(&RunReport::new(Payload::Curves {
                    c,
                    rho,
                    which: which_name.into(),
                    points,
                    status,
                    glrt,
                    cond,
                }))?,
                Format::Csv | Format::Text => {
                    let mut out = format!(
                        "# spike-detect {} curves c={} rho={} points={points} which={which_name}\n# status: {status}\ncurve,a,b\n",
                        env!("CARGO_PKG_VERSION"),
                        sig10(c),
                        sig10(rho)
                    );
                    let mut rows = |name: &str, pts: &[CurvePoint]| {
                        for p in pts {
                            let _ = writeln!(out, "{name},{},{}", sig10(p.a), sig10(p.b));
                        }
                    };
                    rows("T", &glrt);
                    rows("U", &cond);
                    out
                }
            })
        }
        Command::Simulate {
            sensors,
            snapshots,
            rho_db,
            rho_linear,
            sigma2,
            trials,
            seed,
            alpha,
            mode,
            channel,
            pfa_grid,
            alternative,
            format,
        } => {
            let rho = match (rho_linear, rho_db) {
                (None, None) => 0.0,
                (l, d) => rho_value(l, d)?,
            };
            let cfg = SimConfig::new(sensors, snapshots, rho, trials, seed)?
                .with_sigma2(sigma2)?
                .with_alpha(alpha)?
                .with_channel(match channel {
                    Channel::Axis => ChannelMode::DeterministicAxis,
                    Channel::Isotropic => ChannelMode::RandomIsotropic,
                });
            let result = match mode {
                Mode::Pfa => SimResult::Pfa(empirical_pfa(&cfg)?),
                Mode::Roc => {
                    if let Some(bad) = pfa_grid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
                        return Err(CliError::Usage(format!("PFA targets must lie in (0, 1), got {bad}")));
                    }
                    SimResult::Roc(roc_curves(&cfg, &ThresholdGrid::Pfa(pfa_grid))?)
                }
                Mode::Twcheck => {
                    let h = if alternative { Hypothesis::Alternative } else { Hypothesis::Null };
                    SimResult::Twcheck(tw_fluctuation_check(&cfg, h)?)
                }
            };
            ok(match format {
                Format::Json => json(&RunReport::new(Payload::Simulate { config: cfg, result }))?,
                Format::Csv | Format::Text => simulate_csv(&cfg, &result),
            })
        }
        Command::TwTable { output } => {
            let csv = TwCdf::global().to_csv();
            match output {
                Some(path) => {
                    std::fs::write(&path, &csv).map_err(io_err(&path))?;
                    ok(String::new())
                }
                None => ok(csv),
            }
        }
    }
}

fn simulate_csv(cfg: &SimConfig, result: &SimResult) -> String {
    let mut out = format!(
        "# spike-detect {} simulate K={} N={} rho={} sigma2={} trials={} seed={} channel={}\n",
        env!("CARGO_PKG_VERSION"),
        cfg.sensors,
        cfg.snapshots,
        sig10(cfg.rho),
        sig10(cfg.sigma2),
        cfg.trials,
        cfg.seed,
        match cfg.channel_mode {
            ChannelMode::DeterministicAxis => "axis",
            ChannelMode::RandomIsotropic => "isotropic",
        }
    );
    match result {
        SimResult::Pfa(e) => {
            out.push_str("alpha,threshold,rejections,trials,pfa,ci_low,ci_high\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                e.alpha.map(sig10).unwrap_or_default(),
                sig10(e.threshold),
                e.pfa.successes,
                e.pfa.trials,
                sig10(e.pfa.estimate),
                sig10(e.pfa.ci_low),
                sig10(e.pfa.ci_high)
            );
        }
        SimResult::Roc(run) => {
            out.push_str("pfa_target,glrt_threshold,glrt_pfa,glrt_power,cond_threshold,cond_pfa,cond_power,power_gap,paired_se\n");
            for m in &run.comparison {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    sig10(m.pfa_target),
                    sig10(m.glrt.threshold),
                    sig10(m.glrt.pfa),
                    sig10(m.glrt.power),
                    sig10(m.cond.threshold),
                    sig10(m.cond.pfa),
                    sig10(m.cond.power),
                    sig10(m.difference),
                    sig10(m.paired_se)
                );
            }
        }
        SimResult::Twcheck(t) => {
            out.push_str("hypothesis,trials,kolmogorov_distance\n");
            let h = match t.hypothesis {
                Hypothesis::Null => "null",
                Hypothesis::Alternative => "alternative",
            };
            let _ = writeln!(out, "{h},{},{}", t.trials, sig10(t.distance));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let usage_hint = match &cli.command {
        Command::Threshold { .. } => Some("threshold"),
        Command::Pvalue { .. } => Some("pvalue"),
        _ => None,
    };
    let result = install_tw_cache().and_then(|()| run(cli.command));
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let (Some(cmd), CliError::Core(spike_detect::Error::Domain(_))) = (usage_hint, &e) {
                eprintln!("usage: spike-detect {cmd} --K <K> --N <N> ... (see spike-detect {cmd} --help)");
            }
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(2.035_124_920_568), "2.035124921");
        assert_eq!(sig10(0.05), "0.05000000000");
        assert_eq!(sig10(9.999_999_999_9), "10.00000000");
        assert_eq!(sig10(1.5e-7), "1.500000000e-7");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(f64::INFINITY), "inf");
    }
}
