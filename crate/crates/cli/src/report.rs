//! Machine-readable run records (schema `v1`).

use serde::{Deserialize, Serialize};
use spike_detect::detectors::{Decision, TestKind};
use spike_detect::ldp::CurvePoint;
use spike_detect::simulate::{FluctuationCheck, PfaEstimate, RocRun, SimConfig};

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

impl RunReport {
    pub fn new(payload: Payload) -> Self {
        Self { schema: SCHEMA.to_string(), version: env!("CARGO_PKG_VERSION").to_string(), payload }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Payload {
    Detect {
        input: String,
        decision: Decision,
    },
    Threshold {
        test: TestKind,
        sensors: usize,
        snapshots: usize,
        alpha: f64,
        threshold: f64,
    },
    Pvalue {
        sensors: usize,
        snapshots: usize,
        statistic: f64,
        p_value: f64,
    },
    Curves {
        c: f64,
        rho: f64,
        which: String,
        points: usize,
        status: String,
        glrt: Vec<CurvePoint>,
        cond: Vec<CurvePoint>,
    },
    Simulate {
        config: SimConfig,
        result: SimResult,
    },
    TwTable {
        path: Option<String>,
        rows: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SimResult {
    Pfa(PfaEstimate),
    Roc(RocRun),
    Twcheck(FluctuationCheck),
}
