//! Experiment orchestration: generators, the synthetic Beta study, the
//! baseball study, and width/coverage summaries.

mod baseball;
mod generators;
mod metrics;
mod synthetic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::betting::{BettingConfig, BettingCs};
use crate::bootstrap::{BootstrapConfig, BootstrapCs};
use crate::engine::ConfidenceSequence;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::preb::PrEbCs;

pub use baseball::{run_baseball, BaseballConfig, CoverageSummary, PlayerRecord};
pub use generators::{
    gen_bernoulli_stream, gen_beta_stream, sample_beta, sample_gamma, Generator, SimulationTruth,
};
pub use metrics::{ever_excludes, width_curve, WidthCurve, WidthPoint};
pub use synthetic::{
    run_synthetic, run_synthetic_study, Checkpoints, RecordSchedule, SyntheticConfig, SyntheticRun,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Betting,
    Preb,
    Bootstrap,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Betting, Method::Preb, Method::Bootstrap];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Betting => "betting",
            Method::Preb => "preb",
            Method::Bootstrap => "bootstrap",
        }
    }

    /// Display name used in plot legends.
    pub fn label(&self) -> &'static str {
        match self {
            Method::Betting => "Betting",
            Method::Preb => "Pr-EB",
            Method::Bootstrap => "Bootstrap",
        }
    }

    /// Builds an engine; `alpha` overrides whatever the per-method configs carry.
    pub fn engine(
        &self,
        alpha: f64,
        betting: &BettingConfig,
        bootstrap: &BootstrapConfig,
        stream: u64,
    ) -> Result<Box<dyn ConfidenceSequence + Send>> {
        Ok(match self {
            Method::Betting => Box::new(BettingCs::new(BettingConfig { alpha, ..*betting })?),
            Method::Preb => Box::new(PrEbCs::new(alpha)?),
            Method::Bootstrap => Box::new(BootstrapCs::new(
                BootstrapConfig { alpha, ..*bootstrap },
                stream,
            )?),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "betting" => Ok(Method::Betting),
            "preb" => Ok(Method::Preb),
            "bootstrap" => Ok(Method::Bootstrap),
            other => Err(Error::InvalidConfig(format!(
                "unknown method {other:?} (expected betting, preb or bootstrap)"
            ))),
        }
    }
}

/// One reported interval: a row of the synthetic results table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRecord {
    pub method: Method,
    pub replication: u32,
    pub seed: u64,
    pub t: u64,
    pub interval: Interval,
}

impl ExperimentRecord {
    pub fn lo(&self) -> Option<f64> {
        self.interval.lo()
    }

    pub fn hi(&self) -> Option<f64> {
        self.interval.hi()
    }

    pub fn width(&self) -> f64 {
        self.interval.width()
    }
}
