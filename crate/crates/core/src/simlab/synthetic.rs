use rayon::prelude::*;

use super::generators::Generator;
use super::{ExperimentRecord, Method};
use crate::betting::{BettingConfig, BettingCs};
use crate::bootstrap::{BootstrapConfig, BootstrapCs};
use crate::config::CsConfig;
use crate::engine::ConfidenceSequence;
use crate::error::{Error, Result};
use crate::interval::EmptiedEvent;
use crate::preb::PrEbCs;

/// Which time steps produce records.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Checkpoints {
    #[default]
    Every,
    /// Multiples of the stride, plus the final step.
    Stride(u64),
    /// Exactly these times (those beyond the horizon are ignored).
    At(Vec<u64>),
}

impl Checkpoints {
    fn includes(&self, t: u64, horizon: u64) -> bool {
        match self {
            Checkpoints::Every => true,
            Checkpoints::Stride(k) => t.is_multiple_of((*k).max(1)) || t == horizon,
            Checkpoints::At(ts) => ts.contains(&t),
        }
    }
}

/// Recording schedule for the martingale engines and for the bootstrap.
/// Bootstrap intervals cost `O(B t)` each, so they have their own schedule;
/// skipping times never changes the values at the times that are kept.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecordSchedule {
    pub martingale: Checkpoints,
    pub bootstrap: Checkpoints,
}

impl RecordSchedule {
    pub fn at(ts: &[u64]) -> Self {
        Self {
            martingale: Checkpoints::At(ts.to_vec()),
            bootstrap: Checkpoints::At(ts.to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    /// `horizon` is the stream length.
    pub cs: CsConfig,
    pub generator: Generator,
    pub betting: BettingConfig,
    pub bootstrap: BootstrapConfig,
    /// Master seed; replication `r` reads data substream `(seed, r)`.
    pub seed: u64,
    /// Number of replications.
    pub seeds: u32,
    pub methods: Vec<Method>,
    pub schedule: RecordSchedule,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            cs: CsConfig::default(),
            generator: Generator::Beta { a: 10.0, b: 30.0 },
            betting: BettingConfig::default(),
            bootstrap: BootstrapConfig::default(),
            seed: 0,
            seeds: 20,
            methods: Method::ALL.to_vec(),
            schedule: RecordSchedule::default(),
        }
    }
}

impl SyntheticConfig {
    pub fn validate(&self) -> Result<()> {
        self.cs.validate()?;
        self.generator.validate()?;
        BettingConfig { alpha: self.cs.alpha, ..self.betting }.validate()?;
        BootstrapConfig { alpha: self.cs.alpha, ..self.bootstrap }.validate()?;
        if self.seeds == 0 {
            return Err(Error::InvalidConfig("at least one seed is required".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods selected".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SyntheticRun {
    /// Sorted by `(replication, method, t)`.
    pub records: Vec<ExperimentRecord>,
    pub emptied: Vec<(Method, u32, EmptiedEvent)>,
}

/// One replication: a single stream fed to every selected engine.
pub fn run_synthetic(cfg: &SyntheticConfig, replication: u32) -> Result<SyntheticRun> {
    cfg.validate()?;
    let alpha = cfg.cs.alpha;
    let horizon = cfg.cs.horizon as u64;
    let stream = cfg
        .generator
        .stream(cfg.cs.horizon, cfg.seed, u64::from(replication))?;
    let record = |method, step_t, interval| ExperimentRecord {
        method,
        replication,
        seed: cfg.seed,
        t: step_t,
        interval,
    };

    let mut run = SyntheticRun::default();
    for &method in &cfg.methods {
        match method {
            Method::Betting | Method::Preb => {
                let mut engine: Box<dyn ConfidenceSequence> = match method {
                    Method::Betting => {
                        Box::new(BettingCs::new(BettingConfig { alpha, ..cfg.betting })?)
                    }
                    _ => Box::new(PrEbCs::new(alpha)?),
                };
                for rec in &stream {
                    let step = engine.observe(rec.x)?;
                    if let Some(ev) = step.emptied {
                        run.emptied.push((method, replication, ev));
                    }
                    if cfg.schedule.martingale.includes(step.t, horizon) {
                        run.records.push(record(method, step.t, step.interval));
                    }
                }
            }
            Method::Bootstrap => {
                let bcfg = BootstrapConfig {
                    alpha,
                    seed: cfg.seed,
                    ..cfg.bootstrap
                };
                let mut engine = BootstrapCs::new(bcfg, u64::from(replication))?;
                for rec in &stream {
                    engine.push(rec.x)?;
                    if cfg.schedule.bootstrap.includes(rec.t, horizon) {
                        run.records.push(record(method, rec.t, engine.evaluate()?));
                    }
                }
            }
        }
    }
    Ok(run)
}

/// All replications, run in parallel and merged in `(replication, method, t)` order.
pub fn run_synthetic_study(cfg: &SyntheticConfig) -> Result<SyntheticRun> {
    cfg.validate()?;
    let runs: Vec<SyntheticRun> = (0..cfg.seeds)
        .into_par_iter()
        .map(|r| run_synthetic(cfg, r))
        .collect::<Result<_>>()?;
    let mut out = SyntheticRun::default();
    for run in runs {
        out.records.extend(run.records);
        out.emptied.extend(run.emptied);
    }
    out.records
        .sort_by_key(|r| (r.replication, r.method, r.t));
    Ok(out)
}
