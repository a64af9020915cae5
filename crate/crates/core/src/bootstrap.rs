//! Batched percentile bootstrap.
//!
//! Time is split into dyadic batches `2^l ≤ t < 2^(l+1)`, `l = 1..=L`; each
//! batch gets `α/L` of the error budget, so intervals use the `α/(2L)` and
//! `1 − α/(2L)` quantiles of `B` bootstrap resample means. The guarantee is
//! a union bound over batches rather than a martingale, so outputs are not
//! intersected over time.

use serde::{Deserialize, Serialize};

use crate::config::validate_alpha;
use crate::engine::{ConfidenceSequence, Step};
use crate::error::{check_unit, Error, Result};
use crate::interval::{clip_unit, Interval};
use crate::rng::SubstreamKey;
use rand::RngExt;

/// Which observations a step's interval resamples from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BootstrapWindow {
    /// `X_1..X_t`.
    #[default]
    Prefix,
    /// `X_{2^l}..X_t` for the batch `l` containing `t`.
    Batch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    /// Resamples per interval (B).
    pub replicates: usize,
    /// Number of dyadic batches (L).
    pub batches: usize,
    pub alpha: f64,
    pub seed: u64,
    #[serde(default)]
    pub window: BootstrapWindow,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            replicates: 200,
            batches: 10,
            alpha: 0.05,
            seed: 0,
            window: BootstrapWindow::Prefix,
        }
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        validate_alpha(self.alpha)?;
        if self.replicates < 2 {
            return Err(Error::InvalidConfig(format!(
                "bootstrap replicates B = {} must be at least 2",
                self.replicates
            )));
        }
        if self.batches < 1 {
            return Err(Error::InvalidConfig("batch count L must be at least 1".into()));
        }
        Ok(())
    }

    /// `(α/(2L), 1 − α/(2L))`, the same for every batch.
    pub fn quantile_levels(&self) -> (f64, f64) {
        let q = self.alpha / (2.0 * self.batches as f64);
        (q, 1.0 - q)
    }
}

/// `clamp(floor(log2 t), 1, L)`.
pub fn batch_index(t: u64, batches: usize) -> usize {
    assert!(t >= 1, "time index is 1-based");
    let l = t.ilog2() as usize;
    l.clamp(1, batches.max(1))
}

/// Linear-interpolation empirical quantile of an ascending slice:
/// `h = q (n − 1)`, `v[⌊h⌋] + (h − ⌊h⌋)(v[⌊h⌋+1] − v[⌊h⌋])`.
pub fn quantile(sorted: &[f64], q: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Empty("quantile input"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutOfDomain {
            what: "quantile level",
            value: q,
            domain: "[0, 1]",
        });
    }
    let h = q * (sorted.len() - 1) as f64;
    let i = h.floor() as usize;
    let frac = h - i as f64;
    if frac == 0.0 || i + 1 >= sorted.len() {
        return Ok(sorted[i]);
    }
    Ok(sorted[i] + frac * (sorted[i + 1] - sorted[i]))
}

/// Percentile bootstrap interval for the mean of `data`.
///
/// Replicate `b` draws its resample from substream
/// `(cfg.seed, stream, t, b)`, so the result depends only on the data, the
/// config and the key.
pub fn bootstrap_ci(data: &[f64], cfg: &BootstrapConfig, stream: u64, t: u64) -> Result<Interval> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::Empty("bootstrap data"));
    }
    let n = data.len();
    let (min, max) = data
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let mut means: Vec<f64> = (0..cfg.replicates as u64)
        .map(|b| {
            let mut rng = SubstreamKey::new(cfg.seed, stream, t, b).rng();
            let sum: f64 = (0..n).map(|_| data[rng.random_range(0..n)]).sum();
            // rounding in the sum can push a mean of near-constant data past its range
            (sum / n as f64).clamp(min, max)
        })
        .collect();
    means.sort_by(f64::total_cmp);
    let (q_lo, q_hi) = cfg.quantile_levels();
    let lo = quantile(&means, q_lo)?;
    let hi = quantile(&means, q_hi)?;
    Ok(clip_unit(Interval::Closed { lo, hi }))
}

/// Streaming wrapper: buffers observations and evaluates [`bootstrap_ci`]
/// on the configured window at the current time.
#[derive(Debug, Clone)]
pub struct BootstrapCs {
    cfg: BootstrapConfig,
    stream: u64,
    data: Vec<f64>,
    last: Interval,
}

impl BootstrapCs {
    pub fn new(cfg: BootstrapConfig, stream: u64) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg,
            stream,
            data: Vec::new(),
            last: Interval::UNIT,
        })
    }

    pub fn config(&self) -> &BootstrapConfig {
        &self.cfg
    }

    pub fn current_batch(&self) -> Option<usize> {
        (!self.data.is_empty()).then(|| batch_index(self.data.len() as u64, self.cfg.batches))
    }

    /// Appends an observation without evaluating an interval. Pair with
    /// [`BootstrapCs::evaluate`] to compute intervals only at chosen times;
    /// the values are identical to evaluating at every step.
    pub fn push(&mut self, x: f64) -> Result<()> {
        check_unit("observation", x)?;
        self.data.push(x);
        Ok(())
    }

    pub fn window(&self) -> &[f64] {
        let t = self.data.len() as u64;
        match self.cfg.window {
            BootstrapWindow::Prefix => &self.data,
            BootstrapWindow::Batch if t >= 2 => {
                let start = 1usize << batch_index(t, self.cfg.batches);
                &self.data[start - 1..]
            }
            BootstrapWindow::Batch => &self.data,
        }
    }

    /// Interval at the current time (`[0, 1]` before any data).
    pub fn evaluate(&mut self) -> Result<Interval> {
        if self.data.is_empty() {
            return Ok(Interval::UNIT);
        }
        let t = self.data.len() as u64;
        self.last = bootstrap_ci(self.window(), &self.cfg, self.stream, t)?;
        Ok(self.last)
    }
}

impl ConfidenceSequence for BootstrapCs {
    fn observe(&mut self, x: f64) -> Result<Step> {
        self.push(x)?;
        let interval = self.evaluate()?;
        Ok(Step {
            t: self.data.len() as u64,
            interval,
            emptied: None,
        })
    }

    /// Interval from the most recent [`BootstrapCs::evaluate`].
    fn current(&self) -> Interval {
        self.last
    }

    fn count(&self) -> u64 {
        self.data.len() as u64
    }
}
