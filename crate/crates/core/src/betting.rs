//! Hedged capital process confidence sequence.
//!
//! For every candidate mean `m = j/G` two gamblers bet on `X_t` being above
//! or below `m`:
//!
//! ```text
//! K_t^+(m) = Π_{i≤t} (1 + λ_i^+(m) (X_i − m)),   λ^+ = min(λ̃_i, c/m)
//! K_t^−(m) = Π_{i≤t} (1 − λ_i^−(m) (X_i − m)),   λ^− = min(λ̃_i, c/(1−m))
//! ```
//!
//! and the hedged wealth is `max(θ K^+, (1−θ) K^−)`. Candidates whose hedged
//! wealth reaches `1/α` are rejected; Ville's inequality bounds the chance
//! that the true mean is ever rejected by `α`.
//!
//! Capitals are kept as logs so long streams cannot overflow.

use serde::{Deserialize, Serialize};

use crate::config::validate_alpha;
use crate::engine::{ConfidenceSequence, Step};
use crate::error::{check_unit, Error, Result};
use crate::interval::{clip_unit, Interval, RunningIntersection};
use crate::stats::{predictable_fraction, PredictableStats};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BettingConfig {
    /// Candidate means are `j / grid_size` for `j = 0..=grid_size`.
    pub grid_size: usize,
    /// Weight on the upward capital.
    pub theta: f64,
    /// Truncation level `c`; every capital multiplier is at least `1 − c`.
    pub trunc: f64,
    pub alpha: f64,
}

impl Default for BettingConfig {
    fn default() -> Self {
        Self {
            grid_size: 1000,
            theta: 0.5,
            trunc: 0.5,
            alpha: 0.05,
        }
    }
}

impl BettingConfig {
    pub fn validate(&self) -> Result<()> {
        validate_alpha(self.alpha)?;
        if self.grid_size < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid size {} must be at least 2",
                self.grid_size
            )));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidConfig(format!(
                "hedge weight theta = {} must lie in [0, 1]",
                self.theta
            )));
        }
        if !(self.trunc > 0.0 && self.trunc < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "truncation c = {} must lie in (0, 1)",
                self.trunc
            )));
        }
        Ok(())
    }

    /// `log(1/α)`, the rejection threshold on log-wealth.
    pub fn log_threshold(&self) -> f64 {
        -self.alpha.ln()
    }
}

/// Truncated upward and downward fractions `(λ^+, λ^−)` at candidate `m`.
#[inline]
pub fn truncated_fractions(lambda_tilde: f64, m: f64, trunc: f64) -> (f64, f64) {
    let up = if m > 0.0 { lambda_tilde.min(trunc / m) } else { lambda_tilde };
    let down = if m < 1.0 {
        lambda_tilde.min(trunc / (1.0 - m))
    } else {
        lambda_tilde
    };
    (up, down)
}

/// One step of both capitals at candidate `m`, as log-multipliers.
#[inline]
pub fn log_multipliers(lambda_tilde: f64, m: f64, x: f64, trunc: f64) -> (f64, f64) {
    let (up, down) = truncated_fractions(lambda_tilde, m, trunc);
    let d = x - m;
    ((up * d).ln_1p(), (-down * d).ln_1p())
}

#[inline]
fn hedge(log_plus: f64, log_minus: f64, theta: f64) -> f64 {
    (theta.ln() + log_plus).max((1.0 - theta).ln() + log_minus)
}

/// Capital processes over the whole candidate grid.
#[derive(Debug, Clone)]
pub struct BettingCs {
    cfg: BettingConfig,
    log_cap_plus: Vec<f64>,
    log_cap_minus: Vec<f64>,
    stats: PredictableStats,
    ri: RunningIntersection,
}

impl BettingCs {
    pub fn new(cfg: BettingConfig) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.grid_size + 1;
        Ok(Self {
            cfg,
            log_cap_plus: vec![0.0; n],
            log_cap_minus: vec![0.0; n],
            stats: PredictableStats::new(),
            ri: RunningIntersection::new(),
        })
    }

    pub fn config(&self) -> &BettingConfig {
        &self.cfg
    }

    pub fn stats(&self) -> &PredictableStats {
        &self.stats
    }

    pub fn grid_len(&self) -> usize {
        self.log_cap_plus.len()
    }

    pub fn grid_point(&self, j: usize) -> f64 {
        j as f64 / self.cfg.grid_size as f64
    }

    pub fn log_cap_plus(&self, j: usize) -> f64 {
        self.log_cap_plus[j]
    }

    pub fn log_cap_minus(&self, j: usize) -> f64 {
        self.log_cap_minus[j]
    }

    /// `log M_t(m_j) = max(log θ + log K^+, log(1−θ) + log K^−)`.
    pub fn hedged_log_wealth(&self, j: usize) -> f64 {
        hedge(self.log_cap_plus[j], self.log_cap_minus[j], self.cfg.theta)
    }

    pub fn hedged_wealth(&self, j: usize) -> f64 {
        self.hedged_log_wealth(j).exp()
    }

    /// Advances every capital by `x`, using the fraction computed from the
    /// observations before `x`. Does not touch the running intersection.
    pub fn update_capital(&mut self, x: f64) -> Result<()> {
        check_unit("observation", x)?;
        let lambda_tilde = predictable_fraction(&self.stats, self.cfg.alpha);
        let g = self.cfg.grid_size as f64;
        let c = self.cfg.trunc;
        for (j, (plus, minus)) in self
            .log_cap_plus
            .iter_mut()
            .zip(self.log_cap_minus.iter_mut())
            .enumerate()
        {
            let (dp, dm) = log_multipliers(lambda_tilde, j as f64 / g, x, c);
            *plus += dp;
            *minus += dm;
        }
        self.stats.update(x);
        Ok(())
    }

    /// Convex hull of the grid points whose hedged wealth is still below `1/α`
    /// at the current time, before intersecting with earlier steps.
    pub fn step_set(&self) -> Interval {
        let threshold = self.cfg.log_threshold();
        let alive = |j: &usize| self.hedged_log_wealth(*j) < threshold;
        let n = self.grid_len();
        let Some(first) = (0..n).find(alive) else {
            return Interval::Empty;
        };
        let last = (0..n).rev().find(alive).unwrap_or(first);
        clip_unit(Interval::Closed {
            lo: self.grid_point(first),
            hi: self.grid_point(last),
        })
    }
}

impl ConfidenceSequence for BettingCs {
    fn observe(&mut self, x: f64) -> Result<Step> {
        self.update_capital(x)?;
        let emptied = self.ri.push(self.step_set());
        Ok(Step {
            t: self.stats.count(),
            interval: self.ri.current(),
            emptied,
        })
    }

    fn current(&self) -> Interval {
        self.ri.current()
    }

    fn count(&self) -> u64 {
        self.stats.count()
    }
}

/// Hedged capital at a single fixed candidate mean; used to audit the
/// wealth process at the true mean without paying for the whole grid.
#[derive(Debug, Clone)]
pub struct CandidateCapital {
    m: f64,
    cfg: BettingConfig,
    log_plus: f64,
    log_minus: f64,
    stats: PredictableStats,
    max_log_wealth: f64,
}

impl CandidateCapital {
    pub fn new(m: f64, cfg: BettingConfig) -> Result<Self> {
        cfg.validate()?;
        check_unit("candidate mean", m)?;
        let log_wealth = hedge(0.0, 0.0, cfg.theta);
        Ok(Self {
            m,
            cfg,
            log_plus: 0.0,
            log_minus: 0.0,
            stats: PredictableStats::new(),
            max_log_wealth: log_wealth,
        })
    }

    pub fn observe(&mut self, x: f64) -> Result<f64> {
        check_unit("observation", x)?;
        let lambda_tilde = predictable_fraction(&self.stats, self.cfg.alpha);
        let (dp, dm) = log_multipliers(lambda_tilde, self.m, x, self.cfg.trunc);
        self.log_plus += dp;
        self.log_minus += dm;
        self.stats.update(x);
        let w = self.hedged_log_wealth();
        self.max_log_wealth = self.max_log_wealth.max(w);
        Ok(w)
    }

    pub fn hedged_log_wealth(&self) -> f64 {
        hedge(self.log_plus, self.log_minus, self.cfg.theta)
    }

    /// `sup_{s ≤ t} log M_s(m)`, including the initial wealth.
    pub fn max_log_wealth(&self) -> f64 {
        self.max_log_wealth
    }
}
