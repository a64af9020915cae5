//! Predictable plug-in empirical Bernstein confidence sequence.
//!
//! ```text
//! C_t = Σλ_i X_i / Σλ_i  ±  (log(2/α) + Σ v_i ψ_E(λ_i)) / Σλ_i
//! λ_t = min(λ̃_t, 1/2),   v_i = 4 (X_i − mu_hat_{i−1})²,   ψ_E(λ) = (−log(1−λ) − λ) / 4
//! ```
//!
//! The per-step set is clipped to `[0, 1]` and intersected with every earlier one.

use crate::config::validate_alpha;
use crate::engine::{ConfidenceSequence, Step};
use crate::error::{check_unit, Error, Result};
use crate::interval::{clip_unit, Interval, RunningIntersection};
use crate::stats::{predictable_fraction, PredictableStats};

/// Cap on the plug-in fraction, keeping λ inside the domain of ψ_E.
pub const PREB_TRUNCATION: f64 = 0.5;

/// Exponential-Bernstein rate `ψ_E(λ) = (−log(1−λ) − λ) / 4` for `λ ∈ [0, 1)`.
pub fn psi_e(lambda: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::OutOfDomain {
            what: "lambda",
            value: lambda,
            domain: "[0, 1)",
        });
    }
    Ok((-(-lambda).ln_1p() - lambda) / 4.0)
}

#[derive(Debug, Clone)]
pub struct PrEbCs {
    alpha: f64,
    stats: PredictableStats,
    sum_lambda: f64,
    sum_lambda_x: f64,
    sum_v_psi: f64,
    ri: RunningIntersection,
}

impl PrEbCs {
    pub fn new(alpha: f64) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(Self {
            alpha,
            stats: PredictableStats::new(),
            sum_lambda: 0.0,
            sum_lambda_x: 0.0,
            sum_v_psi: 0.0,
            ri: RunningIntersection::new(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn stats(&self) -> &PredictableStats {
        &self.stats
    }

    pub fn sum_lambda(&self) -> f64 {
        self.sum_lambda
    }

    pub fn sum_lambda_x(&self) -> f64 {
        self.sum_lambda_x
    }

    pub fn sum_v_psi(&self) -> f64 {
        self.sum_v_psi
    }

    /// Fraction that will be applied to the next observation.
    pub fn next_lambda(&self) -> f64 {
        predictable_fraction(&self.stats, self.alpha).min(PREB_TRUNCATION)
    }

    /// Folds `x` into the accumulators. Does not touch the running intersection.
    pub fn update(&mut self, x: f64) -> Result<()> {
        check_unit("observation", x)?;
        let lambda = self.next_lambda();
        let dev = x - self.stats.mu_hat();
        let v = 4.0 * dev * dev;
        self.sum_lambda += lambda;
        self.sum_lambda_x += lambda * x;
        self.sum_v_psi += v * psi_e(lambda)?;
        self.stats.update(x);
        Ok(())
    }

    pub fn center(&self) -> Option<f64> {
        (self.stats.count() > 0).then(|| self.sum_lambda_x / self.sum_lambda)
    }

    pub fn radius(&self) -> Option<f64> {
        (self.stats.count() > 0)
            .then(|| ((2.0 / self.alpha).ln() + self.sum_v_psi) / self.sum_lambda)
    }

    /// `center ± radius` before clipping; `[0, 1]` at t = 0.
    pub fn raw_step_set(&self) -> Interval {
        match (self.center(), self.radius()) {
            (Some(c), Some(r)) => Interval::Closed {
                lo: c - r,
                hi: c + r,
            },
            _ => Interval::UNIT,
        }
    }
}

impl ConfidenceSequence for PrEbCs {
    fn observe(&mut self, x: f64) -> Result<Step> {
        self.update(x)?;
        let emptied = self.ri.push(clip_unit(self.raw_step_set()));
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

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn psi_e_values() {
        assert_eq!(psi_e(0.0).unwrap(), 0.0);
        // mpmath, 30 digits: (log 2 − 1/2)/4 = 0.0482867951399863273543...
        assert_relative_eq!(psi_e(0.5).unwrap(), 0.048_286_795_139_986_33, max_relative = 1e-14);
        let l = 1e-4;
        assert_relative_eq!(psi_e(l).unwrap() / (l * l), 0.125, max_relative = 1e-3);
    }

    #[test]
    fn psi_e_domain() {
        assert!(psi_e(1.0).is_err());
        assert!(psi_e(1.5).is_err());
        assert!(psi_e(-0.1).is_err());
        assert!(psi_e(f64::NAN).is_err());
    }

    #[test]
    fn psi_e_is_increasing_and_convex() {
        let xs: Vec<f64> = (0..100).map(|k| k as f64 / 100.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&l| psi_e(l).unwrap()).collect();
        for w in ys.windows(3) {
            assert!(w[1] >= w[0]);
            assert!(w[2] - w[1] >= w[1] - w[0] - 1e-15);
        }
    }

    // λ̃_1 ≈ 6.525 is truncated to 1/2; v_1 = 4(1 − 1/2)² = 1.
    // radius = (log 40 + ψ_E(1/2)) / (1/2) = 7.474332498507845... (mpmath).
    #[test]
    fn first_step_worked_example() {
        let mut cs = PrEbCs::new(0.05).unwrap();
        assert_eq!(cs.current(), Interval::UNIT);
        assert_eq!(cs.next_lambda(), 0.5);
        let step = cs.observe(1.0).unwrap();
        assert_eq!(cs.sum_lambda(), 0.5);
        assert_relative_eq!(cs.sum_v_psi(), psi_e(0.5).unwrap(), max_relative = 1e-15);
        assert_eq!(cs.center(), Some(1.0));
        assert_relative_eq!(cs.radius().unwrap(), 7.474_332_498_507_845, max_relative = 1e-13);
        assert_eq!(step.interval, Interval::UNIT);
    }

    #[test]
    fn zero_deviation_leaves_variance_term_alone() {
        let mut cs = PrEbCs::new(0.05).unwrap();
        cs.observe(0.5).unwrap();
        assert_eq!(cs.sum_v_psi(), 0.0);
        let before = cs.sum_v_psi();
        let mu = cs.stats().mu_hat();
        cs.observe(mu).unwrap();
        assert_eq!(cs.sum_v_psi(), before);
    }

    #[test]
    fn constant_stream_is_centered() {
        let mut cs = PrEbCs::new(0.05).unwrap();
        for _ in 0..200 {
            cs.observe(0.5).unwrap();
            assert_relative_eq!(cs.center().unwrap(), 0.5, max_relative = 1e-14);
        }
    }

    #[test]
    fn raw_set_is_symmetric_about_center() {
        let mut cs = PrEbCs::new(0.05).unwrap();
        for x in [0.2, 0.4, 0.1, 0.3, 0.35, 0.25, 0.3] {
            cs.observe(x).unwrap();
            let (lo, hi) = cs.raw_step_set().bounds().unwrap();
            let c = cs.center().unwrap();
            assert_relative_eq!(c - lo, hi - c, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_out_of_range_observations() {
        let mut cs = PrEbCs::new(0.05).unwrap();
        assert!(cs.observe(1.0001).is_err());
        assert_eq!(cs.count(), 0);
        assert!(PrEbCs::new(1.0).is_err());
    }
}
