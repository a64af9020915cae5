//! Regularized running mean and variance, and the predictable betting
//! fraction built from them. Shared by the betting and Pr-EB engines.
//!
//! After `t` observations:
//!
//! ```text
//! mu_hat_t  = (1/2 + Σ_{i≤t} X_i) / (t + 1)
//! var_hat_t = (1/4 + Σ_{i≤t} (X_i − mu_hat_i)²) / (t + 1)
//! ```
//!
//! with `mu_hat_0 = 1/2` and `var_hat_0 = 1/4`.

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PredictableStats {
    t: u64,
    sum_x: f64,
    sum_sq_dev: f64,
}

impl PredictableStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of observations folded in so far.
    pub fn count(&self) -> u64 {
        self.t
    }

    pub fn sum_x(&self) -> f64 {
        self.sum_x
    }

    pub fn sum_sq_dev(&self) -> f64 {
        self.sum_sq_dev
    }

    pub fn mu_hat(&self) -> f64 {
        (0.5 + self.sum_x) / (self.t as f64 + 1.0)
    }

    pub fn var_hat(&self) -> f64 {
        (0.25 + self.sum_sq_dev) / (self.t as f64 + 1.0)
    }

    pub fn update(&mut self, x: f64) {
        self.t += 1;
        self.sum_x += x;
        let dev = x - self.mu_hat();
        self.sum_sq_dev += dev * dev;
    }
}

/// `λ̃_t = sqrt(2 log(2/α) / (var_hat_{t−1} · t · log(1 + t)))` for the next
/// time step `t = stats.count() + 1`.
///
/// `stats` must not yet contain `X_t`.
pub fn predictable_fraction(stats: &PredictableStats, alpha: f64) -> f64 {
    fraction_at(stats.count() + 1, stats.var_hat(), alpha)
}

pub(crate) fn fraction_at(t: u64, prev_var: f64, alpha: f64) -> f64 {
    let t = t as f64;
    (2.0 * (2.0 / alpha).ln() / (prev_var * t * t.ln_1p())).sqrt()
}
