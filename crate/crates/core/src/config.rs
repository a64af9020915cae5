use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Miscoverage budget and horizon shared by every engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsConfig {
    pub alpha: f64,
    pub horizon: usize,
}

impl Default for CsConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            horizon: 10_000,
        }
    }
}

impl CsConfig {
    pub fn new(alpha: f64, horizon: usize) -> Result<Self> {
        let cfg = Self { alpha, horizon };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        validate_alpha(self.alpha)?;
        if self.horizon == 0 {
            return Err(Error::InvalidConfig("horizon must be at least 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("alpha = {alpha} must lie in (0, 1)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_alpha_and_horizon() {
        assert!(CsConfig::new(0.05, 1).is_ok());
        for alpha in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(CsConfig::new(alpha, 10).is_err(), "alpha = {alpha}");
        }
        assert!(CsConfig::new(0.05, 0).is_err());
    }
}
