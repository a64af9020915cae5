//! Per-player interval study on the 1970 batting data: each replication
//! simulates the first 45 at-bats as Bernoulli(p̂₄₅) draws and scores
//! whether the interval at the last at-bat covers the season-long level.

use rayon::prelude::*;

use super::generators::Generator;
use super::Method;
use crate::betting::{BettingConfig, BettingCs};
use crate::bootstrap::{BootstrapConfig, BootstrapCs};
use crate::engine::ConfidenceSequence;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rng::stream_id;

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerRecord {
    pub player_id: u32,
    pub name: String,
    pub hits_45: u32,
    pub at_bats: u32,
    /// Batting level over the remainder of the season.
    pub p_true: f64,
}

impl PlayerRecord {
    pub fn p_hat(&self) -> f64 {
        f64::from(self.hits_45) / f64::from(self.at_bats)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.at_bats == 0 {
            return Err("at_bats must be positive".into());
        }
        if self.hits_45 > self.at_bats {
            return Err(format!(
                "hits_45 = {} exceeds at_bats = {}",
                self.hits_45, self.at_bats
            ));
        }
        if !(0.0..=1.0).contains(&self.p_true) {
            return Err(format!("p_true = {} is outside [0, 1]", self.p_true));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseballConfig {
    pub alpha: f64,
    pub replications: u32,
    pub seed: u64,
    pub betting: BettingConfig,
    pub bootstrap: BootstrapConfig,
}

impl Default for BaseballConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            replications: 100,
            seed: 0,
            betting: BettingConfig::default(),
            bootstrap: BootstrapConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSummary {
    pub player_id: u32,
    pub method: Method,
    /// Fraction of replications whose final interval contains `p_true`.
    pub coverage_prob: f64,
    /// Endpoints averaged over the replications with a non-empty interval.
    pub mean_lo: f64,
    pub mean_hi: f64,
    pub replications: u32,
}

/// Coverage of `p_true` by the betting and bootstrap intervals after each
/// player's at-bats, over `cfg.replications` simulated seasons. Output is
/// ordered by method, then by player.
pub fn run_baseball(players: &[PlayerRecord], cfg: &BaseballConfig) -> Result<Vec<CoverageSummary>> {
    if players.is_empty() {
        return Err(Error::Empty("baseball dataset"));
    }
    if cfg.replications == 0 {
        return Err(Error::InvalidConfig("at least one replication is required".into()));
    }
    for (i, p) in players.iter().enumerate() {
        p.validate().map_err(|message| Error::Schema {
            path: "dataset".into(),
            row: i + 1,
            message,
        })?;
    }
    let betting = BettingConfig { alpha: cfg.alpha, ..cfg.betting };
    let bootstrap = BootstrapConfig {
        alpha: cfg.alpha,
        seed: cfg.seed,
        ..cfg.bootstrap
    };
    betting.validate()?;
    bootstrap.validate()?;

    let jobs: Vec<(usize, u32)> = (0..players.len())
        .flat_map(|i| (0..cfg.replications).map(move |r| (i, r)))
        .collect();
    let finals: Vec<(Interval, Interval)> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let player = &players[i];
            let stream = stream_id(player.player_id, r);
            let at_bats = Generator::Bernoulli { p: player.p_hat() }.stream(
                player.at_bats as usize,
                cfg.seed,
                stream,
            )?;
            let mut bet = BettingCs::new(betting)?;
            let mut boot = BootstrapCs::new(bootstrap, stream)?;
            for ab in &at_bats {
                bet.observe(ab.x)?;
                boot.push(ab.x)?;
            }
            Ok((bet.current(), boot.evaluate()?))
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(players.len() * 2);
    for method in [Method::Betting, Method::Bootstrap] {
        for (i, player) in players.iter().enumerate() {
            let reps = &finals[i * cfg.replications as usize..(i + 1) * cfg.replications as usize];
            let intervals = reps.iter().map(|(bet, boot)| match method {
                Method::Betting => *bet,
                _ => *boot,
            });
            out.push(summarize(player, method, intervals, cfg.replications));
        }
    }
    Ok(out)
}

fn summarize(
    player: &PlayerRecord,
    method: Method,
    intervals: impl Iterator<Item = Interval>,
    replications: u32,
) -> CoverageSummary {
    let (mut covered, mut nonempty, mut sum_lo, mut sum_hi) = (0u32, 0u32, 0.0, 0.0);
    for iv in intervals {
        if iv.contains(player.p_true) {
            covered += 1;
        }
        if let Some((lo, hi)) = iv.bounds() {
            nonempty += 1;
            sum_lo += lo;
            sum_hi += hi;
        }
    }
    let mean = |s: f64| if nonempty > 0 { s / f64::from(nonempty) } else { f64::NAN };
    CoverageSummary {
        player_id: player.player_id,
        method,
        coverage_prob: f64::from(covered) / f64::from(replications),
        mean_lo: mean(sum_lo),
        mean_hi: mean(sum_hi),
        replications,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn player(id: u32, hits: u32, p_true: f64) -> PlayerRecord {
        PlayerRecord {
            player_id: id,
            name: format!("player {id}"),
            hits_45: hits,
            at_bats: 45,
            p_true,
        }
    }

    #[test]
    fn summary_shape_and_ranges() {
        let players = vec![player(1, 18, 0.346), player(2, 8, 0.316), player(3, 0, 0.0)];
        let cfg = BaseballConfig { replications: 10, seed: 5, ..Default::default() };
        let out = run_baseball(&players, &cfg).unwrap();
        assert_eq!(out.len(), 6);
        assert!(out[..3].iter().all(|s| s.method == Method::Betting));
        assert!(out[3..].iter().all(|s| s.method == Method::Bootstrap));
        for s in &out {
            assert!((0.0..=1.0).contains(&s.coverage_prob));
            assert!(s.mean_lo <= s.mean_hi);
            assert_eq!(s.replications, 10);
        }
        // a player who never hits: every bootstrap resample mean is 0
        let zero = &out[5];
        assert_eq!((zero.mean_lo, zero.mean_hi), (0.0, 0.0));
        assert_eq!(zero.coverage_prob, 1.0);
    }

    #[test]
    fn matched_truth_is_covered_by_betting() {
        let players = vec![player(1, 18, 0.4)];
        let cfg = BaseballConfig { replications: 200, seed: 1, ..Default::default() };
        let out = run_baseball(&players, &cfg).unwrap();
        assert!(out[0].coverage_prob >= 0.95, "{:?}", out[0]);
    }

    #[test]
    fn rejects_invalid_players() {
        let cfg = BaseballConfig::default();
        assert!(run_baseball(&[], &cfg).is_err());
        let err = run_baseball(&[player(1, 10, 0.2), player(2, 50, 0.3)], &cfg).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        assert!(run_baseball(&[player(1, 10, 1.2)], &cfg).is_err());
    }

    #[test]
    fn reproducible() {
        let players = vec![player(4, 15, 0.222), player(17, 8, 0.316)];
        let cfg = BaseballConfig { replications: 20, seed: 9, ..Default::default() };
        assert_eq!(run_baseball(&players, &cfg).unwrap(), run_baseball(&players, &cfg).unwrap());
    }
}
