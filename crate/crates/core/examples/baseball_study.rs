//! Coverage of each player's rest-of-season average by the betting and
//! bootstrap intervals built from 45 simulated at-bats.
//!
//!     cargo run --release --example baseball_study [replications]

use anytime_cs::io::canonical_players;
use anytime_cs::simlab::{run_baseball, BaseballConfig, Method};

fn main() -> anytime_cs::Result<()> {
    let replications = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let players = canonical_players();
    let cfg = BaseballConfig { replications, seed: 1970, ..Default::default() };
    let summary = run_baseball(&players, &cfg)?;

    println!("{:<22} {:>6} {:>6}  {:>9} {:>9}", "player", "p_hat", "p_true", "betting", "bootstrap");
    for p in &players {
        let cov = |m: Method| {
            summary
                .iter()
                .find(|s| s.player_id == p.player_id && s.method == m)
                .map(|s| s.coverage_prob)
                .unwrap_or(f64::NAN)
        };
        println!(
            "{:<22} {:>6.3} {:>6.3}  {:>9.2} {:>9.2}",
            p.name,
            p.p_hat(),
            p.p_true,
            cov(Method::Betting),
            cov(Method::Bootstrap)
        );
    }
    Ok(())
}
