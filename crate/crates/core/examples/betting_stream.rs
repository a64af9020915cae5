//! Feed a Beta(10, 30) stream through the betting confidence sequence and
//! print the running interval at a few times, along with the hedged wealth
//! of a handful of candidate means.
//!
//!     cargo run --release --example betting_stream

use anytime_cs::simlab::gen_beta_stream;
use anytime_cs::{BettingConfig, BettingCs, ConfidenceSequence};

fn main() -> anytime_cs::Result<()> {
    let stream = gen_beta_stream(10.0, 30.0, 5000, 42, 0)?;
    let mut cs = BettingCs::new(BettingConfig::default())?;

    println!("{:>6}  {:>22}  {:>9}", "t", "interval", "width");
    for rec in &stream {
        let step = cs.observe(rec.x)?;
        if [1, 10, 100, 500, 1000, 2500, 5000].contains(&step.t) {
            println!("{:>6}  {:>22}  {:>9.5}", step.t, step.interval.to_string(), step.interval.width());
        }
    }

    println!("\nhedged wealth after {} observations (reject once above {:.0}):", cs.count(), 1.0 / cs.config().alpha);
    for m in [0.20, 0.24, 0.25, 0.26, 0.30] {
        let j = (m * cs.grid_len() as f64 - 1.0).round() as usize + 1;
        let j = j.min(cs.grid_len() - 1);
        println!("  m = {:.3}: {:.3e}", cs.grid_point(j), cs.hedged_wealth(j));
    }
    Ok(())
}
