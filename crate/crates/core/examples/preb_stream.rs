//! Predictable-plug-in empirical Bernstein sequence next to the betting one,
//! on the same Bernoulli(0.3) stream.
//!
//!     cargo run --release --example preb_stream

use anytime_cs::simlab::gen_bernoulli_stream;
use anytime_cs::{BettingConfig, BettingCs, ConfidenceSequence, PrEbCs};

fn main() -> anytime_cs::Result<()> {
    let stream = gen_bernoulli_stream(0.3, 4000, 7, 0)?;
    let mut preb = PrEbCs::new(0.05)?;
    let mut bet = BettingCs::new(BettingConfig::default())?;

    println!("{:>5}  {:>9} {:>9}  {:>9}  {:>9}", "t", "center", "radius", "Pr-EB", "betting");
    for rec in &stream {
        let p = preb.observe(rec.x)?;
        let b = bet.observe(rec.x)?;
        if p.t.is_power_of_two() || p.t == 4000 {
            println!(
                "{:>5}  {:>9.5} {:>9.5}  {:>9.5}  {:>9.5}",
                p.t,
                preb.center().unwrap_or(f64::NAN),
                preb.radius().unwrap_or(f64::NAN),
                p.interval.width(),
                b.interval.width()
            );
        }
    }
    println!("final Pr-EB {}, betting {}", preb.current(), bet.current());
    Ok(())
}
