//! A small version of the synthetic width study: several Beta(10, 30)
//! replications, all three methods, mean width at fixed checkpoints.
//!
//!     cargo run --release --example synthetic_study [seeds]

use anytime_cs::simlab::{run_synthetic_study, width_curve, Method, RecordSchedule, SyntheticConfig};
use anytime_cs::CsConfig;

fn main() -> anytime_cs::Result<()> {
    let seeds = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let checkpoints = [100, 500, 1000, 2000, 5000];
    let cfg = SyntheticConfig {
        cs: CsConfig::new(0.05, 5000)?,
        seeds,
        seed: 2024,
        schedule: RecordSchedule::at(&checkpoints),
        ..Default::default()
    };
    let run = run_synthetic_study(&cfg)?;
    let curve = width_curve(&run.records);

    print!("{:>6}", "t");
    for m in Method::ALL {
        print!("  {:>10}", m.label());
    }
    println!();
    for t in checkpoints {
        print!("{t:>6}");
        for m in Method::ALL {
            print!("  {:>10.5}", curve.get(m, t).unwrap_or(f64::NAN));
        }
        println!();
    }
    println!("emptied intersections: {}", run.emptied.len());
    Ok(())
}
