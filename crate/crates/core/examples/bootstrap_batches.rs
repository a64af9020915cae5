//! Batched percentile bootstrap: how the batch index and quantile levels
//! change with t, and how the prefix and batch-only windows compare.
//!
//!     cargo run --release --example bootstrap_batches

use anytime_cs::simlab::gen_beta_stream;
use anytime_cs::{batch_index, BootstrapConfig, BootstrapCs, BootstrapWindow};

fn main() -> anytime_cs::Result<()> {
    let base = BootstrapConfig { seed: 3, ..Default::default() };
    let (q_lo, q_hi) = base.quantile_levels();
    println!("B = {}, L = {}, quantiles {q_lo} / {q_hi}", base.replicates, base.batches);

    let data = gen_beta_stream(10.0, 30.0, 4096, 3, 0)?;
    let mut prefix = BootstrapCs::new(base, 0)?;
    let mut batch = BootstrapCs::new(BootstrapConfig { window: BootstrapWindow::Batch, ..base }, 0)?;

    println!("{:>5}  {:>5}  {:>22}  {:>22}", "t", "batch", "prefix window", "batch window");
    for (i, rec) in data.iter().enumerate() {
        prefix.push(rec.x)?;
        batch.push(rec.x)?;
        let t = i as u64 + 1;
        if t.is_power_of_two() || t == 3000 {
            println!(
                "{t:>5}  {:>5}  {:>22}  {:>22}",
                batch_index(t, base.batches),
                prefix.evaluate()?.to_string(),
                batch.evaluate()?.to_string()
            );
        }
    }
    Ok(())
}
