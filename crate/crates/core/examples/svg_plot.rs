//! Build a chart by hand and write it as a standalone SVG file.
//!
//!     cargo run --release --example svg_plot [out.svg]

use anytime_cs::io::{emit_svg, Chart, Series, SeriesData};
use anytime_cs::simlab::gen_bernoulli_stream;
use anytime_cs::{BettingConfig, BettingCs, ConfidenceSequence};

fn main() -> anytime_cs::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "betting_cs.svg".into());
    let mut cs = BettingCs::new(BettingConfig::default())?;
    let mut band = Vec::new();
    for rec in gen_bernoulli_stream(0.6, 2000, 1, 0)? {
        let step = cs.observe(rec.x)?;
        if let Some((lo, hi)) = step.interval.bounds() {
            if step.t % 20 == 0 {
                band.push((step.t as f64, lo, hi));
            }
        }
    }

    let mut chart = Chart::new("Betting CS, Bernoulli(0.6)", "t", "mean");
    chart.log_x = true;
    chart.y_range = Some((0.0, 1.0));
    chart.push(Series::new("interval", SeriesData::Segments(band)).with_color("#1f77b4"));
    chart.push(Series::new("truth", SeriesData::Line(vec![(20.0, 0.6), (2000.0, 0.6)])).with_color("#444444"));

    let svg = emit_svg(&chart)?;
    std::fs::write(&out, svg).map_err(|e| anytime_cs::Error::io(&out, e))?;
    println!("wrote {out}");
    Ok(())
}
