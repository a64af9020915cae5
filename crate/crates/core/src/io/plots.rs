//! Chart layouts for the synthetic study (intervals and widths over time)
//! and the baseball study (per-player intervals and coverage).

use std::collections::BTreeMap;

use super::csv::{ResultRow, SummaryRow};
use super::svg::{Chart, Series, SeriesData};
use crate::simlab::{CoverageSummary, ExperimentRecord, Method, PlayerRecord};

impl From<&ExperimentRecord> for ResultRow {
    fn from(r: &ExperimentRecord) -> Self {
        ResultRow {
            method: r.method,
            replication: r.replication,
            t: r.t,
            lo: r.lo(),
            hi: r.hi(),
            width: r.width(),
        }
    }
}

impl From<&CoverageSummary> for SummaryRow {
    fn from(s: &CoverageSummary) -> Self {
        SummaryRow {
            method: s.method,
            player_id: s.player_id,
            coverage_prob: s.coverage_prob,
            mean_lo: s.mean_lo,
            mean_hi: s.mean_hi,
        }
    }
}

fn methods_present<'a>(methods: impl Iterator<Item = &'a Method>) -> Vec<Method> {
    let mut v: Vec<Method> = methods.copied().collect();
    v.sort();
    v.dedup();
    v
}

/// Bounds of the first replication per method, plus an optional truth line.
pub fn confidence_sequence_chart(rows: &[ResultRow], truth: Option<f64>) -> Chart {
    let mut chart = Chart::new("Confidence sequence (replication 0)", "t", "mean");
    chart.log_x = true;
    let first = rows.iter().map(|r| r.replication).min().unwrap_or(0);
    for m in methods_present(rows.iter().map(|r| &r.method)) {
        let sel: Vec<&ResultRow> = rows.iter().filter(|r| r.method == m && r.replication == first).collect();
        let lo = sel.iter().filter_map(|r| r.lo.map(|v| (r.t as f64, v))).collect();
        let hi = sel.iter().filter_map(|r| r.hi.map(|v| (r.t as f64, v))).collect();
        let color = method_color(m);
        chart.push(Series::new(format!("{} lower", m.label()), SeriesData::Line(lo)).with_color(color));
        chart.push(Series::new(format!("{} upper", m.label()), SeriesData::Line(hi)).with_color(color));
    }
    if let Some(mu) = truth {
        let (t0, t1) = rows
            .iter()
            .fold((u64::MAX, 0), |(a, b), r| (a.min(r.t), b.max(r.t)));
        chart.push(
            Series::new("truth", SeriesData::Line(vec![(t0 as f64, mu), (t1 as f64, mu)])).with_color("#000000"),
        );
    }
    chart
}

/// Mean width per method over all replications.
pub fn width_chart(rows: &[ResultRow]) -> Chart {
    let mut chart = Chart::new("Coverage length", "t", "mean width");
    chart.log_x = true;
    let mut sums: BTreeMap<(Method, u64), (f64, usize)> = BTreeMap::new();
    for r in rows {
        let e = sums.entry((r.method, r.t)).or_default();
        e.0 += r.width;
        e.1 += 1;
    }
    for m in methods_present(rows.iter().map(|r| &r.method)) {
        let pts = sums
            .range((m, 0)..=(m, u64::MAX))
            .map(|(&(_, t), &(s, n))| (t as f64, s / n as f64))
            .collect();
        chart.push(Series::new(m.label(), SeriesData::Line(pts)).with_color(method_color(m)));
    }
    chart
}

/// Average intervals per player with the season-long level as markers.
pub fn player_interval_chart(rows: &[SummaryRow], players: &[PlayerRecord]) -> Chart {
    let mut chart = Chart::new("Average confidence intervals", "player", "batting level");
    chart.y_range = Some((0.0, 1.0));
    for m in methods_present(rows.iter().map(|r| &r.method)) {
        let segs = rows
            .iter()
            .filter(|r| r.method == m)
            .map(|r| (f64::from(r.player_id), r.mean_lo, r.mean_hi))
            .collect();
        chart.push(Series::new(m.label(), SeriesData::Segments(segs)).with_color(method_color(m)));
    }
    let truth = players.iter().map(|p| (f64::from(p.player_id), p.p_true)).collect();
    chart.push(Series::new("true level", SeriesData::Markers(truth)).with_color("#000000"));
    chart
}

pub fn coverage_chart(rows: &[SummaryRow]) -> Chart {
    let mut chart = Chart::new("Coverage probability", "player", "coverage");
    chart.y_range = Some((0.0, 1.0));
    for m in methods_present(rows.iter().map(|r| &r.method)) {
        let bars = rows
            .iter()
            .filter(|r| r.method == m)
            .map(|r| (f64::from(r.player_id), r.coverage_prob))
            .collect();
        chart.push(Series::new(m.label(), SeriesData::Bars(bars)).with_color(method_color(m)));
    }
    chart
}

fn method_color(m: Method) -> &'static str {
    match m {
        Method::Betting => "#1f77b4",
        Method::Preb => "#2ca02c",
        Method::Bootstrap => "#d62728",
    }
}
