use std::collections::BTreeMap;

use super::{ExperimentRecord, Method};
use crate::engine::{ConfidenceSequence, StreamRecord};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthPoint {
    pub method: Method,
    pub t: u64,
    pub mean_width: f64,
    /// Number of replications averaged.
    pub count: usize,
}

/// Mean interval width per `(method, t)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WidthCurve {
    points: BTreeMap<(Method, u64), WidthPoint>,
}

impl WidthCurve {
    pub fn get(&self, method: Method, t: u64) -> Option<f64> {
        self.points.get(&(method, t)).map(|p| p.mean_width)
    }

    pub fn points(&self) -> impl Iterator<Item = &WidthPoint> {
        self.points.values()
    }

    /// `(t, mean width)` for one method, in time order.
    pub fn series(&self, method: Method) -> Vec<(f64, f64)> {
        self.points
            .range((method, 0)..=(method, u64::MAX))
            .map(|(_, p)| (p.t as f64, p.mean_width))
            .collect()
    }
}

pub fn width_curve(records: &[ExperimentRecord]) -> WidthCurve {
    let mut sums: BTreeMap<(Method, u64), (f64, usize)> = BTreeMap::new();
    for r in records {
        let e = sums.entry((r.method, r.t)).or_default();
        e.0 += r.width();
        e.1 += 1;
    }
    WidthCurve {
        points: sums
            .into_iter()
            .map(|((method, t), (sum, count))| {
                (
                    (method, t),
                    WidthPoint {
                        method,
                        t,
                        mean_width: sum / count as f64,
                        count,
                    },
                )
            })
            .collect(),
    }
}

/// Whether the reported set ever fails to contain `mu` along the stream.
pub fn ever_excludes<E: ConfidenceSequence + ?Sized>(
    engine: &mut E,
    stream: &[StreamRecord],
    mu: f64,
) -> Result<bool> {
    for rec in stream {
        if !engine.observe(rec.x)?.interval.contains(mu) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn rec(method: Method, replication: u32, t: u64, lo: f64, hi: f64) -> ExperimentRecord {
        ExperimentRecord {
            method,
            replication,
            seed: 0,
            t,
            interval: Interval::new(lo, hi).unwrap(),
        }
    }

    #[test]
    fn single_replication_is_raw_widths() {
        let rs = vec![
            rec(Method::Betting, 0, 1, 0.0, 1.0),
            rec(Method::Betting, 0, 2, 0.25, 0.75),
        ];
        let wc = width_curve(&rs);
        assert_eq!(wc.get(Method::Betting, 1), Some(1.0));
        assert_eq!(wc.get(Method::Betting, 2), Some(0.5));
        assert_eq!(wc.get(Method::Preb, 1), None);
    }

    #[test]
    fn averages_over_replications() {
        let rs = vec![
            rec(Method::Preb, 0, 5, 0.0, 0.5),
            rec(Method::Preb, 1, 5, 0.25, 0.5),
            rec(Method::Preb, 2, 5, 0.5, 0.625),
            rec(Method::Bootstrap, 0, 5, 0.0, 0.125),
        ];
        let wc = width_curve(&rs);
        assert_eq!(wc.get(Method::Preb, 5), Some((0.5 + 0.25 + 0.125) / 3.0));
        assert_eq!(wc.series(Method::Bootstrap), vec![(5.0, 0.125)]);
        assert_eq!(wc.points().count(), 2);
    }
}
