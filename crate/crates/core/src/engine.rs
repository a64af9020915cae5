use crate::error::Result;
use crate::interval::{EmptiedEvent, Interval};

/// What one observation did to a confidence sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    /// 1-based index of the observation just consumed.
    pub t: u64,
    pub interval: Interval,
    /// Set on the step where a running intersection first became empty.
    pub emptied: Option<EmptiedEvent>,
}

/// A streaming confidence-sequence engine for a mean in `[0, 1]`.
pub trait ConfidenceSequence {
    /// Consumes `X_t`, rejecting values outside `[0, 1]`.
    fn observe(&mut self, x: f64) -> Result<Step>;

    /// The reported set after the observations seen so far (`[0, 1]` before any).
    fn current(&self) -> Interval;

    fn count(&self) -> u64;
}

/// One observation `X_t` of a stream, `t` starting at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamRecord {
    pub t: u64,
    pub x: f64,
}

/// Feeds `stream` through `engine`, checking that time indices arrive in order.
pub fn run_stream<E: ConfidenceSequence + ?Sized>(
    engine: &mut E,
    stream: &[StreamRecord],
) -> Result<Vec<Step>> {
    stream
        .iter()
        .map(|rec| {
            let expected = engine.count() + 1;
            if rec.t != expected {
                return Err(crate::Error::Input {
                    line: expected as usize,
                    message: format!("expected time index {expected}, got {}", rec.t),
                });
            }
            engine.observe(rec.x)
        })
        .collect()
}
