//! Closed intervals on the real line and the running intersection that turns
//! per-step confidence sets into a monotone confidence sequence.

use std::fmt;

/// A closed interval `[lo, hi]`, or the explicit empty set.
///
/// Engine outputs always live inside `[0, 1]`; intermediate closed-form sets
/// (center plus or minus a radius) may stick out and are brought back with
/// [`clip_unit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Empty,
    Closed { lo: f64, hi: f64 },
}

impl Interval {
    pub const UNIT: Interval = Interval::Closed { lo: 0.0, hi: 1.0 };

    /// Builds `[lo, hi]`; returns `None` unless both endpoints are non-NaN and `lo <= hi`.
    pub fn new(lo: f64, hi: f64) -> Option<Interval> {
        (lo <= hi).then_some(Interval::Closed { lo, hi })
    }

    pub fn point(x: f64) -> Interval {
        Interval::Closed { lo: x, hi: x }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn lo(&self) -> Option<f64> {
        match *self {
            Interval::Closed { lo, .. } => Some(lo),
            Interval::Empty => None,
        }
    }

    pub fn hi(&self) -> Option<f64> {
        match *self {
            Interval::Closed { hi, .. } => Some(hi),
            Interval::Empty => None,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            Interval::Closed { lo, hi } => Some((lo, hi)),
            Interval::Empty => None,
        }
    }

    /// `hi - lo`, zero for the empty set.
    pub fn width(&self) -> f64 {
        match *self {
            Interval::Closed { lo, hi } => hi - lo,
            Interval::Empty => 0.0,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Interval::Closed { lo, hi } => lo <= x && x <= hi,
            Interval::Empty => false,
        }
    }

    /// `self ⊆ other`. The empty set is a subset of everything.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        match (*self, *other) {
            (Interval::Empty, _) => true,
            (_, Interval::Empty) => false,
            (Interval::Closed { lo: a, hi: b }, Interval::Closed { lo: c, hi: d }) => {
                c <= a && b <= d
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("∅"),
            Interval::Closed { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

pub fn intersect(a: Interval, b: Interval) -> Interval {
    match (a, b) {
        (Interval::Closed { lo: a_lo, hi: a_hi }, Interval::Closed { lo: b_lo, hi: b_hi }) => {
            let lo = a_lo.max(b_lo);
            let hi = a_hi.min(b_hi);
            if lo > hi {
                Interval::Empty
            } else {
                Interval::Closed { lo, hi }
            }
        }
        _ => Interval::Empty,
    }
}

pub fn clip_unit(a: Interval) -> Interval {
    intersect(a, Interval::UNIT)
}

/// Reported by [`RunningIntersection::push`] on the step where the sequence
/// first becomes empty. Under a valid guarantee this happens only by chance
/// (at most `alpha` of the time) or when the data violate the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmptiedEvent {
    /// Number of steps pushed, including the one that emptied the sequence.
    pub step: u64,
    pub previous: Interval,
    pub step_set: Interval,
}

/// `∩_{s ≤ t} S_s`, starting from `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunningIntersection {
    current: Interval,
    steps: u64,
}

impl Default for RunningIntersection {
    fn default() -> Self {
        Self::new()
    }
}

impl RunningIntersection {
    pub fn new() -> Self {
        Self {
            current: Interval::UNIT,
            steps: 0,
        }
    }

    pub fn current(&self) -> Interval {
        self.current
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Intersects the running set with `step_set`. Returns an event only on
    /// the transition from non-empty to empty.
    pub fn push(&mut self, step_set: Interval) -> Option<EmptiedEvent> {
        self.steps += 1;
        let previous = self.current;
        self.current = intersect(previous, step_set);
        (!previous.is_empty() && self.current.is_empty()).then_some(EmptiedEvent {
            step: self.steps,
            previous,
            step_set,
        })
    }
}
