//! Time-uniform confidence sequences for the mean of a bounded stream.
//!
//! Three engines share the [`ConfidenceSequence`] trait:
//!
//! * [`BettingCs`]: hedged capital process over a grid of candidate means.
//! * [`PrEbCs`]: predictable plug-in empirical Bernstein, closed form.
//! * [`BootstrapCs`]: batched percentile bootstrap with a Bonferroni split.
//!
//! The two martingale engines report the running intersection of their
//! per-step sets, so their intervals never widen. [`simlab`] runs the
//! Beta(10, 30) and baseball comparison studies, [`io`] reads and writes
//! CSV and SVG, and [`cli`] is the command-line front end.

pub mod betting;
pub mod bootstrap;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod interval;
pub mod io;
pub mod preb;
pub mod rng;
pub mod simlab;
pub mod stats;

pub use betting::{BettingConfig, BettingCs, CandidateCapital};
pub use bootstrap::{batch_index, bootstrap_ci, quantile, BootstrapConfig, BootstrapCs, BootstrapWindow};
pub use config::CsConfig;
pub use engine::{run_stream, ConfidenceSequence, Step, StreamRecord};
pub use error::{Error, Result};
pub use interval::{clip_unit, intersect, EmptiedEvent, Interval, RunningIntersection};
pub use preb::{psi_e, PrEbCs};
pub use stats::{predictable_fraction, PredictableStats};
