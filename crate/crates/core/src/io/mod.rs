//! File formats and plot output.

pub mod csv;
pub mod plots;
pub mod svg;

pub use self::csv::{
    canonical_players, fmt_float, read_players, read_results, read_summary, write_results,
    write_summary, ResultRow, SummaryRow, EFRON_MORRIS_1970,
};
pub use self::svg::{emit_svg, Chart, Series, SeriesData};
