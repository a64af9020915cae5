//! CSV tables: the baseball input and the two result schemas.
//!
//! Floats are written with 17 significant digits (`%.17g` style), which
//! reproduces every `f64` exactly on read-back. Empty intervals are written
//! with blank `lo`/`hi` fields.

use std::io::{Read, Write};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::simlab::{CoverageSummary, ExperimentRecord, Method, PlayerRecord};

pub const RESULTS_HEADER: [&str; 6] = ["method", "replication", "t", "lo", "hi", "width"];
pub const SUMMARY_HEADER: [&str; 5] = ["method", "player_id", "coverage_prob", "mean_lo", "mean_hi"];
pub const PLAYERS_HEADER: [&str; 5] = ["player_id", "name", "hits_45", "at_bats", "p_true"];

/// The 18-player 1970 batting table (first 45 at-bats and rest-of-season average).
pub const EFRON_MORRIS_1970: &str = include_str!("../../data/efron_morris_1970.csv");

const AT_BATS: u32 = 45;
const CANONICAL_PLAYERS: usize = 18;

/// `%.17g`: 17 significant digits, trailing zeros dropped.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        strip_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", strip_zeros(mantissa.to_string()))
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

pub fn write_results<W: Write>(w: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut out = ::csv::Writer::from_writer(w);
    out.write_record(RESULTS_HEADER)?;
    for r in records {
        out.write_record([
            r.method.as_str().to_string(),
            r.replication.to_string(),
            r.t.to_string(),
            opt_float(r.lo()),
            opt_float(r.hi()),
            fmt_float(r.width()),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(w: W, rows: &[CoverageSummary]) -> Result<()> {
    let mut out = ::csv::Writer::from_writer(w);
    out.write_record(SUMMARY_HEADER)?;
    for s in rows {
        out.write_record([
            s.method.as_str().to_string(),
            s.player_id.to_string(),
            fmt_float(s.coverage_prob),
            fmt_float(s.mean_lo),
            fmt_float(s.mean_hi),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ResultRow {
    pub method: Method,
    pub replication: u32,
    pub t: u64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SummaryRow {
    pub method: Method,
    pub player_id: u32,
    pub coverage_prob: f64,
    pub mean_lo: f64,
    pub mean_hi: f64,
}

fn read_table<R: Read, T: for<'de> Deserialize<'de>>(
    r: R,
    source: &str,
    header: &[&str],
) -> Result<Vec<T>> {
    let mut rdr = ::csv::Reader::from_reader(r);
    let found = rdr.headers()?.clone();
    if !found.iter().eq(header.iter().copied()) {
        return Err(Error::Schema {
            path: source.into(),
            row: 0,
            message: format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    rdr.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| Error::Schema {
                path: source.into(),
                row: i + 1,
                message: csv_message(&e),
            })
        })
        .collect()
}

fn csv_message(e: &::csv::Error) -> String {
    match e.kind() {
        ::csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        _ => e.to_string(),
    }
}

pub fn read_results<R: Read>(r: R, source: &str) -> Result<Vec<ResultRow>> {
    read_table(r, source, &RESULTS_HEADER)
}

pub fn read_summary<R: Read>(r: R, source: &str) -> Result<Vec<SummaryRow>> {
    read_table(r, source, &SUMMARY_HEADER)
}

#[derive(Debug, Deserialize)]
struct PlayerRow {
    player_id: u32,
    name: String,
    hits_45: u32,
    at_bats: u32,
    p_true: f64,
}

/// Parses and validates a batting table. Rows are numbered from 1 after the header.
pub fn read_players<R: Read>(r: R, source: &str) -> Result<Vec<PlayerRecord>> {
    let rows: Vec<PlayerRow> = read_table(r, source, &PLAYERS_HEADER)?;
    let schema = |row: usize, message: String| Error::Schema {
        path: source.into(),
        row,
        message,
    };
    let players = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.at_bats != AT_BATS {
                return Err(schema(i + 1, format!("at_bats = {} (expected {AT_BATS})", row.at_bats)));
            }
            let p = PlayerRecord {
                player_id: row.player_id,
                name: row.name,
                hits_45: row.hits_45,
                at_bats: row.at_bats,
                p_true: row.p_true,
            };
            p.validate().map_err(|m| schema(i + 1, m))?;
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    if players.len() != CANONICAL_PLAYERS {
        return Err(schema(
            players.len(),
            format!("expected {CANONICAL_PLAYERS} players, found {}", players.len()),
        ));
    }
    Ok(players)
}

pub fn canonical_players() -> Vec<PlayerRecord> {
    read_players(EFRON_MORRIS_1970.as_bytes(), "efron_morris_1970.csv")
        .expect("bundled dataset is valid")
}
