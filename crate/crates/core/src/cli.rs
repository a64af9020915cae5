//! Command-line surface: `simulate`, `baseball`, `stream` and `plot`.
//!
//! Settings resolve as flags, then the `--config` TOML file, then built-in
//! defaults. The seed additionally falls back to `ANYTIME_CS_SEED` before
//! the default of 0.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::betting::BettingConfig;
use crate::bootstrap::{BootstrapConfig, BootstrapWindow};
use crate::config::CsConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::io::csv::{read_players, read_results, read_summary, write_results, write_summary};
use crate::io::plots::{confidence_sequence_chart, coverage_chart, player_interval_chart, width_chart};
use crate::io::{canonical_players, emit_svg, Chart, ResultRow, SummaryRow};
use crate::simlab::{
    run_baseball, run_synthetic_study, BaseballConfig, Checkpoints, Generator, Method,
    RecordSchedule, SyntheticConfig,
};

pub const SEED_ENV: &str = "ANYTIME_CS_SEED";
/// Prefix of every diagnostic line written to standard error.
pub const DIAGNOSTIC_PREFIX: &str = "anytime-cs: error:";

pub const SYNTHETIC_CSV: &str = "synthetic.csv";
pub const SYNTHETIC_CS_SVG: &str = "synthetic_cs.svg";
pub const SYNTHETIC_WIDTH_SVG: &str = "synthetic_width.svg";
pub const BASEBALL_CSV: &str = "baseball_summary.csv";
pub const BASEBALL_INTERVALS_SVG: &str = "baseball_intervals.svg";
pub const BASEBALL_COVERAGE_SVG: &str = "baseball_coverage.svg";

#[derive(Debug, Parser)]
#[command(name = "anytime-cs", version, about = "Time-uniform confidence sequences for bounded means")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Beta-stream comparison of all three methods.
    Simulate(SimulateArgs),
    /// Per-player coverage study on the batting dataset.
    Baseball(BaseballArgs),
    /// Read observations from stdin, print `t,lo,hi` after each.
    Stream(StreamArgs),
    /// Render SVG charts from a results or summary CSV.
    Plot(PlotArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct EngineArgs {
    /// Miscoverage level.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Betting grid size G (candidates j/G).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Bootstrap resamples per interval.
    #[arg(long = "replicates-B", id = "replicates_b")]
    pub replicates_b: Option<usize>,
    /// Number of dyadic bootstrap batches.
    #[arg(long = "batches-L", id = "batches_l")]
    pub batches_l: Option<usize>,
    /// TOML file with default settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Stream length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of replications.
    #[arg(long)]
    pub seeds: Option<u32>,
    /// Record bootstrap intervals only every k steps (and at the end).
    #[arg(long)]
    pub boot_every: Option<u64>,
    #[arg(long)]
    pub plot: bool,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BaseballArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Batting CSV (defaults to the bundled 1970 table).
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub replications: Option<u32>,
    #[arg(long)]
    pub plot: bool,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StreamArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value = "betting")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// `synthetic.csv` or `baseball_summary.csv` written by the other commands.
    #[arg(long)]
    pub data: PathBuf,
    /// Batting CSV for the truth markers (defaults to the bundled table).
    #[arg(long)]
    pub players: Option<PathBuf>,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

impl clap::ValueEnum for Method {
    fn value_variants<'a>() -> &'a [Self] {
        &Method::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

/// Keys accepted in the `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub seeds: Option<u32>,
    pub beta_a: Option<f64>,
    pub beta_b: Option<f64>,
    pub grid: Option<usize>,
    pub theta: Option<f64>,
    pub trunc: Option<f64>,
    pub replicates: Option<usize>,
    pub batches: Option<usize>,
    pub window: Option<BootstrapWindow>,
    pub boot_every: Option<u64>,
    pub replications: Option<u32>,
    pub data: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                Ok(toml::from_str(&text)?)
            }
        }
    }
}

/// Engine settings after applying flag > file > default precedence.
#[derive(Debug, Clone, Copy)]
struct Resolved {
    alpha: f64,
    seed: u64,
    betting: BettingConfig,
    bootstrap: BootstrapConfig,
}

fn resolve(args: &EngineArgs, file: &FileConfig) -> Result<Resolved> {
    let alpha = args.alpha.or(file.alpha).unwrap_or(0.05);
    let seed = match args.seed.or(file.seed) {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!("{SEED_ENV} = {v:?} is not an unsigned integer"))
            })?,
            Err(_) => 0,
        },
    };
    let bd = BettingConfig::default();
    let betting = BettingConfig {
        grid_size: args.grid.or(file.grid).unwrap_or(bd.grid_size),
        theta: file.theta.unwrap_or(bd.theta),
        trunc: file.trunc.unwrap_or(bd.trunc),
        alpha,
    };
    let sd = BootstrapConfig::default();
    let bootstrap = BootstrapConfig {
        replicates: args.replicates_b.or(file.replicates).unwrap_or(sd.replicates),
        batches: args.batches_l.or(file.batches).unwrap_or(sd.batches),
        alpha,
        seed,
        window: file.window.unwrap_or_default(),
    };
    betting.validate()?;
    bootstrap.validate()?;
    Ok(Resolved {
        alpha,
        seed,
        betting,
        bootstrap,
    })
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn write_chart(path: &Path, chart: &Chart) -> Result<()> {
    write_file(path, emit_svg(chart)?.as_bytes())
}

pub fn synthetic_config(args: &SimulateArgs) -> Result<SyntheticConfig> {
    let file = FileConfig::load(args.engine.config.as_deref())?;
    let r = resolve(&args.engine, &file)?;
    let n = args.n.or(file.n).unwrap_or(10_000);
    let boot_every = args.boot_every.or(file.boot_every).unwrap_or(1);
    if boot_every == 0 {
        return Err(Error::InvalidConfig("--boot-every must be at least 1".into()));
    }
    let cfg = SyntheticConfig {
        cs: CsConfig::new(r.alpha, n)?,
        generator: Generator::Beta {
            a: file.beta_a.unwrap_or(10.0),
            b: file.beta_b.unwrap_or(30.0),
        },
        betting: r.betting,
        bootstrap: r.bootstrap,
        seed: r.seed,
        seeds: args.seeds.or(file.seeds).unwrap_or(20),
        methods: Method::ALL.to_vec(),
        schedule: RecordSchedule {
            martingale: Checkpoints::Every,
            bootstrap: if boot_every == 1 {
                Checkpoints::Every
            } else {
                Checkpoints::Stride(boot_every)
            },
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_simulate(args: &SimulateArgs, stderr: &mut dyn Write) -> Result<()> {
    let cfg = synthetic_config(args)?;
    create_dir(&args.out)?;
    let run = run_synthetic_study(&cfg)?;
    for (method, rep, ev) in &run.emptied {
        writeln!(
            stderr,
            "anytime-cs: warning: {method} sequence became empty at t = {} in replication {rep}",
            ev.step
        )?;
    }
    let mut csv = Vec::new();
    write_results(&mut csv, &run.records)?;
    write_file(&args.out.join(SYNTHETIC_CSV), &csv)?;
    if args.plot {
        let rows: Vec<ResultRow> = run.records.iter().map(ResultRow::from).collect();
        write_synthetic_charts(&args.out, &rows, Some(cfg.generator.mean()))?;
    }
    Ok(())
}

fn write_synthetic_charts(out: &Path, rows: &[ResultRow], truth: Option<f64>) -> Result<()> {
    write_chart(&out.join(SYNTHETIC_CS_SVG), &confidence_sequence_chart(rows, truth))?;
    write_chart(&out.join(SYNTHETIC_WIDTH_SVG), &width_chart(rows))
}

fn load_players(path: Option<&Path>) -> Result<Vec<crate::simlab::PlayerRecord>> {
    match path {
        None => Ok(canonical_players()),
        Some(p) => {
            let f = fs::File::open(p).map_err(|e| Error::io(p, e))?;
            read_players(f, &p.display().to_string())
        }
    }
}

pub fn cmd_baseball(args: &BaseballArgs) -> Result<()> {
    let file = FileConfig::load(args.engine.config.as_deref())?;
    let r = resolve(&args.engine, &file)?;
    let data = args.data.clone().or(file.data.clone());
    let players = load_players(data.as_deref())?;
    let cfg = BaseballConfig {
        alpha: r.alpha,
        replications: args.replications.or(file.replications).unwrap_or(100),
        seed: r.seed,
        betting: r.betting,
        bootstrap: r.bootstrap,
    };
    create_dir(&args.out)?;
    let summary = run_baseball(&players, &cfg)?;
    let mut csv = Vec::new();
    write_summary(&mut csv, &summary)?;
    write_file(&args.out.join(BASEBALL_CSV), &csv)?;
    if args.plot {
        let rows: Vec<SummaryRow> = summary.iter().map(SummaryRow::from).collect();
        write_baseball_charts(&args.out, &rows, &players)?;
    }
    Ok(())
}

fn write_baseball_charts(
    out: &Path,
    rows: &[SummaryRow],
    players: &[crate::simlab::PlayerRecord],
) -> Result<()> {
    write_chart(&out.join(BASEBALL_INTERVALS_SVG), &player_interval_chart(rows, players))?;
    write_chart(&out.join(BASEBALL_COVERAGE_SVG), &coverage_chart(rows))
}

fn fmt_bounds(iv: Interval) -> String {
    match iv.bounds() {
        Some((lo, hi)) => format!("{lo},{hi}"),
        None => ",".into(),
    }
}

pub fn cmd_stream(args: &StreamArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(args.engine.config.as_deref())?;
    let r = resolve(&args.engine, &file)?;
    let mut engine = args.method.engine(r.alpha, &r.betting, &r.bootstrap, 0)?;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let x: f64 = line.trim().parse().map_err(|_| Error::Input {
            line: lineno,
            message: format!("cannot parse {:?} as a number", line.trim()),
        })?;
        let step = engine.observe(x).map_err(|e| Error::Input {
            line: lineno,
            message: e.to_string(),
        })?;
        writeln!(out, "{},{}", step.t, fmt_bounds(step.interval))?;
    }
    out.flush()?;
    Ok(())
}

pub fn cmd_plot(args: &PlotArgs) -> Result<()> {
    let path = &args.data;
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let source = path.display().to_string();
    let header = text.lines().next().unwrap_or_default().trim();
    create_dir(&args.out)?;
    if header.starts_with("method,replication") {
        let rows = read_results(text.as_bytes(), &source)?;
        if rows.is_empty() {
            return Err(Error::Empty("results table"));
        }
        write_synthetic_charts(&args.out, &rows, None)
    } else if header.starts_with("method,player_id") {
        let rows = read_summary(text.as_bytes(), &source)?;
        if rows.is_empty() {
            return Err(Error::Empty("summary table"));
        }
        let players = load_players(args.players.as_deref())?;
        write_baseball_charts(&args.out, &rows, &players)
    } else {
        Err(Error::Schema {
            path: source,
            row: 0,
            message: format!("unrecognised header `{header}`"),
        })
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, stderr),
        Command::Baseball(a) => cmd_baseball(a),
        Command::Stream(a) => cmd_stream(a, stdin, stdout),
        Command::Plot(a) => cmd_plot(a),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Failures print one `anytime-cs: error:` line to `stderr`.
pub fn main_with<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{DIAGNOSTIC_PREFIX} {}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    match run(&cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "{DIAGNOSTIC_PREFIX} {msg}");
            1
        }
    }
}
