//! The `pc-fec` command line.
//!
//! Every subcommand can read its defaults from a sweep config (`--config`);
//! flags given on the command line win. Output goes to `--out` or stdout.
//! Exit status: 0 ok, 1 configuration or argument error, 2 runtime error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bch::BchCode;
use crate::channel::{ChannelModel, LlrMethod, Modulation};
use crate::de::{de_run, lut_from_tables, threshold_search, CodeId, DeOutcome, DeTrajectory, ThresholdSearch, TransitionTable};
use crate::error::{Error, Result};
use crate::lut::MuTable;
use crate::mixture::MixtureLlrModel;
use crate::product::ProductCode;
use crate::sim::{self, ChannelConfig, SimConfig, SweepPlan};

#[derive(Debug, Parser)]
#[command(name = "pc-fec", version, about = "Product-code decoding with combined channel reliability")]
pub struct Cli {
    /// JSON sweep config supplying defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Master seed of a sweep, or the seed of a Monte Carlo table.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Directory for cached transition tables.
    #[arg(long, global = true, value_name = "DIR", default_value = "pc-fec-cache")]
    pub cache_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a BDD transition table and store it in the cache.
    TransitionTable(TableArgs),
    /// Density-evolution trajectory as CSV.
    DeRun {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Eb/N0 in dB.
        #[arg(long)]
        ebn0: Option<f64>,
        #[arg(long, default_value_t = 100)]
        iterations: usize,
    },
    /// DE decoding threshold by bisection.
    DeThreshold {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 30.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
    },
    /// Combining LUT as JSON, from a trajectory CSV or a fresh DE run.
    ExportLut {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Trajectory written by `de-run`.
        #[arg(long, value_name = "PATH")]
        trajectory: Option<PathBuf>,
        /// Design Eb/N0 in dB (default: DE threshold plus a small margin).
        #[arg(long)]
        ebn0: Option<f64>,
        #[arg(long)]
        iterations: Option<usize>,
        /// Keep distinct row and column tables.
        #[arg(long)]
        separate: bool,
    },
    /// Lloyd-Max LLR quantizer as JSON.
    DesignQuantizer {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long)]
        ebn0: Option<f64>,
    },
    /// BER sweep as CSV (needs `--config`).
    Simulate,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Field degree; component length is `2^v - 1`.
    #[arg(long)]
    pub v: Option<u32>,
    /// Correctable errors per component.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Stored transition table (skips estimation).
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,
    /// Monte Carlo draws per weight class.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChannelArg {
    Biawgn,
    Bicm,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum)]
    pub channel: Option<ChannelArg>,
    /// ASK points per real dimension.
    #[arg(long = "points", value_name = "M")]
    pub points: Option<usize>,
}

/// One row of the `de-run` CSV. Tables use the storage order of [`MuTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub iteration: usize,
    pub ebn0_db: f64,
    pub x_in: f64,
    pub x_row: f64,
    pub x_col: f64,
    pub outcome: DeOutcome,
    pub row_m1_m1: f64,
    pub row_p1_m1: f64,
    pub row_0_m1: f64,
    pub row_m1_p1: f64,
    pub row_p1_p1: f64,
    pub row_0_p1: f64,
    pub col_m1_m1: f64,
    pub col_p1_m1: f64,
    pub col_0_m1: f64,
    pub col_m1_p1: f64,
    pub col_p1_p1: f64,
    pub col_0_p1: f64,
}

impl TrajectoryRow {
    fn tables(&self) -> (MuTable, MuTable) {
        (
            MuTable([self.row_m1_m1, self.row_p1_m1, self.row_0_m1, self.row_m1_p1, self.row_p1_p1, self.row_0_p1]),
            MuTable([self.col_m1_m1, self.col_p1_m1, self.col_0_m1, self.col_m1_p1, self.col_p1_p1, self.col_0_p1]),
        )
    }
}

pub fn trajectory_rows(trajectory: &DeTrajectory, ebn0_db: f64) -> Vec<TrajectoryRow> {
    trajectory
        .iterations
        .iter()
        .enumerate()
        .map(|(l, it)| {
            let [r0, r1, r2, r3, r4, r5] = it.row.mu.0;
            let [c0, c1, c2, c3, c4, c5] = it.column.mu.0;
            TrajectoryRow {
                iteration: l + 1,
                ebn0_db,
                x_in: it.row.x_in,
                x_row: it.row.x_out,
                x_col: it.column.x_out,
                outcome: trajectory.outcome,
                row_m1_m1: r0,
                row_p1_m1: r1,
                row_0_m1: r2,
                row_m1_p1: r3,
                row_p1_p1: r4,
                row_0_p1: r5,
                col_m1_m1: c0,
                col_p1_m1: c1,
                col_0_m1: c2,
                col_m1_p1: c3,
                col_p1_p1: c4,
                col_0_p1: c5,
            }
        })
        .collect()
}

pub fn trajectory_csv(rows: &[TrajectoryRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn read_trajectory(path: &Path) -> Result<Vec<TrajectoryRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<TrajectoryRow>, _>>()
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. }
        | Error::InvalidArgument(_)
        | Error::InvalidCode { .. }
        | Error::UnsupportedField(_)
        | Error::InvalidBracket { .. }
        | Error::MissingWeights { .. } => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("--threads: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    config: Option<SimConfig>,
}

impl Context<'_> {
    fn code(&self, args: &CodeArgs) -> Result<BchCode> {
        let from_config = self.config.as_ref().map(|c| c.code);
        let v = args.v.or(from_config.map(|c| c.v));
        let t = args.t.or(from_config.map(|c| c.t));
        match (v, t) {
            (Some(v), Some(t)) => BchCode::new(v, t),
            _ => Err(Error::config("code", "give --v and --t or a config with `code`")),
        }
    }

    fn modulation(&self, args: &ChannelArgs) -> Result<Modulation> {
        let channel = match (args.channel, &self.config) {
            (Some(ChannelArg::Biawgn), _) => ChannelConfig::bi_awgn(),
            (Some(ChannelArg::Bicm), _) => ChannelConfig::bicm(
                args.points.ok_or_else(|| Error::config("channel.M", "--points is required with --channel bicm"))?,
                LlrMethod::MaxLog,
            ),
            (None, Some(c)) => c.channel.clone(),
            (None, None) => ChannelConfig::bi_awgn(),
        };
        channel.modulation()
    }

    fn table(&self, args: &TableArgs, code: &BchCode) -> Result<TransitionTable> {
        let path = args.table.clone().or(self.config.as_ref().and_then(|c| c.table_path.clone()));
        if let Some(p) = path {
            let table = TransitionTable::load(&p)?;
            if table.code != (CodeId { v: code.v(), t: code.t() }) {
                return Err(Error::InvalidArgument(format!(
                    "{} holds a table for v={}, t={}",
                    p.display(),
                    table.code.v,
                    table.code.t
                )));
            }
            return Ok(table);
        }
        let (samples, seed) = self.table_params(args);
        TransitionTable::cached(code, samples, seed, &self.cli.cache_dir)
    }

    fn table_params(&self, args: &TableArgs) -> (u64, u64) {
        let samples = args
            .samples
            .or(self.config.as_ref().map(|c| c.table_samples))
            .unwrap_or(10_000);
        let seed = self
            .cli
            .seed
            .or(self.config.as_ref().map(|c| c.table_seed))
            .unwrap_or(1);
        (samples, seed)
    }

    fn design_ebn0(&self, flag: Option<f64>) -> Option<f64> {
        flag.or(self.config.as_ref().and_then(|c| c.design_ebn0_db))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.cli.out {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                }
                fs::write(p, text).map_err(|e| Error::io(p, e))
            }
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
        }
    }
}

fn rate(code: &BchCode) -> f64 {
    ProductCode::new(code.clone()).rate()
}

fn llr_family(modulation: Modulation, rate: f64) -> impl Fn(f64) -> Result<MixtureLlrModel> {
    move |db| ChannelModel::from_ebn0(modulation, db, rate, LlrMethod::MaxLog).map(|c| MixtureLlrModel::for_channel(&c))
}

fn load_config(path: &Path) -> Result<SimConfig> {
    match SimConfig::load(path) {
        Err(Error::Io { source, .. }) => Err(Error::config("--config", format!("{}: {source}", path.display()))),
        other => other,
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let config = cli.config.as_deref().map(load_config).transpose()?;
    let cx = Context { cli, config };
    match &cli.command {
        Command::TransitionTable(args) => {
            let code = cx.code(&args.code)?;
            let table = cx.table(args, &code)?;
            cx.emit(&(table.to_json() + "\n"))
        }
        Command::DeRun {
            table,
            channel,
            ebn0,
            iterations,
        } => {
            let code = cx.code(&table.code)?;
            let modulation = cx.modulation(channel)?;
            let ebn0 = cx
                .design_ebn0(*ebn0)
                .ok_or_else(|| Error::config("design_ebn0_db", "give --ebn0"))?;
            let t = cx.table(table, &code)?;
            let llr = llr_family(modulation, rate(&code))(ebn0)?;
            let trajectory = de_run(&t, &llr, *iterations);
            cx.emit(&trajectory_csv(&trajectory_rows(&trajectory, ebn0))?)
        }
        Command::DeThreshold {
            table,
            channel,
            lo,
            hi,
            tolerance,
        } => {
            let code = cx.code(&table.code)?;
            let modulation = cx.modulation(channel)?;
            let t = cx.table(table, &code)?;
            let r = rate(&code);
            let search = ThresholdSearch {
                tolerance_db: *tolerance,
                ..ThresholdSearch::default()
            };
            let th = threshold_search(&t, llr_family(modulation, r), (*lo, *hi), &search)?;
            let p_ch = llr_family(modulation, r)(th.threshold_db)?.p_ch;
            cx.emit(&format!(
                "v,t,rate,threshold_db,lo_db,hi_db,evaluations,p_ch\n{},{},{},{},{},{},{},{:e}\n",
                code.v(),
                code.t(),
                r,
                th.threshold_db,
                th.lo_db,
                th.hi_db,
                th.evaluations,
                p_ch
            ))
        }
        Command::ExportLut {
            table,
            channel,
            trajectory,
            ebn0,
            iterations,
            separate,
        } => {
            let iterations = iterations
                .or(cx.config.as_ref().map(|c| c.schedule.cr_iterations))
                .unwrap_or(10);
            let lut = match trajectory {
                Some(p) => {
                    let rows = read_trajectory(p)?;
                    let tables: Vec<_> = rows.iter().map(TrajectoryRow::tables).collect();
                    let extendable = rows.last().is_some_and(|r| r.outcome != DeOutcome::MaxIterations);
                    let design = rows.first().map_or(f64::NAN, |r| r.ebn0_db);
                    lut_from_tables(&tables, extendable, iterations, !separate, design)?
                }
                None => {
                    let code = cx.code(&table.code)?;
                    let modulation = cx.modulation(channel)?;
                    let t = cx.table(table, &code)?;
                    let design = match cx.design_ebn0(*ebn0) {
                        Some(d) => d,
                        None => sim::default_design_ebn0_db(&t, modulation, rate(&code))?,
                    };
                    let llr = llr_family(modulation, rate(&code))(design)?;
                    let trajectory = de_run(&t, &llr, iterations.max(1));
                    crate::de::export_lut(&trajectory, iterations, !separate, design)?
                }
            };
            cx.emit(&(lut.to_json() + "\n"))
        }
        Command::DesignQuantizer {
            code,
            channel,
            bits,
            ebn0,
        } => {
            let code = cx.code(code)?;
            let modulation = cx.modulation(channel)?;
            let bits = bits
                .or(cx.config.as_ref().and_then(|c| c.channel.quantizer.as_ref().map(|q| q.bits)))
                .ok_or_else(|| Error::config("channel.quantizer.bits", "give --bits"))?;
            let ebn0 = cx
                .design_ebn0(*ebn0)
                .ok_or_else(|| Error::config("design_ebn0_db", "give --ebn0"))?;
            let q = sim::design_quantizer(modulation, rate(&code), ebn0, bits)?;
            cx.emit(&(q.to_json() + "\n"))
        }
        Command::Simulate => {
            let mut config = cx
                .config
                .clone()
                .ok_or_else(|| Error::config("--config", "simulate needs a sweep config"))?;
            if let Some(seed) = cli.seed {
                config.master_seed = seed;
            }
            let plan = SweepPlan::from_config(&config, &cli.cache_dir)?;
            let points = sim::run_plan(&plan)?;
            cx.emit(&sim::to_csv(&points))
        }
    }
}
