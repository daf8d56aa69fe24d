//! Command-line front end: one table-producing subcommand per experiment.
//!
//! Parameters come from flags, from a TOML config file (`--config`), or
//! both, with flags winning. Output is CSV by default, JSON with
//! `--format json` (schema in `schemas/output.schema.json`), written to
//! stdout or `--out`. Identical configs produce byte-identical output;
//! Monte Carlo runs require an explicit seed for that reason.
//!
//! Exit codes: 0 success, 2 configuration error, 3 capability error (an
//! exact-integration request the function class cannot honour).

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::clt_harness::{
    arcsine_moment, arcsine_moment_exact, convergence_study, invariance_study, position_sum_moment,
    IntervalSpec, ProcessMomentSpec,
};
use crate::moment_engine::{continuous_moment_mc, finite_moment, mixed_vacuum_moment, MomentSpec};
use crate::partitions::{dyck_to_pair_partition, enumerate_dyck_words, SignWord};
use crate::test_function::TestFunction;
use config::{order_name, parse_order, resolve_functions, resolve_intervals, RunConfig};
use output::{Cell, Document, Format};

/// Largest half-length accepted by `enumerate`.
pub const MAX_ENUMERATE_HALF_LENGTH: u32 = 8;
/// Largest moment order accepted by `arcsine`.
pub const MAX_ARCSINE_ORDER: u32 = 12;

const DEFAULT_CONVERGE_GRID: [u32; 4] = [4, 16, 64, 256];
const DEFAULT_ARCSINE_GRID: [u32; 3] = [16, 64, 256];
const DEFAULT_MC_SAMPLES: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Capability(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// What a CLI invocation produced; `main` prints and exits accordingly.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "monotone-fock",
    version,
    about = "Vacuum moments on monotone and anti-monotone Fock spaces: \
             moment evaluation, convergence tables, arcsine and invariance experiments"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one vacuum moment (continuum limit, finite N, or Monte Carlo)
    Moment(CommonArgs),
    /// Finite-N convergence table for one moment
    Converge(CommonArgs),
    /// Position-sum moments against the exact arcsine limits
    Arcsine(CommonArgs),
    /// List Dyck words with their pair partitions
    Enumerate(CommonArgs),
    /// Convergence table for interval-restricted process moments
    Invariance(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Moment(c)
            | Command::Converge(c)
            | Command::Arcsine(c)
            | Command::Enumerate(c)
            | Command::Invariance(c) => c,
        }
    }
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// TOML config file; explicit flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sign word, e.g. --++ ('-' annihilator, '+' creator, left to right)
    #[arg(short = 'w', long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Function descriptor per letter (or one for all): const:c, ind:lo:hi,
    /// pc:b0,v0,b1,v1,…, poly:c0,c1,…
    #[arg(short = 'f', long = "function")]
    functions: Option<Vec<String>>,
    /// Fock-space order: monotone (default) or anti
    #[arg(long)]
    order: Option<String>,
    /// moment only: limit (default), finite, or mc
    #[arg(long)]
    mode: Option<String>,
    /// Grid size N (moment --mode finite); half-length n (enumerate)
    #[arg(short = 'n', long)]
    n: Option<u32>,
    /// Comma-separated N grid for the table commands, e.g. 4,16,64
    #[arg(long, value_delimiter = ',')]
    ns: Option<Vec<u32>>,
    /// Interval s:t per letter (or one for all), used by invariance
    #[arg(long = "interval")]
    intervals: Option<Vec<String>>,
    /// Monte Carlo sample count
    #[arg(long)]
    samples: Option<u64>,
    /// Monte Carlo seed; required whenever mc is requested
    #[arg(long)]
    seed: Option<u64>,
    /// Largest moment order for arcsine (even and odd rows up to this)
    #[arg(long)]
    max_order: Option<u32>,
    /// Output format: csv (default) or json
    #[arg(long)]
    format: Option<String>,
    /// Write the document to this path instead of stdout
    #[arg(long)]
    out: Option<String>,
}

impl CommonArgs {
    fn overrides(&self) -> RunConfig {
        RunConfig {
            word: self.word.clone(),
            functions: self.functions.clone(),
            order: self.order.clone(),
            mode: self.mode.clone(),
            n: self.n,
            ns: self.ns.clone(),
            intervals: self.intervals.clone(),
            samples: self.samples,
            seed: self.seed,
            max_order: self.max_order,
            format: self.format.clone(),
            out: self.out.clone(),
        }
    }

    fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("config file {}: {e}", path.display()))
                })?;
                RunConfig::from_toml(&text)?
            }
            None => RunConfig::default(),
        };
        Ok(base.merged_with(&self.overrides()))
    }
}

/// Parses `args` (including the program name) and runs the command. Never
/// panics on user input.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match CliArgs::try_parse_from(args) {
        Ok(parsed) => parsed,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(&parsed.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(command: &Command) -> Result<String, CliError> {
    let cfg = command.common().resolve()?;
    let format = Format::parse(cfg.format.as_deref())?;
    let doc = match command {
        Command::Moment(_) => cmd_moment(&cfg)?,
        Command::Converge(_) => cmd_converge(&cfg)?,
        Command::Arcsine(_) => cmd_arcsine(&cfg)?,
        Command::Enumerate(_) => cmd_enumerate(&cfg)?,
        Command::Invariance(_) => cmd_invariance(&cfg)?,
    };
    let rendered = doc.render(format);
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .map_err(|e| CliError::Io(format!("writing {path}: {e}")))?;
            Ok(String::new())
        }
        None => Ok(rendered),
    }
}

fn require_word(cfg: &RunConfig) -> Result<SignWord, CliError> {
    let text = cfg.word.as_deref().ok_or_else(|| {
        CliError::Config("missing word (give --word or set it in the config)".into())
    })?;
    text.parse()
        .map_err(|e| CliError::Config(format!("invalid word {text:?}: {e}")))
}

fn vanishing_note(word: &SignWord) -> &'static str {
    if word.len() % 2 == 1 {
        "vanishing: odd length"
    } else if !word.is_dyck() {
        "vanishing: not a Dyck word"
    } else {
        ""
    }
}

fn require_exact_class(functions: &[TestFunction]) -> Result<(), CliError> {
    for f in functions {
        if !f.is_exactly_integrable() {
            return Err(CliError::Capability(format!(
                "exact integration does not support {} test functions; use --mode mc",
                f.kind_name()
            )));
        }
    }
    Ok(())
}

/// One vacuum moment in the requested mode.
pub fn cmd_moment(cfg: &RunConfig) -> Result<Document, CliError> {
    let word = require_word(cfg)?;
    let order = parse_order(cfg.order.as_deref())?;
    let (functions, echoed) = resolve_functions(cfg.functions.as_deref(), word.len())?;
    let spec = MomentSpec::new(word.clone(), functions, order)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mode = cfg.mode.as_deref().unwrap_or("limit");
    let note = vanishing_note(&word);

    let mut doc;
    match mode {
        "limit" => {
            require_exact_class(spec.functions())?;
            let value = mixed_vacuum_moment(&spec);
            doc = Document::new("moment", ["word", "order", "mode", "value", "note"]);
            doc.push_row(vec![
                Cell::Text(word.to_string()),
                Cell::Text(order_name(order).into()),
                Cell::Text("limit".into()),
                Cell::Complex(value),
                Cell::Text(note.into()),
            ]);
        }
        "finite" => {
            let n_grid = cfg
                .n
                .ok_or_else(|| CliError::Config("mode=finite requires --n".into()))?;
            if n_grid == 0 {
                return Err(CliError::Config("--n must be positive".into()));
            }
            let value = finite_moment(&spec, n_grid);
            doc = Document::new("moment", ["word", "order", "mode", "N", "value", "note"]);
            doc.push_row(vec![
                Cell::Text(word.to_string()),
                Cell::Text(order_name(order).into()),
                Cell::Text("finite".into()),
                Cell::Int(u64::from(n_grid)),
                Cell::Complex(value),
                Cell::Text(note.into()),
            ]);
            doc.param("n", n_grid);
        }
        "mc" => {
            let samples = cfg.samples.unwrap_or(DEFAULT_MC_SAMPLES);
            let seed = cfg.seed.ok_or_else(|| {
                CliError::Config("Monte Carlo runs require an explicit --seed".into())
            })?;
            let (value, std_error) = continuous_moment_mc(&spec, samples, seed);
            doc = Document::new(
                "moment",
                [
                    "word",
                    "order",
                    "mode",
                    "samples",
                    "seed",
                    "value",
                    "std_error",
                    "note",
                ],
            );
            doc.push_row(vec![
                Cell::Text(word.to_string()),
                Cell::Text(order_name(order).into()),
                Cell::Text("mc".into()),
                Cell::Int(samples),
                Cell::Int(seed),
                Cell::Complex(value),
                Cell::Real(std_error),
                Cell::Text(note.into()),
            ]);
            doc.param("samples", samples);
            doc.param("seed", seed);
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown mode {other:?} (expected limit, finite or mc)"
            )))
        }
    }
    doc.param("word", word.to_string());
    doc.param("order", order_name(order));
    doc.param("mode", mode);
    doc.param("functions", json!(echoed));
    Ok(doc)
}

/// Finite-N values against the exact continuum limit, one row per N.
pub fn cmd_converge(cfg: &RunConfig) -> Result<Document, CliError> {
    let word = require_word(cfg)?;
    let order = parse_order(cfg.order.as_deref())?;
    let (functions, echoed) = resolve_functions(cfg.functions.as_deref(), word.len())?;
    require_exact_class(&functions)?;
    let spec =
        MomentSpec::new(word, functions, order).map_err(|e| CliError::Config(e.to_string()))?;
    let ns = cfg
        .ns
        .clone()
        .unwrap_or_else(|| DEFAULT_CONVERGE_GRID.to_vec());
    let study = convergence_study(&spec, &ns).map_err(|e| CliError::Config(e.to_string()))?;

    let mut doc = Document::new("converge", ["N", "value", "limit", "abs_error"]);
    doc.param("word", spec.word().to_string());
    doc.param("order", order_name(order));
    doc.param("functions", json!(echoed));
    doc.param("ns", json!(ns));
    for row in &study.rows {
        doc.push_row(vec![
            Cell::Int(u64::from(row.n_grid)),
            Cell::Complex(row.value),
            Cell::Complex(study.limit),
            Cell::Real(row.abs_error),
        ]);
    }
    Ok(doc)
}

/// Moments of the normalized position sum, one row per order `m`, with one
/// finite-N column per grid point and the exact limit (float and rational).
pub fn cmd_arcsine(cfg: &RunConfig) -> Result<Document, CliError> {
    let max_order = cfg.max_order.unwrap_or(8);
    if max_order > MAX_ARCSINE_ORDER {
        return Err(CliError::Config(format!(
            "max_order {max_order} exceeds the supported bound {MAX_ARCSINE_ORDER}"
        )));
    }
    let order = parse_order(cfg.order.as_deref())?;
    let ns = cfg
        .ns
        .clone()
        .unwrap_or_else(|| DEFAULT_ARCSINE_GRID.to_vec());
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::Config(
            "the N grid must be nonempty and positive".into(),
        ));
    }

    let mut columns = vec!["m".to_string()];
    columns.extend(ns.iter().map(|n| format!("finite_N{n}")));
    columns.push("limit".to_string());
    columns.push("limit_exact".to_string());
    let mut doc = Document::new("arcsine", columns);
    doc.param("order", order_name(order));
    doc.param("max_order", max_order);
    doc.param("ns", json!(ns));

    for m in 0..=max_order {
        let mut row = vec![Cell::Int(u64::from(m))];
        for &n_grid in &ns {
            let value = position_sum_moment(m, n_grid, order)
                .map_err(|e| CliError::Config(e.to_string()))?;
            row.push(Cell::Real(value));
        }
        row.push(Cell::Real(arcsine_moment(m)));
        row.push(Cell::Rational(arcsine_moment_exact(m).to_string()));
        doc.push_row(row);
    }
    Ok(doc)
}

/// The Dyck-word / pair-partition table for half-length n.
pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Document, CliError> {
    let n = cfg
        .n
        .ok_or_else(|| CliError::Config("enumerate requires --n".into()))?;
    if n > MAX_ENUMERATE_HALF_LENGTH {
        return Err(CliError::Config(format!(
            "n {n} exceeds the supported bound {MAX_ENUMERATE_HALF_LENGTH}"
        )));
    }
    let words = enumerate_dyck_words(n as usize).map_err(|e| CliError::Config(e.to_string()))?;
    let mut doc = Document::new("enumerate", ["word", "partition"]);
    doc.param("n", n);
    doc.param("count", words.len());
    for word in words {
        let partition = dyck_to_pair_partition(&word).expect("enumerated words are Dyck");
        doc.push_row(vec![
            Cell::Text(word.to_string()),
            Cell::Blocks(partition.blocks().to_vec()),
        ]);
    }
    Ok(doc)
}

/// Convergence of interval-restricted process moments, one row per N.
pub fn cmd_invariance(cfg: &RunConfig) -> Result<Document, CliError> {
    let word = require_word(cfg)?;
    let order = parse_order(cfg.order.as_deref())?;
    let (functions, echoed_functions) = resolve_functions(cfg.functions.as_deref(), word.len())?;
    require_exact_class(&functions)?;
    let (intervals, echoed_intervals) = resolve_intervals(cfg.intervals.as_deref(), word.len())?;
    let intervals = IntervalSpec::new(intervals).map_err(|e| CliError::Config(e.to_string()))?;
    let spec = ProcessMomentSpec::new(word, functions, intervals, order)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let ns = cfg
        .ns
        .clone()
        .unwrap_or_else(|| DEFAULT_CONVERGE_GRID.to_vec());
    let study = invariance_study(&spec, &ns).map_err(|e| CliError::Config(e.to_string()))?;

    let mut doc = Document::new("invariance", ["N", "value", "limit", "abs_error"]);
    doc.param("word", spec.word().to_string());
    doc.param("order", order_name(order));
    doc.param("functions", json!(echoed_functions));
    doc.param("intervals", json!(echoed_intervals));
    doc.param("ns", json!(ns));
    for row in &study.rows {
        doc.push_row(vec![
            Cell::Int(u64::from(row.n_grid)),
            Cell::Complex(row.value),
            Cell::Complex(study.limit),
            Cell::Real(row.abs_error),
        ]);
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Outcome {
        run(std::iter::once("monotone-fock").chain(args.iter().copied()))
    }

    #[test]
    fn enumerate_reproduces_the_six_letter_table() {
        let outcome = run_str(&["enumerate", "-n", "3"]);
        assert_eq!(outcome.code, 0, "{}", outcome.stderr);
        let lines: Vec<&str> = outcome.stdout.lines().collect();
        assert_eq!(lines[0], "word,partition");
        assert_eq!(lines.len(), 6);
        assert!(lines.contains(&"---+++,\"(1,6) (2,5) (3,4)\""));
        assert!(lines.contains(&"-+-+-+,\"(1,2) (3,4) (5,6)\""));
    }

    #[test]
    fn moment_modes() {
        let limit = run_str(&["moment", "--word", "--++"]);
        assert_eq!(limit.code, 0, "{}", limit.stderr);
        assert!(limit.stdout.contains("5.0000000000000000e-1"));

        let finite = run_str(&["moment", "--word", "--++", "--mode", "finite", "-n", "4"]);
        assert!(finite.stdout.contains("3.7500000000000000e-1"));

        let odd = run_str(&["moment", "--word", "-+-"]);
        assert_eq!(odd.code, 0);
        assert!(odd.stdout.contains("vanishing: odd length"));

        let non_dyck = run_str(&["moment", "--word=+-"]);
        assert_eq!(non_dyck.code, 0);
        assert!(non_dyck.stdout.contains("vanishing: not a Dyck word"));

        // an indicator cut restricts the pairing integral
        let indicator = run_str(&["moment", "--word", "-+", "-f", "ind:0:0.5"]);
        assert!(indicator.stdout.contains("5.0000000000000000e-1"));
    }

    #[test]
    fn invariance_with_full_intervals_matches_converge() {
        // default intervals are [0,1] per letter, so the CSV tables coincide
        let inv = run_str(&["invariance", "--word", "--++", "--ns", "4,16,64"]);
        let conv = run_str(&["converge", "--word", "--++", "--ns", "4,16,64"]);
        assert_eq!(inv.code, 0);
        assert_eq!(inv.stdout, conv.stdout);
        assert_eq!(inv.stdout.lines().count(), 4);
    }

    #[test]
    fn exit_codes() {
        // parse error
        assert_eq!(run_str(&["moment", "--word"]).code, 2);
        // missing required value
        assert_eq!(run_str(&["moment"]).code, 2);
        // capability: polynomial functions cannot go through the exact route
        let outcome = run_str(&["moment", "--word", "-+", "-f", "poly:0,1"]);
        assert_eq!(outcome.code, 3, "{}", outcome.stderr);
        // mc without a seed is a config error
        let outcome = run_str(&["moment", "--word", "-+", "--mode", "mc"]);
        assert_eq!(outcome.code, 2);
        // unknown order
        assert_eq!(run_str(&["moment", "--word", "-+", "--order", "x"]).code, 2);
        // help is a success
        assert_eq!(run_str(&["--help"]).code, 0);
    }

    #[test]
    fn mc_mode_is_reproducible() {
        let args = [
            "moment",
            "--word",
            "--++",
            "--mode",
            "mc",
            "--samples",
            "2000",
            "--seed",
            "11",
        ];
        let a = run_str(&args);
        let b = run_str(&args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, b);
    }

    #[test]
    fn converge_rows() {
        let outcome = run_str(&["converge", "--word", "--++", "--ns", "4,16,64"]);
        assert_eq!(outcome.code, 0, "{}", outcome.stderr);
        let lines: Vec<&str> = outcome.stdout.lines().collect();
        assert_eq!(lines[0], "N,value,limit,abs_error");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("4,"));
        assert!(lines[1].ends_with("1.2500000000000000e-1"));
    }

    #[test]
    fn arcsine_table() {
        let outcome = run_str(&["arcsine", "--max-order", "4", "--ns", "64"]);
        assert_eq!(outcome.code, 0, "{}", outcome.stderr);
        let lines: Vec<&str> = outcome.stdout.lines().collect();
        assert_eq!(lines[0], "m,finite_N64,limit,limit_exact");
        assert_eq!(lines.len(), 6); // m = 0..=4
        let m4: Vec<&str> = lines[5].split(',').collect();
        assert_eq!(m4[0], "4");
        assert_eq!(m4[2], "1.5000000000000000e0");
        assert_eq!(m4[3], "3/2");
        assert!(run_str(&["arcsine", "--max-order", "13"]).code == 2);
    }

    #[test]
    fn invariance_rows() {
        let outcome = run_str(&[
            "invariance",
            "--word",
            "-+",
            "--interval",
            "0:0.5",
            "--ns",
            "10,100",
        ]);
        assert_eq!(outcome.code, 0, "{}", outcome.stderr);
        let lines: Vec<&str> = outcome.stdout.lines().collect();
        assert_eq!(lines[0], "N,value,limit,abs_error");
        assert!(lines[1].contains("5.0000000000000000e-1"));
        assert!(lines[2].contains("5.0000000000000000e-1"));
    }

    #[test]
    fn config_file_and_flag_overrides() {
        let dir = std::env::temp_dir().join("monotone-fock-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "word = \"--++\"\nns = [4]\n").unwrap();
        let from_file = run_str(&["converge", "--config", path.to_str().unwrap()]);
        assert_eq!(from_file.code, 0, "{}", from_file.stderr);
        assert!(from_file.stdout.lines().nth(1).unwrap().starts_with("4,"));

        let overridden = run_str(&["converge", "--config", path.to_str().unwrap(), "--ns", "16"]);
        assert!(overridden.stdout.lines().nth(1).unwrap().starts_with("16,"));

        let missing = run_str(&["converge", "--config", "/nonexistent/x.toml"]);
        assert_eq!(missing.code, 2);

        std::fs::write(&path, "word = \"--++\"\nbogus = 1\n").unwrap();
        assert_eq!(
            run_str(&["converge", "--config", path.to_str().unwrap()]).code,
            2
        );
    }

    #[test]
    fn json_format() {
        let outcome = run_str(&["moment", "--word", "--++", "--format", "json"]);
        assert_eq!(outcome.code, 0);
        let doc: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
        assert_eq!(doc["command"], "moment");
        assert_eq!(doc["rows"][0]["value"]["re"], 0.5);
        assert_eq!(doc["params"]["word"], "--++");
    }

    #[test]
    fn out_file() {
        let dir = std::env::temp_dir().join("monotone-fock-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.csv");
        let outcome = run_str(&["enumerate", "-n", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(outcome.code, 0);
        assert!(outcome.stdout.is_empty());
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(written, "word,partition\n-+,\"(1,2)\"\n");
    }
}
