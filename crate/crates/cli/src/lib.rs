//! Batch front end for `freeprob` and `freeprob-randmat`.
//!
//! Every run prints its resolved configuration before the result: as the
//! `config` field of the JSON object, or as a `# config:` line above the
//! CSV header. Exact rationals are written as `"p/q"` strings.

pub mod commands;
pub mod verify;

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

/// Default cap on partition sizes; override with `FREEPROB_MAX_K`.
pub const DEFAULT_MAX_K: usize = 12;

#[derive(Parser, Debug, Serialize)]
#[command(name = "freeprob", version, about = "Exact free probability and Weingarten calculus")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Easy group series: S, O, U, B, H, K, Hs(s).
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Use the free version of the group.
    #[arg(long, global = true)]
    pub free: bool,
    #[arg(long = "N", global = true)]
    #[serde(rename = "N")]
    pub n: Option<u64>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Rational parameter t, e.g. 1/2.
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// Rational parameter s, or `inf`.
    #[arg(long, global = true)]
    pub s: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Enumerate or count a category of partitions.
    Partitions(commands::PartitionsArgs),
    /// Exact counting sequences and probabilities.
    Numbers(commands::NumbersArgs),
    /// Moment-cumulant conversion and the Bercovici-Pata map.
    Cumulants(commands::CumulantsArgs),
    /// Classical and free convolutions of moment sequences.
    Convolve(commands::ConvolveArgs),
    /// Cauchy, R and S transforms; density recovery.
    Transform(commands::TransformArgs),
    /// Moments, densities and atoms of the standard laws.
    Law(commands::LawArgs),
    /// Exact Gram and Weingarten matrices.
    Weingarten(commands::WeingartenArgs),
    /// Haar integral of a monomial such as "u[1,1]u[1,2]*".
    Integrate(commands::IntegrateArgs),
    /// Monte Carlo moments or spectra of random matrices.
    Simulate(commands::SimulateArgs),
    /// Loop series, theta series and circular measure of a rooted graph.
    Graph(commands::GraphArgs),
    /// Run the acceptance suite.
    Verify(commands::VerifyArgs),
}

/// Bad flag values or combinations; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Result of one subcommand before rendering.
pub struct Report {
    pub result: Value,
    pub table: Option<Table>,
    /// Nonzero when the command ran but its checks failed.
    pub failed: bool,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn json(result: Value) -> Self {
        Report { result, table: None, failed: false }
    }

    pub fn with_table(result: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Report { result, table: Some(Table { header, rows }), failed: false }
    }
}

pub fn max_k() -> usize {
    std::env::var("FREEPROB_MAX_K").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_K)
}

fn render(config: &Value, report: &Report, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "config": config, "result": report.result }))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report.table.as_ref().ok_or_else(|| usage("this subcommand has no CSV form; use --format json"))?;
            let mut s = format!("# config: {}\n", serde_json::to_string(config)?);
            s.push_str(&table.header.join(","));
            s.push('\n');
            for row in &table.rows {
                s.push_str(&row.join(","));
                s.push('\n');
            }
            Ok(s)
        }
    }
}

/// Parses `argv`, runs one subcommand and writes to `out`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut config = serde_json::to_value(&cli).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut config {
        m.insert("max_k".into(), json!(max_k()));
    }
    let outcome = commands::dispatch(&cli).and_then(|r| render(&config, &r, cli.common.format).map(|s| (s, r.failed)));
    match outcome {
        Ok((text, failed)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}
