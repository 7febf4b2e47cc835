//! Command-line surface. Every run writes JSON tagged with a schema version
//! (CSV for trajectories on request) and exits with 0 on success, 1 when a
//! verification fails, 2 on bad input and 3 when a flow blows up.

pub mod commands;
pub mod config;
pub mod presets;
pub mod text;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use config::{FlowConfig, Format, RunConfig, SampleConfig, SeedArg, SeriesConfig, Suite, SymmetrizeConfig, SystemArg, VerifyConfig};
pub use presets::{Preset, PresetName};
pub use text::{format_complex, parse_complex, ComplexArg, ComplexList, SCHEMA};
pub use verify::Check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sigma3", version, about = "Symmetric-square coordinates, commuting flows and series solutions for genus-3 curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    #[command(flatten)]
    Run(RunConfig),
    /// Repeat a run from its JSON config, or from an output that embeds one.
    Replay { path: PathBuf },
}

/// What a run produced: the main body, optional metadata kept apart from a
/// CSV body, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub meta: Option<String>,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BlowUp { .. } => EXIT_BLOWUP,
        _ => EXIT_USAGE,
    }
}

fn verify_cmd(config: &RunConfig, c: &VerifyConfig) -> Outcome {
    let want = |s: Suite| c.suite == s || c.suite == Suite::All;
    let mut checks = Vec::new();
    if want(Suite::Symbolic) {
        checks.extend(verify::symbolic_checks());
    }
    if want(Suite::Numeric) {
        checks.extend(verify::numeric_checks(c.trials, c.seed, c.tol));
    }
    if want(Suite::Series) {
        checks.extend(verify::series_checks(c.order));
    }
    let passed = checks.iter().all(|k| k.pass);
    let first_failure = checks.iter().find(|k| !k.pass).map(|k| k.name.clone());
    let report = json!({
        "schema": SCHEMA,
        "config": config,
        "passed": passed,
        "total": checks.len(),
        "failed": checks.iter().filter(|k| !k.pass).count(),
        "first_failure": first_failure,
        "checks": checks,
    });
    let mut body = serde_json::to_string_pretty(&report).expect("json values serialize");
    body.push('\n');
    Outcome { body, meta: None, code: if passed { EXIT_OK } else { EXIT_FAIL } }
}

/// Runs one configured command without touching files or streams.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match config {
        RunConfig::Verify(c) => Ok(verify_cmd(config, c)),
        RunConfig::Flow(c) => commands::flow(config, c),
        RunConfig::Series(c) => commands::series(config, c),
        RunConfig::Symmetrize(c) => commands::symmetrize_cmd(c),
        RunConfig::Sample(c) => commands::sample(config, c),
    }
}

/// Reads a config: either a bare one or the `config` member of an output.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Error::InvalidArgument(format!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&src).map_err(bad)?;
    let v = match v.get("config") {
        Some(inner) => inner.clone(),
        None => v,
    };
    serde_json::from_value(v).map_err(bad)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn emit(config: &RunConfig, out: &Outcome) -> Result<()> {
    match config.output() {
        Some(path) => {
            write_file(path, &out.body)?;
            if let Some(meta) = &out.meta {
                let mut side = path.clone().into_os_string();
                side.push(".meta.json");
                write_file(Path::new(&side), meta)?;
            }
        }
        None => {
            print!("{}", out.body);
            let _ = std::io::stdout().flush();
            if let Some(meta) = &out.meta {
                eprint!("{meta}");
            }
        }
    }
    Ok(())
}

/// Parses arguments, runs, writes output, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = match cli.command {
        CliCommand::Run(c) => c,
        CliCommand::Replay { path } => match load_config(&path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
    };
    match execute(&config).and_then(|out| emit(&config, &out).map(|_| out.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
