//! Command-line front end: verification suites, zero scans, boundary
//! sampling and convergence studies with CSV or JSON-lines output.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{parse_config_file, Command, RunConfig};
use error::{CliError, EXIT_CONFIG, EXIT_OK, EXIT_VERIFY_FAILED};

#[derive(Debug, Parser)]
#[command(name = "bkzeta", version, about = "Boundary-condition zeta zero laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Run the invariant suites.
    Verify(Flags),
    /// Locate critical-line zeros of the boundary objective.
    Scan(Flags),
    /// Sample boundary values over a grid.
    Boundary(Flags),
    /// Study convergence in the squeezing parameter.
    Converge(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// `lo:hi` for scan, otherwise a value or comma list.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long)]
    step: Option<String>,
    /// Single value or comma list.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Comma list of y values.
    #[arg(long)]
    y: Option<String>,
    /// limit | finite
    #[arg(long)]
    mode: Option<String>,
    /// original | tilde | limit
    #[arg(long)]
    variant: Option<String>,
    /// Refinement tolerance for scan, tolerance override for verify.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv | records
    #[arg(long)]
    format: Option<String>,
    /// Restrict verify to one suite.
    #[arg(long)]
    only: Option<String>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn to_map(&self) -> BTreeMap<String, String> {
        let pairs = [
            ("t", &self.t),
            ("step", &self.step),
            ("lambda", &self.lambda),
            ("n", &self.n),
            ("y", &self.y),
            ("mode", &self.mode),
            ("variant", &self.variant),
            ("tol", &self.tol),
            ("format", &self.format),
            ("only", &self.only),
        ];
        let mut map: BTreeMap<String, String> = pairs
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
            .collect();
        if let Some(out) = &self.out {
            map.insert("out".into(), out.display().to_string());
        }
        map
    }
}

/// Result of one invocation: exit code, the report, and diagnostics meant
/// for standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub diagnostics: String,
    /// True when the report was written to the `out` path.
    pub written: bool,
}

impl Outcome {
    fn failure(err: &CliError) -> Self {
        Self {
            code: err.exit_code(),
            report: String::new(),
            diagnostics: format!("error: {err}\n"),
            written: false,
        }
    }
}

/// Parse arguments, run the command and write the report to `--out` if
/// given. The report is returned either way.
pub fn run<I, A>(args: I) -> Outcome
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            return Outcome {
                code,
                report: String::new(),
                diagnostics: e.render().to_string(),
                written: false,
            };
        }
    };
    let (command, flags) = match &cli.command {
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Scan(f) => (Command::Scan, f),
        Sub::Boundary(f) => (Command::Boundary, f),
        Sub::Converge(f) => (Command::Converge, f),
    };
    let cfg = match load(command, flags) {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::failure(&e),
    };
    let mut outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => return Outcome::failure(&e),
    };
    if let Some(path) = cfg.get("out") {
        match std::fs::write(path, &outcome.report) {
            Ok(()) => outcome.written = true,
            Err(e) => {
                let e = CliError::Io(e);
                outcome.code = e.exit_code();
                outcome.diagnostics.push_str(&format!("error: {e}\n"));
            }
        }
    }
    outcome
}

fn load(command: Command, flags: &Flags) -> Result<RunConfig, CliError> {
    let file = match &flags.config {
        Some(path) => parse_config_file(&std::fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    let cfg = RunConfig::assemble(command, file, flags.to_map())?;
    validate(&cfg)?;
    Ok(cfg)
}

/// Check every parameter the command reads before computing anything.
fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.format()?;
    match cfg.command {
        Command::Verify => {
            cfg.only()?;
            cfg.tolerance_override()?;
        }
        Command::Scan => {
            cfg.scan_settings()?;
        }
        Command::Boundary => {
            cfg.list("t")?;
            cfg.list("y")?;
            cfg.lambdas()?;
            cfg.quantum_number()?;
            cfg.variant()?;
        }
        Command::Converge => {
            cfg.list("t")?;
            cfg.lambdas()?;
            cfg.quantum_number()?;
            cfg.variant()?;
        }
    }
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let format = cfg.format()?;
    let echo = cfg.echo();
    let (table, code, diagnostics) = match cfg.command {
        Command::Verify => {
            let checks = verify::run_suites(cfg.only()?, cfg.tolerance_override()?);
            let code = if checks.iter().all(|c| c.passed()) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            let human = verify::human_table(&checks);
            (verify::report(&checks), code, human)
        }
        Command::Scan => with_empty(commands::scan(cfg)?),
        Command::Boundary => with_empty(commands::boundary(cfg)?),
        Command::Converge => with_empty(commands::converge(cfg)?),
    };
    Ok(Outcome {
        code,
        report: table.render(format, &echo)?,
        diagnostics,
        written: false,
    })
}

fn with_empty((table, code): (output::Table, i32)) -> (output::Table, i32, String) {
    (table, code, String::new())
}
