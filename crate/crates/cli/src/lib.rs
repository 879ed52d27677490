//! The `octonode` command line: argument parsing, field dispatch, JSON
//! output and exit codes. Each subcommand lives in its own module and
//! returns an [`Outcome`]; `run` turns that into bytes and an exit code.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use octonode_core::{CurveError, FieldSpec, FormatError, GbError, MonomialOrder, OcticError};
use serde::Serialize;
use thiserror::Error;

pub mod config;
pub mod curve;
pub mod gb;
pub mod octic;
pub mod table;

pub use config::RunConfig;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CERTIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    pub(crate) fn in_file(path: &Path, e: FormatError) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<OcticError> for CliError {
    fn from(e: OcticError) -> Self {
        match e {
            OcticError::Gb(g) => g.into(),
            OcticError::DegenerateOctic => CliError::Precondition(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Gb(g) => g.into(),
            CurveError::NotACurve { .. } => CliError::Precondition(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a subcommand produced: the text to emit and the exit code it earned.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn json<T: Serialize>(value: &T, code: i32) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
        text.push('\n');
        Outcome { text, code }
    }

    pub fn pass_if<T: Serialize>(value: &T, passed: bool) -> Self {
        Outcome::json(value, if passed { EXIT_PASS } else { EXIT_CERTIFICATION_FAILED })
    }
}

/// Run `$body` with `$f` bound to the concrete field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            octonode_core::FieldSpec::PrimeField(p) => {
                let $f = octonode_core::Fp::new(p as u64).map_err(|e| $crate::CliError::Input(e.to_string()))?;
                $body
            }
            octonode_core::FieldSpec::Rationals => {
                let $f = octonode_core::Rationals;
                $body
            }
        }
    };
}
pub(crate) use with_field;

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(name = "octonode", version, about = "Nodal octic surfaces from rank-two bundles on P^3")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse::<FieldSpec>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Coefficient field: `fp:P` or `q`
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// Monomial order: grevlex, lex or elim:K
    #[arg(long, global = true, value_parser = |s: &str| s.parse::<MonomialOrder>())]
    pub order: Option<MonomialOrder>,
    #[arg(long, global = true, env = "OCTONODE_SEED")]
    pub seed: Option<u64>,
    /// Maximum number of critical pairs per Gröbner basis
    #[arg(long, global = true)]
    pub spair_budget: Option<usize>,
    /// Maximum pair degree per Gröbner basis
    #[arg(long, global = true)]
    pub degree_budget: Option<u32>,
    /// Repeat the computation over each prime and compare, e.g. 32003,65537
    #[arg(long, global = true, value_delimiter = ',')]
    pub consensus: Vec<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Concurrent table rows
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut c = RunConfig { field: self.field, ..Default::default() };
        if let Some(o) = self.order {
            c.order = o;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(b) = self.spair_budget {
            c.spair_budget = b;
        }
        if let Some(b) = self.degree_budget {
            c.degree_budget = b;
        }
        if let Some(w) = self.workers {
            c.workers = w;
        }
        c.consensus_primes = self.consensus.clone();
        c.output_path = self.out.clone();
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis and leading-term ideal of an ideal file
    Gb { file: PathBuf },
    /// Certify the double octic of a section triple
    Octic(octic::OcticArgs),
    /// Implicitize a curve in P^3 and report its invariants
    Curve(curve::CurveArgs),
    /// Invariants predicted from gamma or from a Serre curve degree
    Predict(table::PredictArgs),
    /// Predictions and certified counts for ranges of split types and curve degrees
    Table(table::TableArgs),
}

pub fn execute(command: &Command, config: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Gb { file } => gb::run(file, config),
        Command::Octic(args) => octic::run(args, config),
        Command::Curve(args) => curve::run(args, config),
        Command::Predict(args) => table::predict(args),
        Command::Table(args) => table::run(args, config),
    }
}

/// Parse arguments, run, write the output and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let result = cli.global.config().and_then(|config| {
        let outcome = execute(&cli.command, &config)?;
        match &config.output_path {
            Some(path) => std::fs::write(path, &outcome.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => print!("{}", outcome.text),
        }
        Ok(outcome.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("octonode: error: {e}");
            e.exit_code()
        }
    }
}
