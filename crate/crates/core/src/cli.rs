//! Command-line front end shared by the `advisor` binary and the tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::baselines::{budget_sweep, reference_budget, run_strategy, Strategy};
use crate::benefit::ObjectiveMode;
use crate::candidates::load_candidates;
use crate::catalog::load_catalog;
use crate::costmodel::CostModel;
use crate::error::AdvisorError;
use crate::problem::Problem;
use crate::report::{sweep_csv, AdviseReport};
use crate::workload::load_workload;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Select materialized views and indexes for a star-schema workload under a
/// storage budget.
#[derive(Debug, Parser)]
#[command(name = "advisor", version)]
pub struct Args {
    /// Catalog file (TOML).
    #[arg(long, value_name = "FILE")]
    pub schema: PathBuf,
    /// Workload file (SQL subset).
    #[arg(long, value_name = "FILE")]
    pub workload: PathBuf,
    /// Candidate file (TOML); generated from the workload when omitted.
    #[arg(long, value_name = "FILE")]
    pub candidates: Option<PathBuf>,
    /// Storage budget in bytes, or `N%` of what an unconstrained
    /// simultaneous run uses.
    #[arg(long, allow_hyphen_values = true)]
    pub budget: Option<String>,
    #[arg(long, default_value = "simultaneous",
          value_parser = ["exhaustive", "view-only", "index-only", "simultaneous", "none"])]
    pub mode: String,
    /// Overrides the ratio given in the workload file.
    #[arg(long, value_name = "R")]
    pub refresh_ratio: Option<f64>,
    /// Minimum number of queries an index column must serve when generating
    /// candidates.
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub min_support: usize,
    #[arg(long, default_value = "normalized", value_parser = ["normalized", "literal"])]
    pub objective: String,
    /// Comma-separated budget fractions in (0, 1]; writes a CSV sweep
    /// instead of a report.
    #[arg(long, value_name = "F1,F2,...", value_delimiter = ',')]
    pub sweep: Option<Vec<f64>>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Print each greedy step to standard error as it is committed.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: AdvisorError,
    },
    #[error(transparent)]
    Advisor(#[from] AdvisorError),
}

impl CliError {
    /// 1 for bad input, 2 for a violated constraint.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Advisor(e) | CliError::Input { source: e, .. } if e.is_constraint_error() => {
                2
            }
            _ => 1,
        }
    }
}

/// How `--budget` was given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetSpec {
    Bytes(i64),
    Percent(f64),
}

pub fn parse_budget(text: &str) -> Result<BudgetSpec, CliError> {
    let t = text.trim();
    if let Some(p) = t.strip_suffix('%') {
        let pct: f64 = p
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid budget {text:?}")))?;
        if pct < 0.0 || !pct.is_finite() {
            return Err(AdvisorError::InvalidBudget(pct as i64).into());
        }
        return Ok(BudgetSpec::Percent(pct));
    }
    t.parse::<i64>()
        .map(BudgetSpec::Bytes)
        .map_err(|_| CliError::Usage(format!("invalid budget {text:?}: expected bytes or N%")))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn input<T>(path: &Path, r: crate::error::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads the problem described by the file flags.
pub fn load_problem(args: &Args) -> Result<Problem, CliError> {
    let catalog = input(&args.schema, load_catalog(&read(&args.schema)?))?;
    let mut workload = input(
        &args.workload,
        load_workload(&read(&args.workload)?, &catalog),
    )?;
    if let Some(r) = args.refresh_ratio {
        workload.refresh_ratio = r;
        input(&args.workload, workload.validate())?;
    }
    match &args.candidates {
        Some(path) => {
            let cands = input(path, load_candidates(&read(path)?, &catalog))?;
            input(path, Problem::new(catalog, workload, cands))
        }
        None => Ok(Problem::generate(catalog, workload, args.min_support)?),
    }
}

fn emit(args: &Args, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn mode_of(args: &Args) -> ObjectiveMode {
    args.objective
        .parse()
        .expect("clap restricts objective values")
}

/// Single strategy run; writes the report.
pub fn run_advise(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let budget_text = args
        .budget
        .as_deref()
        .ok_or_else(|| CliError::Usage("--budget is required unless --sweep is given".into()))?;
    let spec = parse_budget(budget_text)?;
    let problem = load_problem(args)?;
    let model = CostModel::new(&problem);
    let ratio = problem.workload.refresh_ratio;
    let mode = mode_of(args);
    let budget = match spec {
        BudgetSpec::Bytes(b) => b,
        BudgetSpec::Percent(p) => {
            let reference = reference_budget(&model, ratio, mode)?;
            (reference as f64 * p / 100.0).floor().min(i64::MAX as f64) as i64
        }
    };
    let strategy: Strategy = args.mode.parse().map_err(CliError::Usage)?;
    let outcome = run_strategy(&model, strategy, budget, ratio, mode)?;
    if args.trace {
        for it in &outcome.iterations {
            let _ = writeln!(
                err,
                "step {}: {} F={:e} +{}B remaining={}B cost={}",
                it.iteration,
                it.object,
                it.objective,
                it.added_bytes,
                it.remaining_budget,
                it.workload_cost
            );
        }
    }
    let report = AdviseReport::new(&model, &outcome, budget as u64);
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    emit(args, &text, out)
}

/// Budget sweep; writes CSV.
pub fn run_sweep(args: &Args, out: &mut dyn Write) -> Result<(), CliError> {
    let fractions = args.sweep.as_deref().unwrap_or(&[]);
    if fractions.is_empty() {
        return Err(CliError::Usage(
            "--sweep needs at least one fraction".into(),
        ));
    }
    let problem = load_problem(args)?;
    let model = CostModel::new(&problem);
    let rows = budget_sweep(
        &model,
        fractions,
        problem.workload.refresh_ratio,
        mode_of(args),
    )?;
    emit(args, &sweep_csv(&rows), out)
}

/// Parses `argv` (including the program name) and runs; returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = if args.sweep.is_some() {
        run_sweep(&args, out)
    } else {
        run_advise(&args, out, err)
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
