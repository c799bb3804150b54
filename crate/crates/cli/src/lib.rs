//! Command-line front end: parses input documents, dispatches to the
//! verifiers and renders a [`Report`] with a stable exit code
//! (0 pass, 1 mathematical failure, 2 input or precondition error).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wdvv_core::frobenius::check_axioms;
use wdvv_core::input::{
    echo_frobenius, echo_operator, echo_prepotential, echo_square, from_json, FrobeniusDoc, KontsevichDoc, LenardInput,
    OperatorDoc, WdvvDoc,
};
use wdvv_core::kontsevich::{certify_table, nk_recursion, solve_from_pde};
use wdvv_core::lenard::{
    check_lemma1, check_lemma2, check_lenard_complex, recursion_operators, torsion_report, RecursionOperator,
    SquareOfFunctions,
};
use wdvv_core::wdvv::{check_wdvv, Prepotential};
use wdvv_core::{Clause, Error, Report, Result};

#[derive(Debug, Parser)]
#[command(
    name = "wdvv",
    version,
    about = "Exact verification of WDVV equations and their geometric characterizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// The matrix equations alone.
    Generalized,
    /// Additionally require a constant pivot slice.
    Ordinary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the WDVV equations for a prepotential document.
    CheckWdvv {
        #[arg(long)]
        input: PathBuf,
        /// 1-based pivot variable; overrides the document.
        #[arg(long)]
        pivot: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Generalized)]
        mode: Mode,
    },
    /// Compute the rational-curve numbers N_1..N_k, or certify a given table.
    Kontsevich {
        /// Truncation order.
        #[arg(short = 'k', default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Also recompute the table by coefficient matching in the PDE.
        #[arg(long)]
        check_pde: bool,
        /// Certify this table instead of the computed one.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Lenard-chain, operator-commutation and Lenard-complex checks for a square of functions.
    CheckLenard {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pivot: Option<usize>,
    },
    /// The Frobenius-manifold axioms in flat coordinates.
    CheckFrobenius {
        #[arg(long)]
        input: PathBuf,
    },
    /// Haantjes (and Nijenhuis) torsion of an operator or of recursion operators.
    Haantjes {
        #[arg(long)]
        input: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckWdvv { .. } => "check-wdvv",
            Command::Kontsevich { .. } => "kontsevich",
            Command::CheckLenard { .. } => "check-lenard",
            Command::CheckFrobenius { .. } => "check-frobenius",
            Command::Haantjes { .. } => "haantjes",
        }
    }
}

/// Result of one invocation: the report (absent on usage errors), the exit
/// code, and usage, help or version text from argument parsing.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: i32,
    pub message: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let report = execute(&cli.command);
            Outcome {
                exit_code: report.status.exit_code(),
                report: Some(report),
                message: String::new(),
            }
        }
        Err(e) => {
            let exit_code = if e.use_stderr() { 2 } else { 0 };
            Outcome {
                report: None,
                exit_code,
                message: e.render().to_string(),
            }
        }
    }
}

/// Runs a parsed command; failures to read or interpret the input become
/// `status = error` reports.
pub fn execute(command: &Command) -> Report {
    let start = Instant::now();
    let mut echo = Value::Null;
    let result = dispatch(command, &mut echo);
    let mut report = match result {
        Ok(report) => report,
        Err(e) => Report::error(command.name(), e.to_string()),
    };
    report.command = command.name().to_string();
    report.inputs_echo = echo;
    report.timing_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    report
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

/// Reads a document, leaving the raw JSON as the echo until a canonical one
/// is available.
fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path, echo: &mut Value) -> Result<T> {
    let text = read(path)?;
    if let Ok(raw) = serde_json::from_str::<Value>(&text) {
        *echo = raw;
    }
    from_json(&text)
}

fn dispatch(command: &Command, echo: &mut Value) -> Result<Report> {
    match command {
        Command::CheckWdvv { input, pivot, mode } => {
            let doc: WdvvDoc = load(input, echo)?;
            let p = doc.build(*pivot)?;
            *echo = echo_prepotential(&p);
            let verdict = check_wdvv(&p)?;
            Ok(verdict.to_report(&p.ctx, *mode == Mode::Ordinary))
        }
        Command::Kontsevich { k, check_pde, input } => {
            let table = match input {
                Some(path) => load::<KontsevichDoc>(path, echo)?.build()?,
                None => nk_recursion(*k)?,
            };
            *echo = json!({ "k": table.order(), "check_pde": check_pde, "N": table.to_json() });
            let mut report = certify_table(&table);
            if *check_pde {
                let solved = solve_from_pde(table.order())?;
                let witness = (1..=table.order()).find(|&i| table.get(i) != solved.get(i)).map(|i| {
                    format!(
                        "N_{i} = {} but coefficient matching gives {}",
                        table.get(i),
                        solved.get(i)
                    )
                });
                report = report.with_clause(Clause::from_witness("matches_pde_solution", witness));
            }
            Ok(report)
        }
        Command::CheckLenard { input, pivot } => {
            let doc: LenardInput = load(input, echo)?;
            let (s, x) = doc.build(*pivot)?;
            *echo = echo_square(&s, &x);
            check_lenard(&s, &x)
        }
        Command::CheckFrobenius { input } => {
            let doc: FrobeniusDoc = load(input, echo)?;
            let data = doc.build()?;
            *echo = echo_frobenius(&data);
            let axioms = check_axioms(&data);
            let mut report = axioms.to_report(&data.ctx);
            if let Some(f) = &axioms.f_reconstructed {
                let p = Prepotential::new(data.ctx.clone(), f.clone(), data.e_index())?;
                let verdict = check_wdvv(&p);
                let summary = match verdict {
                    Ok(v) => json!({ "satisfied": v.satisfied, "ordinary": v.ordinary }),
                    Err(e) => json!({ "error": e.to_string() }),
                };
                report = report.with_data("reconstructed_wdvv", summary);
            }
            Ok(report)
        }
        Command::Haantjes { input } => {
            let doc: OperatorDoc = load(input, echo)?;
            let (ctx, ops) = match &doc {
                OperatorDoc::Operator { vars, k, den } => {
                    let (ctx, op) = OperatorDoc::build_operator(vars, k, den.as_deref())?;
                    *echo = echo_operator(&ctx, &op);
                    (ctx, vec![RecursionOperator::new(0, op)])
                }
                OperatorDoc::Square(square) => {
                    let (s, x) = square.build(None)?;
                    *echo = echo_square(&s, &x);
                    let ops = recursion_operators(&s)?;
                    (s.ctx, ops)
                }
                OperatorDoc::Prepotential(f) => {
                    let p = f.build(None)?;
                    *echo = echo_prepotential(&p);
                    let s = SquareOfFunctions::hessian_of(p.ctx.clone(), &p.f, p.pivot)?;
                    (p.ctx, recursion_operators(&s)?)
                }
            };
            Ok(torsion_report(&ctx, &ops))
        }
    }
}

/// Chain checks (independent chain, symmetric correlations), operator
/// commutation (cross-checked against WDVV) and the Lenard-complex clauses
/// with `dA = dA_pp`.
fn check_lenard(s: &SquareOfFunctions, x: &wdvv_core::lenard::VectorField) -> Result<Report> {
    let lemma1 = check_lemma1(s, x)?;
    let lemma2 = check_lemma2(s, x)?;
    let ops = recursion_operators(s)?;
    let complex = check_lenard_complex(&s.ctx, x, s.entry(s.pivot, s.pivot), &ops, s.pivot)?;
    let unity = complex.data.get("unity").cloned().unwrap_or(Value::Bool(false));
    Ok(Report::from_clauses("check-lenard", Vec::new())
        .absorb("lemma1", lemma1)
        .absorb("lemma2", lemma2)
        .absorb("complex", complex)
        .with_data("unity", unity))
}
