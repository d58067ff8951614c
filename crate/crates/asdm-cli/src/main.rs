//! `asdm` runs the adaptive steepest-descent solver (or a comparison
//! baseline) on the built-in problem suite, audits the trace against the
//! method's guarantees, and writes CSV or JSON artifacts.
//!
//! Exit codes: 0 success, 1 configuration error, 2 solver failure
//! (exhausted line search or a non-finite evaluation), 3 completed run
//! whose audit failed.

mod compare;
mod config;
mod error;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use asdm_core::{
    solve, solve_baseline, AuditReport, BaselineKind, Fixture, Objective, TerminationStatus, Trace,
};

use crate::compare::{gaps_csv, render_table, row, status_word, summary_csv};
use crate::config::{parse_config, resolve, RawRun, RunSpec, Solver};
use crate::error::{exit_code, CliError};
use crate::report::{atomic_write, audit_for, write_artifacts};

#[derive(Parser)]
#[command(
    name = "asdm",
    version,
    about = "Adaptive steepest-descent solver with trace audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Cmd {
    /// Solve one configured problem, audit the trace, write artifacts.
    Run(RunArgs),
    /// Run every section of a config on one problem and tabulate costs.
    Compare(CompareArgs),
}

#[derive(Args, Default)]
struct RunArgs {
    /// Config file: flat key = value lines, optional [section] headers.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Section to run when the config defines several.
    #[arg(long)]
    section: Option<String>,
    /// Problem id: quad1d, steepquad, quadnd, lse, fractional-ball, cubic.
    #[arg(long)]
    problem: Option<String>,
    /// ASDM, FixedStep, or ClassicArmijo.
    #[arg(long)]
    solver: Option<String>,
    /// Step acceptance rule: 1 (slope form) or 2 (norm form).
    #[arg(long)]
    rule: Option<String>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<u64>,
    #[arg(long)]
    i_cap: Option<u32>,
    /// Start point: comma-separated coordinates.
    #[arg(long)]
    x0: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Artifact path; nothing is written when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv (trace plus .audit.json sidecar) or json (single report).
    #[arg(long)]
    format: Option<String>,
    /// Dimension override (quadnd: log-spaced spectrum of this size).
    #[arg(long)]
    dim: Option<usize>,
    /// Explicit eigenvalues, comma-separated (quadnd).
    #[arg(long)]
    spectrum: Option<String>,
}

impl RunArgs {
    /// Flag values override config keys; both funnel through one table.
    fn overlay(&self, raw: &mut RawRun) {
        if let Some(v) = &self.problem {
            raw.set("problem", v.clone());
        }
        if let Some(v) = &self.solver {
            raw.set("solver", v.clone());
        }
        if let Some(v) = &self.rule {
            raw.set("rule", v.clone());
        }
        if let Some(v) = self.beta {
            raw.set("beta", v.to_string());
        }
        if let Some(v) = self.eps0 {
            raw.set("eps0", v.to_string());
        }
        if let Some(v) = self.v {
            raw.set("v", v.to_string());
        }
        if let Some(v) = self.grad_tol {
            raw.set("grad_tol", v.to_string());
        }
        if let Some(v) = self.max_iters {
            raw.set("max_iters", v.to_string());
        }
        if let Some(v) = self.i_cap {
            raw.set("i_cap", v.to_string());
        }
        if let Some(v) = &self.x0 {
            raw.set("x0", v.clone());
        }
        if let Some(v) = self.seed {
            raw.set("seed", v.to_string());
        }
        if let Some(v) = &self.output {
            raw.set("output", v.display().to_string());
        }
        if let Some(v) = &self.format {
            raw.set("format", v.clone());
        }
        if let Some(v) = self.dim {
            raw.set("dim", v.to_string());
        }
        if let Some(v) = &self.spectrum {
            raw.set("spectrum", v.clone());
        }
    }
}

#[derive(Args)]
struct CompareArgs {
    /// Config file with one [section] per run, at least two.
    #[arg(long)]
    config: PathBuf,
    /// Prefix for <prefix>.summary.csv and <prefix>.gaps.csv.
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Executed {
    trace: Trace,
    audit: AuditReport,
}

fn execute(spec: &RunSpec, fixture: &Fixture) -> Result<Executed, CliError> {
    let obj = &fixture.objective;
    spec.params.validate(obj.dimension())?;
    let mut trace = match spec.solver {
        Solver::Asdm => solve(obj, &spec.params)?,
        Solver::FixedStep => solve_baseline(obj, BaselineKind::FixedStep, &spec.params)?,
        Solver::ClassicArmijo => solve_baseline(obj, BaselineKind::ClassicArmijo, &spec.params)?,
    };
    trace.problem_id = Some(spec.problem.clone());
    let audit = audit_for(spec.solver, obj, &trace);
    Ok(Executed { trace, audit })
}

/// 2 if the line search gave out, 3 if the run finished but an audit
/// failed, 0 otherwise. MaxIters counts as success at process level; the
/// artifact records the status.
fn final_code(executed: &Executed) -> u8 {
    if matches!(
        executed.trace.status,
        TerminationStatus::BacktrackExhausted { .. }
    ) {
        2
    } else if !executed.audit.passed() {
        3
    } else {
        0
    }
}

fn read_config(path: &PathBuf) -> Result<Vec<RawRun>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn cmd_run(args: &RunArgs) -> Result<u8, CliError> {
    let mut raw = match &args.config {
        Some(path) => {
            let mut runs = read_config(path)?;
            match &args.section {
                Some(name) => runs
                    .into_iter()
                    .find(|r| &r.label == name)
                    .ok_or_else(|| CliError::Config(format!("no section `{name}`")))?,
                None if runs.len() == 1 => runs.remove(0),
                None => {
                    return Err(CliError::Config(format!(
                        "config defines {} sections; pick one with --section",
                        runs.len()
                    )))
                }
            }
        }
        None => RawRun {
            label: "run".to_string(),
            kv: Default::default(),
        },
    };
    args.overlay(&mut raw);
    let (spec, fixture) = resolve(&raw)?;
    let executed = execute(&spec, &fixture)?;
    let paths = write_artifacts(&spec, &fixture.objective, &executed.trace, &executed.audit)?;

    let last = executed.trace.records.last().expect("start row exists");
    println!(
        "{} / {} on {}: {} after {} iterations, f = {:e}, fevals = {}, gevals = {}, audit: {}",
        spec.label,
        spec.solver.name(),
        spec.problem,
        status_word(&executed.trace.status),
        last.k,
        executed.trace.final_f,
        last.fevals_cum,
        last.gevals_cum,
        if executed.audit.passed() { "ok" } else { "FAILED" },
    );
    for path in &paths {
        println!("wrote {}", path.display());
    }
    Ok(final_code(&executed))
}

fn cmd_compare(args: &CompareArgs) -> Result<u8, CliError> {
    let runs = read_config(&args.config)?;
    if runs.len() < 2 {
        return Err(CliError::Config(format!(
            "compare needs at least two [section] runs, found {}",
            runs.len()
        )));
    }
    let resolved: Vec<(RunSpec, Fixture)> =
        runs.iter().map(resolve).collect::<Result<_, _>>()?;
    let (first, _) = &resolved[0];
    for (spec, _) in &resolved[1..] {
        if spec.problem != first.problem || spec.options != first.options {
            return Err(CliError::Config(format!(
                "compare requires one problem; found `{}` and `{}`",
                first.problem, spec.problem
            )));
        }
    }

    let f_star = resolved[0].1.objective.metadata.f_star;
    let mut rows = Vec::new();
    let mut executed_runs = Vec::new();
    for (spec, fixture) in &resolved {
        let executed = execute(spec, fixture)?;
        write_artifacts(spec, &fixture.objective, &executed.trace, &executed.audit)?;
        rows.push(row(spec, &executed.trace, &executed.audit, f_star));
        executed_runs.push((spec.label.clone(), executed));
    }
    print!("{}", render_table(&rows));

    if let Some(prefix) = &args.output {
        let summary_path = prefix.with_extension("summary.csv");
        atomic_write(&summary_path, summary_csv(&rows).as_bytes())?;
        let traces: Vec<(&str, &Trace)> = executed_runs
            .iter()
            .map(|(label, e)| (label.as_str(), &e.trace))
            .collect();
        let gaps_path = prefix.with_extension("gaps.csv");
        atomic_write(&gaps_path, gaps_csv(&traces, f_star).as_bytes())?;
        println!("wrote {}", summary_path.display());
        println!("wrote {}", gaps_path.display());
    }

    let codes: Vec<u8> = executed_runs.iter().map(|(_, e)| final_code(e)).collect();
    if codes.contains(&2) {
        Ok(2)
    } else if codes.contains(&3) {
        Ok(3)
    } else {
        Ok(0)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests arrive as Err; they are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Cmd::Run(args) => cmd_run(args),
        Cmd::Compare(args) => cmd_compare(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
