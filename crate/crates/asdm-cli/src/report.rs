//! Run artifacts: a JSON report (trace + audit + problem block) or a CSV
//! trace with a JSON audit sibling. Floats print as shortest round-trip
//! decimals, so equal bits give equal text and the files are byte-stable
//! for a fixed seed and config.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use asdm_core::diagnostics::{fit_sublinear_constant, rate_tail_nonincreasing};
use asdm_core::{audit_run, AuditReport, Objective, ObjectiveSpec, Trace};

use crate::config::{Format, RunSpec, Solver};
use crate::error::CliError;

#[derive(Serialize)]
pub struct ProblemBlock {
    pub id: String,
    pub dimension: usize,
    pub lipschitz_grad: Option<f64>,
    pub mu: Option<f64>,
    pub v_exponent: f64,
    pub f_star: Option<f64>,
}

impl ProblemBlock {
    pub fn new(id: &str, obj: &ObjectiveSpec) -> ProblemBlock {
        let md = &obj.metadata;
        ProblemBlock {
            id: id.to_string(),
            dimension: obj.dimension(),
            lipschitz_grad: md.lipschitz_grad,
            mu: md.mu,
            v_exponent: md.v_exponent,
            f_star: md.f_star,
        }
    }
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub label: &'a str,
    pub solver: &'a str,
    pub problem: ProblemBlock,
    pub trace: &'a Trace,
    pub audit: &'a AuditReport,
}

/// Sidecar for CSV runs: everything but the rows the CSV already holds.
#[derive(Serialize)]
struct AuditSidecar<'a> {
    label: &'a str,
    solver: &'a str,
    problem: ProblemBlock,
    status: &'a asdm_core::TerminationStatus,
    final_f: f64,
    audit: &'a AuditReport,
}

/// Audits applicable to every descent run. The adaptive-rule audits
/// (epsilon ceiling, decrease constant, step bound, steady state) certify
/// machinery the baselines do not use and are left unchecked for them.
pub fn baseline_audit(obj: &ObjectiveSpec, trace: &Trace) -> AuditReport {
    let mut report = AuditReport {
        monotone_ok: asdm_core::diagnostics::audit_monotonicity(trace),
        eps_bound_ok: None,
        eps_bar: None,
        decrease_audit_ok: None,
        c_bar: None,
        step_bound_ok: None,
        steady_state_ok: None,
        ctilde_ok: None,
        c_tilde: None,
        rate_constant: None,
        rate_tail_ok: None,
        theta_min: None,
        notes: vec!["adaptive-rule audits do not apply to this solver".to_string()],
    };
    if let Some(f_star) = obj.metadata.f_star {
        match fit_sublinear_constant(trace, f_star) {
            Ok(c) => report.rate_constant = Some(c),
            Err(e) => report.notes.push(e.to_string()),
        }
        report.rate_tail_ok = Some(rate_tail_nonincreasing(trace, f_star));
    }
    report
}

pub fn audit_for(solver: Solver, obj: &ObjectiveSpec, trace: &Trace) -> AuditReport {
    match solver {
        Solver::Asdm => audit_run(obj, trace),
        Solver::FixedStep | Solver::ClassicArmijo => baseline_audit(obj, trace),
    }
}

/// Shortest decimal that parses back to the same f64.
fn float(v: f64) -> String {
    format!("{v}")
}

pub fn csv_bytes(trace: &Trace) -> String {
    let mut out = String::from(
        "k,f,grad_norm,eps,i_k,lambda,step_norm,dir_dot_grad,fevals_cum,gevals_cum\n",
    );
    for r in &trace.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.k,
            float(r.f),
            float(r.grad_norm),
            float(r.eps),
            r.i,
            float(r.lambda),
            float(r.step_norm),
            float(r.dir_dot_grad),
            r.fevals_cum,
            r.gevals_cum,
        ));
    }
    out
}

/// Write-temp-then-rename so a crash never leaves a half-written artifact.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let wrap = |source: std::io::Error| CliError::Output {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(wrap)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(wrap)?;
    fs::rename(&tmp, path).map_err(wrap)
}

/// Writes the artifacts for one finished run; returns the paths written.
pub fn write_artifacts(
    spec: &RunSpec,
    obj: &ObjectiveSpec,
    trace: &Trace,
    audit: &AuditReport,
) -> Result<Vec<PathBuf>, CliError> {
    let Some(path) = &spec.output else {
        return Ok(Vec::new());
    };
    match spec.format {
        Format::Json => {
            let report = RunReport {
                label: &spec.label,
                solver: spec.solver.name(),
                problem: ProblemBlock::new(&spec.problem, obj),
                trace,
                audit,
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            atomic_write(path, json.as_bytes())?;
            Ok(vec![path.clone()])
        }
        Format::Csv => {
            atomic_write(path, csv_bytes(trace).as_bytes())?;
            let sidecar = AuditSidecar {
                label: &spec.label,
                solver: spec.solver.name(),
                problem: ProblemBlock::new(&spec.problem, obj),
                status: &trace.status,
                final_f: trace.final_f,
                audit,
            };
            let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n";
            let audit_path = path.with_extension("audit.json");
            atomic_write(&audit_path, json.as_bytes())?;
            Ok(vec![path.clone(), audit_path])
        }
    }
}
