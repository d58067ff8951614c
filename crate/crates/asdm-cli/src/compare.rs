//! Side-by-side cost table for several configurations of one problem,
//! plus the flat files a plotting tool can ingest.

use asdm_core::{AuditReport, TerminationStatus, Trace};

use crate::config::RunSpec;

pub fn status_word(status: &TerminationStatus) -> &'static str {
    match status {
        TerminationStatus::GradToleranceReached => "grad_tol",
        TerminationStatus::MaxIters => "max_iters",
        TerminationStatus::BacktrackExhausted { .. } => "exhausted",
    }
}

pub struct CompareRow {
    pub label: String,
    pub solver: &'static str,
    pub status: &'static str,
    pub iterations: u64,
    pub fevals: u64,
    pub gevals: u64,
    pub final_f: f64,
    pub gap: Option<f64>,
    pub audit_passed: bool,
}

pub fn row(spec: &RunSpec, trace: &Trace, audit: &AuditReport, f_star: Option<f64>) -> CompareRow {
    let last = trace.records.last().expect("trace has at least the start row");
    CompareRow {
        label: spec.label.clone(),
        solver: spec.solver.name(),
        status: status_word(&trace.status),
        iterations: last.k,
        fevals: last.fevals_cum,
        gevals: last.gevals_cum,
        final_f: trace.final_f,
        gap: f_star.map(|fs| trace.final_f - fs),
        audit_passed: audit.passed(),
    }
}

fn gap_text(gap: Option<f64>) -> String {
    match gap {
        Some(g) => format!("{g:.3e}"),
        None => "n/a".to_string(),
    }
}

pub fn render_table(rows: &[CompareRow]) -> String {
    let w = rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(3);
    let mut out = format!(
        "{:<w$}  {:<14}  {:<9}  {:>6}  {:>7}  {:>7}  {:>11}  audit\n",
        "run", "solver", "status", "iters", "fevals", "gevals", "final_gap",
    );
    for r in rows {
        out.push_str(&format!(
            "{:<w$}  {:<14}  {:<9}  {:>6}  {:>7}  {:>7}  {:>11}  {}\n",
            r.label,
            r.solver,
            r.status,
            r.iterations,
            r.fevals,
            r.gevals,
            gap_text(r.gap),
            if r.audit_passed { "ok" } else { "FAIL" },
        ));
    }
    out
}

pub fn summary_csv(rows: &[CompareRow]) -> String {
    let mut out =
        String::from("run,solver,status,iterations,fevals,gevals,final_f,final_gap,audit_passed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.label,
            r.solver,
            r.status,
            r.iterations,
            r.fevals,
            r.gevals,
            r.final_f,
            r.gap.map(|g| g.to_string()).unwrap_or_default(),
            r.audit_passed,
        ));
    }
    out
}

/// Long-format gap-per-iteration data: one row per trace record.
pub fn gaps_csv(runs: &[(&str, &Trace)], f_star: Option<f64>) -> String {
    let mut out = String::from("solver,k,gap\n");
    for (label, trace) in runs {
        for r in &trace.records {
            let gap = f_star.map(|fs| (r.f - fs).to_string()).unwrap_or_default();
            out.push_str(&format!("{label},{},{gap}\n", r.k));
        }
    }
    out
}
