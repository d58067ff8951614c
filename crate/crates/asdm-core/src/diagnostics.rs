//! Post-run audits of a trace: strict descent, the eps ceiling, guaranteed
//! per-iteration decrease, the step-length floor, steady-state cost, and an
//! empirical 1/k envelope on the optimality gap.
//!
//! Every audit scans the trace exhaustively (no sampling). Audits that need
//! a defect modulus run only when the objective's metadata certifies one for
//! the exponent the run actually used; audits that need the optimal value or
//! minimizers run only when those are recorded. Skipped audits stay `None`
//! in the report with a note. On a thinned trace, pairwise audits cover the
//! retained adjacent rows.

use serde::{Deserialize, Serialize};

use crate::error::AsdmError;
use crate::objective::{Objective, ObjectiveSpec};
use crate::point::Point;
use crate::solver::{IterationRecord, Trace};
use crate::step::{eta, step_lower_bound, StepRule};

/// Outcome of every audit over one trace. `None` means "not applicable with
/// the available metadata", never "failed"; see `notes` for the reason.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub monotone_ok: bool,
    pub eps_bound_ok: Option<bool>,
    /// The ceiling max{eps0, mu/(1-beta)} the eps column was checked against.
    pub eps_bar: Option<f64>,
    pub decrease_audit_ok: Option<bool>,
    /// The per-iteration decrease constant of the rule the run used.
    pub c_bar: Option<f64>,
    pub step_bound_ok: Option<bool>,
    pub steady_state_ok: Option<bool>,
    pub ctilde_ok: Option<bool>,
    /// c_bar * min{1, 1/eps_bar}, the gradient-squared decrease constant.
    pub c_tilde: Option<f64>,
    /// max over k >= 1 of k * (f_k - f*).
    pub rate_constant: Option<f64>,
    pub rate_tail_ok: Option<bool>,
    pub theta_min: Option<f64>,
    pub notes: Vec<String>,
}

impl AuditReport {
    /// True when nothing that could be checked failed.
    pub fn passed(&self) -> bool {
        self.monotone_ok
            && [
                self.eps_bound_ok,
                self.decrease_audit_ok,
                self.step_bound_ok,
                self.steady_state_ok,
                self.ctilde_ok,
                self.rate_tail_ok,
            ]
            .iter()
            .all(|flag| flag.unwrap_or(true))
    }
}

/// Adjacent iteration pairs (k, k+1). On thinned traces rows with a gap
/// between them are skipped, since the later row's step data refers to a
/// predecessor that was dropped.
fn adjacent_pairs(records: &[IterationRecord]) -> impl Iterator<Item = (&IterationRecord, &IterationRecord)> {
    records
        .windows(2)
        .filter(|w| w[1].k == w[0].k + 1)
        .map(|w| (&w[0], &w[1]))
}

/// Strict descent of f across all consecutive records (gaps in a thinned
/// trace included: f decreases every iteration, so it must also decrease
/// across a gap). Vacuously true for a single record.
pub fn audit_monotonicity(trace: &Trace) -> bool {
    trace.records.windows(2).all(|w| w[1].f < w[0].f)
}

/// The eps ceiling max{eps0, mu/(1-beta)}.
pub fn epsilon_bar(eps0: f64, mu: f64, beta: f64) -> f64 {
    eps0.max(mu / (1.0 - beta))
}

/// Every recorded eps stays at or below the ceiling.
pub fn audit_epsilon_bound(trace: &Trace, mu: f64) -> bool {
    let bar = epsilon_bar(trace.params.eps0, mu, trace.params.beta);
    trace.records.iter().all(|r| r.eps <= bar)
}

/// Guaranteed-decrease constant for runs under the first rule:
/// min{beta (1-beta)^{1/(v-1)}, ((1-beta)^2 eps0 / mu)^{1/(v-1)} beta}.
pub fn decrease_constant_rule1(beta: f64, v: f64, eps0: f64, mu: f64) -> f64 {
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    assert!(v >= 2.0, "v must be at least 2");
    assert!(eps0 > 0.0 && mu > 0.0, "eps0 and mu must be positive");
    let om = 1.0 - beta;
    let c1 = beta * eta(beta, v);
    let base = om * om * eps0 / mu;
    let c2 = if v == 2.0 {
        base * beta
    } else {
        base.powf(1.0 / (v - 1.0)) * beta
    };
    c1.min(c2)
}

/// Guaranteed-decrease constant for runs under the second rule:
/// min{C1, (eps0 mu^{-1} (1-beta)^2)^{1/(v-1)} / (1 + eps0 mu^{-1} (1-beta) / beta)}.
pub fn decrease_constant_rule2(beta: f64, v: f64, eps0: f64, mu: f64) -> f64 {
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    assert!(v >= 2.0, "v must be at least 2");
    assert!(eps0 > 0.0 && mu > 0.0, "eps0 and mu must be positive");
    let om = 1.0 - beta;
    let c1 = beta * eta(beta, v);
    let ratio = eps0 / mu;
    let base = ratio * om * om;
    let pow_part = if v == 2.0 {
        base
    } else {
        base.powf(1.0 / (v - 1.0))
    };
    let c2 = pow_part / (1.0 + ratio * om / beta);
    c1.min(c2)
}

/// The matching rule's guaranteed-decrease constant.
pub fn decrease_constant(rule: StepRule, beta: f64, v: f64, eps0: f64, mu: f64) -> f64 {
    match rule {
        StepRule::Rule1 => decrease_constant_rule1(beta, v, eps0, mu),
        StepRule::Rule2 => decrease_constant_rule2(beta, v, eps0, mu),
    }
}

/// `f_k - f_{k+1} >= -c_bar * <g_k, s_k>` on every adjacent pair, with
/// 1e-10 relative tolerance. The inner product is read back from the
/// trace's dir_dot_grad column.
pub fn audit_decrease(trace: &Trace, c_bar: f64) -> bool {
    adjacent_pairs(&trace.records).all(|(prev, cur)| {
        let lhs = prev.f - cur.f;
        let rhs = -c_bar * cur.dir_dot_grad;
        lhs - rhs >= -1e-10 * (1.0 + rhs.abs())
    })
}

/// On iterations where the step ran with eps < mu and a direction that is
/// not mu-normalized (<g, s> + mu ||s||^v > 0), the accepted lambda must
/// strictly exceed (eps mu^{-1} (1-beta)^2)^{1/(v-1)}.
pub fn audit_step_lower_bound(trace: &Trace, mu: f64) -> bool {
    let beta = trace.params.beta;
    let v = trace.params.v;
    adjacent_pairs(&trace.records).all(|(prev, cur)| {
        let eps_used = prev.eps;
        if eps_used >= mu {
            return true;
        }
        let s_pow = if v == 2.0 {
            cur.step_norm * cur.step_norm
        } else {
            cur.step_norm.powf(v)
        };
        if cur.dir_dot_grad + mu * s_pow <= 0.0 {
            return true;
        }
        cur.lambda > step_lower_bound(eps_used, mu, beta, v)
    })
}

/// Once an iteration runs with eps >= mu, it must accept the first trial
/// (i = 1, lambda = eta) and spend exactly one function and one gradient
/// evaluation.
pub fn audit_steady_state(trace: &Trace, mu: f64) -> bool {
    let fixed_lambda = eta(trace.params.beta, trace.params.v);
    adjacent_pairs(&trace.records).all(|(prev, cur)| {
        if prev.eps < mu {
            return true;
        }
        cur.i == 1
            && cur.lambda == fixed_lambda
            && cur.fevals_cum - prev.fevals_cum == 1
            && cur.gevals_cum - prev.gevals_cum == 1
    })
}

/// `f_k - f_{k+1} >= c_tilde * ||g_k||^2` with
/// c_tilde = c_bar * min{1, 1/eps_bar}, checked on every adjacent pair.
/// Only defined for v = 2, where the gradient-power factor drops out.
pub fn audit_ctilde(trace: &Trace, c_tilde: f64) -> bool {
    adjacent_pairs(&trace.records).all(|(prev, cur)| {
        let lhs = prev.f - cur.f;
        let rhs = c_tilde * prev.grad_norm * prev.grad_norm;
        lhs - rhs >= -1e-10 * (1.0 + rhs.abs())
    })
}

/// Relative floor below which an optimality gap is considered numerically
/// unresolved and excluded from envelope checks.
fn gap_floor(f_star: f64) -> f64 {
    1e-12 * (1.0 + f_star.abs())
}

/// The empirical envelope constant C = max over k >= 1 of k * (f_k - f*).
/// A finite C certifies gap <= C/k over the observed horizon. Gaps more
/// negative than the metadata tolerance mean f_star is wrong for this
/// objective and are an error; tiny negative gaps from roundoff clamp to 0.
pub fn fit_sublinear_constant(trace: &Trace, f_star: f64) -> Result<f64, AsdmError> {
    let tol = 1e-9 * (1.0 + f_star.abs());
    let mut c = 0.0f64;
    for rec in trace.records.iter().filter(|r| r.k >= 1) {
        let gap = rec.f - f_star;
        if gap < -tol {
            return Err(AsdmError::FStarInconsistent { f: rec.f, f_star });
        }
        c = c.max(rec.k as f64 * gap.max(0.0));
    }
    Ok(c)
}

/// Checks that k * (f_k - f*) does not grow over the final half of the
/// rows whose gap is still resolvable above the floating-point noise floor.
/// Rows at or below the floor say nothing about the rate and are skipped.
pub fn rate_tail_nonincreasing(trace: &Trace, f_star: f64) -> bool {
    let floor = gap_floor(f_star);
    let ms: Vec<f64> = trace
        .records
        .iter()
        .filter(|r| r.k >= 1 && r.f - f_star > floor)
        .map(|r| r.k as f64 * (r.f - f_star))
        .collect();
    if ms.len() < 2 {
        return true;
    }
    let tail = &ms[ms.len() / 2..];
    tail.windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-9) + floor)
}

/// The largest admissible per-point rate constant
/// theta = <g(x), x - x*> / (f(x) - f(x*)). Positive on pseudo-convex
/// objectives; at least 1 on convex ones; exactly 2 on quadratics.
pub fn theta_estimate(obj: &ObjectiveSpec, x: &Point, x_star: &Point) -> f64 {
    let f = obj.value(x);
    let f_star = obj.value(x_star);
    assert!(
        f > f_star,
        "theta is undefined unless f(x) > f(x_star); got f = {f}, f(x_star) = {f_star}"
    );
    let g = obj.gradient(x);
    g.dot(&x.sub(x_star)) / (f - f_star)
}

/// Minimum theta over every recorded iterate whose gap to its nearest
/// recorded minimizer is resolvable. None when the objective records no
/// minimizers or no row qualifies.
pub fn theta_min_over_trace(trace: &Trace, obj: &ObjectiveSpec) -> Option<f64> {
    let minimizers = &obj.metadata.minimizers;
    if minimizers.is_empty() {
        return None;
    }
    let mut theta_min: Option<f64> = None;
    for rec in &trace.records {
        let nearest = minimizers
            .iter()
            .min_by(|a, b| {
                let da = rec.x.sub(a).norm();
                let db = rec.x.sub(b).norm();
                da.partial_cmp(&db).expect("finite distances")
            })
            .expect("nonempty minimizer list");
        let f_star = obj.value(nearest);
        if rec.f - f_star <= gap_floor(f_star) {
            continue;
        }
        let theta = theta_estimate(obj, &rec.x, nearest);
        theta_min = Some(theta_min.map_or(theta, |t: f64| t.min(theta)));
    }
    theta_min
}

/// Runs every applicable audit for a trace of `obj` and assembles the
/// report. Metadata decides applicability: the modulus-gated audits need a
/// defect modulus certified for the exponent the run used; the envelope
/// needs the optimal value; the theta scan needs minimizers.
pub fn audit_run(obj: &ObjectiveSpec, trace: &Trace) -> AuditReport {
    let params = &trace.params;
    let md = &obj.metadata;
    let mut report = AuditReport {
        monotone_ok: audit_monotonicity(trace),
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
        notes: Vec::new(),
    };
    if trace.thinned {
        report
            .notes
            .push("trace was thinned; pairwise audits cover the retained adjacent rows".into());
    }

    match md.mu {
        Some(mu) if md.v_exponent == params.v => {
            let bar = epsilon_bar(params.eps0, mu, params.beta);
            report.eps_bar = Some(bar);
            report.eps_bound_ok = Some(audit_epsilon_bound(trace, mu));
            let c_bar = decrease_constant(params.rule, params.beta, params.v, params.eps0, mu);
            report.c_bar = Some(c_bar);
            report.decrease_audit_ok = Some(audit_decrease(trace, c_bar));
            report.step_bound_ok = Some(audit_step_lower_bound(trace, mu));
            report.steady_state_ok = Some(audit_steady_state(trace, mu));
            if params.v == 2.0 {
                let c_tilde = c_bar * (1.0 / bar).min(1.0);
                report.c_tilde = Some(c_tilde);
                report.ctilde_ok = Some(audit_ctilde(trace, c_tilde));
            } else {
                report.notes.push(format!(
                    "gradient-squared decrease constant is only tracked for v = 2 (run used v = {})",
                    params.v
                ));
            }
        }
        Some(_) => report.notes.push(format!(
            "defect modulus certifies exponent {} but the run used v = {}; modulus-gated audits skipped",
            md.v_exponent, params.v
        )),
        None => report
            .notes
            .push("no defect modulus recorded; modulus-gated audits skipped".into()),
    }

    match md.f_star {
        Some(f_star) => match fit_sublinear_constant(trace, f_star) {
            Ok(c) => {
                report.rate_constant = Some(c);
                report.rate_tail_ok = Some(rate_tail_nonincreasing(trace, f_star));
            }
            Err(err) => {
                report.rate_tail_ok = Some(false);
                report
                    .notes
                    .push(format!("envelope fit aborted: {err}"));
            }
        },
        None => report
            .notes
            .push("no optimal value recorded; envelope fit skipped".into()),
    }

    match theta_min_over_trace(trace, obj) {
        Some(t) => report.theta_min = Some(t),
        None => report
            .notes
            .push("no minimizers recorded (or no resolvable gaps); theta scan skipped".into()),
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, SolverParams, TerminationStatus};
    use crate::suite::fixture;
    use approx::assert_relative_eq;

    fn steepquad_trace() -> (crate::objective::ObjectiveSpec, Trace) {
        let fx = fixture("steepquad").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve(&fx.objective, &params).unwrap();
        (fx.objective, trace)
    }

    fn synthetic_trace(fs: &[f64]) -> Trace {
        let params = SolverParams::new(Point::new(vec![0.0]));
        let records = fs
            .iter()
            .enumerate()
            .map(|(k, &f)| IterationRecord {
                k: k as u64,
                x: Point::new(vec![0.0]),
                f,
                grad_norm: 1.0,
                eps: 1.0,
                i: if k == 0 { 0 } else { 1 },
                lambda: if k == 0 { 0.0 } else { 0.5 },
                step_norm: if k == 0 { 0.0 } else { 1.0 },
                dir_dot_grad: if k == 0 { 0.0 } else { -1.0 },
                was_rescaled: false,
                fevals_cum: k as u64 + 1,
                gevals_cum: k as u64 + 1,
            })
            .collect();
        Trace {
            params,
            problem_id: None,
            records,
            status: TerminationStatus::MaxIters,
            final_x: Point::new(vec![0.0]),
            final_f: *fs.last().unwrap(),
            warnings: Vec::new(),
            thinned: false,
        }
    }

    #[test]
    fn monotonicity_holds_on_a_real_run_and_fails_on_a_plateau() {
        let (_, trace) = steepquad_trace();
        assert!(audit_monotonicity(&trace));
        assert!(!audit_monotonicity(&synthetic_trace(&[1.0, 1.0])));
        assert!(audit_monotonicity(&synthetic_trace(&[1.0])));
    }

    #[test]
    fn epsilon_stays_under_the_ceiling() {
        let (_, trace) = steepquad_trace();
        assert_eq!(epsilon_bar(1.0, 50.0, 0.5), 100.0);
        assert!(audit_epsilon_bound(&trace, 50.0));
        let mut tampered = trace.clone();
        tampered.records[1].eps = 200.0;
        assert!(!audit_epsilon_bound(&tampered, 50.0));
    }

    #[test]
    fn epsilon_ceiling_is_eps0_when_eps0_dominates() {
        // eps0 above mu/(1-beta): constant-eps runs sit exactly on the bound.
        assert_eq!(epsilon_bar(500.0, 50.0, 0.5), 500.0);
    }

    #[test]
    fn rule1_decrease_constant_hand_values() {
        assert_eq!(decrease_constant_rule1(0.5, 2.0, 1.0, 50.0), 0.0025);
        assert_eq!(decrease_constant_rule1(0.5, 2.0, 50.0, 50.0), 0.125);
        // Tiny beta collapses both branches.
        assert!(decrease_constant_rule1(1e-9, 2.0, 1.0, 1.0) < 1e-8);
    }

    #[test]
    fn rule2_decrease_constant_hand_values() {
        let c = decrease_constant_rule2(0.5, 2.0, 1.0, 50.0);
        assert_relative_eq!(c, 0.005 / 1.02, max_relative = 1e-15);
        assert_eq!(decrease_constant_rule2(0.5, 2.0, 50.0, 50.0), 0.125);
        // The min with C1 always applies.
        assert!(decrease_constant_rule2(0.5, 2.0, 1.0, 50.0) <= 0.25);
    }

    #[test]
    fn decrease_audit_verifies_the_desk_run_inequality() {
        let (_, trace) = steepquad_trace();
        // First pair: 50 - 2.392578125 = 47.607421875 >= 0.0025 * 10000 = 25.
        assert_eq!(trace.records[0].f - trace.records[1].f, 47.607421875);
        assert_eq!(-0.0025 * trace.records[1].dir_dot_grad, 25.0);
        assert!(audit_decrease(&trace, 0.0025));
        // An absurdly large constant is not satisfied by the same pair.
        assert!(!audit_decrease(&trace, 1.0));
    }

    #[test]
    fn step_lower_bound_gates_and_checks() {
        let (_, trace) = steepquad_trace();
        assert!(audit_step_lower_bound(&trace, 50.0));
        let mut tampered = trace.clone();
        tampered.records[1].lambda = 0.004;
        assert!(!audit_step_lower_bound(&tampered, 50.0));
        // Raising the recorded eps above mu deactivates the gate again.
        tampered.records[0].eps = 64.0;
        assert!(audit_step_lower_bound(&tampered, 50.0));
    }

    #[test]
    fn steady_state_holds_once_eps_reaches_mu() {
        let (_, trace) = steepquad_trace();
        assert!(audit_steady_state(&trace, 50.0));
        let mut tampered = trace.clone();
        tampered.records[3].i = 2;
        assert!(!audit_steady_state(&tampered, 50.0));
    }

    #[test]
    fn gradient_squared_decrease_holds_with_the_derated_constant() {
        let (_, trace) = steepquad_trace();
        let c_tilde = 0.0025 * (1.0f64 / 100.0).min(1.0);
        assert_eq!(c_tilde, 2.5e-5);
        assert!(audit_ctilde(&trace, c_tilde));
    }

    #[test]
    fn envelope_constant_on_synthetic_gap_sequences() {
        // Gaps exactly 1/k: every k * gap is 1 up to one rounding.
        let mut fs = vec![2.0];
        fs.extend((1..=50).map(|k| 1.0 / k as f64));
        let c = fit_sublinear_constant(&synthetic_trace(&fs), 0.0).unwrap();
        assert!((c - 1.0).abs() < 1e-14, "c = {c}");

        // Gaps 1/k^2: the max is attained at k = 1 exactly.
        let mut fs = vec![2.0];
        fs.extend((1..=50).map(|k| 1.0 / (k * k) as f64));
        let c = fit_sublinear_constant(&synthetic_trace(&fs), 0.0).unwrap();
        assert_eq!(c, 1.0);
    }

    #[test]
    fn envelope_constant_on_the_steep_quadratic_is_the_first_gap() {
        let (_, trace) = steepquad_trace();
        let c = fit_sublinear_constant(&trace, 0.0).unwrap();
        assert_eq!(c, 2.392578125);
        assert!(rate_tail_nonincreasing(&trace, 0.0));
    }

    #[test]
    fn inconsistent_f_star_is_an_error() {
        let (_, trace) = steepquad_trace();
        match fit_sublinear_constant(&trace, 1.0) {
            Err(AsdmError::FStarInconsistent { f_star, .. }) => assert_eq!(f_star, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn theta_is_two_for_quadratics() {
        let fx = fixture("quad1d").unwrap();
        let theta = theta_estimate(
            &fx.objective,
            &Point::new(vec![2.0]),
            &Point::new(vec![0.0]),
        );
        assert_eq!(theta, 2.0);
    }

    #[test]
    #[should_panic(expected = "theta is undefined")]
    fn theta_requires_a_positive_gap() {
        let fx = fixture("quad1d").unwrap();
        theta_estimate(
            &fx.objective,
            &Point::new(vec![0.0]),
            &Point::new(vec![0.0]),
        );
    }

    #[test]
    fn theta_min_over_a_quadratic_trace_is_exactly_two() {
        let fx = fixture("quad1d").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve(&fx.objective, &params).unwrap();
        assert_eq!(theta_min_over_trace(&trace, &fx.objective), Some(2.0));
    }

    #[test]
    fn theta_approaches_two_near_a_smooth_minimum() {
        // Radial shrink toward the minimizer of the smooth-max objective:
        // theta converges to the quadratic value 2 from below, and stays in
        // the convex regime theta >= 1 at every radius.
        let fx = fixture("lse").unwrap();
        let x_star = fx.objective.metadata.minimizers[0].clone();
        let mut prev_dev = f64::INFINITY;
        let mut last_dev = f64::INFINITY;
        for j in 0..10 {
            let r = 0.5 * 0.5f64.powi(j);
            let x = Point::new(vec![r, 0.0]);
            let theta = theta_estimate(&fx.objective, &x, &x_star);
            let dev = (theta - 2.0).abs();
            assert!(theta >= 1.0, "convex theta below 1 at r = {r}");
            assert!(dev < prev_dev, "deviation grew at r = {r}");
            prev_dev = dev;
            last_dev = dev;
        }
        assert!(last_dev < 1e-3, "final deviation {last_dev}");
    }

    #[test]
    fn full_audit_passes_on_the_steep_quadratic_run() {
        let (obj, trace) = steepquad_trace();
        let report = audit_run(&obj, &trace);
        assert!(report.monotone_ok);
        assert_eq!(report.eps_bar, Some(100.0));
        assert_eq!(report.eps_bound_ok, Some(true));
        assert_eq!(report.c_bar, Some(0.0025));
        assert_eq!(report.decrease_audit_ok, Some(true));
        assert_eq!(report.step_bound_ok, Some(true));
        assert_eq!(report.steady_state_ok, Some(true));
        assert_eq!(report.c_tilde, Some(2.5e-5));
        assert_eq!(report.ctilde_ok, Some(true));
        assert_eq!(report.rate_constant, Some(2.392578125));
        assert_eq!(report.rate_tail_ok, Some(true));
        assert_eq!(report.theta_min, Some(2.0));
        assert!(report.passed());
    }

    #[test]
    fn audits_without_metadata_are_skipped_not_failed() {
        let bare = crate::objective::ObjectiveSpec::new(
            1,
            |x: &Point| 50.0 * x[0] * x[0],
            |x: &Point| Point::new(vec![100.0 * x[0]]),
        );
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve(&bare, &params).unwrap();
        let report = audit_run(&bare, &trace);
        assert!(report.monotone_ok);
        assert_eq!(report.eps_bound_ok, None);
        assert_eq!(report.decrease_audit_ok, None);
        assert_eq!(report.rate_constant, None);
        assert_eq!(report.theta_min, None);
        assert!(report.passed());
        assert!(report.notes.len() >= 3);
    }

    #[test]
    fn exponent_mismatch_skips_modulus_audits() {
        let fx = fixture("steepquad").unwrap();
        let mut params = SolverParams::new(Point::new(vec![1.0]));
        params.v = 3.0;
        let trace = solve(&fx.objective, &params).unwrap();
        let report = audit_run(&fx.objective, &trace);
        assert_eq!(report.eps_bound_ok, None);
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("modulus-gated audits skipped")));
        assert!(report.passed());
    }
}
