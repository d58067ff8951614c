//! Acceptance gate. One test per shipped guarantee; each prints a single
//! `criterion NN (...): PASS|FAIL` line so a test run doubles as a
//! checklist. Criteria 3 through 8 share one deterministic sweep: every
//! solver-suite problem under both step rules from twenty seeded random
//! starts each.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use asdm_core::certify::{pseudoconvexity_witness, scan_condition_a, SamplingBox};
use asdm_core::diagnostics::{
    audit_decrease, audit_epsilon_bound, audit_monotonicity, audit_steady_state,
    audit_step_lower_bound, decrease_constant, fit_sublinear_constant, rate_tail_nonincreasing,
};
use asdm_core::direction::normalize;
use asdm_core::solver::random_start;
use asdm_core::step::backtrack;
use asdm_core::suite::{fixture, SOLVER_SUITE};
use asdm_core::{
    solve, Objective, ObjectiveSpec, Point, SolverParams, StepRule, TerminationStatus, Trace,
};

const STARTS_PER_PROBLEM: usize = 20;

fn report(number: u32, name: &str, violations: &[String]) {
    let verdict = if violations.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({name}): {verdict}");
    if !violations.is_empty() {
        let shown = violations
            .iter()
            .take(12)
            .cloned()
            .collect::<Vec<_>>()
            .join("\n  ");
        let elided = if violations.len() > 12 { "\n  ..." } else { "" };
        panic!(
            "criterion {number:02} ({name}): {} violation(s)\n  {shown}{elided}",
            violations.len(),
        );
    }
}

struct SweepRun {
    problem: &'static str,
    rule: StepRule,
    start_index: usize,
    mu: f64,
    f_star: f64,
    trace: Trace,
}

impl SweepRun {
    fn label(&self) -> String {
        format!("{} / {:?} / start {}", self.problem, self.rule, self.start_index)
    }
}

struct Sweep {
    runs: Vec<SweepRun>,
    elapsed: Duration,
    /// Runs that stopped for any reason besides the gradient tolerance.
    nonconverged: Vec<String>,
}

/// Per-problem stopping tolerances. Sized so the per-iteration decrease near
/// the optimum stays far above one ulp of f there: quadnd bottoms out at
/// f = -55.5 under the default spectrum, where doubles resolve ~7e-15, so
/// driving its gradient to 1e-8 would ask the line search to certify
/// decreases of ~1e-17.
fn sweep_grad_tol(problem: &str) -> f64 {
    match problem {
        "quad1d" | "steepquad" => 1e-8,
        "quadnd" => 1e-5,
        _ => 1e-6,
    }
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let begun = Instant::now();
        let mut runs = Vec::new();
        let mut nonconverged = Vec::new();
        for (p, &id) in SOLVER_SUITE.iter().enumerate() {
            let fx = fixture(id).expect("suite ids resolve");
            let md = &fx.objective.metadata;
            let mu = md.mu.expect("suite members carry mu");
            let f_star = md.f_star.expect("suite members carry f_star");
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + p as u64);
            let starts: Vec<Point> = (0..STARTS_PER_PROBLEM)
                .map(|_| random_start(&fx.default_start, fx.sampling_half_width, &mut rng))
                .collect();
            for rule in [StepRule::Rule1, StepRule::Rule2] {
                for (j, start) in starts.iter().enumerate() {
                    let mut params = SolverParams::new(start.clone());
                    params.rule = rule;
                    params.grad_tol = sweep_grad_tol(id);
                    params.seed = j as u64;
                    let trace = solve(&fx.objective, &params)
                        .unwrap_or_else(|e| panic!("{id} / {rule:?} / start {j}: {e}"));
                    let run = SweepRun {
                        problem: id,
                        rule,
                        start_index: j,
                        mu,
                        f_star,
                        trace,
                    };
                    if run.trace.status != TerminationStatus::GradToleranceReached {
                        nonconverged
                            .push(format!("{}: stopped with {:?}", run.label(), run.trace.status));
                    }
                    runs.push(run);
                }
            }
        }
        Sweep {
            runs,
            elapsed: begun.elapsed(),
            nonconverged,
        }
    })
}

/// Literal scan of the step rules over i = 1, 2, ..., cap at a 1-D state,
/// evaluating f afresh at every trial. Deliberately naive: this is the
/// reference the library's search must reproduce index for index.
#[allow(clippy::too_many_arguments)]
fn oracle_scan_1d(
    f: &impl Fn(f64) -> f64,
    x: f64,
    g: f64,
    s: f64,
    rule: StepRule,
    beta: f64,
    eps: f64,
    v: f64,
    cap: u32,
) -> Option<(u32, f64)> {
    let eta = if v == 2.0 {
        1.0 - beta
    } else {
        (1.0 - beta).powf(1.0 / (v - 1.0))
    };
    let s_pow = if v == 2.0 { s * s } else { s.abs().powf(v) };
    for i in 1..=cap {
        let lambda = eta.powi(i as i32);
        let trial = f(x + lambda * s);
        if !trial.is_finite() {
            continue;
        }
        let threshold = match rule {
            StepRule::Rule1 => -lambda * beta * (g * s),
            StepRule::Rule2 => lambda * beta * eps * s_pow,
        };
        if f(x) - trial >= threshold {
            return Some((i, lambda));
        }
    }
    None
}

#[test]
fn criterion_01_steep_quadratic_desk_run() {
    let fx = fixture("steepquad").unwrap();
    let params = SolverParams::new(Point::new(vec![1.0]));
    solve(&fx.objective, &params).unwrap();
    let elapsed = (0..5)
        .map(|_| {
            let begun = Instant::now();
            solve(&fx.objective, &params).unwrap();
            begun.elapsed()
        })
        .min()
        .unwrap();
    let trace = solve(&fx.objective, &params).unwrap();

    let mut violations = Vec::new();
    let r = &trace.records[1];
    if r.i != 7 {
        violations.push(format!("i_1 = {}, want 7", r.i));
    }
    if r.lambda != 0.0078125 {
        violations.push(format!("lambda_1 = {}, want 0.0078125", r.lambda));
    }
    if r.x[0] != 0.21875 {
        violations.push(format!("x_1 = {}, want 0.21875", r.x[0]));
    }
    if r.eps != 64.0 {
        violations.push(format!("eps_1 = {}, want 64", r.eps));
    }

    let x0 = Point::new(vec![1.0]);
    let g = fx.objective.gradient(&x0);
    let d = normalize(&g, params.eps0, params.v).unwrap();
    let want = oracle_scan_1d(
        &|t| 50.0 * t * t,
        1.0,
        g[0],
        d.s[0],
        StepRule::Rule1,
        params.beta,
        params.eps0,
        params.v,
        params.i_cap,
    );
    if want != Some((r.i, r.lambda)) {
        violations.push(format!(
            "scan oracle found {want:?}, trace recorded ({}, {})",
            r.i, r.lambda
        ));
    }
    if elapsed >= Duration::from_millis(1) {
        violations.push(format!("run took {elapsed:?}, budget 1 ms"));
    }
    report(1, "steep quadratic desk run", &violations);
}

#[test]
fn criterion_02_unit_quadratic_desk_run() {
    let fx = fixture("quad1d").unwrap();
    let params = SolverParams::new(Point::new(vec![1.0]));
    let trace = solve(&fx.objective, &params).unwrap();

    let mut violations = Vec::new();
    let r = &trace.records[1];
    if r.i != 1 {
        violations.push(format!("i_1 = {}, want 1", r.i));
    }
    if r.lambda != 0.5 {
        violations.push(format!("lambda_1 = {}, want 0.5", r.lambda));
    }
    if r.x[0] != 0.5 {
        violations.push(format!("x_1 = {}, want 0.5", r.x[0]));
    }
    for rec in &trace.records {
        if rec.eps != 1.0 {
            violations.push(format!("eps drifted to {} at k = {}", rec.eps, rec.k));
            break;
        }
    }
    report(2, "unit quadratic desk run", &violations);
}

#[test]
fn criterion_03_strict_descent_across_sweep() {
    let sw = sweep();
    let mut violations = sw.nonconverged.clone();
    for run in &sw.runs {
        if !audit_monotonicity(&run.trace) {
            violations.push(format!("{}: f failed to strictly decrease", run.label()));
        }
    }
    if sw.elapsed >= Duration::from_secs(60) {
        violations.push(format!("sweep took {:?}, budget 60 s", sw.elapsed));
    }
    report(3, "strict descent", &violations);
}

#[test]
fn criterion_04_eps_stays_below_ceiling() {
    let sw = sweep();
    let mut violations = Vec::new();
    for run in &sw.runs {
        if !audit_epsilon_bound(&run.trace, run.mu) {
            violations.push(format!("{}: eps exceeded its ceiling", run.label()));
        }
    }
    report(4, "eps ceiling", &violations);
}

#[test]
fn criterion_05_accepted_steps_clear_lower_bound() {
    let sw = sweep();
    let mut violations = Vec::new();
    for run in &sw.runs {
        if !audit_step_lower_bound(&run.trace, run.mu) {
            violations.push(format!(
                "{}: an accepted step fell at or below the analytic floor",
                run.label()
            ));
        }
    }
    report(5, "step lower bound", &violations);
}

/// KNOWN FAIL, left failing on purpose. The constant checked here is the
/// stock one for the rule in use, and for rule 2 it is an over-claim: on
/// `steepquad` (beta = 0.5, eps0 = 1) the very first iteration accepts
/// i = 7, lambda = 1/128, and the exact decrease is 24375/512, so the
/// decrease-to-<g,s> ratio is 39/8192 = 0.00476, below the stock
/// 0.005 / 1.02 = 0.00490. Every hypothesis behind the constant holds at
/// that iteration; the constant itself is simply not attained while eps is
/// still growing. The bound one can actually prove from the rejected
/// previous trial is beta * lambda-floor, which equals rule 1's constant
/// (0.0025 here) and is what `audit_run` enforces. All observed violations
/// are rule 2 on the two steep quadratics; rule 1 never violates.
#[test]
fn criterion_06_per_iteration_decrease_estimate() {
    let sw = sweep();
    let mut violations = Vec::new();
    for run in &sw.runs {
        let p = &run.trace.params;
        let c_bar = decrease_constant(p.rule, p.beta, p.v, p.eps0, run.mu);
        if !audit_decrease(&run.trace, c_bar) {
            violations.push(format!(
                "{}: an iteration decreased less than {c_bar:.6} * <g, s>",
                run.label()
            ));
        }
    }
    report(6, "decrease estimate", &violations);
}

/// First clause passes, second KNOWN FAIL, left failing on purpose. The
/// boundedness of k * (f_k - f*) holds on every run (observed max about 61
/// against a theoretical ceiling in the tens of thousands). The monotone
/// form of the tail check is stronger than what is true: far starts on
/// `fractional-ball` spend most of the trace in the flat drift region,
/// where the relative decrease per iteration is about 2 / (1 + r^2)^3 and
/// falls below 1/(k+1) long before r reaches the quadratic basin, so
/// k * gap rises through the middle of the trace and is still rising at
/// the 50% mark. Shrinking the start box until no sampled start drifts
/// would be tuning the data to the assertion, so the box stays at its
/// stated half-width and the twelve drifting runs are reported.
#[test]
fn criterion_07_sublinear_gap_envelope() {
    let sw = sweep();
    let mut violations = Vec::new();
    for run in &sw.runs {
        match fit_sublinear_constant(&run.trace, run.f_star) {
            Ok(c) if c.is_finite() => {}
            Ok(c) => violations.push(format!("{}: envelope constant {c}", run.label())),
            Err(e) => violations.push(format!("{}: {e}", run.label())),
        }
        if !rate_tail_nonincreasing(&run.trace, run.f_star) {
            violations.push(format!(
                "{}: k * gap rose over the final half",
                run.label()
            ));
        }
    }
    report(7, "sublinear envelope", &violations);
}

#[test]
fn criterion_08_steady_state_unit_cost() {
    let sw = sweep();
    let mut violations = Vec::new();
    for run in &sw.runs {
        if !audit_steady_state(&run.trace, run.mu) {
            violations.push(format!(
                "{}: an iteration after eps caught up was not single-trial",
                run.label()
            ));
        }
    }
    report(8, "steady-state cost", &violations);
}

#[test]
fn criterion_09_certifier_soundness() {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1451);
    for &id in SOLVER_SUITE {
        let fx = fixture(id).unwrap();
        let l = fx
            .objective
            .metadata
            .lipschitz_grad
            .expect("suite members carry a gradient Lipschitz constant");
        let region = SamplingBox::new(fx.default_start.clone(), fx.sampling_half_width);
        let outcome = scan_condition_a(&fx.objective, &region, l / 2.0, 2.0, 10_000, &mut rng);
        if outcome.violations != 0 {
            violations.push(format!(
                "{id}: {} of {} segments broke the defect bound (worst scaled residual {:e})",
                outcome.violations, outcome.samples, outcome.min_scaled_residual
            ));
        }
    }
    let cubic = fixture("cubic").unwrap();
    let (x, y) = cubic
        .pseudoconvexity_probe
        .clone()
        .expect("cubic ships a probe pair");
    if !pseudoconvexity_witness(&cubic.objective, &x, &y) {
        violations.push("cubic probe pair is not a pseudo-convexity violation".to_string());
    }
    report(9, "certifier soundness", &violations);
}

#[test]
fn criterion_10_backtrack_matches_linear_scan() {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for trial in 0..100u32 {
        let (obj, value, x, g, beta, eps, v, rule) = loop {
            let a = 10f64.powf(rng.gen_range(-1.0..2.5));
            let c = rng.gen_range(-2.0..2.0);
            let x0 = rng.gen_range(-3.0..3.0);
            let beta = rng.gen_range(0.1..0.9);
            let eps = 10f64.powf(rng.gen_range(-3.0..3.0));
            let v = if trial % 2 == 0 { 2.0 } else { 3.0 };
            let rule = if trial % 3 == 0 {
                StepRule::Rule2
            } else {
                StepRule::Rule1
            };
            let value = move |t: f64| a * (t - c) * (t - c);
            let obj = ObjectiveSpec::new(
                1,
                move |x: &Point| value(x[0]),
                move |x: &Point| Point::new(vec![2.0 * a * (x[0] - c)]),
            );
            let x = Point::new(vec![x0]);
            let g = obj.gradient(&x);
            if g.norm() >= 1e-9 {
                break (obj, value, x, g, beta, eps, v, rule);
            }
        };
        let d = normalize(&g, eps, v).unwrap();
        let f_x = obj.value(&x);
        let got = backtrack(&obj, &x, f_x, &g, &d.s, rule, beta, eps, v, 60);
        let want = oracle_scan_1d(&value, x[0], g[0], d.s[0], rule, beta, eps, v, 60);
        match (got, want) {
            (Ok(r), Some((i, lambda))) => {
                if r.i_star != i || r.lambda != lambda {
                    violations.push(format!(
                        "instance {trial}: search ({}, {}), oracle ({i}, {lambda})",
                        r.i_star, r.lambda
                    ));
                }
            }
            (Err(_), None) => {}
            (got, want) => {
                violations.push(format!("instance {trial}: search {got:?}, oracle {want:?}"));
            }
        }
    }
    report(10, "oracle equivalence", &violations);
}
