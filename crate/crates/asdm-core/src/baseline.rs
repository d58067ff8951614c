//! Comparison solvers emitting the same trace schema as the adaptive loop:
//! fixed-step gradient descent at 1/L and classic Armijo backtracking with a
//! halving ladder that starts at the unit step.
//!
//! Neither baseline adapts anything, so the eps column of their traces is
//! constant at `params.eps0` and carries no meaning beyond schema
//! compatibility.

use serde::{Deserialize, Serialize};

use crate::error::AsdmError;
use crate::objective::{evaluate, gradient, CountingObjective, Objective, ObjectiveSpec};
use crate::point::Point;
use crate::solver::{stopping, IterationRecord, Recorder, SolverParams, TerminationStatus, Trace};

/// Which comparison solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    /// x_{k+1} = x_k - (1/L) g_k; requires the Lipschitz metadata.
    FixedStep,
    /// Halving search from lambda = 1 accepting
    /// f(x) - f(x - lambda g) >= beta lambda ||g||^2.
    ClassicArmijo,
}

/// Runs a baseline from `params.start`, reusing the stopping test, budgets,
/// and record layout of the adaptive solver. The direction is always the raw
/// antigradient.
pub fn solve_baseline(
    obj: &ObjectiveSpec,
    kind: BaselineKind,
    params: &SolverParams,
) -> Result<Trace, AsdmError> {
    params.validate(obj.dimension())?;
    let fixed_lambda = match kind {
        BaselineKind::FixedStep => {
            let l = obj
                .metadata
                .lipschitz_grad
                .ok_or(AsdmError::MissingMetadata {
                    what: "lipschitz_grad",
                    needed_for: "the fixed-step baseline's 1/L step size",
                })?;
            Some(1.0 / l)
        }
        BaselineKind::ClassicArmijo => None,
    };

    let counting = CountingObjective::new(obj);
    let mut recorder = Recorder::new(params.seed);
    let mut x = params.start.clone();
    let mut f = evaluate(&counting, &x)?;
    let mut g = gradient(&counting, &x)?;
    let mut k: u64 = 0;

    recorder.push(IterationRecord {
        k,
        x: x.clone(),
        f,
        grad_norm: g.norm(),
        eps: params.eps0,
        i: 0,
        lambda: 0.0,
        step_norm: 0.0,
        dir_dot_grad: 0.0,
        was_rescaled: false,
        fevals_cum: counting.fevals(),
        gevals_cum: counting.gevals(),
    });

    let status = loop {
        if stopping(&g, params.grad_tol) {
            break TerminationStatus::GradToleranceReached;
        }
        if k >= params.max_iters {
            break TerminationStatus::MaxIters;
        }
        let s = g.neg();
        let g_sq = g.dot(&g);
        let (i, lambda, x_next, f_next) = match fixed_lambda {
            Some(lambda) => {
                let x_next = x.add_scaled(lambda, &s);
                let f_next = evaluate(&counting, &x_next)?;
                (1, lambda, x_next, f_next)
            }
            None => match armijo_search(&counting, &x, f, &s, g_sq, params) {
                Ok(hit) => hit,
                Err((trials, best_lambda, best_decrease)) => {
                    break TerminationStatus::BacktrackExhausted {
                        at_k: k,
                        trials,
                        best_lambda,
                        best_decrease,
                    }
                }
            },
        };

        x = x_next;
        f = f_next;
        k += 1;
        g = gradient(&counting, &x)?;
        recorder.push(IterationRecord {
            k,
            x: x.clone(),
            f,
            grad_norm: g.norm(),
            eps: params.eps0,
            i,
            lambda,
            step_norm: s.norm(),
            dir_dot_grad: -g_sq,
            was_rescaled: false,
            fevals_cum: counting.fevals(),
            gevals_cum: counting.gevals(),
        });
    };

    let (records, thinned) = recorder.finish();
    let mut warnings = Vec::new();
    if thinned {
        warnings.push("trace was reservoir-thinned".to_string());
    }
    Ok(Trace {
        params: params.clone(),
        problem_id: None,
        records,
        status,
        final_x: x,
        final_f: f,
        warnings,
        thinned,
    })
}

/// An accepted Armijo trial: (i, lambda, x_next, f_next).
type ArmijoHit = (u32, f64, Point, f64);

/// Halving ladder lambda = 2^{1-i} for i = 1..=i_cap; Err carries
/// (trials, best_lambda, best_decrease) on exhaustion.
fn armijo_search(
    obj: &impl Objective,
    x: &Point,
    f_x: f64,
    s: &Point,
    g_sq: f64,
    params: &SolverParams,
) -> Result<ArmijoHit, (u32, f64, f64)> {
    let mut best: Option<(f64, f64)> = None; // (decrease, lambda)
    for i in 1..=params.i_cap {
        let lambda = 0.5f64.powi(i as i32 - 1);
        let x_trial = x.add_scaled(lambda, s);
        let f_trial = obj.value(&x_trial);
        if !f_trial.is_finite() {
            continue;
        }
        let decrease = f_x - f_trial;
        if decrease >= params.beta * lambda * g_sq {
            return Ok((i, lambda, x_trial, f_trial));
        }
        if best.is_none_or(|(d, _)| decrease > d) {
            best = Some((decrease, lambda));
        }
    }
    let (best_decrease, best_lambda) = best.unwrap_or((f64::NEG_INFINITY, f64::NAN));
    Err((params.i_cap, best_lambda, best_decrease))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::fixture;

    #[test]
    fn fixed_step_solves_the_flat_quadratic_in_one_step() {
        let fx = fixture("quad1d").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve_baseline(&fx.objective, BaselineKind::FixedStep, &params).unwrap();
        assert_eq!(trace.status, TerminationStatus::GradToleranceReached);
        assert_eq!(trace.records.len(), 2);
        let r1 = &trace.records[1];
        assert_eq!(r1.lambda, 1.0);
        assert_eq!(r1.x.as_slice(), &[0.0]);
        assert_eq!(r1.f, 0.0);
        assert_eq!((r1.fevals_cum, r1.gevals_cum), (2, 2));
    }

    #[test]
    fn fixed_step_solves_the_steep_quadratic_in_one_step() {
        let fx = fixture("steepquad").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve_baseline(&fx.objective, BaselineKind::FixedStep, &params).unwrap();
        let r1 = &trace.records[1];
        assert_eq!(r1.lambda, 0.01);
        assert_eq!(r1.x.as_slice(), &[0.0]);
        assert_eq!(trace.status, TerminationStatus::GradToleranceReached);
    }

    #[test]
    fn fixed_step_requires_the_lipschitz_constant() {
        let bare = ObjectiveSpec::new(
            1,
            |x: &Point| 50.0 * x[0] * x[0],
            |x: &Point| Point::new(vec![100.0 * x[0]]),
        );
        let params = SolverParams::new(Point::new(vec![1.0]));
        match solve_baseline(&bare, BaselineKind::FixedStep, &params) {
            Err(AsdmError::MissingMetadata { what, .. }) => assert_eq!(what, "lipschitz_grad"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn armijo_accepts_the_unit_step_boundary_on_the_flat_quadratic() {
        // First trial lambda = 1 lands exactly on the acceptance boundary:
        // 0.5 - 0 >= 0.5 * 1 * 1.
        let fx = fixture("quad1d").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve_baseline(&fx.objective, BaselineKind::ClassicArmijo, &params).unwrap();
        let r1 = &trace.records[1];
        assert_eq!(r1.i, 1);
        assert_eq!(r1.lambda, 1.0);
        assert_eq!(r1.x.as_slice(), &[0.0]);
        assert_eq!(trace.status, TerminationStatus::GradToleranceReached);
    }

    #[test]
    fn armijo_halves_down_to_the_acceptable_step_on_the_steep_quadratic() {
        // Acceptance reduces to lambda <= 0.01; the ladder 1, 1/2, ... first
        // reaches it at 2^-7, the eighth trial.
        let fx = fixture("steepquad").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve_baseline(&fx.objective, BaselineKind::ClassicArmijo, &params).unwrap();
        let r1 = &trace.records[1];
        assert_eq!(r1.i, 8);
        assert_eq!(r1.lambda, 0.0078125);
        assert_eq!(r1.x.as_slice(), &[0.21875]);
        assert_eq!(r1.fevals_cum, 9, "start eval plus eight trials");
        assert!(matches!(
            trace.status,
            TerminationStatus::GradToleranceReached
        ));
    }

    #[test]
    fn armijo_exhaustion_is_reported_with_the_best_trial() {
        let fx = fixture("steepquad").unwrap();
        let mut params = SolverParams::new(Point::new(vec![1.0]));
        params.i_cap = 4;
        let trace = solve_baseline(&fx.objective, BaselineKind::ClassicArmijo, &params).unwrap();
        match trace.status {
            TerminationStatus::BacktrackExhausted {
                at_k,
                trials,
                best_lambda,
                ..
            } => {
                assert_eq!(at_k, 0);
                assert_eq!(trials, 4);
                assert_eq!(best_lambda, 0.125);
            }
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn baseline_eps_column_is_constant() {
        let fx = fixture("steepquad").unwrap();
        let params = SolverParams::new(Point::new(vec![1.0]));
        let trace = solve_baseline(&fx.objective, BaselineKind::ClassicArmijo, &params).unwrap();
        assert!(trace.records.iter().all(|r| r.eps == 1.0));
    }
}
