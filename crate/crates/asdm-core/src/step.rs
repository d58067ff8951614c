//! Backtracking step-size search along an eps-normalized direction.
//!
//! Trials are lambda = eta^i for i = 1, 2, ... with eta = (1 - beta)^{1/(v-1)};
//! the first trial is eta, never 1. A trial is accepted by
//!
//! * Rule 1: `f(x) - f(x + lambda s) >= -lambda beta <g, s>`
//! * Rule 2: `f(x) - f(x + lambda s) >= lambda beta eps ||s||^v`
//!
//! Rule 1 acceptance implies Rule 2 acceptance at the same lambda because
//! `-<g, s> >= eps ||s||^v` for a normalized direction. Each trial costs
//! exactly one function evaluation; a non-finite trial value fails the rule
//! and backtracking continues.

use serde::{Deserialize, Serialize};

use crate::error::AsdmError;
use crate::objective::Objective;
use crate::point::Point;

/// Which acceptance inequality a run uses. Fixed for the whole run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum StepRule {
    Rule1,
    Rule2,
}

impl StepRule {
    pub fn as_int(self) -> u8 {
        match self {
            StepRule::Rule1 => 1,
            StepRule::Rule2 => 2,
        }
    }
}

impl From<StepRule> for u8 {
    fn from(r: StepRule) -> u8 {
        r.as_int()
    }
}

impl TryFrom<u8> for StepRule {
    type Error = String;
    fn try_from(n: u8) -> Result<Self, String> {
        match n {
            1 => Ok(StepRule::Rule1),
            2 => Ok(StepRule::Rule2),
            other => Err(format!("step rule must be 1 or 2, got {other}")),
        }
    }
}

/// The backtracking ratio eta = (1 - beta)^{1/(v-1)}; exactly 1 - beta when
/// v = 2.
pub fn eta(beta: f64, v: f64) -> f64 {
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    assert!(v >= 2.0, "v must be at least 2");
    if v == 2.0 {
        1.0 - beta
    } else {
        (1.0 - beta).powf(1.0 / (v - 1.0))
    }
}

/// An accepted trial.
#[derive(Clone, Debug)]
pub struct StepSearchResult {
    /// Index of the accepted trial; lambda = eta^{i_star}.
    pub i_star: u32,
    pub lambda: f64,
    pub x_next: Point,
    pub f_next: f64,
    /// Function evaluations spent, equal to `i_star`: one per trial.
    pub trial_count: u32,
    pub rule: StepRule,
}

#[allow(clippy::too_many_arguments)]
fn rule_accepts(
    rule: StepRule,
    f_x: f64,
    f_trial: f64,
    g_dot_s: f64,
    s_norm_pow_v: f64,
    lambda: f64,
    beta: f64,
    eps: f64,
) -> bool {
    if !f_trial.is_finite() {
        return false;
    }
    let decrease = f_x - f_trial;
    match rule {
        StepRule::Rule1 => decrease >= -lambda * beta * g_dot_s,
        StepRule::Rule2 => decrease >= lambda * beta * eps * s_norm_pow_v,
    }
}

/// Rule 1 at a single lambda. Costs exactly one function evaluation.
pub fn rule1_holds(
    obj: &impl Objective,
    x: &Point,
    f_x: f64,
    g: &Point,
    s: &Point,
    lambda: f64,
    beta: f64,
) -> bool {
    let f_trial = obj.value(&x.add_scaled(lambda, s));
    rule_accepts(
        StepRule::Rule1,
        f_x,
        f_trial,
        g.dot(s),
        0.0,
        lambda,
        beta,
        0.0,
    )
}

/// Rule 2 at a single lambda. Costs exactly one function evaluation.
#[allow(clippy::too_many_arguments)]
pub fn rule2_holds(
    obj: &impl Objective,
    x: &Point,
    f_x: f64,
    s: &Point,
    lambda: f64,
    beta: f64,
    eps: f64,
    v: f64,
) -> bool {
    let f_trial = obj.value(&x.add_scaled(lambda, s));
    rule_accepts(
        StepRule::Rule2,
        f_x,
        f_trial,
        0.0,
        s.norm_pow(v),
        lambda,
        beta,
        eps,
    )
}

/// Scans i = 1, 2, ..., i_cap and returns the first accepted trial.
///
/// `f_x` is the already-known value at `x`; each trial spends exactly one
/// new evaluation through `obj`. Exhausting the cap is an error carrying the
/// best (largest-decrease) finite trial seen, never a silent acceptance.
#[allow(clippy::too_many_arguments)]
pub fn backtrack(
    obj: &impl Objective,
    x: &Point,
    f_x: f64,
    g: &Point,
    s: &Point,
    rule: StepRule,
    beta: f64,
    eps: f64,
    v: f64,
    i_cap: u32,
) -> Result<StepSearchResult, AsdmError> {
    assert!(i_cap >= 1, "i_cap must be at least 1");
    let eta = eta(beta, v);
    let g_dot_s = g.dot(s);
    let s_norm_pow_v = s.norm_pow(v);
    let mut best: Option<(f64, f64, f64)> = None; // (decrease, lambda, f_trial)
    for i in 1..=i_cap {
        let lambda = eta.powi(i as i32);
        let x_trial = x.add_scaled(lambda, s);
        let f_trial = obj.value(&x_trial);
        if rule_accepts(rule, f_x, f_trial, g_dot_s, s_norm_pow_v, lambda, beta, eps) {
            return Ok(StepSearchResult {
                i_star: i,
                lambda,
                x_next: x_trial,
                f_next: f_trial,
                trial_count: i,
                rule,
            });
        }
        if f_trial.is_finite() {
            let decrease = f_x - f_trial;
            if best.is_none_or(|(d, _, _)| decrease > d) {
                best = Some((decrease, lambda, f_trial));
            }
        }
    }
    let (best_decrease, best_lambda, best_f) =
        best.unwrap_or((f64::NEG_INFINITY, f64::NAN, f64::NAN));
    Err(AsdmError::BacktrackExhausted {
        i_cap,
        trials: i_cap,
        best_lambda,
        best_f,
        best_decrease,
    })
}

/// Analytic lower bound on any accepted step when eps has not yet caught up
/// with the true modulus mu and the direction is not mu-normalized:
/// `lambda > (eps mu^{-1} (1 - beta)^2)^{1/(v-1)}`.
pub fn step_lower_bound(eps: f64, mu: f64, beta: f64, v: f64) -> f64 {
    assert!(eps > 0.0, "eps must be positive");
    assert!(eps < mu, "the bound only applies while eps < mu");
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    assert!(v >= 2.0, "v must be at least 2");
    let om = 1.0 - beta;
    let base = eps / mu * om * om;
    if v == 2.0 {
        base
    } else {
        base.powf(1.0 / (v - 1.0))
    }
}

/// Lower estimate of the unknown modulus mu implied by an observed accepted
/// step: `mu > eps (1 - beta)^2 lambda^{1-v}`.
pub fn mu_lower_estimate(eps: f64, beta: f64, lambda: f64, v: f64) -> f64 {
    assert!(eps > 0.0, "eps must be positive");
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    assert!(lambda > 0.0, "lambda must be positive");
    assert!(v >= 2.0, "v must be at least 2");
    let om = 1.0 - beta;
    if v == 2.0 {
        eps * om * om / lambda
    } else {
        eps * om * om * lambda.powf(1.0 - v)
    }
}
