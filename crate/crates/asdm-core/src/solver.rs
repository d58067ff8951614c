//! The adaptive descent loop: eps-normalized directions, backtracking step
//! search, and multiplicative eps growth.
//!
//! Per iteration, from iterate x_k with gradient g_k and current eps_k:
//!
//! 1. stop if ||g_k|| is within tolerance;
//! 2. normalize the antigradient against eps_k;
//! 3. backtrack for the smallest accepted trial index i_k, lambda_k = eta^{i_k};
//! 4. x_{k+1} = x_k + lambda_k s_k;
//! 5. eps_{k+1} = eps_k (1 - beta)^{1 - i_k}.
//!
//! eps never decreases (i_k >= 1) and is never capped; once it reaches the
//! objective's defect modulus, every later iteration accepts the first trial
//! and costs exactly one function and one gradient evaluation. The gradient
//! at a new iterate is always computed fresh at the next loop head.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::direction;
use crate::error::AsdmError;
use crate::objective::{evaluate, gradient, CountingObjective, Objective, ObjectiveSpec};
use crate::point::Point;
use crate::step::{backtrack, StepRule};

/// Everything a run needs besides the objective.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverParams {
    pub beta: f64,
    pub eps0: f64,
    pub v: f64,
    pub rule: StepRule,
    pub grad_tol: f64,
    pub max_iters: u64,
    pub i_cap: u32,
    pub start: Point,
    /// Recorded for provenance and used only where a run draws samples
    /// (trace thinning); the descent loop itself is deterministic.
    pub seed: u64,
}

impl SolverParams {
    pub fn new(start: Point) -> Self {
        SolverParams {
            beta: 0.5,
            eps0: 1.0,
            v: 2.0,
            rule: StepRule::Rule1,
            grad_tol: 1e-8,
            max_iters: 100_000,
            i_cap: 60,
            start,
            seed: 0,
        }
    }

    pub fn validate(&self, dimension: usize) -> Result<(), AsdmError> {
        fn check(
            ok: bool,
            name: &'static str,
            value: f64,
            requirement: &'static str,
        ) -> Result<(), AsdmError> {
            if ok {
                Ok(())
            } else {
                Err(AsdmError::InvalidParameter {
                    name,
                    value,
                    requirement,
                })
            }
        }
        check(
            self.beta.is_finite() && self.beta > 0.0 && self.beta < 1.0,
            "beta",
            self.beta,
            "0 < beta < 1",
        )?;
        check(
            self.eps0.is_finite() && self.eps0 > 0.0,
            "eps0",
            self.eps0,
            "eps0 > 0",
        )?;
        check(self.v.is_finite() && self.v >= 2.0, "v", self.v, "v >= 2")?;
        check(
            self.grad_tol.is_finite() && self.grad_tol > 0.0,
            "grad_tol",
            self.grad_tol,
            "grad_tol > 0",
        )?;
        check(self.i_cap >= 1, "i_cap", self.i_cap as f64, "i_cap >= 1")?;
        if !self.start.is_finite() {
            return Err(AsdmError::InvalidParameter {
                name: "x0",
                value: f64::NAN,
                requirement: "start point must be finite",
            });
        }
        if self.start.dim() != dimension {
            return Err(AsdmError::DimensionMismatch {
                expected: dimension,
                got: self.start.dim(),
            });
        }
        Ok(())
    }
}

/// One row of a run trace.
///
/// Row 0 is the start point (its step fields are zero). Row k >= 1 couples
/// the iterate x_k with the step that produced it: `i`, `lambda`,
/// `step_norm` = ||s_{k-1}|| and `dir_dot_grad` = <g_{k-1}, s_{k-1}> all
/// describe the move from x_{k-1}, while `eps` is the value after the
/// update at the end of that iteration. `f` strictly decreases and `eps`
/// never decreases down the rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: u64,
    pub x: Point,
    pub f: f64,
    pub grad_norm: f64,
    pub eps: f64,
    pub i: u32,
    pub lambda: f64,
    pub step_norm: f64,
    pub dir_dot_grad: f64,
    pub was_rescaled: bool,
    pub fevals_cum: u64,
    pub gevals_cum: u64,
}

/// Why a run stopped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TerminationStatus {
    GradToleranceReached,
    MaxIters,
    /// The step search ran out of trials; carries the best trial seen.
    BacktrackExhausted {
        at_k: u64,
        trials: u32,
        best_lambda: f64,
        best_decrease: f64,
    },
}

/// Full record of one run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trace {
    pub params: SolverParams,
    /// Fixture identifier when the run came from the registry; set by the
    /// harness, not by `solve` itself.
    pub problem_id: Option<String>,
    pub records: Vec<IterationRecord>,
    pub status: TerminationStatus,
    pub final_x: Point,
    pub final_f: f64,
    pub warnings: Vec<String>,
    /// True when the record list was reservoir-thinned (runs beyond
    /// [`RECORD_LIMIT`] rows); the first and last [`EXACT_EDGE`] rows are
    /// always kept exactly.
    pub thinned: bool,
}

/// Gradient-norm stopping test.
pub fn stopping(g: &Point, grad_tol: f64) -> bool {
    g.norm() <= grad_tol
}

/// `eps * (1 - beta)^{1 - i}`: unchanged when the first trial was accepted,
/// grown multiplicatively otherwise. Never decreases.
pub fn update_epsilon(eps: f64, i: u32, beta: f64) -> f64 {
    assert!(i >= 1, "trial index starts at 1");
    assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    eps * (1.0 - beta).powi(1 - i as i32)
}

/// Records switch to reservoir thinning past this many rows.
pub const RECORD_LIMIT: usize = 1_000_000;
/// Rows kept exactly at both ends of a thinned trace.
pub const EXACT_EDGE: usize = 1_000;
const RESERVOIR_CAP: usize = 10_000;

/// Collects rows; above [`RECORD_LIMIT`] it keeps the first and last
/// [`EXACT_EDGE`] rows exactly and a seeded uniform reservoir of the middle.
pub(crate) struct Recorder {
    plain: Vec<IterationRecord>,
    head: Vec<IterationRecord>,
    tail: VecDeque<IterationRecord>,
    reservoir: Vec<IterationRecord>,
    middle_seen: u64,
    rng: ChaCha8Rng,
    thinning: bool,
}

impl Recorder {
    pub fn new(seed: u64) -> Self {
        Recorder {
            plain: Vec::new(),
            head: Vec::new(),
            tail: VecDeque::new(),
            reservoir: Vec::new(),
            middle_seen: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            thinning: false,
        }
    }

    fn feed_reservoir(&mut self, rec: IterationRecord) {
        self.middle_seen += 1;
        if self.reservoir.len() < RESERVOIR_CAP {
            self.reservoir.push(rec);
        } else {
            let j = self.rng.gen_range(0..self.middle_seen);
            if (j as usize) < RESERVOIR_CAP {
                self.reservoir[j as usize] = rec;
            }
        }
    }

    pub fn push(&mut self, rec: IterationRecord) {
        if !self.thinning {
            self.plain.push(rec);
            if self.plain.len() > RECORD_LIMIT {
                self.thinning = true;
                let mut rows = std::mem::take(&mut self.plain);
                let tail_from = rows.len() - EXACT_EDGE;
                for (idx, row) in rows.drain(..).enumerate() {
                    if idx < EXACT_EDGE {
                        self.head.push(row);
                    } else if idx >= tail_from {
                        self.tail.push_back(row);
                    } else {
                        self.feed_reservoir(row);
                    }
                }
            }
            return;
        }
        self.tail.push_back(rec);
        if self.tail.len() > EXACT_EDGE {
            let spill = self.tail.pop_front().expect("tail is nonempty");
            self.feed_reservoir(spill);
        }
    }

    pub fn finish(self) -> (Vec<IterationRecord>, bool) {
        if !self.thinning {
            return (self.plain, false);
        }
        let mut rows = self.head;
        let mut middle = self.reservoir;
        middle.sort_by_key(|r| r.k);
        rows.extend(middle);
        rows.extend(self.tail);
        (rows, true)
    }
}

/// Runs the adaptive loop on `obj` from `params.start`.
///
/// Termination by tolerance, iteration budget, or trial exhaustion is a
/// normal return carrying the corresponding [`TerminationStatus`];
/// domain violations (non-finite value or gradient at an accepted iterate)
/// and invalid parameters are errors.
pub fn solve(obj: &ObjectiveSpec, params: &SolverParams) -> Result<Trace, AsdmError> {
    params.validate(obj.dimension())?;
    let counting = CountingObjective::new(obj);
    let mut warnings = Vec::new();
    let mut recorder = Recorder::new(params.seed);

    let mut x = params.start.clone();
    let mut f = evaluate(&counting, &x)?;
    let mut g = gradient(&counting, &x)?;
    let mut gnorm = g.norm();
    let mut eps = params.eps0;
    let mut k: u64 = 0;

    recorder.push(IterationRecord {
        k,
        x: x.clone(),
        f,
        grad_norm: gnorm,
        eps,
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
        let dir = match direction::normalize(&g, eps, params.v) {
            Ok(d) => d,
            Err(AsdmError::ZeroGradient) => break TerminationStatus::GradToleranceReached,
            Err(e) => return Err(e),
        };
        let g_dot_s = g.dot(&dir.s);
        let result = match backtrack(
            &counting,
            &x,
            f,
            &g,
            &dir.s,
            params.rule,
            params.beta,
            eps,
            params.v,
            params.i_cap,
        ) {
            Ok(r) => r,
            Err(AsdmError::BacktrackExhausted {
                trials,
                best_lambda,
                best_decrease,
                ..
            }) => {
                break TerminationStatus::BacktrackExhausted {
                    at_k: k,
                    trials,
                    best_lambda,
                    best_decrease,
                }
            }
            Err(e) => return Err(e),
        };

        x = result.x_next;
        f = result.f_next;
        let next_eps = update_epsilon(eps, result.i_star, params.beta);
        if !next_eps.is_finite() {
            return Err(AsdmError::EpsilonOverflow { at_k: k });
        }
        if next_eps > 1e12 && eps <= 1e12 {
            warnings.push(format!(
                "eps exceeded 1e12 at iteration {} (eps = {next_eps:e}); \
                 the defect certificate may not hold on this region",
                k + 1
            ));
        }
        eps = next_eps;
        k += 1;
        g = gradient(&counting, &x)?;
        gnorm = g.norm();
        recorder.push(IterationRecord {
            k,
            x: x.clone(),
            f,
            grad_norm: gnorm,
            eps,
            i: result.i_star,
            lambda: result.lambda,
            step_norm: dir.s.norm(),
            dir_dot_grad: g_dot_s,
            was_rescaled: dir.was_rescaled,
            fevals_cum: counting.fevals(),
            gevals_cum: counting.gevals(),
        });
    };

    let (records, thinned) = recorder.finish();
    if thinned {
        warnings.push(format!(
            "trace exceeded {RECORD_LIMIT} rows; middle rows were reservoir-thinned \
             (first/last {EXACT_EDGE} kept exactly)"
        ));
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

/// Draws a start point uniformly from the box of half-width `half_width`
/// around `center`. Used by sweep harnesses; recorded seeds make the draw
/// reproducible.
pub fn random_start(center: &Point, half_width: f64, rng: &mut impl Rng) -> Point {
    Point::new(
        center
            .as_slice()
            .iter()
            .map(|c| c + rng.gen_range(-half_width..=half_width))
            .collect(),
    )
}
