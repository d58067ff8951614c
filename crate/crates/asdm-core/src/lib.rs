//! Adaptive steepest descent for smooth pseudo-convex minimization.
//!
//! The solver normalizes the antigradient against a parameter eps, accepts
//! steps through one of two deterministic backtracking rules, and grows eps
//! from the observed trial counts until it dominates the objective's
//! concavity defect, after which every iteration costs one function and one
//! gradient evaluation. Everything the method provably guarantees (strict
//! descent, the eps ceiling, per-iteration decrease, the step-length floor,
//! the 1/k gap envelope) is re-checked at runtime by the [`diagnostics`]
//! audits over the recorded [`solver::Trace`].
//!
//! Layout: [`point`] and [`objective`] define the data model; [`suite`]
//! ships the analytic test problems; [`certify`] samples convexity-defect
//! and pseudo-convexity certificates; [`direction`] and [`step`] implement
//! direction normalization and the step search; [`solver`] runs the
//! adaptive loop and [`baseline`] the comparison methods; [`diagnostics`]
//! audits finished traces.

pub mod baseline;
pub mod certify;
pub mod diagnostics;
pub mod direction;
pub mod error;
pub mod objective;
pub mod point;
pub mod solver;
pub mod step;
pub mod suite;

pub use baseline::{solve_baseline, BaselineKind};
pub use diagnostics::{audit_run, AuditReport};
pub use direction::DirectionChoice;
pub use error::AsdmError;
pub use objective::{Objective, ObjectiveMetadata, ObjectiveSpec};
pub use point::Point;
pub use solver::{solve, IterationRecord, SolverParams, TerminationStatus, Trace};
pub use step::{StepRule, StepSearchResult};
pub use suite::{Fixture, FixtureOptions};
