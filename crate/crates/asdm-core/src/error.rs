//! Error type shared across the solver library.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum AsdmError {
    #[error("objective value is not finite at {at:?}")]
    NonFiniteValue { at: Vec<f64> },

    #[error("gradient is not finite at {at:?}")]
    NonFiniteGradient { at: Vec<f64> },

    #[error("gradient is zero: the current point is stationary, caller must stop")]
    ZeroGradient,

    #[error("parameter `{name}` = {value} violates requirement {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(
        "constructed direction violates the descent inequality (residual {residual:.3e} \
         exceeds slack {slack:.3e})"
    )]
    DirectionInvariant { residual: f64, slack: f64 },

    #[error(
        "backtracking exhausted {trials} trials (cap {i_cap}); best trial had \
         lambda = {best_lambda:.6e}, f = {best_f:.6e}, decrease = {best_decrease:.6e}"
    )]
    BacktrackExhausted {
        i_cap: u32,
        trials: u32,
        best_lambda: f64,
        best_f: f64,
        best_decrease: f64,
    },

    #[error("epsilon overflowed to a non-finite value at iteration {at_k}")]
    EpsilonOverflow { at_k: u64 },

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("problem metadata is missing `{what}`, required for {needed_for}")]
    MissingMetadata {
        what: &'static str,
        needed_for: &'static str,
    },

    #[error(
        "recorded value f = {f} is below the configured optimum f_star = {f_star} \
         beyond tolerance; f_star metadata is inconsistent"
    )]
    FStarInconsistent { f: f64, f_star: f64 },
}
