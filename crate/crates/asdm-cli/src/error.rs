use std::path::PathBuf;

use asdm_core::AsdmError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Solver(#[from] AsdmError),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Process exit code for a failure. 1 = configuration, 2 = solver.
/// Audit failures (3) never surface as errors; main derives them from the
/// report after a run completes.
pub fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Config(_) | CliError::Output { .. } => 1,
        CliError::Solver(e) => match e {
            AsdmError::InvalidParameter { .. }
            | AsdmError::DimensionMismatch { .. }
            | AsdmError::UnknownProblem(_)
            | AsdmError::MissingMetadata { .. } => 1,
            _ => 2,
        },
    }
}
