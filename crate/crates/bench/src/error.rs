use thiserror::Error;

/// Errors raised by generators, DOT I/O and the experiment harness.
#[derive(Debug, Error)]
pub enum BenchError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("state `{state}` has no transition for input `{input}`")]
    IncompleteMachine { state: String, input: String },
    #[error("no minimal reachable machine found after {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] ets_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, BenchError>;
