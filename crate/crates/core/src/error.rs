use thiserror::Error;

/// Errors raised by the automata, suite and learning layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input alphabets differ")]
    AlphabetMismatch,
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("empty symbol name")]
    EmptySymbol,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("missing transition for state {state} on input {input}")]
    Incomplete { state: usize, input: usize },
    #[error("transition undefined at position {position}")]
    Undefined { position: usize },
    #[error("initial state is a sink")]
    InitialIsSink,
    #[error("graph has no edges")]
    NoEdges,
    #[error("word is not a counterexample for the current hypothesis")]
    NotACounterexample,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
