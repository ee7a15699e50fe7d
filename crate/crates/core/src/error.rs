//! Error types shared across the crate.

use thiserror::Error;

/// Structural problems found while building a transducer from names.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("no states")]
    NoStates,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("reserved symbol `{0}` declared")]
    ReservedSymbol(String),
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("duplicate transition `{0}`")]
    DuplicateTransition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("no states")]
    NoStates,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("duplicate transition")]
    DuplicateTransition,
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("{0}")]
    Delimiter(String),
    #[error("{0}")]
    Model(ModelError),
    #[error("invalid transducer: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, column, kind }
    }
}

/// Errors raised by the analyses.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("transducer is not functional on input {input:?}: {first:?} vs {second:?}")]
    NotFunctional {
        input: String,
        first: String,
        second: String,
    },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
