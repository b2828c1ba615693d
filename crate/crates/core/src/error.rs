//! Error types shared across the crate.

use thiserror::Error;

/// Construction-time problems with names and alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("invalid name {name:?}: {reason}")]
    InvalidName { name: String, reason: String },
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
}

/// Errors raised by exact simulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulateError {
    #[error("machine is nondeterministic: state {state} has {count} successors on {symbol}")]
    NonDeterministic {
        state: String,
        symbol: String,
        count: usize,
    },
}

/// Errors raised by the behavioural classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("word enumeration budget exceeded: {required} words up to length {max_len} > cap {cap}")]
    ExponentialBudgetExceeded {
        required: u128,
        cap: u128,
        max_len: usize,
    },
    #[error(transparent)]
    Simulate(#[from] SimulateError),
}

/// Errors raised by machine conversions and equivalence checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("operation requires a deterministic machine: {0}")]
    NotDeterministic(String),
    #[error("machines have different alphabets: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("state budget exceeded: construction needs more than {cap} states")]
    StateBudgetExceeded { cap: usize },
    #[error("machine is not rotating: {0}")]
    NotRotating(String),
    #[error("operation requires a unary alphabet")]
    NotUnary,
    #[error("operation does not support wrap moves")]
    HasWrapMoves,
    #[error("input word leaves the transition function undefined")]
    UndefinedOnInput,
    #[error("word enumeration budget exceeded: {required} words > cap {cap}")]
    WordBudgetExceeded { required: u128, cap: u128 },
}

/// Errors raised by the graph-accessibility pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("machine is not quasi-sweeping: {0}")]
    NotQuasiSweeping(String),
    #[error("vertex count {n} outside the supported range {min}..={max}")]
    VertexCountOutOfRange { n: usize, min: usize, max: usize },
    #[error("edge ({i},{j}) out of range for {n} vertices")]
    EdgeOutOfRange { i: usize, j: usize, n: usize },
    #[error("unary length must be at least 1 for this operation")]
    InvalidUnaryLength,
    #[error("graph file, line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Errors raised while parsing the textual automaton format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required line {key:?}")]
    Missing { key: String },
    #[error("{0}")]
    Invalid(String),
}

/// Errors raised by the language-family generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("variant {variant} is not defined for family {family}")]
    UnsupportedCombination { family: String, variant: String },
    #[error("family parameter n must be at least 1")]
    InvalidParameter,
}
