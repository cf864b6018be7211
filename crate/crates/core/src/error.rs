//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by game construction, parsing, and the solvers.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a game or regions file.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A transition points at a state id that has no definition.
    #[error("state {state} has a successor {succ} that is not a declared state")]
    DanglingSuccessor { state: usize, succ: usize },

    /// Two definitions for the same state id.
    #[error("duplicate definition of state {id}")]
    DuplicateState { id: usize },

    /// State ids must be consecutive from 0.
    #[error("state ids are not consecutive: missing id {missing}")]
    IdGap { missing: usize },

    /// A state without outgoing transitions; the transition relation must be total.
    #[error("state {state} has no outgoing transition")]
    NonTotal { state: usize },

    /// A color outside the allowed range.
    #[error("state {state} has color {color}, expected a value >= 1")]
    BadColor { state: usize, color: u32 },

    /// Caller passed an argument outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Refused to materialize a product game beyond the configured bound.
    #[error("product game would have {states} states, above the guard of {guard}")]
    ProductTooLarge { states: usize, guard: usize },

    /// Refused to enumerate more strategy profiles than the configured bound.
    #[error("strategy profile count {profiles} exceeds the bound of {bound}")]
    TooManyProfiles { profiles: u128, bound: u128 },

    /// A path argument does not follow the transition relation.
    #[error("path step {index} uses a transition {from} -> {to} that is not in the game")]
    NotAPath { index: usize, from: usize, to: usize },

    /// A lasso argument whose cycle does not close.
    #[error("invalid lasso: {0}")]
    BadLasso(String),

    /// A strategy misses a choice for a state it must cover.
    #[error("strategy has no choice for state {state}")]
    StrategyUndefined { state: usize },

    /// Cooperative deadline hit inside a solver loop.
    #[error("solver deadline expired")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;
