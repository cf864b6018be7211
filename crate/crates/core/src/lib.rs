//! Parity games: model, parsing, exact solvers, winning-core approximation,
//! and benchmark-game generators.
//!
//! A parity game is a directed graph with a total edge relation where every
//! state has an owner (player 0 or 1) and a color ≥ 1. Player 0 wins a play
//! iff the greatest color seen infinitely often is even. This crate provides
//! the data model ([`ParityGame`]), the PGSolver text format, attractor-based
//! exact solvers, the winning-core machinery (under-approximation, partial
//! solver, and exact computation via a product reduction), and deterministic
//! game generators for benchmarks.

pub mod attractor;
pub mod bstep;
pub mod error;
pub mod game;
pub mod generate;
pub mod paths;
pub mod pgsolver;
pub mod product;
pub mod reward;
pub mod set;
pub mod solvers;
pub mod wcore;

pub use error::{Error, Result};
pub use game::{ParityGame, Player, Restriction};
pub use set::StateSet;
pub use solvers::{MemorylessStrategy, Regions};
