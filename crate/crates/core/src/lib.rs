//! Exact nim-values for subset take-away (and graph chomp) on simplicial complexes.
//!
//! The crate is organised around [`SimplicialComplex`], the game position. On top of it:
//!
//! * [`canon`] computes isomorphism-invariant keys for memoisation,
//! * [`symmetry`] finds involutions whose fixed-point set is again a complex and
//!   reduces positions by them,
//! * [`engine`] is the memoised mex solver with component decomposition,
//! * [`closed_forms`] holds the known nim-value formulas for graph families,
//! * [`oracle`] is a deliberately naive solver used as ground truth,
//! * [`generators`] builds the graph families and random corpora,
//! * [`lab`] runs tail, multi-attachment and wheel sweeps.

pub mod canon;
pub mod closed_forms;
pub mod complex;
pub mod engine;
pub mod format;
pub mod generators;
pub mod lab;
pub mod oracle;
pub mod symmetry;
pub mod table;

pub use canon::{canonical_key, CanonicalKey, KeyKind};
pub use complex::{Face, GraphStats, SimplicialComplex, MAX_VERTICES};
pub use engine::{classify, grundy, mex, nim_sum, optimal_move, EngineConfig, GrundyRecord, Outcome};
pub use generators::FamilySpec;
pub use table::TranspositionTable;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("illegal move: {0} is not a face of the position")]
    IllegalMove(Face),
    #[error("canonicalization bound exceeded: {vertices} vertices > {bound}")]
    Capacity { vertices: usize, bound: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("transposition table conflict: stored {stored}, computed {computed}")]
    TableConflict { stored: u32, computed: u32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
