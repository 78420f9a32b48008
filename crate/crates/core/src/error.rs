use thiserror::Error;

use crate::decomposition::DecompositionError;
use crate::graph::{GraphError, Vertex};
use crate::oracle::OracleError;

/// Failures of the exact and approximate solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("estimated {estimate:.3e} DP states exceeds the cap of {cap:.3e}")]
    TooManyStates { estimate: f64, cap: f64 },
    #[error("bag of size {0} exceeds the supported maximum of 64")]
    BagTooLarge(usize),
    #[error("threshold {threshold} of vertex {vertex} exceeds t = {t}")]
    ThresholdExceedsT { vertex: Vertex, threshold: i64, t: usize },
    #[error("epsilon must be positive, got {0}")]
    EpsilonNonPositive(f64),
    #[error("piece of order {order} is too large for exact solving ({reason})")]
    PieceTooLarge { order: usize, reason: String },
    #[error("node {0} violates the nice decomposition shape rules")]
    NotNice(usize),
    #[error("vertices {0:?} do not form a clique")]
    NotAClique(Vec<Vertex>),
    #[error("internal error: {0}")]
    Internal(String),
}
