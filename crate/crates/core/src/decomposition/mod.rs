//! Tree decompositions (validation, nice form, a min-fill heuristic) and the
//! sweep structure of interval representations.

mod heuristic;
mod interval;
mod nice;
mod td;

use thiserror::Error;

use crate::graph::Vertex;

pub use heuristic::{heuristic_td, min_fill_order};
pub use interval::{
    check_representation, intersection_graph, interval_scan, perturb_intervals, Block, Endpoint, Interval,
    IntervalStructure, Rational,
};
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};
pub use td::{validate_td, RootedTree, TdViolation, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid tree decomposition: {0}")]
    InvalidTd(#[from] TdViolation),
    #[error("root node {root} does not exist ({bags} bags)")]
    BadRoot { root: usize, bags: usize },
    #[error("expected {expected} intervals but got {found}")]
    IntervalCount { expected: usize, found: usize },
    #[error("interval of vertex {0} has its left endpoint after its right endpoint")]
    ReversedInterval(Vertex),
    #[error("intervals do not realize the graph: {0}")]
    RepresentationMismatch(String),
    #[error("interval graph is not connected")]
    Disconnected,
}
