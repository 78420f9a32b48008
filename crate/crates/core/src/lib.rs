//! Exact and approximate algorithms for dynamic monopolies (target sets),
//! partial incentives and degenerate sets.
//!
//! * [`graph`]: data model, hulls and the validity predicates.
//! * [`oracle`]: exhaustive solvers used as ground truth.
//! * [`decomposition`]: tree decompositions and interval sweep structures.
//! * [`pi_tw`]: optimal partial incentives over a nice tree decomposition,
//!   and minimum dynamic monopolies through the path-attachment reduction.
//! * [`pi_interval`]: optimal partial incentives of interval graphs with
//!   bounded thresholds.
//! * [`approx`]: the tree-decomposition approximation for dynamic monopolies
//!   and the layering scheme for maximum degenerate sets.
//! * [`reductions`] and [`gen`]: instance transformers and generators.
//! * [`format`]: the text formats shared with the command-line tool.

pub mod approx;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod pi_interval;
pub mod pi_tw;
pub mod reductions;
pub mod structure;

pub use error::SolveError;
pub use graph::{Budgets, Graph, Incentive, Thresholds, Vertex};
