//! Seeded instance generators. All randomness comes from ChaCha8 seeded with
//! a `u64`, so a seed reproduces the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decomposition::{intersection_graph, Interval};
use crate::graph::{Budgets, Graph, Thresholds, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random recursive tree: vertex `i > 0` hangs off a uniform earlier vertex.
pub fn tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameters("a tree needs at least one vertex".into()));
    }
    let mut r = rng(seed);
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (r.gen_range(0..i), i)).collect();
    Ok(Graph::from_edges(n, edges).expect("tree edges are distinct"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInstance {
    pub graph: Graph,
    /// Vertices on the outer face, row-major.
    pub outer: Vec<Vertex>,
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<GridInstance, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::InvalidParameters("grid dimensions must be positive".into()));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    let outer = (0..rows * cols)
        .filter(|&v| {
            let (r, c) = (v / cols, v % cols);
            r == 0 || c == 0 || r + 1 == rows || c + 1 == cols
        })
        .collect();
    Ok(GridInstance { graph: Graph::from_edges(rows * cols, edges).expect("grid edges are distinct"), outer })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalInstance {
    pub graph: Graph,
    pub intervals: Vec<Interval>,
}

/// Connected interval graph on integer endpoints. Left endpoints advance by
/// at most `max_len` and never pass the furthest right endpoint so far;
/// lengths are uniform in `0..=max_len`.
pub fn interval(n: usize, max_len: i64, seed: u64) -> Result<IntervalInstance, GenError> {
    if n == 0 || max_len < 1 {
        return Err(GenError::InvalidParameters("need n >= 1 and max_len >= 1".into()));
    }
    let mut r = rng(seed);
    let mut intervals = Vec::with_capacity(n);
    let mut left = 0i64;
    let mut reach = 0i64;
    for i in 0..n {
        if i > 0 {
            left = (left + r.gen_range(0..=max_len)).min(reach);
        }
        let right = left + r.gen_range(0..=max_len);
        reach = reach.max(right);
        intervals.push(Interval::from_integers(left, right));
    }
    Ok(IntervalInstance { graph: intersection_graph(&intervals), intervals })
}

/// Erdős–Rényi `G(n, p)`.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidParameters(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("pairs are distinct"))
}

/// A random recursive tree plus every other pair independently with
/// probability `p`; always connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidParameters("need n >= 1 and p in [0, 1]".into()));
    }
    let mut r = rng(seed);
    let mut parent = vec![usize::MAX; n];
    for (i, slot) in parent.iter_mut().enumerate().skip(1) {
        *slot = r.gen_range(0..i);
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if parent[v] == u || r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("pairs are distinct"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarInstance {
    pub graph: Graph,
    pub outer: Vec<Vertex>,
}

/// Stacked triangulation: starting from triangle `0, 1, 2`, every new vertex
/// goes into a uniform inner face and joins its three corners. Fewer than
/// three vertices give a path.
pub fn planar(n: usize, seed: u64) -> Result<PlanarInstance, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameters("need at least one vertex".into()));
    }
    if n < 3 {
        let edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (v - 1, v)).collect();
        return Ok(PlanarInstance { graph: Graph::from_edges(n, edges).expect("path"), outer: (0..n).collect() });
    }
    let mut r = rng(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2]];
    for v in 3..n {
        let f = faces.swap_remove(r.gen_range(0..faces.len()));
        edges.extend(f.iter().map(|&c| (c, v)));
        faces.extend([[f[0], f[1], v], [f[1], f[2], v], [f[0], f[2], v]]);
    }
    Ok(PlanarInstance {
        graph: Graph::from_edges(n, edges).expect("new vertices give distinct edges"),
        outer: vec![0, 1, 2],
    })
}

/// Thresholds uniform in `lo..=hi`.
pub fn thresholds(g: &Graph, lo: i64, hi: i64, seed: u64) -> Result<Thresholds, GenError> {
    if lo > hi {
        return Err(GenError::InvalidParameters(format!("empty threshold range {lo}..={hi}")));
    }
    let mut r = rng(seed);
    Ok(Thresholds::new(g.vertices().map(|_| r.gen_range(lo..=hi)).collect()))
}

/// Thresholds uniform in `0..=d(u) + extra`, optionally capped at `cap`.
pub fn degree_thresholds(g: &Graph, extra: i64, cap: Option<i64>, seed: u64) -> Thresholds {
    let mut r = rng(seed);
    Thresholds::new(
        g.vertices()
            .map(|u| {
                let hi = g.degree(u) as i64 + extra;
                let hi = cap.map_or(hi, |c| hi.min(c)).max(0);
                r.gen_range(0..=hi)
            })
            .collect(),
    )
}

/// Budgets uniform in `lo..=hi`.
pub fn budgets(g: &Graph, lo: i64, hi: i64, seed: u64) -> Result<Budgets, GenError> {
    thresholds(g, lo, hi, seed).map(|t| Budgets::new(t.into_inner()))
}

/// A uniformly shuffled copy of `0..n`.
pub fn permutation(n: usize, seed: u64) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = (0..n).collect();
    v.shuffle(&mut rng(seed));
    v
}
