//! Approximations: a `(w+1)`-approximate dynamic monopoly from any tree
//! decomposition, and the layer-shifting scheme for maximum degenerate sets
//! in planar graphs.

use std::collections::VecDeque;

use serde::Serialize;

use crate::decomposition::{heuristic_td, validate_td, DecompositionError, TreeDecomposition};
use crate::error::SolveError;
use crate::graph::{
    boundary, dual_threshold, hull_mask, is_degenerate, is_dynamic_monopoly, outer_neighbors, Budgets, Graph,
    Thresholds, Vertex,
};
use crate::oracle::{brute_alpha, OracleConfig};
use crate::par;
use crate::pi_tw::{solve_dyn_treewidth_with, TwOptions};

/// `b` is `a`-strong when it is not inside the hull of `a ∪ N^+(b)`.
pub fn is_strong_region(g: &Graph, tau: &Thresholds, a: &[Vertex], b: &[Vertex]) -> bool {
    if b.is_empty() {
        return false;
    }
    let mut seed = a.to_vec();
    seed.extend(outer_neighbors(g, b));
    let h = hull_mask(g, tau.values(), &seed);
    b.iter().any(|&v| !h[v])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionStep {
    pub node: usize,
    pub strong: bool,
    /// For weak regions whose inner boundary lies in the current set: whether
    /// the region is inside the hull of that set (it always should be).
    pub weak_closure: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdApproxReport {
    pub set: Vec<Vertex>,
    pub width: usize,
    pub strong_nodes: Vec<usize>,
    pub steps: Vec<RegionStep>,
}

impl TdApproxReport {
    pub fn ratio_bound(&self) -> usize {
        self.width + 1
    }
}

/// Scans the bags in reversed BFS order from bag 0. Whenever the vertices
/// below a bag form a strong region relative to the set built so far, the
/// whole bag joins the set. The result is a dynamic monopoly of size at most
/// `(w + 1)` times the optimum.
pub fn approx_dyn_td(g: &Graph, tau: &Thresholds, td: &TreeDecomposition) -> Result<TdApproxReport, SolveError> {
    tau.check_domain(g)?;
    validate_td(g, td).map_err(DecompositionError::from)?;
    let rooted = td.rooted(0);
    let below = rooted.subtree_vertices(td, g.n());
    let mut in_set = vec![false; g.n()];
    let mut set: Vec<Vertex> = Vec::new();
    let mut strong_nodes = Vec::new();
    let mut steps = Vec::with_capacity(td.num_bags());
    for &t in rooted.bfs.iter().rev() {
        let region = &below[t];
        let strong = is_strong_region(g, tau, &set, region);
        let weak_closure = if !strong && boundary(g, region).iter().all(|&v| in_set[v]) {
            let h = hull_mask(g, tau.values(), &set);
            Some(region.iter().all(|&v| h[v]))
        } else {
            None
        };
        if strong {
            strong_nodes.push(t);
            for &v in td.bag(t) {
                if !in_set[v] {
                    in_set[v] = true;
                    set.push(v);
                }
            }
        }
        steps.push(RegionStep { node: t, strong, weak_closure });
    }
    set.sort_unstable();
    if !is_dynamic_monopoly(g, tau, &set) {
        return Err(SolveError::Internal("region scan did not produce a monopoly".into()));
    }
    Ok(TdApproxReport { set, width: td.width(), strong_nodes, steps })
}

/// BFS layering from a designated outer set, and the deleted classes for
/// every shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerStructure {
    /// Layer index of every vertex.
    pub layer: Vec<usize>,
    pub layers: usize,
    pub k: usize,
    /// `deleted[i]`: vertices whose layer is `i` modulo `k`.
    pub deleted: Vec<Vec<Vertex>>,
}

impl LayerStructure {
    /// Components that miss the outer set are layered from their lowest vertex.
    pub fn new(g: &Graph, outer: &[Vertex], k: usize) -> Self {
        let n = g.n();
        let mut layer = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut seeds: Vec<Vertex> = outer.iter().copied().filter(|&v| v < n).collect();
        loop {
            for &s in &seeds {
                if layer[s] == usize::MAX {
                    layer[s] = 0;
                    queue.push_back(s);
                }
            }
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if layer[w] == usize::MAX {
                        layer[w] = layer[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            match (0..n).find(|&v| layer[v] == usize::MAX) {
                Some(v) => seeds = vec![v],
                None => break,
            }
        }
        let layers = layer.iter().max().map_or(0, |&l| l + 1);
        let deleted = (0..k).map(|i| (0..n).filter(|&v| layer[v] % k == i).collect()).collect();
        LayerStructure { layer, layers, k, deleted }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BakerOptions {
    /// State cap for the exact piece solver; larger pieces go to the oracle.
    pub max_states: f64,
    pub oracle: OracleConfig,
}

impl Default for BakerOptions {
    fn default() -> Self {
        BakerOptions { max_states: 2e6, oracle: OracleConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BakerReport {
    pub set: Vec<Vertex>,
    pub k: usize,
    pub layers: usize,
    pub best_shift: usize,
    /// Union size for every shift.
    pub shift_sizes: Vec<usize>,
}

/// Largest `kappa`-degenerate subset of a small piece: the complement of a
/// minimum monopoly under the dual thresholds.
fn max_degenerate_piece(g: &Graph, kappa: &Budgets, options: &BakerOptions) -> Result<Vec<Vertex>, SolveError> {
    let tau = dual_threshold(g, kappa);
    let tw = TwOptions { max_states: Some(options.max_states) };
    match solve_dyn_treewidth_with(g, &tau, &heuristic_td(g), &tw) {
        Ok(sol) => {
            let mut out = vec![true; g.n()];
            for &v in &sol.set {
                out[v] = false;
            }
            Ok((0..g.n()).filter(|&v| out[v]).collect())
        }
        Err(SolveError::TooManyStates { estimate, .. }) => match brute_alpha(g, kappa, &options.oracle) {
            Ok(r) => Ok(r.witness),
            Err(_) => Err(SolveError::PieceTooLarge {
                order: g.n(),
                reason: format!("about {estimate:.2e} DP states and above the oracle limit"),
            }),
        },
        Err(e) => Err(e),
    }
}

/// Layer-shifting approximation of a maximum `kappa`-degenerate set. With
/// `k = ⌈1/ε⌉`, each shift deletes every `k`-th layer and solves the
/// remaining pieces exactly; the largest union over shifts is returned.
pub fn baker_ptas_degenerate(
    g: &Graph,
    kappa: &Budgets,
    epsilon: f64,
    outer: &[Vertex],
    options: &BakerOptions,
) -> Result<BakerReport, SolveError> {
    kappa.check_domain(g)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(SolveError::EpsilonNonPositive(epsilon));
    }
    let k = (1.0 / epsilon).ceil().max(1.0) as usize;
    let structure = LayerStructure::new(g, outer, k);
    let per_shift = par::map(structure.deleted.clone(), |removed| -> Result<Vec<Vertex>, SolveError> {
        let mut gone = vec![false; g.n()];
        for &v in &removed {
            gone[v] = true;
        }
        let kept: Vec<Vertex> = g.vertices().filter(|&v| !gone[v]).collect();
        let (rest, map) = g.induced(&kept);
        let pieces = rest.components();
        let solved = par::map(pieces, |piece| -> Result<Vec<Vertex>, SolveError> {
            let global: Vec<Vertex> = piece.iter().map(|&v| map[v]).collect();
            let (h, hmap) = g.induced(&global);
            let budgets = Budgets::new(hmap.iter().map(|&v| kappa[v]).collect());
            Ok(max_degenerate_piece(&h, &budgets, options)?.into_iter().map(|v| hmap[v]).collect())
        });
        let mut union = Vec::new();
        for part in solved {
            union.extend(part?);
        }
        union.sort_unstable();
        Ok(union)
    });
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut shift_sizes = Vec::with_capacity(k);
    for (i, result) in per_shift.into_iter().enumerate() {
        let set = result?;
        shift_sizes.push(set.len());
        if best.as_ref().is_none_or(|(_, b)| set.len() > b.len()) {
            best = Some((i, set));
        }
    }
    let (best_shift, set) = best.expect("k is at least one");
    if is_degenerate(g, kappa, &set).is_none() {
        return Err(SolveError::Internal("union of piece solutions is not degenerate".into()));
    }
    Ok(BakerReport { set, k, layers: structure.layers, best_shift, shift_sizes })
}
