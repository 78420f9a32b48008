//! Graph and threshold data model, hull computation, and the validity
//! predicates for dynamic monopolies, partial incentives and degenerate sets.
//!
//! Vertices are `0..n` indices. Every set-valued output is sorted ascending.

use std::collections::VecDeque;
use std::ops::Index;

use serde::Serialize;
use thiserror::Error;

/// A vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("function has {found} values but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("incentive weight overflows 64 bits")]
    WeightOverflow,
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    /// Returns the subgraph together with the local-to-global map.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        (Graph { adj, m }, vertices.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

macro_rules! vertex_function {
    ($(#[$meta:meta])* $name:ident, $ty:ty) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
        pub struct $name(Vec<$ty>);

        impl $name {
            pub fn new(values: Vec<$ty>) -> Self {
                $name(values)
            }

            pub fn uniform(n: usize, value: $ty) -> Self {
                $name(vec![value; n])
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn values(&self) -> &[$ty] {
                &self.0
            }

            pub fn set(&mut self, u: Vertex, value: $ty) {
                self.0[u] = value;
            }

            pub fn into_inner(self) -> Vec<$ty> {
                self.0
            }

            /// Fails unless the function is defined on exactly `V(g)`.
            pub fn check_domain(&self, g: &Graph) -> Result<(), GraphError> {
                if self.0.len() == g.n() {
                    Ok(())
                } else {
                    Err(GraphError::LengthMismatch { expected: g.n(), found: self.0.len() })
                }
            }
        }

        impl Index<Vertex> for $name {
            type Output = $ty;

            fn index(&self, u: Vertex) -> &$ty {
                &self.0[u]
            }
        }
    };
}

vertex_function!(
    /// Integer activation thresholds; may be negative or exceed the degree.
    Thresholds,
    i64
);
vertex_function!(
    /// Integer degeneracy budgets.
    Budgets,
    i64
);
vertex_function!(
    /// Nonnegative threshold reductions.
    Incentive,
    u64
);

impl Incentive {
    pub fn zero(n: usize) -> Self {
        Incentive(vec![0; n])
    }

    /// Total of all values.
    pub fn weight(&self) -> Result<u64, GraphError> {
        self.0.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)).ok_or(GraphError::WeightOverflow)
    }

    /// Sum of the values on `vertices`.
    pub fn weight_on(&self, vertices: &[Vertex]) -> u64 {
        vertices.iter().map(|&v| self.0[v]).sum()
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &Incentive) -> Result<Incentive, GraphError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(GraphError::WeightOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Incentive)
    }

    /// Vertices with a positive value.
    pub fn support(&self) -> Vec<Vertex> {
        (0..self.0.len()).filter(|&u| self.0[u] > 0).collect()
    }
}

impl Thresholds {
    /// `τ - σ`, saturating at `i64::MIN`.
    pub fn minus(&self, sigma: &Incentive) -> Thresholds {
        assert_eq!(self.len(), sigma.len(), "incentive and thresholds differ in length");
        Thresholds(
            self.0
                .iter()
                .zip(sigma.values())
                .map(|(&t, &s)| t.saturating_sub(i64::try_from(s).unwrap_or(i64::MAX)))
                .collect(),
        )
    }

    /// The largest value, or 0 for an empty function.
    pub fn max_value(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// One step of a cascade: `vertex` joined in `round` while `active_neighbors`
/// of its neighbors were already present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Activation {
    pub vertex: Vertex,
    pub round: usize,
    pub active_neighbors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("vertex {0} appears twice in the trace")]
    Repeated(Vertex),
    #[error("vertex {vertex} entered with {recorded} recorded but {actual} earlier active neighbors")]
    CountMismatch { vertex: Vertex, recorded: usize, actual: usize },
    #[error("vertex {vertex} entered with {count} active neighbors below threshold {threshold}")]
    BelowThreshold { vertex: Vertex, count: usize, threshold: i64 },
    #[error("seed vertex {0} is missing from round 0")]
    SeedNotInitial(Vertex),
}

/// Certificate for hull membership: the order in which vertices joined.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CascadeTrace {
    pub order: Vec<Activation>,
}

impl CascadeTrace {
    /// Re-runs the trace against `(g, tau)` from `seed` and returns the
    /// resulting set, checking every recorded count.
    pub fn replay(&self, g: &Graph, tau: &Thresholds, seed: &[Vertex]) -> Result<Vec<Vertex>, TraceError> {
        let mut is_seed = vec![false; g.n()];
        for &s in seed {
            is_seed[s] = true;
        }
        let mut active = vec![false; g.n()];
        for step in &self.order {
            let u = step.vertex;
            if active[u] {
                return Err(TraceError::Repeated(u));
            }
            let actual = g.neighbors(u).iter().filter(|&&w| active[w]).count();
            if actual != step.active_neighbors {
                return Err(TraceError::CountMismatch { vertex: u, recorded: step.active_neighbors, actual });
            }
            if is_seed[u] {
                if step.round != 0 {
                    return Err(TraceError::SeedNotInitial(u));
                }
            } else if (actual as i64) < tau[u] {
                return Err(TraceError::BelowThreshold { vertex: u, count: actual, threshold: tau[u] });
            }
            active[u] = true;
        }
        if let Some(&s) = seed.iter().find(|&&s| !active[s]) {
            return Err(TraceError::SeedNotInitial(s));
        }
        Ok((0..g.n()).filter(|&u| active[u]).collect())
    }
}

/// The hull of a seed set together with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hull {
    pub members: Vec<Vertex>,
    pub trace: CascadeTrace,
}

/// Computes `H_(g,tau)(seed)` with round-by-round bookkeeping.
pub fn hull(g: &Graph, tau: &Thresholds, seed: &[Vertex]) -> Hull {
    assert_eq!(tau.len(), g.n(), "thresholds must be defined on V(G)");
    let n = g.n();
    let mut active = vec![false; n];
    let mut queued = vec![false; n];
    let mut count = vec![0usize; n];
    let mut position = vec![usize::MAX; n];
    let mut order: Vec<Activation> = Vec::new();

    let mut current: Vec<Vertex> = Vec::new();
    for &s in seed {
        if !queued[s] {
            queued[s] = true;
            current.push(s);
        }
    }
    current.sort_unstable();
    let mut round = 0;
    // vertices satisfied with no active neighbours join in the first expansion
    let mut pending: Vec<Vertex> = (0..n).filter(|&u| !queued[u] && tau[u] <= 0).collect();
    for &u in &pending {
        queued[u] = true;
    }
    while !current.is_empty() || !pending.is_empty() {
        let mut next = std::mem::take(&mut pending);
        for &u in &current {
            active[u] = true;
            position[u] = order.len();
            order.push(Activation { vertex: u, round, active_neighbors: 0 });
        }
        for &u in &current {
            for &w in g.neighbors(u) {
                count[w] += 1;
                if !queued[w] && (count[w] as i64) >= tau[w] {
                    queued[w] = true;
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        current = next;
        round += 1;
    }
    for step in order.iter_mut() {
        let p = position[step.vertex];
        step.active_neighbors = g.neighbors(step.vertex).iter().filter(|&&w| position[w] < p).count();
    }
    let members = (0..n).filter(|&u| active[u]).collect();
    Hull { members, trace: CascadeTrace { order } }
}

/// Reusable buffers for repeated closure computations without traces.
#[derive(Debug, Clone, Default)]
pub struct HullScratch {
    need: Vec<i64>,
    stack: Vec<Vertex>,
}

impl HullScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Closes `active` in place under `thresholds` and returns the number of
    /// active vertices afterwards.
    pub fn close(&mut self, g: &Graph, thresholds: &[i64], active: &mut [bool]) -> usize {
        let n = g.n();
        self.need.clear();
        self.need.extend_from_slice(thresholds);
        self.stack.clear();
        let mut size = 0;
        for u in 0..n {
            if active[u] {
                size += 1;
                for &w in g.neighbors(u) {
                    self.need[w] -= 1;
                }
            }
        }
        for u in 0..n {
            if !active[u] && self.need[u] <= 0 {
                active[u] = true;
                size += 1;
                self.stack.push(u);
            }
        }
        while let Some(u) = self.stack.pop() {
            for &w in g.neighbors(u) {
                self.need[w] -= 1;
                if !active[w] && self.need[w] <= 0 {
                    active[w] = true;
                    size += 1;
                    self.stack.push(w);
                }
            }
        }
        size
    }
}

/// Hull membership as a boolean mask.
pub fn hull_mask(g: &Graph, thresholds: &[i64], seed: &[Vertex]) -> Vec<bool> {
    let mut active = vec![false; g.n()];
    for &s in seed {
        active[s] = true;
    }
    HullScratch::new().close(g, thresholds, &mut active);
    active
}

pub fn is_dynamic_monopoly(g: &Graph, tau: &Thresholds, d: &[Vertex]) -> bool {
    assert_eq!(tau.len(), g.n(), "thresholds must be defined on V(G)");
    hull_mask(g, tau.values(), d).iter().all(|&a| a)
}

pub fn is_partial_incentive(g: &Graph, tau: &Thresholds, sigma: &Incentive) -> bool {
    let residual = tau.minus(sigma);
    hull_mask(g, residual.values(), &[]).iter().all(|&a| a)
}

/// Decides whether `set` is `kappa`-degenerate by greedy peeling and returns
/// an elimination order `u_1, ..., u_k` as witness.
pub fn is_degenerate(g: &Graph, kappa: &Budgets, set: &[Vertex]) -> Option<Vec<Vertex>> {
    assert_eq!(kappa.len(), g.n(), "budgets must be defined on V(G)");
    let n = g.n();
    let mut inside = vec![false; n];
    for &u in set {
        inside[u] = true;
    }
    let mut deg = vec![0i64; n];
    for u in 0..n {
        if inside[u] {
            deg[u] = g.neighbors(u).iter().filter(|&&w| inside[w]).count() as i64;
        }
    }
    let mut queued = vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    for u in (0..n).rev() {
        if inside[u] && deg[u] <= kappa[u] {
            queued[u] = true;
            stack.push(u);
        }
    }
    let mut removed = Vec::with_capacity(set.len());
    while let Some(u) = stack.pop() {
        inside[u] = false;
        removed.push(u);
        for &w in g.neighbors(u) {
            if inside[w] {
                deg[w] -= 1;
                if !queued[w] && deg[w] <= kappa[w] {
                    queued[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let expected = {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    if removed.len() == expected {
        removed.reverse();
        Some(removed)
    } else {
        None
    }
}

/// Checks that every vertex of `order` has at most `kappa` earlier neighbours.
pub fn is_degenerate_order(g: &Graph, kappa: &Budgets, order: &[Vertex]) -> bool {
    let mut seen = vec![false; g.n()];
    for &u in order {
        if seen[u] {
            return false;
        }
        let earlier = g.neighbors(u).iter().filter(|&&w| seen[w]).count() as i64;
        if earlier > kappa[u] {
            return false;
        }
        seen[u] = true;
    }
    true
}

/// `tau(u) = d(u) - kappa(u)`.
pub fn dual_threshold(g: &Graph, kappa: &Budgets) -> Thresholds {
    Thresholds::new(g.vertices().map(|u| g.degree(u) as i64 - kappa[u]).collect())
}

/// `kappa(u) = d(u) - tau(u)`.
pub fn dual_budget(g: &Graph, tau: &Thresholds) -> Budgets {
    Budgets::new(g.vertices().map(|u| g.degree(u) as i64 - tau[u]).collect())
}

/// Lowers every threshold below `n`; the removed excess is returned as a
/// base incentive that any optimal incentive of the reduced instance must be
/// topped up with.
pub fn normalize_thresholds(g: &Graph, tau: &Thresholds) -> (Thresholds, Incentive) {
    let cap = g.n() as i64 - 1;
    let mut reduced = Vec::with_capacity(g.n());
    let mut base = Vec::with_capacity(g.n());
    for u in g.vertices() {
        let excess = (tau[u] - cap).max(0);
        reduced.push(tau[u] - excess);
        base.push(excess as u64);
    }
    (Thresholds::new(reduced), Incentive::new(base))
}

/// `N^+(set)`: vertices outside `set` with a neighbour inside.
pub fn outer_neighbors(g: &Graph, set: &[Vertex]) -> Vec<Vertex> {
    let mut inside = vec![false; g.n()];
    for &u in set {
        inside[u] = true;
    }
    let mut mark = vec![false; g.n()];
    for &u in set {
        for &w in g.neighbors(u) {
            if !inside[w] {
                mark[w] = true;
            }
        }
    }
    (0..g.n()).filter(|&u| mark[u]).collect()
}

/// `N^-(set)`: members of `set` with a neighbour outside.
pub fn boundary(g: &Graph, set: &[Vertex]) -> Vec<Vertex> {
    let mut inside = vec![false; g.n()];
    for &u in set {
        inside[u] = true;
    }
    let mut out: Vec<Vertex> = set.iter().copied().filter(|&u| g.neighbors(u).iter().any(|&w| !inside[w])).collect();
    out.sort_unstable();
    out.dedup();
    out
}
