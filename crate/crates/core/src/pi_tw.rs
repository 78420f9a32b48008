//! Optimal partial incentives over a nice tree decomposition, and minimum
//! dynamic monopolies through the path-attachment reduction.
//!
//! A local cascade at a node with bag `X` is a pair `(≺, r)`: the order in
//! which the bag activates, and for each bag vertex how much help it still
//! needs from neighbours already forgotten below the node, beyond what its
//! earlier bag neighbours give. Its value is the cheapest incentive on the
//! vertices forgotten in the subtree that realizes it. A vertex's incentive
//! is chosen where it is forgotten. Fully paid vertices come first in `≺`,
//! sorted by position, since they are active from the start; the key
//! records how many there are.
//!
//! The set of local cascades a node is asked about depends only on the
//! parent's query, never on table values. The solver therefore runs a
//! top-down pass collecting every queried cascade, then evaluates them
//! bottom-up. Each node's queries are evaluated in parallel.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::decomposition::{make_nice, validate_td, NiceKind, NiceTreeDecomposition, TreeDecomposition};
use crate::error::SolveError;
use crate::graph::{
    is_dynamic_monopoly, is_partial_incentive, normalize_thresholds, Graph, Incentive, Thresholds, Vertex,
};
use crate::par;
use crate::reductions::dyn_to_pi;

/// Packed local cascade: `[z | order | r]` where `z` counts the fully paid
/// prefix of `order`. `order[k]` is the bag position of the `k`-th vertex to
/// activate.
type Key = Box<[u32]>;

const INF: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TwOptions {
    /// Refuse to start when [`estimate_states`] exceeds this.
    pub max_states: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiSolution {
    pub weight: u64,
    pub sigma: Incentive,
    /// Local cascades evaluated.
    pub states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynSolution {
    pub size: usize,
    pub set: Vec<Vertex>,
    /// Incentive on the path-attached instance, 1 on the first path vertex
    /// of every member of `set`.
    pub incentive: Incentive,
    pub states: usize,
}

fn sigma_range(g: &Graph, tau: &[i64], v: Vertex) -> (u32, u32) {
    let lo = (tau[v] - g.degree(v) as i64).max(0) as u32;
    let hi = tau[v].max(0) as u32;
    (lo, hi)
}

/// Upper bound on the number of local cascades over all nodes, after
/// threshold normalization.
pub fn estimate_states(g: &Graph, tau: &Thresholds, nice: &NiceTreeDecomposition) -> f64 {
    let (tau, _) = normalize_thresholds(g, tau);
    let tau = tau.values();
    nice.nodes()
        .iter()
        .map(|node| {
            node.bag.iter().enumerate().fold(1.0f64, |acc, (i, &v)| {
                let need = tau[v].clamp(0, g.degree(v) as i64);
                acc * (i + 1) as f64 * (need + 1) as f64
            })
        })
        .sum::<f64>()
        .min(f64::MAX)
}

enum Expansion {
    Leaf,
    Dead,
    Introduce(Key),
    /// Child cascade and the incentive given to the forgotten vertex.
    Forget(Vec<(Key, u32)>),
    Join(Vec<(Key, Key)>),
}

struct NodeInfo {
    /// Neighbourhood of each bag position within the bag.
    adj: Vec<u64>,
    /// Position of the introduced or forgotten vertex in the larger bag.
    pivot: usize,
    /// Per bag position: neighbours forgotten within this node's subtree.
    inside: Vec<u32>,
}

struct Dp<'a> {
    nice: &'a NiceTreeDecomposition,
    tau: &'a [i64],
    range: Vec<(u32, u32)>,
    info: Vec<NodeInfo>,
}

impl<'a> Dp<'a> {
    fn new(g: &Graph, tau: &'a [i64], nice: &'a NiceTreeDecomposition) -> Self {
        let nodes = nice.nodes();
        // forget node of every vertex and preorder intervals of the nice tree
        let mut forget_at = vec![usize::MAX; g.n()];
        for (i, node) in nodes.iter().enumerate() {
            if let NiceKind::Forget(v) = node.kind {
                forget_at[v] = i;
            }
        }
        let mut tin = vec![0; nodes.len()];
        let mut tout = vec![0; nodes.len()];
        let mut clock = 0;
        let mut stack = vec![(nice.root(), false)];
        while let Some((t, done)) = stack.pop() {
            if done {
                tout[t] = clock;
                continue;
            }
            tin[t] = clock;
            clock += 1;
            stack.push((t, true));
            for &c in nodes[t].children.iter().rev() {
                stack.push((c, false));
            }
        }
        let below = |c: usize, w: Vertex| {
            let f = forget_at[w];
            f != usize::MAX && tin[c] <= tin[f] && tin[f] < tout[c]
        };

        let info = nodes
            .iter()
            .enumerate()
            .map(|(t, node)| {
                let bag = &node.bag;
                let adj = bag
                    .iter()
                    .map(|&v| {
                        bag.iter().enumerate().filter(|&(_, &w)| g.has_edge(v, w)).fold(0u64, |m, (q, _)| m | 1 << q)
                    })
                    .collect();
                let pivot = match node.kind {
                    NiceKind::Introduce(v) => bag.binary_search(&v).expect("introduced vertex is in the bag"),
                    NiceKind::Forget(v) => {
                        nodes[node.children[0]].bag.binary_search(&v).expect("forgotten vertex is in the child bag")
                    }
                    _ => 0,
                };
                let inside =
                    bag.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| below(t, w)).count() as u32).collect();
                NodeInfo { adj, pivot, inside }
            })
            .collect();
        let range = g.vertices().map(|v| sigma_range(g, tau, v)).collect();
        Dp { nice, tau, range, info }
    }

    fn expand(&self, t: usize, key: &[u32]) -> Expansion {
        let node = self.nice.node(t);
        let info = &self.info[t];
        let s = node.bag.len();
        let z = key[0] as usize;
        let (order, r) = key[1..].split_at(s);
        if (0..s).any(|p| r[p] > info.inside[p]) {
            return Expansion::Dead;
        }
        match node.kind {
            NiceKind::Leaf => Expansion::Leaf,
            NiceKind::Introduce(_) => {
                let pu = info.pivot;
                let rank = order.iter().position(|&p| p as usize == pu).expect("order is a permutation");
                let shrink = |p: u32| p - u32::from(p as usize > pu);
                let mut child = Vec::with_capacity(2 * s - 1);
                child.push((z - usize::from(rank < z)) as u32);
                child.extend(order.iter().filter(|&&p| p as usize != pu).map(|&p| shrink(p)));
                child.extend((0..s).filter(|&p| p != pu).map(|p| r[p]));
                Expansion::Introduce(child.into_boxed_slice())
            }
            NiceKind::Forget(u) => {
                let pu = info.pivot;
                let grow = |p: u32| p + u32::from(p as usize >= pu);
                let child_info = &self.info[node.children[0]];
                let (lo, hi) = self.range[u];
                let mut options = Vec::new();
                for sigma in lo..=hi {
                    let need = self.tau[u] - i64::from(sigma);
                    let (spots, paid) = if need <= 0 {
                        let j = order[..z].iter().take_while(|&&p| (grow(p) as usize) < pu).count();
                        (j..=j, 1)
                    } else {
                        (z..=s, 0)
                    };
                    for j in spots {
                        let mut child_order = Vec::with_capacity(s + 1);
                        child_order.extend(order[..j].iter().map(|&p| grow(p)));
                        child_order.push(pu as u32);
                        child_order.extend(order[j..].iter().map(|&p| grow(p)));
                        let before_u = child_order[..j].iter().fold(0u64, |m, &p| m | 1 << p);
                        let earlier = (child_info.adj[pu] & before_u).count_ones();
                        let own = (need - i64::from(earlier)).max(0) as u32;
                        if own > child_info.inside[pu] {
                            continue;
                        }
                        let mut child = Vec::with_capacity(2 * s + 3);
                        child.push((z + paid) as u32);
                        child.extend(child_order);
                        for q in 0..=s {
                            child.push(if q == pu {
                                own
                            } else {
                                let p = q - usize::from(q > pu);
                                let helped =
                                    u32::from(order[j..].contains(&(p as u32)) && child_info.adj[pu] >> q & 1 == 1);
                                r[p].saturating_sub(helped)
                            });
                        }
                        options.push((child.into_boxed_slice(), sigma));
                    }
                }
                Expansion::Forget(options)
            }
            NiceKind::Join => {
                let [left, right] = [node.children[0], node.children[1]].map(|c| &self.info[c].inside);
                let mut ranges = Vec::with_capacity(s);
                for p in 0..s {
                    let lo = r[p].saturating_sub(right[p]);
                    let hi = r[p].min(left[p]);
                    if lo > hi {
                        return Expansion::Dead;
                    }
                    ranges.push((lo, hi));
                }
                // a[p]: the part of r[p] the first child provides
                let mut options = Vec::new();
                let mut a: Vec<u32> = ranges.iter().map(|r| r.0).collect();
                loop {
                    let mut l = key.to_vec();
                    let mut rt = key.to_vec();
                    for p in 0..s {
                        l[1 + s + p] = a[p];
                        rt[1 + s + p] = r[p] - a[p];
                    }
                    options.push((l.into_boxed_slice(), rt.into_boxed_slice()));
                    let mut p = 0;
                    loop {
                        if p == s {
                            return Expansion::Join(options);
                        }
                        if a[p] < ranges[p].1 {
                            a[p] += 1;
                            break;
                        }
                        a[p] = ranges[p].0;
                        p += 1;
                    }
                }
            }
        }
    }

    fn children_keys(&self, t: usize, key: &[u32]) -> Vec<(usize, Key)> {
        let children = &self.nice.node(t).children;
        match self.expand(t, key) {
            Expansion::Leaf | Expansion::Dead => Vec::new(),
            Expansion::Introduce(child) => vec![(children[0], child)],
            Expansion::Forget(options) => options.into_iter().map(|(k, _)| (children[0], k)).collect(),
            Expansion::Join(options) => {
                options.into_iter().flat_map(|(l, r)| [(children[0], l), (children[1], r)]).collect()
            }
        }
    }

    fn evaluate(&self, t: usize, key: &[u32], tables: &[HashMap<Key, (u64, u32)>]) -> (u64, u32) {
        let node = self.nice.node(t);
        let lookup = |c: usize, k: &Key| tables[c].get(k).expect("queried state was evaluated").0;
        match self.expand(t, key) {
            Expansion::Leaf => (0, 0),
            Expansion::Dead => (INF, 0),
            Expansion::Introduce(child) => (lookup(node.children[0], &child), 0),
            Expansion::Forget(options) => {
                first_min(options.iter().map(|(k, sigma)| match lookup(node.children[0], k) {
                    INF => INF,
                    c => c + u64::from(*sigma),
                }))
            }
            Expansion::Join(options) => first_min(options.iter().map(|(l, r)| {
                match (lookup(node.children[0], l), lookup(node.children[1], r)) {
                    (INF, _) | (_, INF) => INF,
                    (a, b) => a + b,
                }
            })),
        }
    }
}

fn first_min(costs: impl Iterator<Item = u64>) -> (u64, u32) {
    let mut best = (INF, 0);
    for (i, c) in costs.enumerate() {
        if c < best.0 {
            best = (c, i as u32);
        }
    }
    best
}

/// Minimum-weight partial incentive of `(g, tau)` by dynamic programming over
/// `nice`, which must be a nice decomposition of `g`.
pub fn solve_pi_treewidth(g: &Graph, tau: &Thresholds, nice: &NiceTreeDecomposition) -> Result<PiSolution, SolveError> {
    solve_pi_treewidth_with(g, tau, nice, &TwOptions::default())
}

pub fn solve_pi_treewidth_with(
    g: &Graph,
    tau: &Thresholds,
    nice: &NiceTreeDecomposition,
    options: &TwOptions,
) -> Result<PiSolution, SolveError> {
    tau.check_domain(g)?;
    nice.check_shape().map_err(SolveError::NotNice)?;
    validate_td(g, &nice.to_tree_decomposition()).map_err(crate::decomposition::DecompositionError::from)?;
    if let Some(big) = nice.nodes().iter().map(|n| n.bag.len()).find(|&s| s > 64) {
        return Err(SolveError::BagTooLarge(big));
    }
    if let Some(cap) = options.max_states {
        let estimate = estimate_states(g, tau, nice);
        if estimate > cap {
            return Err(SolveError::TooManyStates { estimate, cap });
        }
    }
    let (reduced, base) = normalize_thresholds(g, tau);
    let dp = Dp::new(g, reduced.values(), nice);
    let len = nice.len();
    let root_key: Key = vec![0; 1 + 2 * nice.node(nice.root()).bag.len()].into_boxed_slice();

    let mut queries: Vec<HashSet<Key>> = vec![HashSet::new(); len];
    queries[nice.root()].insert(root_key.clone());
    let mut keys: Vec<Vec<Key>> = vec![Vec::new(); len];
    for t in (0..len).rev() {
        let mut mine: Vec<Key> = std::mem::take(&mut queries[t]).into_iter().collect();
        mine.sort_unstable();
        let expanded = par::map(mine.clone(), |k| dp.children_keys(t, &k));
        for (c, k) in expanded.into_iter().flatten() {
            queries[c].insert(k);
        }
        keys[t] = mine;
    }

    let mut tables: Vec<HashMap<Key, (u64, u32)>> = Vec::with_capacity(len);
    let mut states = 0;
    for (t, mine) in keys.into_iter().enumerate() {
        states += mine.len();
        let values = par::map(mine.clone(), |k| dp.evaluate(t, &k, &tables));
        tables.push(mine.into_iter().zip(values).collect());
    }

    let total = tables[nice.root()][&root_key].0;
    if total == INF {
        return Err(SolveError::Internal("the empty cascade at the root is infeasible".into()));
    }
    let mut sigma = vec![0u64; g.n()];
    let mut stack = vec![(nice.root(), root_key)];
    while let Some((t, key)) = stack.pop() {
        let node = nice.node(t);
        let choice = tables[t][&key].1 as usize;
        match dp.expand(t, &key) {
            Expansion::Leaf => {}
            Expansion::Dead => return Err(SolveError::Internal("traceback reached a dead state".into())),
            Expansion::Introduce(child) => stack.push((node.children[0], child)),
            Expansion::Forget(mut options) => {
                let (child, value) = options.swap_remove(choice);
                if let NiceKind::Forget(u) = node.kind {
                    sigma[u] = u64::from(value);
                }
                stack.push((node.children[0], child));
            }
            Expansion::Join(mut options) => {
                let (l, r) = options.swap_remove(choice);
                stack.push((node.children[0], l));
                stack.push((node.children[1], r));
            }
        }
    }
    let sigma = Incentive::new(sigma).plus(&base)?;
    let weight = sigma.weight()?;
    if weight != total + base.weight()? || !is_partial_incentive(g, tau, &sigma) {
        return Err(SolveError::Internal("traceback produced an inconsistent incentive".into()));
    }
    Ok(PiSolution { weight, sigma, states })
}

/// Minimum dynamic monopoly: attaches threshold paths, extends `td` along
/// them, and reads the monopoly off an optimal incentive.
pub fn solve_dyn_treewidth(g: &Graph, tau: &Thresholds, td: &TreeDecomposition) -> Result<DynSolution, SolveError> {
    solve_dyn_treewidth_with(g, tau, td, &TwOptions::default())
}

pub fn solve_dyn_treewidth_with(
    g: &Graph,
    tau: &Thresholds,
    td: &TreeDecomposition,
    options: &TwOptions,
) -> Result<DynSolution, SolveError> {
    tau.check_domain(g)?;
    validate_td(g, td).map_err(crate::decomposition::DecompositionError::from)?;
    // a threshold above the degree already forces the vertex into every monopoly
    let clamped = Thresholds::new(g.vertices().map(|u| tau[u].min(g.degree(u) as i64 + 1)).collect());
    let reduced = dyn_to_pi(g, &clamped, Some(td));
    let extended = reduced.td.as_ref().expect("a decomposition was supplied");
    let nice = make_nice(&reduced.graph, extended, None)?;
    let solution = solve_pi_treewidth_with(&reduced.graph, &reduced.tau, &nice, options)?;
    let set = reduced.monopoly_from_incentive(&solution.sigma);
    if set.len() as u64 != solution.weight || !is_dynamic_monopoly(g, tau, &set) {
        return Err(SolveError::Internal("incentive does not map back to an optimal monopoly".into()));
    }
    let incentive = reduced.incentive_from_monopoly(&set);
    Ok(DynSolution { size: set.len(), set, incentive, states: solution.states })
}
