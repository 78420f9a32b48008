//! Optimal partial incentives of interval graphs whose thresholds are at
//! most `t`.
//!
//! The sweep splits the graph into blocks separated by small cuts `B_i`. A
//! table entry for block `i` is a local cascade on `B_i`: the incentive on
//! the boundary, its activation order, and the help each boundary vertex
//! gets from beyond `V_i`. Moving from block `i - 1` to `i` fixes the
//! incentive on `∂V_i` and an order on `B_(i-1) ∪ B_i`, and simulates the
//! block in between. Every block carries at most `C(t+1, 2)` incentive.

use std::collections::HashMap;

use serde::Serialize;

use crate::decomposition::{check_representation, interval_scan, Interval, IntervalStructure};
use crate::error::SolveError;
use crate::graph::{is_partial_incentive, Graph, Incentive, Thresholds, Vertex};
use crate::par;
use crate::structure::is_clique;

/// `[σ | order | ρ]` over the sorted boundary; `order` holds positions.
type Key = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalSolution {
    pub weight: u64,
    pub sigma: Incentive,
    /// Boundary cascades stored over all blocks and components.
    pub states: usize,
    pub blocks: usize,
}

/// `σ(v_i) = max(τ(v_i) - i, 0)` along the given clique order, 0 elsewhere.
pub fn clique_incentive(g: &Graph, tau: &Thresholds, clique: &[Vertex]) -> Result<Incentive, SolveError> {
    tau.check_domain(g)?;
    if clique.iter().any(|&v| v >= g.n()) || !is_clique(g, clique) {
        return Err(SolveError::NotAClique(clique.to_vec()));
    }
    let mut sigma = Incentive::zero(g.n());
    for (i, &v) in clique.iter().enumerate() {
        sigma.set(v, (tau[v] - i as i64).max(0) as u64);
    }
    Ok(sigma)
}

pub fn binomial2(t: usize) -> u64 {
    (t * (t + 1) / 2) as u64
}

/// Whether every block region carries at most `C(t+1, 2)` incentive.
pub fn block_budgets_hold(structure: &IntervalStructure, sigma: &Incentive) -> bool {
    let cap = binomial2(structure.t);
    structure.blocks.iter().all(|b| sigma.weight_on(&b.region) <= cap)
}

/// Whether some activation order of all of `g` lets `boundary` activate in
/// the listed order. Vertex `v` needs `residual[v]` earlier neighbours;
/// boundary vertices also count `help[v]`. Decided greedily: activate any
/// eligible non-boundary vertex, else the next boundary vertex if eligible.
pub fn boundary_order_feasible(g: &Graph, residual: &[i64], boundary: &[Vertex], help: &[u32]) -> bool {
    let n = g.n();
    let mut on_boundary = vec![false; n];
    for &b in boundary {
        on_boundary[b] = true;
    }
    let mut active = vec![false; n];
    let mut count = vec![0i64; n];
    let mut next = 0;
    let mut done = 0;
    let activate = |v: Vertex, active: &mut Vec<bool>, count: &mut Vec<i64>| {
        active[v] = true;
        for &w in g.neighbors(v) {
            count[w] += 1;
        }
    };
    loop {
        if let Some(v) = (0..n).find(|&v| !active[v] && !on_boundary[v] && count[v] >= residual[v]) {
            activate(v, &mut active, &mut count);
            done += 1;
            continue;
        }
        match boundary.get(next) {
            Some(&b) if count[b] + i64::from(help[b]) >= residual[b] => {
                activate(b, &mut active, &mut count);
                next += 1;
                done += 1;
            }
            _ => return done == n,
        }
    }
}

/// Exhaustive counterpart of [`boundary_order_feasible`] over all orders.
pub fn boundary_order_feasible_exhaustive(g: &Graph, residual: &[i64], boundary: &[Vertex], help: &[u32]) -> bool {
    let n = g.n();
    let mut rank = vec![usize::MAX; n];
    for (i, &b) in boundary.iter().enumerate() {
        rank[b] = i;
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    loop {
        let ranks: Vec<usize> = perm.iter().map(|&v| rank[v]).filter(|&r| r != usize::MAX).collect();
        if ranks.windows(2).all(|w| w[0] < w[1]) {
            let mut pos = vec![0; n];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let ok = perm.iter().all(|&v| {
                let earlier = g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count() as i64;
                let extra = if rank[v] != usize::MAX { i64::from(help[v]) } else { 0 };
                earlier + extra >= residual[v]
            });
            if ok {
                return true;
            }
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
        return false;
    };
    let j = (i..items.len()).rev().find(|&j| items[j] > items[i - 1]).expect("a larger element exists");
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// All vectors within per-entry ranges whose sum is at most `budget`, in
/// lexicographic order.
fn bounded_vectors(ranges: &[(u32, u32)], budget: u32) -> Vec<Vec<u32>> {
    fn go(ranges: &[(u32, u32)], budget: u32, floor: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == ranges.len() {
            out.push(cur.clone());
            return;
        }
        let rest_floor = floor - ranges[i].0;
        let (lo, hi) = ranges[i];
        for x in lo..=hi.min(budget.saturating_sub(rest_floor)) {
            if x + rest_floor > budget {
                break;
            }
            cur.push(x);
            go(ranges, budget - x, rest_floor, cur, out);
            cur.pop();
        }
    }
    let floor: u32 = ranges.iter().map(|r| r.0).sum();
    let mut out = Vec::new();
    if floor <= budget {
        go(ranges, budget, floor, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone)]
struct Entry {
    cost: u64,
    /// Incentive on the block region, in region order.
    sigma: Vec<u32>,
    prev: Key,
}

/// One block transition, in local indices of the region.
struct Block<'a> {
    tau: &'a [i64],
    region: &'a [Vertex],
    /// Region indices of `B_(i-1)` and `B_i`, sorted by vertex.
    prev: Vec<usize>,
    next: Vec<usize>,
    /// `B_(i-1) ∪ B_i`.
    joint: Vec<usize>,
    in_prev: Vec<bool>,
    in_next: Vec<bool>,
    in_joint: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

impl<'a> Block<'a> {
    fn new(g: &Graph, tau: &'a [i64], region: &'a [Vertex], prev: &[Vertex], next: &[Vertex]) -> Self {
        let local: HashMap<Vertex, usize> = region.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let index = |vs: &[Vertex]| -> Vec<usize> { vs.iter().map(|v| local[v]).collect() };
        let prev = index(prev);
        let next = index(next);
        let mut joint: Vec<usize> = prev.iter().chain(&next).copied().collect();
        joint.sort_unstable();
        joint.dedup();
        let mark = |vs: &[usize]| {
            let mut m = vec![false; region.len()];
            for &i in vs {
                m[i] = true;
            }
            m
        };
        let adj =
            region.iter().map(|&v| g.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect()).collect();
        Block {
            tau,
            region,
            in_prev: mark(&prev),
            in_next: mark(&next),
            in_joint: mark(&joint),
            prev,
            next,
            joint,
            adj,
        }
    }

    /// For one incentive on the region, every order of the joint boundary
    /// that lets the whole block activate, with the help counts `h`.
    fn orders(&self, sigma: &[u32]) -> Vec<(Vec<usize>, Vec<u32>)> {
        let m = self.region.len();
        let res: Vec<i64> = (0..m).map(|i| self.tau[self.region[i]] - i64::from(sigma[i])).collect();
        let zero: Vec<usize> = self.joint.iter().copied().filter(|&i| res[i] <= 0).collect();
        let mut tail: Vec<usize> = self.joint.iter().copied().filter(|&i| res[i] > 0).collect();
        let mut out = Vec::new();
        loop {
            let order: Vec<usize> = zero.iter().chain(&tail).copied().collect();
            if let Some(h) = self.simulate(&res, &order) {
                out.push((order, h));
            }
            if !next_permutation(&mut tail) {
                return out;
            }
        }
    }

    /// Activates the joint boundary in `order`, closing over interior
    /// vertices after each step. Returns per-region-index help `h`, or
    /// `None` when some interior vertex never activates.
    fn simulate(&self, res: &[i64], order: &[usize]) -> Option<Vec<u32>> {
        let m = self.region.len();
        let mut active = vec![false; m];
        let mut count = vec![0i64; m];
        let mut h = vec![0u32; m];
        let mut stack = Vec::new();
        let close = |active: &mut Vec<bool>, count: &mut Vec<i64>, stack: &mut Vec<usize>| {
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    count[w] += 1;
                    if !active[w] && !self.in_joint[w] && count[w] >= res[w] {
                        active[w] = true;
                        stack.push(w);
                    }
                }
            }
        };
        for v in 0..m {
            if !self.in_joint[v] && res[v] <= 0 {
                active[v] = true;
                stack.push(v);
            }
        }
        close(&mut active, &mut count, &mut stack);
        for &v in order {
            // previous-boundary vertices only count neighbours new to this block
            h[v] = if self.in_prev[v] {
                self.adj[v].iter().filter(|&&w| active[w] && !self.in_prev[w]).count() as u32
            } else {
                count[v] as u32
            };
            active[v] = true;
            stack.push(v);
            close(&mut active, &mut count, &mut stack);
        }
        active.iter().all(|&a| a).then_some(h)
    }
}

fn boundary_key(sigma: &[u32], order: &[usize], rho: &[u32], members: &[usize]) -> Key {
    let pos = |i: usize| members.iter().position(|&m| m == i).expect("member of the boundary") as u32;
    let mut key: Key = members.iter().map(|&i| sigma[i]).collect();
    key.extend(order.iter().filter(|i| members.contains(i)).map(|&i| pos(i)));
    key.extend(members.iter().map(|&i| rho[i]));
    key
}

fn solve_connected(
    g: &Graph,
    intervals: &[Interval],
    tau: &[i64],
    t: usize,
) -> Result<(u64, Vec<u64>, usize, usize), SolveError> {
    let structure = interval_scan(g, intervals, t)?;
    let budget = binomial2(t) as u32;
    let mut tables: Vec<HashMap<Key, Entry>> = Vec::with_capacity(structure.k());
    let mut previous: HashMap<Key, Entry> =
        HashMap::from([(Vec::new(), Entry { cost: 0, sigma: Vec::new(), prev: Vec::new() })]);
    let mut prev_boundary: Vec<Vertex> = Vec::new();
    let mut states = 0;

    for block in &structure.blocks {
        let b = Block::new(g, tau, &block.region, &prev_boundary, &block.boundary);
        let ranges: Vec<(u32, u32)> =
            block.region.iter().map(|&v| ((tau[v] - g.degree(v) as i64).max(0) as u32, tau[v].max(0) as u32)).collect();
        let candidates = bounded_vectors(&ranges, budget);
        let chunks: Vec<Vec<Vec<u32>>> = candidates.chunks(64).map(<[_]>::to_vec).collect();
        let partial = par::map(chunks, |chunk| {
            let mut best: HashMap<Key, Entry> = HashMap::new();
            for sigma in chunk {
                for (order, h) in b.orders(&sigma) {
                    transition(&b, &sigma, &order, &h, &previous, &mut best);
                }
            }
            best
        });
        let mut table: HashMap<Key, Entry> = HashMap::new();
        for part in partial {
            // chunks arrive in enumeration order; keep the first strict minimum
            for (key, entry) in part {
                match table.get(&key) {
                    Some(e) if e.cost <= entry.cost => {}
                    _ => {
                        table.insert(key, entry);
                    }
                }
            }
        }
        states += table.len();
        tables.push(table.clone());
        previous = table;
        prev_boundary = block.boundary.clone();
    }

    let last = tables.last().expect("at least one block");
    let s = prev_boundary.len();
    let best = last
        .iter()
        .filter(|(k, _)| k[2 * s..].iter().all(|&r| r == 0))
        .min_by(|x, y| x.1.cost.cmp(&y.1.cost).then_with(|| x.0.cmp(y.0)))
        .ok_or_else(|| SolveError::Internal("no feasible cascade for the last block".into()))?;
    let total = best.1.cost;

    let mut sigma = vec![0u64; g.n()];
    let mut key = best.0.clone();
    for (i, table) in tables.iter().enumerate().rev() {
        let entry = &table[&key];
        for (&v, &x) in structure.blocks[i].region.iter().zip(&entry.sigma) {
            sigma[v] = u64::from(x);
        }
        key = entry.prev.clone();
    }
    Ok((total, sigma, states, structure.k()))
}

fn transition(
    b: &Block<'_>,
    sigma: &[u32],
    order: &[usize],
    h: &[u32],
    previous: &HashMap<Key, Entry>,
    best: &mut HashMap<Key, Entry>,
) {
    let res = |i: usize| b.tau[b.region[i]] - i64::from(sigma[i]);
    let cap = |i: usize, x: u32| x.min(res(i).max(0) as u32);
    let own: u64 = (0..b.region.len()).filter(|&i| !b.in_prev[i]).map(|i| u64::from(sigma[i])).sum();
    let next = &b.next;
    let rho_ranges: Vec<(u32, u32)> = next.iter().map(|&i| (0, res(i).max(0) as u32)).collect();
    let mut rho_next = vec![0u32; next.len()];
    loop {
        let mut rho = vec![0u32; b.region.len()];
        for (k, &i) in next.iter().enumerate() {
            rho[i] = rho_next[k];
        }
        let ok = next.iter().filter(|&&i| !b.in_prev[i]).all(|&i| i64::from(h[i]) + i64::from(rho[i]) >= res(i));
        if ok {
            let back: Vec<u32> = (0..b.region.len())
                .map(|i| if b.in_prev[i] { cap(i, h[i] + if b.in_next[i] { rho[i] } else { 0 }) } else { 0 })
                .collect();
            let prev_key = boundary_key(sigma, order, &back, &b.prev);
            if let Some(p) = previous.get(&prev_key) {
                let cost = p.cost + own;
                let key = boundary_key(sigma, order, &rho, next);
                match best.get(&key) {
                    Some(e) if e.cost <= cost => {}
                    _ => {
                        best.insert(key, Entry { cost, sigma: sigma.to_vec(), prev: prev_key });
                    }
                }
            }
        }
        let mut k = 0;
        loop {
            if k == next.len() {
                return;
            }
            if rho_next[k] < rho_ranges[k].1 {
                rho_next[k] += 1;
                break;
            }
            rho_next[k] = 0;
            k += 1;
        }
    }
}

/// Minimum-weight partial incentive of an interval graph realized by
/// `intervals`, with all thresholds at most `t`. Components are solved
/// separately.
pub fn solve_pi_interval(
    g: &Graph,
    intervals: &[Interval],
    tau: &Thresholds,
    t: usize,
) -> Result<IntervalSolution, SolveError> {
    tau.check_domain(g)?;
    check_representation(g, intervals)?;
    if let Some(v) = g.vertices().find(|&v| tau[v] > t as i64) {
        return Err(SolveError::ThresholdExceedsT { vertex: v, threshold: tau[v], t });
    }
    let mut sigma = vec![0u64; g.n()];
    let mut weight = 0;
    let mut states = 0;
    let mut blocks = 0;
    for comp in g.components() {
        let (h, map) = g.induced(&comp);
        let ivs: Vec<Interval> = map.iter().map(|&v| intervals[v].clone()).collect();
        let local_tau: Vec<i64> = map.iter().map(|&v| tau[v]).collect();
        let (w, s, st, k) = solve_connected(&h, &ivs, &local_tau, t)?;
        for (i, &v) in map.iter().enumerate() {
            sigma[v] = s[i];
        }
        weight += w;
        states += st;
        blocks += k;
    }
    let sigma = Incentive::new(sigma);
    if sigma.weight()? != weight || !is_partial_incentive(g, tau, &sigma) {
        return Err(SolveError::Internal("traceback produced an inconsistent incentive".into()));
    }
    Ok(IntervalSolution { weight, sigma, states, blocks })
}
