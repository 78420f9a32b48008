//! Exponential-time exhaustive solvers used as ground truth.
//!
//! Every search enumerates candidates in a fixed order (by size or weight,
//! then lexicographically) and returns the first hit, so witnesses are the
//! lexicographically smallest optimal ones. The first branching level may be
//! searched in parallel; the ordered reduction keeps results identical.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_degenerate, Budgets, Graph, HullScratch, Incentive, Thresholds, Vertex};
use crate::par;

/// Environment variable overriding [`OracleConfig::max_vertices`].
pub const ORACLE_LIMIT_ENV: &str = "TSSKIT_ORACLE_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the oracle limit of {limit}")]
    LimitExceeded { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: 20 }
    }
}

impl OracleConfig {
    /// Default limits, overridden by `TSSKIT_ORACLE_LIMIT` when it parses.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(limit) = std::env::var(ORACLE_LIMIT_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            config.max_vertices = limit;
        }
        config
    }

    fn check(&self, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.max_vertices {
            Err(OracleError::LimitExceeded { n: g.n(), limit: self.max_vertices })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult<W> {
    pub optimum: u64,
    pub witness: W,
}

/// Visits the `k`-subsets of `from..n` in lexicographic order until `visit`
/// returns true; returns the accepted subset.
fn first_combination<F>(from: usize, n: usize, k: usize, mut visit: F) -> Option<Vec<Vertex>>
where
    F: FnMut(&[Vertex]) -> bool,
{
    if k > n.saturating_sub(from) {
        return None;
    }
    let mut combo: Vec<Vertex> = (from..from + k).collect();
    loop {
        if visit(&combo) {
            return Some(combo);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographically first `k`-subset of `V(g)` accepted by `accept`.
fn first_subset_of_size<F>(n: usize, k: usize, accept: F) -> Option<Vec<Vertex>>
where
    F: Fn(&[Vertex], &mut HullScratch, &mut Vec<bool>) -> bool + Sync + Send,
{
    if k == 0 {
        let mut scratch = HullScratch::new();
        let mut buf = vec![false; n];
        return accept(&[], &mut scratch, &mut buf).then(Vec::new);
    }
    par::find_map_first(n, |first| {
        let mut scratch = HullScratch::new();
        let mut buf = vec![false; n];
        first_combination(first + 1, n, k - 1, |rest| {
            let mut set = Vec::with_capacity(k);
            set.push(first);
            set.extend_from_slice(rest);
            accept(&set, &mut scratch, &mut buf)
        })
        .map(|rest| {
            let mut set = vec![first];
            set.extend(rest);
            set
        })
    })
}

fn closes_to_everything(
    g: &Graph,
    thresholds: &[i64],
    seed: &[Vertex],
    scratch: &mut HullScratch,
    buf: &mut Vec<bool>,
) -> bool {
    buf.clear();
    buf.resize(g.n(), false);
    for &s in seed {
        buf[s] = true;
    }
    scratch.close(g, thresholds, buf) == g.n()
}

/// Minimum dynamic monopoly by increasing cardinality.
pub fn brute_dyn(g: &Graph, tau: &Thresholds, config: &OracleConfig) -> Result<OracleResult<Vec<Vertex>>, OracleError> {
    config.check(g)?;
    tau.check_domain(g).expect("thresholds must be defined on V(G)");
    let n = g.n();
    for k in 0..=n {
        let found =
            first_subset_of_size(n, k, |set, scratch, buf| closes_to_everything(g, tau.values(), set, scratch, buf));
        if let Some(witness) = found {
            return Ok(OracleResult { optimum: k as u64, witness });
        }
    }
    unreachable!("V(G) is always a dynamic monopoly")
}

/// Minimum dynamic monopoly among the supersets of `required`.
pub fn brute_dyn_containing(
    g: &Graph,
    tau: &Thresholds,
    required: &[Vertex],
    config: &OracleConfig,
) -> Result<OracleResult<Vec<Vertex>>, OracleError> {
    config.check(g)?;
    let mut fixed = vec![false; g.n()];
    for &r in required {
        fixed[r] = true;
    }
    let free: Vec<Vertex> = g.vertices().filter(|&u| !fixed[u]).collect();
    let mut scratch = HullScratch::new();
    let mut buf = Vec::new();
    for k in 0..=free.len() {
        let hit = first_combination(0, free.len(), k, |idx| {
            let mut set: Vec<Vertex> = required.to_vec();
            set.extend(idx.iter().map(|&i| free[i]));
            closes_to_everything(g, tau.values(), &set, &mut scratch, &mut buf)
        });
        if let Some(idx) = hit {
            let mut witness: Vec<Vertex> = required.to_vec();
            witness.extend(idx.iter().map(|&i| free[i]));
            witness.sort_unstable();
            witness.dedup();
            return Ok(OracleResult { optimum: witness.len() as u64, witness });
        }
    }
    unreachable!("V(G) is always a dynamic monopoly")
}

/// Every dynamic monopoly that contains `required`, in bitmask order.
pub fn monopolies_containing(
    g: &Graph,
    tau: &Thresholds,
    required: &[Vertex],
    config: &OracleConfig,
) -> Result<Vec<Vec<Vertex>>, OracleError> {
    config.check(g)?;
    let n = g.n();
    let mut required_mask = 0u64;
    for &r in required {
        required_mask |= 1 << r;
    }
    let mut scratch = HullScratch::new();
    let mut buf = Vec::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask & required_mask != required_mask {
            continue;
        }
        let set: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if closes_to_everything(g, tau.values(), &set, &mut scratch, &mut buf) {
            out.push(set);
        }
    }
    Ok(out)
}

/// Per-vertex search range for incentive values.
fn incentive_bounds(g: &Graph, tau: &Thresholds, slack: u64, tight: bool) -> Vec<(u64, u64)> {
    g.vertices()
        .map(|u| {
            let hi = tau[u].max(0) as u64 + slack;
            // a residual above the degree can never be met
            let lo = if tight { (tau[u] - g.degree(u) as i64).max(0) as u64 } else { 0 };
            (lo.min(hi), hi)
        })
        .collect()
}

struct IncentiveSearch<'a> {
    g: &'a Graph,
    tau: &'a Thresholds,
    bounds: Vec<(u64, u64)>,
    suffix_lo: Vec<u64>,
    suffix_hi: Vec<u64>,
}

impl<'a> IncentiveSearch<'a> {
    fn new(g: &'a Graph, tau: &'a Thresholds, bounds: Vec<(u64, u64)>) -> Self {
        let n = bounds.len();
        let mut suffix_lo = vec![0u64; n + 1];
        let mut suffix_hi = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix_lo[i] = suffix_lo[i + 1].saturating_add(bounds[i].0);
            suffix_hi[i] = suffix_hi[i + 1].saturating_add(bounds[i].1);
        }
        IncentiveSearch { g, tau, bounds, suffix_lo, suffix_hi }
    }

    fn feasible(&self, sigma: &[u64], scratch: &mut HullScratch, buf: &mut Vec<bool>) -> bool {
        let residual: Vec<i64> =
            self.tau.values().iter().zip(sigma).map(|(&t, &s)| t.saturating_sub(s as i64)).collect();
        closes_to_everything(self.g, &residual, &[], scratch, buf)
    }

    /// Lexicographically first feasible vector with total `remaining` over
    /// positions `pos..`, given the prefix in `sigma`.
    fn descend(
        &self,
        pos: usize,
        remaining: u64,
        sigma: &mut Vec<u64>,
        scratch: &mut HullScratch,
        buf: &mut Vec<bool>,
    ) -> bool {
        let n = self.bounds.len();
        if pos == n {
            return remaining == 0 && self.feasible(sigma, scratch, buf);
        }
        let (lo, hi) = self.bounds[pos];
        let rest_lo = self.suffix_lo[pos + 1];
        let rest_hi = self.suffix_hi[pos + 1];
        let start = lo.max(remaining.saturating_sub(rest_hi));
        let end = hi.min(remaining.saturating_sub(rest_lo));
        if start > end || remaining < rest_lo {
            return false;
        }
        for value in start..=end {
            sigma.push(value);
            if self.descend(pos + 1, remaining - value, sigma, scratch, buf) {
                return true;
            }
            sigma.pop();
        }
        false
    }

    fn first_with_weight(&self, weight: u64) -> Option<Vec<u64>> {
        let n = self.bounds.len();
        if n == 0 {
            return (weight == 0).then(Vec::new);
        }
        let (lo, hi) = self.bounds[0];
        if weight < self.suffix_lo[0] || weight > self.suffix_hi[0] {
            return None;
        }
        let span = (hi - lo + 1) as usize;
        par::find_map_first(span, |offset| {
            let value = lo + offset as u64;
            if value > weight {
                return None;
            }
            let mut sigma = vec![value];
            let mut scratch = HullScratch::new();
            let mut buf = Vec::new();
            self.descend(1, weight - value, &mut sigma, &mut scratch, &mut buf).then_some(sigma)
        })
    }

    fn run(&self) -> OracleResult<Incentive> {
        let mut weight = self.suffix_lo[0];
        loop {
            if let Some(sigma) = self.first_with_weight(weight) {
                return OracleResult { optimum: weight, witness: Incentive::new(sigma) };
            }
            assert!(weight < self.suffix_hi[0], "the positive part of tau is always a partial incentive");
            weight += 1;
        }
    }
}

/// Minimum-weight partial incentive by increasing weight, with
/// `0 <= sigma(u) <= max(tau(u), 0)`.
pub fn brute_pi(g: &Graph, tau: &Thresholds, config: &OracleConfig) -> Result<OracleResult<Incentive>, OracleError> {
    config.check(g)?;
    tau.check_domain(g).expect("thresholds must be defined on V(G)");
    Ok(IncentiveSearch::new(g, tau, incentive_bounds(g, tau, 0, true)).run())
}

/// Same search with `0 <= sigma(u) <= max(tau(u), 0) + slack` and no lower
/// bound; used to confirm the value cap loses nothing.
pub fn brute_pi_uncapped(
    g: &Graph,
    tau: &Thresholds,
    slack: u64,
    config: &OracleConfig,
) -> Result<OracleResult<Incentive>, OracleError> {
    config.check(g)?;
    Ok(IncentiveSearch::new(g, tau, incentive_bounds(g, tau, slack, false)).run())
}

/// Maximum `kappa`-degenerate set by decreasing cardinality.
pub fn brute_alpha(
    g: &Graph,
    kappa: &Budgets,
    config: &OracleConfig,
) -> Result<OracleResult<Vec<Vertex>>, OracleError> {
    config.check(g)?;
    kappa.check_domain(g).expect("budgets must be defined on V(G)");
    let n = g.n();
    for k in (0..=n).rev() {
        if let Some(witness) = first_subset_of_size(n, k, |set, _, _| is_degenerate(g, kappa, set).is_some()) {
            return Ok(OracleResult { optimum: k as u64, witness });
        }
    }
    unreachable!("the empty set is always degenerate")
}

/// Minimum vertex cover by increasing cardinality.
pub fn brute_vertex_cover(g: &Graph, config: &OracleConfig) -> Result<OracleResult<Vec<Vertex>>, OracleError> {
    config.check(g)?;
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    for k in 0..=n {
        let found = first_subset_of_size(n, k, |set, _, buf| {
            buf.clear();
            buf.resize(n, false);
            for &s in set {
                buf[s] = true;
            }
            edges.iter().all(|&(u, v)| buf[u] || buf[v])
        });
        if let Some(witness) = found {
            return Ok(OracleResult { optimum: k as u64, witness });
        }
    }
    unreachable!("V(G) covers every edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_dynamic_monopoly, is_partial_incentive};

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn star3() -> (Graph, Thresholds) {
        (Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap(), Thresholds::new(vec![3, 1, 1, 1]))
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        first_combination(0, 4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn dyn_examples() {
        let r = brute_dyn(&triangle(), &Thresholds::uniform(3, 1), &cfg()).unwrap();
        assert_eq!((r.optimum, r.witness), (1, vec![0]));
        let r = brute_dyn(&path3(), &Thresholds::uniform(3, 0), &cfg()).unwrap();
        assert_eq!(r.optimum, 0);
        let (g, tau) = star3();
        let r = brute_dyn(&g, &tau, &cfg()).unwrap();
        // seeding the centre activates every leaf, whatever the centre's threshold
        assert_eq!(r.optimum, 1);
        assert!(is_dynamic_monopoly(&g, &tau, &r.witness));
        assert_eq!(r.witness, vec![0]);
    }

    #[test]
    fn pi_examples() {
        let r = brute_pi(&path3(), &Thresholds::uniform(3, 1), &cfg()).unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(r.witness.values(), &[0, 0, 1]);
        let (g, tau) = star3();
        let r = brute_pi(&g, &tau, &cfg()).unwrap();
        assert_eq!(r.optimum, 3);
        assert!(is_partial_incentive(&g, &tau, &r.witness));
        assert_eq!(brute_pi(&triangle(), &Thresholds::uniform(3, 0), &cfg()).unwrap().optimum, 0);
    }

    #[test]
    fn alpha_examples() {
        let g = triangle();
        let r = brute_alpha(&g, &Budgets::uniform(3, 1), &cfg()).unwrap();
        assert_eq!((r.optimum, r.witness), (2, vec![0, 1]));
        assert_eq!(brute_alpha(&g, &Budgets::uniform(3, 2), &cfg()).unwrap().optimum, 3);
        assert_eq!(brute_alpha(&g, &Budgets::uniform(3, 0), &cfg()).unwrap().optimum, 1);
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(brute_vertex_cover(&triangle(), &cfg()).unwrap().optimum, 2);
        assert_eq!(brute_vertex_cover(&Graph::empty(3), &cfg()).unwrap().optimum, 0);
        let r = brute_vertex_cover(&path3(), &cfg()).unwrap();
        assert_eq!((r.optimum, r.witness), (1, vec![1]));
    }

    #[test]
    fn limit_is_enforced() {
        let small = OracleConfig { max_vertices: 2 };
        assert_eq!(
            brute_dyn(&triangle(), &Thresholds::uniform(3, 1), &small),
            Err(OracleError::LimitExceeded { n: 3, limit: 2 })
        );
    }

    #[test]
    fn constrained_search_respects_required_vertices() {
        let g = path3();
        let tau = Thresholds::uniform(3, 2);
        let r = brute_dyn_containing(&g, &tau, &[1], &cfg()).unwrap();
        assert_eq!(r.witness, vec![0, 1, 2]);
        let all = monopolies_containing(&g, &Thresholds::uniform(3, 1), &[2], &cfg()).unwrap();
        assert_eq!(all, vec![vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]]);
    }
}
