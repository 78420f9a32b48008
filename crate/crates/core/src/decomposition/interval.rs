//! Interval representations and the left-to-right sweep structure used by the
//! interval-graph incentive solver.

use num_rational::Ratio;

use crate::graph::{Graph, Vertex};

use super::DecompositionError;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Self {
        Interval { left, right }
    }

    pub fn from_integers(left: i64, right: i64) -> Self {
        Interval { left: Rational::from_integer(left.into()), right: Rational::from_integer(right.into()) }
    }

    /// Closed intervals intersect.
    pub fn meets(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

/// Intersection graph of closed intervals, vertex `i` for interval `i`.
pub fn intersection_graph(intervals: &[Interval]) -> Graph {
    let n = intervals.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if intervals[i].meets(&intervals[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

/// Makes all `2n` endpoints distinct without changing which intervals meet.
///
/// With `delta` the smallest positive gap between endpoint values, the left
/// endpoint of interval `v` moves down and its right endpoint moves up by
/// `delta * (v + 1) / (2n + 2)`. Every shift is below `delta / 2`, so no
/// endpoint passes another value and disjoint intervals stay disjoint.
pub fn perturb_intervals(raw: &[Interval]) -> Vec<Interval> {
    let n = raw.len();
    let mut values: Vec<Rational> = raw.iter().flat_map(|iv| [iv.left, iv.right]).collect();
    values.sort();
    values.dedup();
    let delta = values.windows(2).map(|w| w[1] - w[0]).min().unwrap_or_else(|| Rational::from_integer(1));
    let denom = 2 * n as i128 + 2;
    raw.iter()
        .enumerate()
        .map(|(v, iv)| {
            let shift = delta * Rational::new(v as i128 + 1, denom);
            Interval { left: iv.left - shift, right: iv.right + shift }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    pub vertex: Vertex,
    pub is_left: bool,
}

/// One block `G_i` of the sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// `V_i`: every vertex whose interval starts at or before the block's cut.
    pub vertices: Vec<Vertex>,
    /// `B_i`: the cut set closing the block.
    pub boundary: Vec<Vertex>,
    /// `∂V_i`: new vertices of this block plus the previous boundary.
    pub region: Vec<Vertex>,
    /// Index of the closing cut in [`IntervalStructure::cuts`].
    pub cut: usize,
}

/// Sweep structure of a connected interval graph.
///
/// Indices are 0-based: `cuts[i]` is the set of intervals containing the
/// zone between the `i`-th and `(i+1)`-th endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalStructure {
    pub intervals: Vec<Interval>,
    pub endpoints: Vec<Endpoint>,
    pub cuts: Vec<Vec<Vertex>>,
    /// Cut indices of the block boundaries; the last is always `2n - 2`.
    pub breakpoints: Vec<usize>,
    pub blocks: Vec<Block>,
    pub t: usize,
}

impl IntervalStructure {
    pub fn cut_sizes(&self) -> Vec<usize> {
        self.cuts.iter().map(Vec::len).collect()
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Cut indices `i` (0-based, interior) where the size sequence dips:
    /// `c_i < min(c_{i-1}, c_{i+1})`.
    pub fn dips(&self) -> Vec<usize> {
        let c = self.cut_sizes();
        (1..c.len().saturating_sub(1)).filter(|&i| c[i] < c[i - 1] && c[i] < c[i + 1]).collect()
    }
}

/// Checks that `intervals` realize exactly the edges of `g`.
pub fn check_representation(g: &Graph, intervals: &[Interval]) -> Result<(), DecompositionError> {
    if intervals.len() != g.n() {
        return Err(DecompositionError::IntervalCount { expected: g.n(), found: intervals.len() });
    }
    if let Some(v) = intervals.iter().position(|iv| iv.left > iv.right) {
        return Err(DecompositionError::ReversedInterval(v));
    }
    let h = intersection_graph(intervals);
    if let Some((u, v)) = g.edges().find(|&(u, v)| !h.has_edge(u, v)) {
        return Err(DecompositionError::RepresentationMismatch(format!("edge {u}-{v} has disjoint intervals")));
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(DecompositionError::RepresentationMismatch(format!(
            "intervals of {u} and {v} meet but the graph has no edge"
        )));
    }
    Ok(())
}

/// Builds the sweep structure with breakpoint threshold `t`.
pub fn interval_scan(g: &Graph, intervals: &[Interval], t: usize) -> Result<IntervalStructure, DecompositionError> {
    check_representation(g, intervals)?;
    if g.n() == 0 || !g.is_connected() {
        return Err(DecompositionError::Disconnected);
    }
    let n = g.n();
    let intervals = perturb_intervals(intervals);
    let mut points: Vec<(Rational, Endpoint)> = intervals
        .iter()
        .enumerate()
        .flat_map(|(v, iv)| {
            [(iv.left, Endpoint { vertex: v, is_left: true }), (iv.right, Endpoint { vertex: v, is_left: false })]
        })
        .collect();
    points.sort_by_key(|a| a.0);
    let endpoints: Vec<Endpoint> = points.into_iter().map(|(_, e)| e).collect();

    let mut left_pos = vec![0; n];
    let mut active = vec![false; n];
    let mut cuts = Vec::with_capacity(2 * n - 1);
    for (i, e) in endpoints.iter().enumerate().take(2 * n - 1) {
        if e.is_left {
            active[e.vertex] = true;
            left_pos[e.vertex] = i;
        } else {
            active[e.vertex] = false;
        }
        cuts.push((0..n).filter(|&v| active[v]).collect::<Vec<_>>());
    }

    let sizes: Vec<usize> = cuts.iter().map(Vec::len).collect();
    let last = 2 * n - 2;
    let mut breakpoints: Vec<usize> =
        (1..last).filter(|&i| sizes[i] < sizes[i - 1] && sizes[i] < sizes[i + 1] && sizes[i] < t).collect();
    breakpoints.push(last);

    let mut blocks: Vec<Block> = Vec::with_capacity(breakpoints.len());
    for &j in &breakpoints {
        let vertices: Vec<Vertex> = (0..n).filter(|&v| left_pos[v] <= j).collect();
        let boundary = cuts[j].clone();
        let region = match blocks.last() {
            None => vertices.clone(),
            Some(prev) => {
                let mut r: Vec<Vertex> = vertices
                    .iter()
                    .copied()
                    .filter(|v| prev.vertices.binary_search(v).is_err())
                    .chain(prev.boundary.iter().copied())
                    .collect();
                r.sort_unstable();
                r.dedup();
                r
            }
        };
        blocks.push(Block { vertices, boundary, region, cut: j });
    }
    Ok(IntervalStructure { intervals, endpoints, cuts, breakpoints, blocks, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::boundary;

    fn iv(l: i64, r: i64) -> Interval {
        Interval::from_integers(l, r)
    }

    #[test]
    fn perturbation_keeps_touching_and_shared_endpoints() {
        for raw in [vec![iv(1, 2), iv(2, 3)], vec![iv(1, 2), iv(1, 3)], vec![iv(1, 2), iv(1, 2)]] {
            let p = perturb_intervals(&raw);
            assert!(p[0].meets(&p[1]));
            let mut ends: Vec<Rational> = p.iter().flat_map(|i| [i.left, i.right]).collect();
            ends.sort();
            ends.dedup();
            assert_eq!(ends.len(), 4);
        }
    }

    #[test]
    fn perturbation_keeps_disjoint_intervals_apart() {
        let raw = vec![iv(0, 1), iv(2, 3), iv(1, 1), iv(3, 9)];
        assert_eq!(intersection_graph(&perturb_intervals(&raw)), intersection_graph(&raw));
    }

    #[test]
    fn path_structure() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = interval_scan(&g, &[iv(1, 4), iv(3, 8), iv(6, 9)], 2).unwrap();
        assert_eq!(s.cut_sizes(), vec![1, 2, 1, 2, 1]);
        assert_eq!(s.breakpoints, vec![2, 4]);
        assert_eq!(s.k(), 2);
        assert_eq!(s.blocks[0].vertices, vec![0, 1]);
        assert_eq!(s.blocks[0].boundary, vec![1]);
        assert_eq!(s.blocks[1].region, vec![1, 2]);
        assert_eq!(s.blocks[1].boundary, vec![2]);
    }

    #[test]
    fn single_vertex_structure() {
        let g = Graph::empty(1);
        let s = interval_scan(&g, &[iv(0, 1)], 1).unwrap();
        assert_eq!(s.k(), 1);
        assert_eq!(s.blocks[0].boundary, vec![0]);
        assert_eq!(s.blocks[0].region, vec![0]);
    }

    #[test]
    fn mismatched_representation_is_rejected() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let err = interval_scan(&g, &[iv(0, 1), iv(2, 3)], 1).unwrap_err();
        assert!(matches!(err, DecompositionError::RepresentationMismatch(_)));
        let err = interval_scan(&Graph::empty(2), &[iv(0, 1), iv(2, 3)], 1).unwrap_err();
        assert_eq!(err, DecompositionError::Disconnected);
    }

    #[test]
    fn blocks_are_separated_by_their_boundaries() {
        // a chain of overlapping intervals with varying overlap depth
        let raw = vec![iv(0, 3), iv(1, 4), iv(2, 6), iv(5, 8), iv(7, 10), iv(7, 12), iv(11, 13)];
        let g = intersection_graph(&raw);
        let s = interval_scan(&g, &raw, 3).unwrap();
        for w in s.cuts.windows(2) {
            assert_eq!(w[0].len().abs_diff(w[1].len()), 1);
        }
        for b in &s.blocks {
            for v in boundary(&g, &b.vertices) {
                assert!(b.boundary.contains(&v));
            }
        }
        assert_eq!(s.blocks.last().unwrap().boundary.len(), 1);
    }
}
