//! Instance transformers: vertex cover to dynamic monopoly, and dynamic
//! monopoly to partial incentive.
//!
//! Fresh vertices are appended after the original ones: per edge in sorted
//! order for [`vc_to_dyn`], per path in vertex order for [`dyn_to_pi`].

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, Incentive, Thresholds, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcToDyn {
    pub graph: Graph,
    pub tau: Thresholds,
    /// The original edge each fresh vertex hangs off, indexed by `w - n`.
    pub gadget_edge: Vec<(Vertex, Vertex)>,
}

impl VcToDyn {
    /// Turns a monopoly of the transformed instance into a vertex cover by
    /// replacing every fresh vertex with an endpoint of its edge.
    pub fn cover_from_monopoly(&self, n: usize, monopoly: &[Vertex]) -> Vec<Vertex> {
        let mut cover: Vec<Vertex> =
            monopoly.iter().map(|&w| if w < n { w } else { self.gadget_edge[w - n].0 }).collect();
        cover.sort_unstable();
        cover.dedup();
        cover
    }
}

/// Joins `n` fresh vertices to both ends of every edge. Thresholds are
/// `d(u) * n` on original vertices and 1 on fresh ones.
pub fn vc_to_dyn(g: &Graph) -> VcToDyn {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let total = n + edges.len() * n;
    let mut all_edges = edges.clone();
    let mut gadget_edge = Vec::with_capacity(edges.len() * n);
    for &(u, v) in &edges {
        for _ in 0..n {
            let w = n + gadget_edge.len();
            all_edges.push((u, w));
            all_edges.push((v, w));
            gadget_edge.push((u, v));
        }
    }
    let graph = Graph::from_edges(total, all_edges).expect("fresh vertices give distinct edges");
    let mut tau: Vec<i64> = g.vertices().map(|u| (g.degree(u) * n) as i64).collect();
    tau.resize(total, 1);
    VcToDyn { graph, tau: Thresholds::new(tau), gadget_edge }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynToPi {
    pub graph: Graph,
    pub tau: Thresholds,
    /// `paths[u]`: the attached path of `u` in path order (empty if `tau(u) <= 0`).
    pub paths: Vec<Vec<Vertex>>,
    pub td: Option<TreeDecomposition>,
}

impl DynToPi {
    /// Reads a monopoly off an incentive of the transformed instance: every
    /// `u` with `tau(u) > 0` whose vertex or path received any incentive.
    pub fn monopoly_from_incentive(&self, sigma: &Incentive) -> Vec<Vertex> {
        self.paths
            .iter()
            .enumerate()
            .filter(|(u, path)| !path.is_empty() && (sigma[*u] > 0 || sigma.weight_on(path) > 0))
            .map(|(u, _)| u)
            .collect()
    }

    /// The incentive putting 1 on the first path vertex of every member of
    /// `monopoly` that has a path.
    pub fn incentive_from_monopoly(&self, monopoly: &[Vertex]) -> Incentive {
        let mut sigma = Incentive::zero(self.graph.n());
        for &u in monopoly {
            if let Some(&first) = self.paths[u].first() {
                sigma.set(first, 1);
            }
        }
        sigma
    }
}

/// Attaches to every `u` with `tau(u) > 0` a path of `tau(u)` fresh vertices,
/// each adjacent to `u`, with threshold 1. A given decomposition is extended
/// by a chain of bags `{u, v_1}, {u, v_1, v_2}, ..., {u, v_(k-1), v_k}` hung
/// off a bag containing `u`.
pub fn dyn_to_pi(g: &Graph, tau: &Thresholds, td: Option<&TreeDecomposition>) -> DynToPi {
    let n = g.n();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut paths = vec![Vec::new(); n];
    let mut next = n;
    for u in g.vertices() {
        let len = tau[u].max(0) as usize;
        let path: Vec<Vertex> = (next..next + len).collect();
        next += len;
        for (i, &v) in path.iter().enumerate() {
            edges.push((u, v));
            if i > 0 {
                edges.push((path[i - 1], v));
            }
        }
        paths[u] = path;
    }
    let graph = Graph::from_edges(next, edges).expect("fresh vertices give distinct edges");
    let mut values = tau.values().to_vec();
    values.resize(next, 1);

    let td = td.map(|td| {
        let mut td = td.clone();
        for (u, path) in paths.iter().enumerate() {
            let Some(&first) = path.first() else { continue };
            let mut parent = td.node_containing(u).expect("a valid decomposition covers every vertex");
            parent = td.attach(parent, vec![u, first]);
            for w in path.windows(2) {
                parent = td.attach(parent, vec![u, w[0], w[1]]);
            }
        }
        td
    });
    DynToPi { graph, tau: Thresholds::new(values), paths, td }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_td;
    use crate::oracle::{brute_dyn, brute_pi, brute_vertex_cover, OracleConfig};
    use crate::structure::is_chordal;

    #[test]
    fn single_edge_gadget() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let r = vc_to_dyn(&g);
        assert_eq!(r.graph.n(), 4);
        assert_eq!(r.tau.values(), &[2, 2, 1, 1]);
        assert_eq!(r.gadget_edge, vec![(0, 1), (0, 1)]);
    }

    #[test]
    fn edgeless_graph_is_unchanged() {
        let g = Graph::empty(3);
        let r = vc_to_dyn(&g);
        assert_eq!(r.graph, g);
        assert_eq!(r.tau.values(), &[0, 0, 0]);
    }

    #[test]
    fn triangle_cover_matches_restricted_monopoly() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = vc_to_dyn(&g);
        assert_eq!(r.graph.n(), 12);
        let cover = brute_vertex_cover(&g, &OracleConfig::default()).unwrap().optimum;
        assert_eq!(cover, 2);
        let smallest = (0u32..8)
            .filter(|m| {
                let d: Vec<Vertex> = (0..3).filter(|&i| m >> i & 1 == 1).collect();
                crate::graph::is_dynamic_monopoly(&r.graph, &r.tau, &d)
            })
            .map(|m| m.count_ones() as u64)
            .min();
        assert_eq!(smallest, Some(cover));
    }

    #[test]
    fn single_vertex_fan() {
        let g = Graph::empty(1);
        let r = dyn_to_pi(&g, &Thresholds::new(vec![2]), None);
        assert_eq!(r.graph.n(), 3);
        assert_eq!(r.tau.values(), &[2, 1, 1]);
        assert!(r.graph.has_edge(0, 1) && r.graph.has_edge(0, 2) && r.graph.has_edge(1, 2));
        assert_eq!(r.paths[0], vec![1, 2]);
    }

    #[test]
    fn zero_thresholds_attach_nothing() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let r = dyn_to_pi(&g, &Thresholds::uniform(3, 0), None);
        assert_eq!(r.graph, g);
    }

    #[test]
    fn path_equality_and_decomposition() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let tau = Thresholds::uniform(3, 1);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let r = dyn_to_pi(&g, &tau, Some(&td));
        assert_eq!(r.graph.n(), 6);
        let cfg = OracleConfig::default();
        assert_eq!(brute_dyn(&g, &tau, &cfg).unwrap().optimum, 1);
        assert_eq!(brute_pi(&r.graph, &r.tau, &cfg).unwrap().optimum, 1);
        let td2 = r.td.unwrap();
        assert_eq!(validate_td(&r.graph, &td2), Ok(()));
        assert!(td2.width() <= 2);
    }

    #[test]
    fn chordal_input_stays_chordal() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let r = dyn_to_pi(&g, &Thresholds::new(vec![2, 1, 3, 2]), None);
        assert!(is_chordal(&r.graph));
    }
}
