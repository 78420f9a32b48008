use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// First violated condition found by [`validate_td`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdViolation {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("tree edge {0}-{1} refers to a missing node")]
    EdgeOutOfRange(usize, usize),
    #[error("the bag tree is not a tree: {0}")]
    NotATree(&'static str),
    #[error("bag {bag} holds vertex {vertex}, which is not in the graph")]
    UnknownVertex { bag: usize, vertex: Vertex },
    #[error("vertex {0} is in no bag")]
    VertexUncovered(Vertex),
    #[error("edge {0}-{1} is in no bag")]
    EdgeUncovered(Vertex, Vertex),
    #[error("bags holding vertex {0} do not form a subtree")]
    OccurrenceDisconnected(Vertex),
}

/// A tree decomposition: bags indexed `0..k` and the edges of the bag tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated on construction.
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// The trivial decomposition with a single bag `V(g)`.
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition { bags: vec![g.vertices().collect()], edges: Vec::new() }
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[Vertex] {
        &self.bags[node]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (zero when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The bag tree rooted at `root`. Assumes the tree shape was validated.
    pub fn rooted(&self, root: usize) -> RootedTree {
        let adj = self.adjacency();
        let k = self.bags.len();
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut bfs = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(t) = queue.pop_front() {
            bfs.push(t);
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    parent[s] = Some(t);
                    children[t].push(s);
                    queue.push_back(s);
                }
            }
        }
        RootedTree { root, parent, children, bfs }
    }

    /// Index of the first bag containing `v`.
    pub fn node_containing(&self, v: Vertex) -> Option<usize> {
        self.bags.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Adds a bag attached to `parent` and returns its index.
    pub fn attach(&mut self, parent: usize, mut bag: Vec<Vertex>) -> usize {
        bag.sort_unstable();
        bag.dedup();
        self.bags.push(bag);
        let id = self.bags.len() - 1;
        self.edges.push((parent, id));
        id
    }
}

impl fmt::Display for TreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "td({} bags, width {})", self.bags.len(), self.width())
    }
}

/// A bag tree with parent links and a breadth-first order from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub bfs: Vec<usize>,
}

impl RootedTree {
    /// For every node, the union of the bags in its subtree (sorted).
    pub fn subtree_vertices(&self, td: &TreeDecomposition, n: usize) -> Vec<Vec<Vertex>> {
        let k = self.parent.len();
        let mut marks: Vec<Vec<bool>> = vec![Vec::new(); k];
        for &t in self.bfs.iter().rev() {
            let mut mark = vec![false; n];
            for &v in td.bag(t) {
                mark[v] = true;
            }
            for &c in &self.children[t] {
                for (m, &cm) in mark.iter_mut().zip(&marks[c]) {
                    *m |= cm;
                }
            }
            marks[t] = mark;
        }
        marks.into_iter().map(|mark| (0..n).filter(|&v| mark.get(v).copied().unwrap_or(false)).collect()).collect()
    }
}

fn check_tree_shape(td: &TreeDecomposition) -> Result<(), TdViolation> {
    let k = td.bags.len();
    if k == 0 {
        return Err(TdViolation::NoBags);
    }
    for &(a, b) in &td.edges {
        if a >= k || b >= k {
            return Err(TdViolation::EdgeOutOfRange(a, b));
        }
        if a == b {
            return Err(TdViolation::NotATree("self-loop in the bag tree"));
        }
    }
    if td.edges.len() != k - 1 {
        return Err(TdViolation::NotATree("edge count differs from node count minus one"));
    }
    let rooted = td.rooted(0);
    if rooted.bfs.len() != k {
        return Err(TdViolation::NotATree("bag tree is disconnected"));
    }
    Ok(())
}

/// Checks that `td` is a tree decomposition of `g`.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    check_tree_shape(td)?;
    let n = g.n();
    let mut covered = vec![false; n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(TdViolation::UnknownVertex { bag: i, vertex: v });
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(TdViolation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        let inside = td.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok());
        if !inside {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    // a vertex's bags form a subtree iff, rooted anywhere, exactly one of
    // them has its parent outside the set
    let rooted = td.rooted(0);
    let mut tops = vec![0usize; n];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            let parent_has = rooted.parent[t].is_some_and(|p| td.bags[p].binary_search(&v).is_ok());
            if !parent_has {
                tops[v] += 1;
            }
        }
    }
    if let Some(v) = tops.iter().position(|&c| c > 1) {
        return Err(TdViolation::OccurrenceDisconnected(v));
    }
    Ok(())
}
