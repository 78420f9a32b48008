use crate::graph::{Graph, Vertex};

use super::td::{validate_td, TreeDecomposition};
use super::DecompositionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// A rooted binary decomposition whose nodes are leaf, introduce, forget or
/// join nodes. Nodes are stored children-first; the root is the last node and
/// its bag is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Parent index of every node (`None` for the root).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(i);
            }
        }
        parent
    }

    /// Forgets the node kinds.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self.nodes.iter().enumerate().flat_map(|(i, n)| n.children.iter().map(move |&c| (c, i))).collect();
        TreeDecomposition::new(bags, edges)
    }

    /// Checks the per-node shape rules; returns the offending node on failure.
    pub fn check_shape(&self) -> Result<(), usize> {
        for (i, node) in self.nodes.iter().enumerate() {
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Join => {
                    node.children.len() == 2 && node.children.iter().all(|&c| c < i && self.nodes[c].bag == node.bag)
                }
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && node.children[0] < i && {
                        let child = &self.nodes[node.children[0]].bag;
                        node.bag.len() == child.len() + 1
                            && node.bag.binary_search(&v).is_ok()
                            && child.binary_search(&v).is_err()
                            && child.iter().all(|w| node.bag.binary_search(w).is_ok())
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && node.children[0] < i && {
                        let child = &self.nodes[node.children[0]].bag;
                        child.len() == node.bag.len() + 1
                            && child.binary_search(&v).is_ok()
                            && node.bag.binary_search(&v).is_err()
                            && node.bag.iter().all(|w| child.binary_search(w).is_ok())
                    }
                }
            };
            if !ok {
                return Err(i);
            }
        }
        if self.nodes.last().is_some_and(|r| !r.bag.is_empty()) {
            return Err(self.nodes.len() - 1);
        }
        Ok(())
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Chain of forgets then introduces turning `from`'s bag into `target`.
    fn morph(&mut self, mut top: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[top].bag.clone();
        let mut bag = current.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            bag.retain(|&w| w != v);
            top = self.push(NiceKind::Forget(v), bag.clone(), vec![top]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            top = self.push(NiceKind::Introduce(v), bag.clone(), vec![top]);
        }
        top
    }
}

/// Converts a valid decomposition of `g` into nice form rooted at bag `root`
/// (default: the first bag containing vertex 0), with forget nodes emptying
/// the root bag. Every input bag is the bag of some output node, the width is
/// unchanged, and the node count is at most `(3w + 6)` times the input's
/// number of bags.
pub fn make_nice(
    g: &Graph,
    td: &TreeDecomposition,
    root: Option<usize>,
) -> Result<NiceTreeDecomposition, DecompositionError> {
    validate_td(g, td)?;
    let root = match root {
        Some(r) if r >= td.num_bags() => return Err(DecompositionError::BadRoot { root: r, bags: td.num_bags() }),
        Some(r) => r,
        None => td.node_containing(0).unwrap_or(0),
    };
    let rooted = td.rooted(root);
    let mut nice = NiceTreeDecomposition { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.num_bags()];
    for &t in rooted.bfs.iter().rev() {
        let bag = td.bag(t);
        let branches: Vec<usize> = rooted.children[t].iter().map(|&c| nice.morph(top[c], bag)).collect();
        top[t] = match branches.split_first() {
            None => {
                let leaf = nice.push(NiceKind::Leaf, Vec::new(), Vec::new());
                nice.morph(leaf, bag)
            }
            Some((&first, rest)) => {
                rest.iter().fold(first, |acc, &b| nice.push(NiceKind::Join, bag.to_vec(), vec![acc, b]))
            }
        };
    }
    nice.morph(top[root], &[]);
    Ok(nice)
}
