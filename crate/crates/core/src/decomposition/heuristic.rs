use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

use super::td::TreeDecomposition;

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy min-fill elimination order (ties: smaller degree, then smaller id).
pub fn min_fill_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|u| g.neighbors(u).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&u| alive[u])
            .min_by_key(|&u| (fill_in(&adj, u), adj[u].len(), u))
            .expect("a vertex remains");
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Tree decomposition from a min-fill elimination order. One bag per vertex;
/// components are chained together through their last bags.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let order = min_fill_order(g);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|u| g.neighbors(u).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&w| position[w] > i).collect();
        let mut bag = later.clone();
        bag.push(v);
        bags.push(bag);
        for (a_i, &a) in later.iter().enumerate() {
            for &b in &later[a_i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        match later.iter().map(|&w| position[w]).min() {
            Some(parent) => edges.push((i, parent)),
            None => roots.push(i),
        }
    }
    let last = *roots.last().expect("the final vertex is a root");
    for &r in &roots[..roots.len() - 1] {
        edges.push((r, last));
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_td;

    #[test]
    fn tree_gets_width_one() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn triangle_gets_width_two() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn grid_three_by_three() {
        let mut edges = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let v = r * 3 + c;
                if c + 1 < 3 {
                    edges.push((v, v + 1));
                }
                if r + 1 < 3 {
                    edges.push((v, v + 3));
                }
            }
        }
        let g = Graph::from_edges(9, edges).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert!(td.width() <= 4, "width {}", td.width());
    }

    #[test]
    fn disconnected_and_empty_graphs() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 1);
        let empty = Graph::empty(0);
        assert_eq!(heuristic_td(&empty).num_bags(), 1);
    }
}
