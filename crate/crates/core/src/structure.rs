//! Small structural predicates on vertex subsets: cliques, vertex cuts,
//! chordality. All exhaustive where a search is needed; meant for modest sizes.

use crate::graph::{Graph, Vertex};

pub fn is_clique(g: &Graph, vertices: &[Vertex]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Whether `g - removed` has at least two components.
pub fn separates(g: &Graph, removed: &[Vertex]) -> bool {
    let mut gone = vec![false; g.n()];
    for &r in removed {
        gone[r] = true;
    }
    let Some(start) = (0..g.n()).find(|&u| !gone[u]) else {
        return false;
    };
    let mut seen = gone.clone();
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().any(|&s| !s)
}

fn subsets_up_to(n: usize, max_size: usize) -> impl Iterator<Item = Vec<Vertex>> {
    (0u64..(1u64 << n))
        .filter(move |m| (m.count_ones() as usize) <= max_size)
        .map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// A vertex cut with fewer than `t` vertices, if one exists.
pub fn small_vertex_cut(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    if t == 0 {
        return None;
    }
    subsets_up_to(g.n(), t - 1).find(|s| separates(g, s))
}

/// All inclusion-minimal vertex cuts (exhaustive; `n <= 20`).
pub fn minimal_vertex_cuts(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    assert!(n <= 20, "exhaustive cut enumeration needs a small graph");
    let is_cut: Vec<bool> = (0u64..(1u64 << n))
        .map(|m| {
            let s: Vec<Vertex> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            separates(g, &s)
        })
        .collect();
    (0u64..(1u64 << n))
        .filter(|&m| is_cut[m as usize])
        .filter(|&m| {
            // no proper submask is a cut
            let mut sub = (m.wrapping_sub(1)) & m;
            loop {
                if sub != m && is_cut[sub as usize] {
                    return false;
                }
                if sub == 0 {
                    return true;
                }
                sub = (sub - 1) & m;
            }
        })
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Components of `g - removed`, each sorted.
fn components_without(g: &Graph, removed: &[bool]) -> Vec<Vec<Vertex>> {
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// All minimal separators: sets `S` such that `g - S` has at least two
/// components whose neighbourhood is exactly `S`, in lexicographic order
/// (exhaustive; `n <= 20`).
pub fn minimal_separators(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    assert!(n <= 20, "exhaustive separator enumeration needs a small graph");
    let mut out = Vec::new();
    for m in 0u64..(1u64 << n) {
        let removed: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
        let size = m.count_ones() as usize;
        let full = components_without(g, &removed)
            .into_iter()
            .filter(|comp| {
                let mut touched = vec![false; n];
                for &u in comp {
                    for &w in g.neighbors(u) {
                        if removed[w] {
                            touched[w] = true;
                        }
                    }
                }
                touched.iter().filter(|&&t| t).count() == size
            })
            .count();
        if full >= 2 {
            out.push((0..n).filter(|&i| removed[i]).collect::<Vec<_>>());
        }
    }
    out.sort();
    out
}

/// Chordality via maximum cardinality search and a perfect-elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&u| !numbered[u]).max_by_key(|&u| (weight[u], std::cmp::Reverse(u))).unwrap();
        numbered[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    // reverse of the search order is a perfect elimination order iff chordal
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let earlier: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| position[w] < position[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&w| position[w]) {
            if earlier.iter().any(|&w| w != p && !g.has_edge(p, w)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_and_cuts() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!is_clique(&path, &[0, 1, 2]));
        assert!(is_clique(&path, &[0, 1]));
        assert_eq!(small_vertex_cut(&path, 2), Some(vec![1]));
        assert_eq!(minimal_vertex_cuts(&path), vec![vec![1]]);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(small_vertex_cut(&tri, 3), None);
        assert!(minimal_vertex_cuts(&tri).is_empty());
    }

    #[test]
    fn separators_of_a_path_and_a_cycle() {
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(minimal_separators(&path), vec![vec![1], vec![2]]);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(minimal_separators(&c4), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn chordality() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_chordal(&c4));
        let c4_chord = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&c4_chord));
        assert!(is_chordal(&Graph::empty(3)));
    }
}
