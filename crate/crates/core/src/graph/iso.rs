//! Brute-force canonical forms for small graphs (at most 16 vertices).

use std::collections::BTreeSet;

use super::Graph;

const MAX_VERTICES: usize = 16;

/// Canonical labelling key: vertex count plus the upper-triangle adjacency
/// bits of the lexicographically smallest relabelling that orders vertices by
/// an invariant (degree, then sorted neighbor degrees).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: u128,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let edges = pairs(self.n)
            .enumerate()
            .filter(|&(i, _)| self.bits >> i & 1 == 1)
            .map(|(_, e)| e);
        Graph::from_edge_list(self.n, edges).expect("canonical bits encode a simple graph")
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    // rows 0..u contribute (n-1) + (n-2) + .. + (n-u)
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Panics above 16 vertices.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(
        n <= MAX_VERTICES,
        "canonical_form supports at most {MAX_VERTICES} vertices"
    );
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_cached_key(|&v| key(v));
    // consecutive runs with equal key form the classes
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(class) if key(class[0]) == key(v) => class.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let mut best: Option<u128> = None;
    let mut position = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(g, &classes, 0, 0, &mut position, &mut used, &mut best);
    CanonicalForm {
        n,
        bits: best.unwrap_or(0),
    }
}

fn search(
    g: &Graph,
    classes: &[Vec<usize>],
    class: usize,
    next_pos: usize,
    position: &mut [usize],
    used: &mut [bool],
    best: &mut Option<u128>,
) {
    let n = g.n();
    if class == classes.len() {
        let bits = g.edges().fold(0u128, |acc, (u, v)| {
            let (a, b) = (position[u].min(position[v]), position[u].max(position[v]));
            acc | 1u128 << pair_index(n, a, b)
        });
        if best.is_none_or(|b| bits < b) {
            *best = Some(bits);
        }
        return;
    }
    let members = &classes[class];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        search(g, classes, class + 1, next_pos, position, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        position[v] = next_pos;
        search(g, classes, class, next_pos + 1, position, used, best);
        used[v] = false;
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// One representative per isomorphism class of graphs on `n` vertices, in
/// ascending canonical order. Practical up to `n = 7`.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Graph::from_edge_list(0, []).unwrap()));
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for form in &level {
            let base = form.to_graph();
            let old: Vec<(usize, usize)> = base.edges().collect();
            for mask in 0u32..(1u32 << (size - 1)) {
                let new_edges = (0..size - 1)
                    .filter(|&u| mask >> u & 1 == 1)
                    .map(|u| (u, size - 1));
                let g = Graph::from_edge_list(size, old.iter().copied().chain(new_edges))
                    .expect("extension edges are valid");
                next.insert(canonical_form(&g));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen};

    #[test]
    fn class_counts_match_known_sequence() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn relabelled_graphs_match() {
        let c = cycle(5).unwrap();
        let shuffled = Graph::from_edge_list(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert!(is_isomorphic(&c, &shuffled));
        assert!(!is_isomorphic(&c, &path(5)));
        assert!(is_isomorphic(&petersen(), &petersen()));
        assert!(!is_isomorphic(&complete(4), &cycle(4).unwrap()));
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 7;
        let idx: Vec<usize> = pairs(n).map(|(u, v)| pair_index(n, u, v)).collect();
        assert_eq!(idx, (0..n * (n - 1) / 2).collect::<Vec<_>>());
    }
}
