//! Brute-force reference oracles, independent of the optimized searches.
//! Only meant for tiny graphs.

use crate::graph::Graph;

/// Least `k` such that some map `V -> 0..k` (all `k^n` of them) is proper.
pub fn naive_chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (1..=n)
        .find(|&k| {
            let mut colors = vec![0usize; n];
            loop {
                if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                    return true;
                }
                // odometer increment
                let mut i = 0;
                loop {
                    if i == n {
                        return false;
                    }
                    colors[i] += 1;
                    if colors[i] < k {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
            }
        })
        .expect("n colors always suffice")
}

/// Largest number of blocks over every partition of every vertex subset
/// into connected, pairwise adjacent blocks.
pub fn naive_hadwiger_number(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 10, "naive search is for tiny graphs");
    // label[v] == 0 means deleted, otherwise block label[v] - 1; labels are
    // restricted growth strings so each partition appears once
    let mut best = 0;
    let mut label = vec![0usize; n];
    enumerate(g, 0, 0, &mut label, &mut best);
    best
}

fn enumerate(g: &Graph, v: usize, blocks: usize, label: &mut [usize], best: &mut usize) {
    if v == g.n() {
        if blocks > *best && valid(g, label, blocks) {
            *best = blocks;
        }
        return;
    }
    for l in 0..=blocks + 1 {
        label[v] = l;
        enumerate(g, v + 1, blocks.max(l), label, best);
    }
}

fn valid(g: &Graph, label: &[usize], blocks: usize) -> bool {
    let mut touching = vec![vec![false; blocks + 1]; blocks + 1];
    for (u, v) in g.edges() {
        touching[label[u]][label[v]] = true;
        touching[label[v]][label[u]] = true;
    }
    for (a, row) in touching.iter().enumerate().skip(1) {
        if row[a + 1..].iter().any(|&t| !t) {
            return false;
        }
    }
    // each block connected: flood from its first member along same-label edges
    for b in 1..=blocks {
        let members: Vec<usize> = (0..g.n()).filter(|&v| label[v] == b).collect();
        let mut seen = vec![false; g.n()];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in g.neighbors(x) {
                if label[y] == b && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if count != members.len() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, path};

    #[test]
    fn tiny_values() {
        assert_eq!(naive_chromatic_number(&empty(0)), 0);
        assert_eq!(naive_chromatic_number(&empty(3)), 1);
        assert_eq!(naive_chromatic_number(&cycle(5).unwrap()), 3);
        assert_eq!(naive_chromatic_number(&complete(5)), 5);
        assert_eq!(naive_hadwiger_number(&empty(0)), 0);
        assert_eq!(naive_hadwiger_number(&empty(2)), 1);
        assert_eq!(naive_hadwiger_number(&path(4)), 2);
        assert_eq!(naive_hadwiger_number(&cycle(5).unwrap()), 3);
        assert_eq!(naive_hadwiger_number(&complete(6)), 6);
    }
}
