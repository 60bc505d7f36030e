//! Maximum clique by Bron–Kerbosch with pivoting; the fast lower bound shared
//! by both oracles.

use crate::graph::{Graph, VertexSet};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for v in 0..n {
            b.set(v);
        }
        b
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// A maximum clique; among equal sizes, the first one found in ascending
/// vertex order.
pub fn max_clique(g: &Graph) -> VertexSet {
    let n = g.n();
    let nbrs: Vec<Bits> = g
        .vertices()
        .map(|v| {
            let mut b = Bits::empty(n);
            for &u in g.neighbors(v) {
                b.set(u);
            }
            b
        })
        .collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(
        &nbrs,
        &mut current,
        Bits::full(n),
        Bits::empty(n),
        &mut best,
    );
    VertexSet::from_iter(best)
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

fn expand(
    nbrs: &[Bits],
    current: &mut Vec<usize>,
    mut cand: Bits,
    mut excl: Bits,
    best: &mut Vec<usize>,
) {
    if cand.is_empty() {
        if excl.is_empty() && current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + cand.count() <= best.len() {
        return;
    }
    let pivot = cand
        .iter()
        .chain(excl.iter())
        .max_by_key(|&u| (cand.and(&nbrs[u]).count(), std::cmp::Reverse(u)))
        .expect("candidate set is nonempty");
    let branch: Vec<usize> = cand.and_not(&nbrs[pivot]).iter().collect();
    for v in branch {
        current.push(v);
        expand(nbrs, current, cand.and(&nbrs[v]), excl.and(&nbrs[v]), best);
        current.pop();
        cand.clear(v);
        excl.set(v);
        if current.len() + cand.count() <= best.len() {
            return;
        }
    }
}
