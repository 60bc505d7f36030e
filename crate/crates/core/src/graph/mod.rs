//! Finite simple undirected graphs over dense vertex ids `0..n`.

mod generators;
mod io;
mod iso;

pub use generators::{
    complete, cycle, disjoint_union, empty, erdos_renyi, from_spec, join, mycielski,
    mycielski_iterate, path, petersen,
};
pub use io::{parse_dimacs, parse_edge_list, parse_graph, write_dimacs, write_edge_list};
pub use iso::{canonical_form, is_isomorphic, nonisomorphic_graphs};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacency-list graph. Neighbor lists are sorted and duplicate free, and the
/// relation is symmetric and irreflexive. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeListRepr", into = "EdgeListRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct EdgeListRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<EdgeListRepr> for Graph {
    type Error = Error;

    fn try_from(repr: EdgeListRepr) -> Result<Self> {
        Graph::from_edge_list(repr.n, repr.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for EdgeListRepr {
    fn from(g: Graph) -> Self {
        EdgeListRepr {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges are merged; self-loops
    /// and out-of-range ids are rejected.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edge_list_counting(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edge_list`], also returning how many input pairs
    /// were duplicates of an earlier edge.
    pub fn from_edge_list_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut inserted = 0usize;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { v: u });
            }
            adj[u].push(v);
            adj[v].push(u);
            inserted += 1;
        }
        let mut kept = 0usize;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            kept += list.len();
        }
        Ok((Graph { adj }, inserted - kept / 2))
    }

    /// Builds directly from neighbor lists that already satisfy the invariants.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, ns)| {
            ns.windows(2).all(|w| w[0] < w[1]) && ns.iter().all(|&u| u != v && u < adj.len())
        }));
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Neighborhood bitmasks; `None` when the graph has more than 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &u| m | (1u64 << u)))
                .collect(),
        )
    }

    /// Subgraph induced by `set`, relabelled in ascending order: new vertex `i`
    /// is `set.as_slice()[i]`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, IdMap)> {
        let mut map = IdMap::unmapped(self.n());
        for (new, &old) in set.iter().enumerate() {
            if old >= self.n() {
                return Err(Error::VertexOutOfRange {
                    v: old,
                    n: self.n(),
                });
            }
            map.old_to_new[old] = Some(new);
        }
        let adj = set
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&u| map.old_to_new[u])
                    .collect()
            })
            .collect();
        Ok((Graph::from_sorted_adjacency(adj), map))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&VertexSet::full(self.n()))
    }

    /// Components of the subgraph induced by `within`.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut inside = vec![false; self.n()];
        for &v in within.iter() {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut parts = Vec::new();
        for &start in within.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &u in &self.adj[v] {
                    if inside[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            parts.push(VertexSet::from_iter(members));
        }
        parts
    }

    /// Whether `set` is nonempty and induces a connected subgraph.
    pub fn is_connected_within(&self, set: &VertexSet) -> bool {
        !set.is_empty() && self.components_within(set).len() == 1
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|&v| mask >> v & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(at) => {
                self.0.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        Self(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        Self::from_iter(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| !other.contains(v))
    }

    /// Bitmask of the members; every member must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    /// Maps each member through `f`, e.g. back to host ids.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> VertexSet {
        Self::from_iter(self.0.iter().map(|&v| f(v)))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        Self::from_iter(v)
    }
}

/// Old-id to new-id relabelling produced by subgraph extraction and
/// contraction. Vertices that do not survive map to `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    old_to_new: Vec<Option<usize>>,
}

impl IdMap {
    pub(crate) fn unmapped(n: usize) -> Self {
        Self {
            old_to_new: vec![None; n],
        }
    }

    pub(crate) fn from_vec(old_to_new: Vec<Option<usize>>) -> Self {
        Self { old_to_new }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            old_to_new: (0..n).map(Some).collect(),
        }
    }

    pub fn get(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.old_to_new.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old_to_new.is_empty()
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &IdMap) -> IdMap {
        IdMap {
            old_to_new: self
                .old_to_new
                .iter()
                .map(|m| m.and_then(|x| other.get(x)))
                .collect(),
        }
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.old_to_new
    }
}
