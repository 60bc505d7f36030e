//! Edge contraction and exact clique-minor search.
//!
//! A `K_t` minor is certified by `t` disjoint branch sets, each inducing a
//! connected subgraph, with a host edge between every pair. Inside a connected
//! component any model can be grown until its branch sets partition the
//! component (absorb an unassigned vertex into an adjacent set), so the search
//! only enumerates partitions of a component into `t` connected,
//! pairwise-adjacent blocks. Block `i` always contains the smallest vertex not
//! covered by blocks `0..i`, which breaks the symmetry between blocks.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::chp::PlaneAssignment;
use crate::clique::max_clique;
use crate::error::{Error, Result};
use crate::graph::{Graph, IdMap, VertexSet};
use crate::OracleLimits;

/// Branch sets of a clique minor, listed by ascending smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessRepr", from = "WitnessRepr")]
pub struct MinorWitness {
    pub branch_sets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    t: usize,
    branch_sets: Vec<VertexSet>,
}

impl From<MinorWitness> for WitnessRepr {
    fn from(w: MinorWitness) -> Self {
        WitnessRepr {
            t: w.t(),
            branch_sets: w.branch_sets,
        }
    }
}

impl From<WitnessRepr> for MinorWitness {
    fn from(r: WitnessRepr) -> Self {
        MinorWitness {
            branch_sets: r.branch_sets,
        }
    }
}

impl MinorWitness {
    pub fn new(mut branch_sets: Vec<VertexSet>) -> Self {
        branch_sets.sort_by_key(|s| s.smallest());
        Self { branch_sets }
    }

    pub fn t(&self) -> usize {
        self.branch_sets.len()
    }

    fn from_masks(masks: &[u64]) -> Self {
        Self::new(masks.iter().map(|&m| VertexSet::from_mask(m)).collect())
    }

    /// Grows the branch sets until they cover `component`, which must be a
    /// connected vertex set containing every branch set. Each unassigned
    /// vertex joins the first set it is adjacent to.
    pub fn extend_to_cover(&mut self, g: &Graph, component: &VertexSet) {
        let mut owner: Vec<Option<usize>> = vec![None; g.n()];
        for (i, set) in self.branch_sets.iter().enumerate() {
            for &v in set {
                owner[v] = Some(i);
            }
        }
        loop {
            let mut grew = false;
            for &v in component {
                if owner[v].is_some() {
                    continue;
                }
                let target = g.neighbors(v).iter().filter_map(|&u| owner[u]).min();
                if let Some(i) = target {
                    owner[v] = Some(i);
                    self.branch_sets[i].insert(v);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
    }
}

/// `(kept, merged)`: `merged` is folded into the vertex currently holding
/// `kept`. Ids refer to the original graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub kept: usize,
    pub merged: usize,
}

/// Contracts edge `(u, v)`: `v` is merged into `u`, ids above `v` shift down
/// by one. The map sends both `u` and `v` to the merged vertex.
pub fn contract_edge(g: &Graph, u: usize, v: usize) -> Result<(Graph, IdMap)> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let n = g.n();
    let new_id = |w: usize| if w > v { w - 1 } else { w };
    let map: Vec<Option<usize>> = (0..n)
        .map(|w| Some(if w == v { new_id(u) } else { new_id(w) }))
        .collect();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    for w in 0..n {
        if w == v {
            continue;
        }
        let mut list: Vec<usize> = if w == u {
            g.neighbors(u)
                .iter()
                .chain(g.neighbors(v))
                .copied()
                .filter(|&x| x != u && x != v)
                .map(new_id)
                .collect()
        } else {
            g.neighbors(w)
                .iter()
                .map(|&x| if x == v { new_id(u) } else { new_id(x) })
                .collect()
        };
        list.sort_unstable();
        list.dedup();
        adj.push(list);
    }
    Ok((Graph::from_sorted_adjacency(adj), IdMap::from_vec(map)))
}

fn check_ceiling(g: &Graph, limits: &OracleLimits) -> Result<Vec<u64>> {
    if g.n() > limits.hadwiger_ceiling {
        return Err(Error::OracleLimit {
            n: g.n(),
            ceiling: limits.hadwiger_ceiling,
        });
    }
    g.adjacency_masks().ok_or(Error::OracleLimit {
        n: g.n(),
        ceiling: 64,
    })
}

/// Searches for a `K_t` minor. The returned branch sets partition one
/// connected component of `g`.
pub fn has_clique_minor(
    g: &Graph,
    t: usize,
    limits: &OracleLimits,
) -> Result<Option<MinorWitness>> {
    if t == 0 {
        return Err(Error::InvalidConfig(
            "clique minor order must be at least 1".into(),
        ));
    }
    let adj = check_ceiling(g, limits)?;
    for component in g.connected_components() {
        let mask = component.to_mask();
        let size = component.len();
        if size < t {
            continue;
        }
        let edges: usize = component
            .iter()
            .map(|&v| (adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2;
        // every block needs a spanning tree, every pair a cross edge
        if edges < size - t + t * (t - 1) / 2 {
            continue;
        }
        let mut search = ModelSearch {
            adj: &adj,
            t,
            blocks: Vec::with_capacity(t),
        };
        if search.extend(mask) {
            let w = MinorWitness::from_masks(&search.blocks);
            debug_assert!(verify_minor_witness(g, &w));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

struct ModelSearch<'a> {
    adj: &'a [u64],
    t: usize,
    blocks: Vec<u64>,
}

impl ModelSearch<'_> {
    fn boundary(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.adj[v];
        }
        out & !set
    }

    fn connected(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let mut reached = set & set.wrapping_neg();
        loop {
            let next = (reached | self.boundary(reached)) & set;
            if next == reached {
                return reached == set;
            }
            reached = next;
        }
    }

    /// Partition `remaining` into the blocks still missing.
    fn extend(&mut self, remaining: u64) -> bool {
        let need = self.t - self.blocks.len();
        if need == 1 {
            let ok = self.connected(remaining)
                && self
                    .blocks
                    .iter()
                    .all(|&b| self.boundary(b) & remaining != 0);
            if ok {
                self.blocks.push(remaining);
            }
            return ok;
        }
        let root = remaining & remaining.wrapping_neg();
        let max_size = remaining.count_ones() as usize - (need - 1);
        let frontier = self.adj[root.trailing_zeros() as usize] & remaining;
        self.grow(root, frontier, 0, remaining, max_size)
    }

    /// Enumerates each connected superset of `block` inside `remaining`
    /// exactly once: candidates are taken from `frontier` in order, and every
    /// declined candidate is barred from the deeper branches.
    fn grow(
        &mut self,
        block: u64,
        frontier: u64,
        barred: u64,
        remaining: u64,
        max_size: usize,
    ) -> bool {
        if self.try_block(block, remaining) {
            return true;
        }
        if block.count_ones() as usize == max_size {
            return false;
        }
        let mut frontier = frontier & !barred;
        let mut barred = barred;
        while frontier != 0 {
            let c = frontier & frontier.wrapping_neg();
            frontier &= !c;
            let grown = block | c;
            let reach =
                (frontier | self.adj[c.trailing_zeros() as usize]) & remaining & !grown & !barred;
            if self.grow(grown, reach, barred, remaining, max_size) {
                return true;
            }
            barred |= c;
        }
        false
    }

    fn try_block(&mut self, block: u64, remaining: u64) -> bool {
        let need_after = self.t - self.blocks.len() - 1;
        let rest = remaining & !block;
        let block_boundary = self.boundary(block);
        if self.blocks.iter().any(|&b| block_boundary & b == 0) {
            return false;
        }
        if (block_boundary & rest).count_ones() < need_after as u32 {
            return false;
        }
        for &b in &self.blocks {
            if (self.boundary(b) & rest).count_ones() < need_after as u32 {
                return false;
            }
        }
        if !self.connected(rest) {
            return false;
        }
        self.blocks.push(block);
        if self.extend(rest) {
            return true;
        }
        self.blocks.pop();
        false
    }
}

/// The largest `t` with a `K_t` minor, with a witness whose branch sets
/// partition one component. `None` for the empty graph.
pub fn hadwiger_witness(g: &Graph, limits: &OracleLimits) -> Result<Option<MinorWitness>> {
    check_ceiling(g, limits)?;
    if g.is_empty() {
        return Ok(None);
    }
    let clique = max_clique(g);
    let mut best = MinorWitness::new(clique.iter().map(|&v| VertexSet::from(vec![v])).collect());
    let home = g
        .connected_components()
        .into_iter()
        .find(|c| c.contains(clique.smallest().expect("nonempty graph has a clique")))
        .expect("every vertex lies in a component");
    best.extend_to_cover(g, &home);
    let mut t = best.t() + 1;
    while let Some(w) = has_clique_minor(g, t, limits)? {
        best = w;
        t += 1;
    }
    Ok(Some(best))
}

/// `h(G)`; 0 for the empty graph.
pub fn hadwiger_number(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    Ok(hadwiger_witness(g, limits)?.map_or(0, |w| w.t()))
}

/// Reasons a witness fails, for diagnostics.
pub fn witness_defect(g: &Graph, w: &MinorWitness) -> Option<String> {
    let mut owner = vec![None; g.n()];
    for (i, set) in w.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Some(format!("branch set {i} is empty"));
        }
        for &v in set {
            if v >= g.n() {
                return Some(format!("vertex {v} out of range"));
            }
            if let Some(j) = owner[v] {
                return Some(format!("vertex {v} shared by branch sets {j} and {i}"));
            }
            owner[v] = Some(i);
        }
        if !g.is_connected_within(set) {
            return Some(format!("branch set {i} is not connected"));
        }
    }
    let t = w.t();
    let mut touching = vec![vec![false; t]; t];
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            touching[a][b] = true;
            touching[b][a] = true;
        }
    }
    for (a, row) in touching.iter().enumerate() {
        if let Some(off) = row[a + 1..].iter().position(|&x| !x) {
            let b = a + 1 + off;
            return Some(format!("branch sets {a} and {b} are not adjacent"));
        }
    }
    None
}

pub fn verify_minor_witness(g: &Graph, w: &MinorWitness) -> bool {
    match witness_defect(g, w) {
        None => true,
        Some(why) => {
            debug!("minor witness rejected: {why}");
            false
        }
    }
}

/// Result of contracting a vertex class down to its largest clique minor.
#[derive(Clone, Debug)]
pub struct ClassContraction {
    pub graph: Graph,
    /// Original ids to ids in `graph`.
    pub map: IdMap,
    pub trace: Vec<ContractionStep>,
    /// Branch sets realised as single vertices, in original ids.
    pub witness: MinorWitness,
}

/// Contracts edges inside `class` until it becomes the clique minor given by
/// a maximum covering witness of `G[class]`. Edges leaving the class are
/// inherited by the merged vertices.
pub fn contract_class_to_minor(
    g: &Graph,
    class: &VertexSet,
    limits: &OracleLimits,
) -> Result<ClassContraction> {
    debug_assert!(g.is_connected_within(class));
    let (sub, _) = g.induced_subgraph(class)?;
    let local = hadwiger_witness(&sub, limits)?.expect("connected class is nonempty");
    let witness = MinorWitness::new(
        local
            .branch_sets
            .iter()
            .map(|s| s.map(|i| class.as_slice()[i]))
            .collect(),
    );
    let mut trace = Vec::new();
    for set in &witness.branch_sets {
        let root = set.smallest().expect("branch sets are nonempty");
        let mut seen = VertexSet::from(vec![root]);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if set.contains(u) && seen.insert(u) {
                    trace.push(ContractionStep {
                        kept: root,
                        merged: u,
                    });
                    queue.push_back(u);
                }
            }
        }
    }
    let mut graph = g.clone();
    let mut map = IdMap::identity(g.n());
    for step in &trace {
        let kept = map.get(step.kept).expect("contraction maps are total");
        let merged = map.get(step.merged).expect("contraction maps are total");
        let (next, m) = contract_edge(&graph, kept, merged)?;
        graph = next;
        map = map.then(&m);
    }
    Ok(ClassContraction {
        graph,
        map,
        trace,
        witness,
    })
}

/// Contracts the plane edges of plane `plane` until its vertex class is its
/// largest clique minor. The plane must induce a connected subgraph.
pub fn contract_plane_to_minor(
    g: &Graph,
    a: &PlaneAssignment,
    plane: usize,
    limits: &OracleLimits,
) -> Result<ClassContraction> {
    let members = a.plane_vertices(plane)?;
    if members.is_empty() {
        return Err(Error::EmptyPlane(plane));
    }
    if !g.is_connected_within(members) {
        return Err(Error::DisconnectedPlane(plane));
    }
    contract_class_to_minor(g, members, limits)
}

/// Every plane contracted to its minor, one plane after another.
#[derive(Clone, Debug)]
pub struct PlanesContraction {
    pub graph: Graph,
    pub map: IdMap,
    pub trace: Vec<ContractionStep>,
    /// Per plane, the ids in `graph` of its minor's vertices.
    pub minor_vertices: Vec<VertexSet>,
}

pub fn contract_all_planes(
    g: &Graph,
    a: &PlaneAssignment,
    limits: &OracleLimits,
) -> Result<PlanesContraction> {
    let mut graph = g.clone();
    let mut map = IdMap::identity(g.n());
    let mut trace = Vec::new();
    for (p, members) in a.planes().iter().enumerate() {
        if members.is_empty() {
            return Err(Error::EmptyPlane(p));
        }
        if !g.is_connected_within(members) {
            return Err(Error::DisconnectedPlane(p));
        }
        let class = members.map(|v| map.get(v).expect("contraction maps are total"));
        // a connected class stays connected under contractions of other classes
        let step = contract_class_to_minor(&graph, &class, limits)?;
        // translate the current ids in the step trace back to original ids
        let mut representative = vec![usize::MAX; graph.n()];
        for v in (0..g.n()).rev() {
            representative[map.get(v).unwrap()] = v;
        }
        trace.extend(step.trace.iter().map(|s| ContractionStep {
            kept: representative[s.kept],
            merged: representative[s.merged],
        }));
        graph = step.graph;
        map = map.then(&step.map);
    }
    let minor_vertices = a
        .planes()
        .iter()
        .map(|members| members.map(|v| map.get(v).unwrap()))
        .collect();
    Ok(PlanesContraction {
        graph,
        map,
        trace,
        minor_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, join, path, petersen};

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    fn singletons(n: usize) -> MinorWitness {
        MinorWitness::new((0..n).map(|v| VertexSet::from(vec![v])).collect())
    }

    fn k5_minus_01() -> Graph {
        Graph::from_edge_list(5, complete(5).edges().filter(|&e| e != (0, 1))).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let (g, _) = contract_edge(&complete(3), 0, 1).unwrap();
        assert_eq!(g, complete(2));
        let (g, map) = contract_edge(&cycle(5).unwrap(), 2, 3).unwrap();
        assert!(crate::graph::is_isomorphic(&g, &cycle(4).unwrap()));
        assert_eq!(map.get(3), map.get(2));
        assert_eq!(map.get(4), Some(3));
        let (g, _) = contract_edge(&complete(5), 4, 1).unwrap();
        assert_eq!(g, complete(4));
        assert_eq!(
            contract_edge(&path(3), 0, 2),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn k5_minor_examples() {
        let w = has_clique_minor(&complete(5), 5, &limits())
            .unwrap()
            .unwrap();
        assert_eq!(w, singletons(5));
        assert!(has_clique_minor(&k5_minus_01(), 5, &limits())
            .unwrap()
            .is_none());
    }

    #[test]
    fn hadwiger_examples() {
        for n in 1..=8 {
            assert_eq!(hadwiger_number(&complete(n), &limits()).unwrap(), n);
        }
        assert_eq!(hadwiger_number(&cycle(5).unwrap(), &limits()).unwrap(), 3);
        assert_eq!(hadwiger_number(&empty(0), &limits()).unwrap(), 0);
        assert_eq!(hadwiger_number(&empty(4), &limits()).unwrap(), 1);
        assert_eq!(hadwiger_number(&path(4), &limits()).unwrap(), 2);
        let j = join(&cycle(5).unwrap(), &complete(5));
        assert_eq!(hadwiger_number(&j, &limits()).unwrap(), 8);
    }

    #[test]
    fn petersen_has_k5_but_not_k6() {
        let g = petersen();
        let w = has_clique_minor(&g, 5, &limits()).unwrap().unwrap();
        assert!(verify_minor_witness(&g, &w));
        assert!(has_clique_minor(&g, 6, &limits()).unwrap().is_none());
        assert_eq!(hadwiger_number(&g, &limits()).unwrap(), 5);
    }

    #[test]
    fn ceiling_is_enforced() {
        let big = complete(17);
        assert_eq!(
            hadwiger_number(&big, &limits()),
            Err(Error::OracleLimit { n: 17, ceiling: 16 })
        );
        let wide = OracleLimits {
            hadwiger_ceiling: 20,
            ..OracleLimits::default()
        };
        assert_eq!(hadwiger_number(&big, &wide).unwrap(), 17);
    }

    #[test]
    fn witness_checker() {
        assert!(verify_minor_witness(&complete(5), &singletons(5)));
        let c5 = cycle(5).unwrap();
        let tri = MinorWitness::new(vec![
            VertexSet::from(vec![0, 1]),
            VertexSet::from(vec![2, 3]),
            VertexSet::from(vec![4]),
        ]);
        assert!(verify_minor_witness(&c5, &tri));
        assert!(!verify_minor_witness(&k5_minus_01(), &singletons(5)));
        let bad = MinorWitness::new(vec![VertexSet::from(vec![0, 9])]);
        assert!(!verify_minor_witness(&c5, &bad));
        let split = MinorWitness::new(vec![VertexSet::from(vec![0, 2])]);
        assert!(!verify_minor_witness(&c5, &split));
    }

    #[test]
    fn witness_json() {
        let s = serde_json::to_string(&singletons(2)).unwrap();
        assert_eq!(s, r#"{"t":2,"branch_sets":[[0],[1]]}"#);
    }

    #[test]
    fn class_contraction() {
        let c = contract_class_to_minor(&path(3), &VertexSet::full(3), &limits()).unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.edge_count(), 1);

        let k5 = complete(5);
        let c =
            contract_class_to_minor(&k5, &VertexSet::from(vec![0, 1, 2, 3]), &limits()).unwrap();
        assert!(c.trace.is_empty());
        assert_eq!(c.graph, k5);

        let c = contract_class_to_minor(&k5, &VertexSet::from(vec![4]), &limits()).unwrap();
        assert_eq!(c.graph, k5);
    }
}
