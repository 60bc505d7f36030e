//! Plane assignments: every vertex sits on one plane with a plane-local color.
//!
//! An edge is a *plane edge* when both endpoints share a plane and a
//! *non-plane edge* otherwise. Colors only need to differ across plane edges;
//! the global palette is `plane * capacity + color`.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// How [`is_placeable`] compares a vertex's neighbor colors against a plane.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum PlacementMode {
    /// Placeable while some color below the plane capacity is free.
    #[default]
    #[serde(rename = "capacity4")]
    Capacity,
    /// Placeable only while the neighbors use fewer colors than the plane
    /// currently uses; the vertex then reuses one of the plane's colors.
    #[serde(rename = "strict-lemma2")]
    UsedColors,
}

impl PlacementMode {
    pub const ALL: [PlacementMode; 2] = [PlacementMode::Capacity, PlacementMode::UsedColors];

    pub fn label(self) -> &'static str {
        match self {
            PlacementMode::Capacity => "capacity4",
            PlacementMode::UsedColors => "strict-lemma2",
        }
    }
}

impl std::str::FromStr for PlacementMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "capacity4" => Ok(PlacementMode::Capacity),
            "strict-lemma2" => Ok(PlacementMode::UsedColors),
            other => Err(Error::InvalidConfig(format!(
                "unknown placement mode {other:?} (expected capacity4 or strict-lemma2)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub plane: usize,
    pub color: usize,
}

/// Partial map vertex -> (plane, color). Operations that need a total map
/// say so and reject unassigned vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "AssignmentRepr", try_from = "AssignmentRepr")]
pub struct PlaneAssignment {
    capacity: usize,
    slots: Vec<Option<Slot>>,
    planes: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentRepr {
    capacity: usize,
    planes: Vec<PlaneRepr>,
}

#[derive(Serialize, Deserialize)]
struct PlaneRepr {
    id: usize,
    vertices: Vec<VertexColor>,
}

/// A `{v, color}` pair as it appears in the JSON formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColor {
    pub v: usize,
    pub color: usize,
}

impl From<PlaneAssignment> for AssignmentRepr {
    fn from(a: PlaneAssignment) -> Self {
        let planes = a
            .planes
            .iter()
            .enumerate()
            .map(|(id, members)| PlaneRepr {
                id,
                vertices: members
                    .iter()
                    .map(|&v| VertexColor {
                        v,
                        color: a.slots[v].expect("plane members are assigned").color,
                    })
                    .collect(),
            })
            .collect();
        AssignmentRepr {
            capacity: a.capacity,
            planes,
        }
    }
}

impl TryFrom<AssignmentRepr> for PlaneAssignment {
    type Error = Error;

    fn try_from(r: AssignmentRepr) -> Result<Self> {
        let n = r
            .planes
            .iter()
            .flat_map(|p| p.vertices.iter().map(|x| x.v + 1))
            .max()
            .unwrap_or(0);
        let mut slots = vec![None; n];
        for (expected, plane) in r.planes.iter().enumerate() {
            if plane.id != expected {
                return Err(Error::InvalidConfig(format!(
                    "plane ids must be 0..P-1 in order, found {} at position {expected}",
                    plane.id
                )));
            }
            for x in &plane.vertices {
                if slots[x.v].is_some() {
                    return Err(Error::AlreadyAssigned(x.v));
                }
                slots[x.v] = Some(Slot {
                    plane: plane.id,
                    color: x.color,
                });
            }
        }
        PlaneAssignment::from_slots(r.capacity, slots)
    }
}

impl PlaneAssignment {
    pub fn new(n: usize, capacity: usize) -> Self {
        Self {
            capacity,
            slots: vec![None; n],
            planes: Vec::new(),
        }
    }

    /// Builds from raw slots, checking only the structural invariants (plane
    /// ids contiguous). Properness is left to [`PlaneAssignment::validate`].
    pub fn from_slots(capacity: usize, slots: Vec<Option<Slot>>) -> Result<Self> {
        let count = slots
            .iter()
            .flatten()
            .map(|s| s.plane + 1)
            .max()
            .unwrap_or(0);
        let mut planes = vec![VertexSet::new(); count];
        for (v, slot) in slots.iter().enumerate() {
            if let Some(s) = slot {
                planes[s.plane].insert(v);
            }
        }
        if let Some(p) = planes.iter().position(VertexSet::is_empty) {
            return Err(Error::EmptyPlane(p));
        }
        Ok(Self {
            capacity,
            slots,
            planes,
        })
    }

    /// Pads (or checks) the vertex count, e.g. after reading JSON where
    /// trailing unassigned vertices are invisible.
    pub fn with_vertex_count(mut self, n: usize) -> Result<Self> {
        if self.slots.len() > n {
            return Err(Error::VertexOutOfRange {
                v: self.slots.len() - 1,
                n,
            });
        }
        self.slots.resize(n, None);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn plane_count(&self) -> usize {
        self.planes.len()
    }

    pub fn slot(&self, v: usize) -> Option<Slot> {
        self.slots.get(v).copied().flatten()
    }

    pub fn plane_of(&self, v: usize) -> Option<usize> {
        self.slot(v).map(|s| s.plane)
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.slot(v).map(|s| s.color)
    }

    pub fn plane_vertices(&self, p: usize) -> Result<&VertexSet> {
        self.planes.get(p).ok_or(Error::UnknownPlane(p))
    }

    pub fn planes(&self) -> &[VertexSet] {
        &self.planes
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn unassigned(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.slots[v].is_none()).collect()
    }

    /// Opens a new, empty plane and returns its index.
    pub fn open_plane(&mut self) -> usize {
        self.planes.push(VertexSet::new());
        self.planes.len() - 1
    }

    /// Puts `v` on `plane` with `color`, refusing anything that would break
    /// per-plane properness.
    pub fn place(&mut self, g: &Graph, v: usize, plane: usize, color: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { v, n: self.n() });
        }
        if self.slots[v].is_some() {
            return Err(Error::AlreadyAssigned(v));
        }
        if plane >= self.planes.len() {
            return Err(Error::UnknownPlane(plane));
        }
        let clash = g
            .neighbors(v)
            .iter()
            .any(|&u| self.slots[u] == Some(Slot { plane, color }));
        if color >= self.capacity || clash {
            return Err(Error::ColorConflict { v, plane, color });
        }
        self.slots[v] = Some(Slot { plane, color });
        self.planes[plane].insert(v);
        Ok(())
    }

    /// Checks the invariants against `g`: matching vertex count, colors below
    /// capacity, distinct colors across every plane edge.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::VertexOutOfRange {
                v: self.n().max(g.n()) - 1,
                n: g.n().min(self.n()),
            });
        }
        for (v, slot) in self.slots.iter().enumerate() {
            if let Some(s) = slot {
                if s.color >= self.capacity {
                    return Err(Error::ColorConflict {
                        v,
                        plane: s.plane,
                        color: s.color,
                    });
                }
            }
        }
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (self.slots[u], self.slots[v]) {
                if a == b {
                    return Err(Error::ColorConflict {
                        v,
                        plane: a.plane,
                        color: a.color,
                    });
                }
            }
        }
        Ok(())
    }

    /// Palette `plane * capacity + color` over the assigned vertices;
    /// unassigned vertices get `None`.
    pub fn global_colors(&self) -> Vec<Option<usize>> {
        self.slots
            .iter()
            .map(|s| s.map(|s| s.plane * self.capacity + s.color))
            .collect()
    }

    /// The global palette as a [`Coloring`] with `k = capacity * planes`.
    /// Errors when some vertex is unassigned.
    pub fn combined_coloring(&self) -> Result<Coloring> {
        let colors = self
            .global_colors()
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(Error::Unassigned(v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Coloring {
            k: self.capacity * self.plane_count(),
            colors,
        })
    }
}

/// Edges split by whether their endpoints share a plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClassification {
    pub plane_edges: Vec<Vec<(usize, usize)>>,
    pub non_plane_edges: Vec<(usize, usize)>,
}

impl EdgeClassification {
    pub fn plane_edge_count(&self) -> usize {
        self.plane_edges.iter().map(Vec::len).sum()
    }
}

pub fn classify_edges(g: &Graph, a: &PlaneAssignment) -> Result<EdgeClassification> {
    if a.n() != g.n() {
        return Err(Error::InvalidConfig(format!(
            "assignment covers {} vertices, graph has {}",
            a.n(),
            g.n()
        )));
    }
    if let Some(v) = a.unassigned().smallest() {
        return Err(Error::Unassigned(v));
    }
    let mut out = EdgeClassification {
        plane_edges: vec![Vec::new(); a.plane_count()],
        non_plane_edges: Vec::new(),
    };
    for (u, v) in g.edges() {
        let (pu, pv) = (a.plane_of(u).unwrap(), a.plane_of(v).unwrap());
        if pu == pv {
            out.plane_edges[pu].push((u, v));
        } else {
            out.non_plane_edges.push((u, v));
        }
    }
    Ok(out)
}

/// Number of distinct colors on plane `p`.
pub fn plane_chromatic_number(a: &PlaneAssignment, p: usize) -> Result<usize> {
    let members = a.plane_vertices(p)?;
    if members.is_empty() {
        return Err(Error::EmptyPlane(p));
    }
    Ok(plane_colors(a, p).len())
}

fn plane_colors(a: &PlaneAssignment, p: usize) -> Vec<usize> {
    let mut used: Vec<usize> = a.planes[p].iter().filter_map(|&v| a.color_of(v)).collect();
    used.sort_unstable();
    used.dedup();
    used
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Colors `v` may take, ascending.
    Placeable { available: Vec<usize> },
    /// `v`'s neighbors on the plane already use `distinct` colors.
    Blocked { distinct: usize },
}

impl Placement {
    pub fn is_placeable(&self) -> bool {
        matches!(self, Placement::Placeable { .. })
    }
}

/// Whether unassigned `v` can join plane `p`, given the distinct colors among
/// its neighbors already on `p`.
pub fn is_placeable(
    g: &Graph,
    a: &PlaneAssignment,
    p: usize,
    v: usize,
    mode: PlacementMode,
) -> Result<Placement> {
    a.plane_vertices(p)?;
    if a.slot(v).is_some() {
        return Err(Error::AlreadyAssigned(v));
    }
    let mut seen: Vec<usize> = g
        .neighbors(v)
        .iter()
        .filter_map(|&u| a.slot(u))
        .filter(|s| s.plane == p)
        .map(|s| s.color)
        .collect();
    seen.sort_unstable();
    seen.dedup();
    let (threshold, palette): (usize, Vec<usize>) = match mode {
        PlacementMode::Capacity => (a.capacity, (0..a.capacity).collect()),
        PlacementMode::UsedColors => {
            let used = plane_colors(a, p);
            (used.len(), used)
        }
    };
    if seen.len() >= threshold {
        return Ok(Placement::Blocked {
            distinct: seen.len(),
        });
    }
    let available = palette
        .into_iter()
        .filter(|c| seen.binary_search(c).is_err())
        .collect();
    Ok(Placement::Placeable { available })
}

/// Projects the chosen planes onto one pallet: the subgraph induced by the
/// union of their vertices, relabelled in ascending order.
pub fn project_pallet(g: &Graph, a: &PlaneAssignment, planes: &[usize]) -> Result<Graph> {
    if planes.is_empty() {
        return Err(Error::InvalidConfig(
            "pallet projection needs at least one plane".into(),
        ));
    }
    let mut union = VertexSet::new();
    for &p in planes {
        union = union.union(a.plane_vertices(p)?);
    }
    Ok(g.induced_subgraph(&union)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    /// K5 with `{0,1,2,3}` on plane 0 colored 0..3 and `{4}` on plane 1.
    pub(crate) fn k5_layout() -> (Graph, PlaneAssignment) {
        let g = complete(5);
        let mut a = PlaneAssignment::new(5, 4);
        a.open_plane();
        a.open_plane();
        for v in 0..4 {
            a.place(&g, v, 0, v).unwrap();
        }
        a.place(&g, 4, 1, 0).unwrap();
        (g, a)
    }

    #[test]
    fn k5_layout_classification() {
        let (g, a) = k5_layout();
        let c = classify_edges(&g, &a).unwrap();
        assert_eq!(c.plane_edges[0].len(), 6);
        assert_eq!(c.plane_edges[1].len(), 0);
        assert_eq!(c.non_plane_edges.len(), 4);
    }

    #[test]
    fn extreme_classifications() {
        let g = complete(4);
        let one = PlaneAssignment::from_slots(
            4,
            (0..4).map(|v| Some(Slot { plane: 0, color: v })).collect(),
        )
        .unwrap();
        let c = classify_edges(&g, &one).unwrap();
        assert_eq!(c.plane_edge_count(), 6);
        assert!(c.non_plane_edges.is_empty());

        let each = PlaneAssignment::from_slots(
            4,
            (0..4).map(|v| Some(Slot { plane: v, color: 0 })).collect(),
        )
        .unwrap();
        let c = classify_edges(&g, &each).unwrap();
        assert_eq!(c.plane_edge_count(), 0);
        assert_eq!(c.non_plane_edges.len(), 6);
    }

    #[test]
    fn partial_assignments_are_rejected() {
        let g = complete(3);
        let mut a = PlaneAssignment::new(3, 4);
        a.open_plane();
        a.place(&g, 0, 0, 0).unwrap();
        assert_eq!(classify_edges(&g, &a), Err(Error::Unassigned(1)));
    }

    #[test]
    fn plane_color_counts() {
        let (_, a) = k5_layout();
        assert_eq!(plane_chromatic_number(&a, 0).unwrap(), 4);
        assert_eq!(plane_chromatic_number(&a, 1).unwrap(), 1);
        assert_eq!(plane_chromatic_number(&a, 2), Err(Error::UnknownPlane(2)));

        let g = crate::graph::path(3);
        let a = PlaneAssignment::from_slots(
            4,
            vec![
                Some(Slot { plane: 0, color: 0 }),
                Some(Slot { plane: 0, color: 1 }),
                Some(Slot { plane: 0, color: 0 }),
            ],
        )
        .unwrap();
        a.validate(&g).unwrap();
        assert_eq!(plane_chromatic_number(&a, 0).unwrap(), 2);
    }

    #[test]
    fn placement_examples() {
        let g = complete(5);
        let mut a = PlaneAssignment::new(5, 4);
        a.open_plane();
        for v in 0..4 {
            a.place(&g, v, 0, v).unwrap();
        }
        assert_eq!(
            is_placeable(&g, &a, 0, 4, PlacementMode::Capacity).unwrap(),
            Placement::Blocked { distinct: 4 }
        );

        let mut b = PlaneAssignment::new(5, 4);
        b.open_plane();
        for v in 0..3 {
            b.place(&g, v, 0, v).unwrap();
        }
        assert_eq!(
            is_placeable(&g, &b, 0, 4, PlacementMode::Capacity).unwrap(),
            Placement::Placeable { available: vec![3] }
        );
        // the plane also uses only three colors, so the used-colors reading blocks
        assert_eq!(
            is_placeable(&g, &b, 0, 4, PlacementMode::UsedColors).unwrap(),
            Placement::Blocked { distinct: 3 }
        );

        let lonely = crate::graph::empty(2);
        let mut c = PlaneAssignment::new(2, 4);
        c.open_plane();
        c.place(&lonely, 0, 0, 0).unwrap();
        assert_eq!(
            is_placeable(&lonely, &c, 0, 1, PlacementMode::Capacity).unwrap(),
            Placement::Placeable {
                available: vec![0, 1, 2, 3]
            }
        );
        assert_eq!(
            is_placeable(&lonely, &c, 0, 0, PlacementMode::Capacity),
            Err(Error::AlreadyAssigned(0))
        );
    }

    #[test]
    fn pallets() {
        let (g, a) = k5_layout();
        assert_eq!(project_pallet(&g, &a, &[0, 1]).unwrap(), g);
        assert_eq!(project_pallet(&g, &a, &[0]).unwrap(), complete(4));
        assert!(project_pallet(&g, &a, &[]).is_err());
        assert_eq!(project_pallet(&g, &a, &[7]), Err(Error::UnknownPlane(7)));
    }

    #[test]
    fn json_schema() {
        let (_, a) = k5_layout();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"capacity":4,"planes":[{"id":0,"vertices":[{"v":0,"color":0},{"v":1,"color":1},{"v":2,"color":2},{"v":3,"color":3}]},{"id":1,"vertices":[{"v":4,"color":0}]}]}"#
        );
        let back: PlaneAssignment = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn improper_placement_is_refused() {
        let g = complete(2);
        let mut a = PlaneAssignment::new(2, 4);
        a.open_plane();
        a.place(&g, 0, 0, 1).unwrap();
        assert!(a.place(&g, 1, 0, 1).is_err());
        assert!(a.place(&g, 1, 0, 4).is_err());
        a.place(&g, 1, 0, 2).unwrap();
    }
}
