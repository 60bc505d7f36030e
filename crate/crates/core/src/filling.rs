//! Chromatic filling: greedy plane-by-plane decomposition.
//!
//! One iteration works on a connected vertex set `sub`:
//!
//! 1. open a plane and seed it with a minimal subset of `sub` that has a
//!    `K_capacity` minor (all of `sub` when none exists), colored exactly;
//! 2. scan the rest of `sub` in ascending id and put the first vertex that
//!    touches the plane and passes [`is_placeable`] on it with its lowest
//!    available color, then rescan from the start;
//! 3. when a full scan places nothing, close the plane. The residual's
//!    component with the largest Hadwiger number (ties: smallest vertex)
//!    becomes the next `sub`; the other components are queued or discarded
//!    depending on the [`ResidualPolicy`].
//!
//! Input components are processed the same way, largest Hadwiger number
//! first.

use serde::{Deserialize, Serialize};

use crate::chp::{is_placeable, Placement, PlacementMode, PlaneAssignment, VertexColor};
use crate::coloring::{chromatic_coloring, is_k_colorable, verify_coloring, ColoringOutcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::{hadwiger_number, has_clique_minor};
use crate::OracleLimits;

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum ResidualPolicy {
    /// Queue every residual component and decompose it later.
    #[default]
    #[serde(rename = "process-all")]
    ProcessAll,
    /// Keep only the component with the largest minor; the rest end up in
    /// [`Decomposition::unplaced`].
    #[serde(rename = "discard-paper")]
    DiscardSmaller,
}

impl ResidualPolicy {
    pub const ALL: [ResidualPolicy; 2] =
        [ResidualPolicy::ProcessAll, ResidualPolicy::DiscardSmaller];

    pub fn label(self) -> &'static str {
        match self {
            ResidualPolicy::ProcessAll => "process-all",
            ResidualPolicy::DiscardSmaller => "discard-paper",
        }
    }
}

impl std::str::FromStr for ResidualPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "process-all" => Ok(ResidualPolicy::ProcessAll),
            "discard-paper" => Ok(ResidualPolicy::DiscardSmaller),
            other => Err(Error::InvalidConfig(format!(
                "unknown residual policy {other:?} (expected process-all or discard-paper)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillConfig {
    pub capacity: usize,
    pub placement: PlacementMode,
    pub residual: ResidualPolicy,
    pub limits: OracleLimits,
}

impl Default for FillConfig {
    fn default() -> Self {
        Self {
            capacity: 4,
            placement: PlacementMode::default(),
            residual: ResidualPolicy::default(),
            limits: OracleLimits::default(),
        }
    }
}

impl FillConfig {
    pub fn validate(&self) -> Result<()> {
        if self.capacity == 0 {
            return Err(Error::InvalidConfig(
                "plane capacity must be positive".into(),
            ));
        }
        self.limits.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualComponent {
    pub vertices: VertexSet,
    pub hadwiger: usize,
}

/// Audit record of one plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub plane: usize,
    /// The connected set this iteration worked on.
    pub subgraph: VertexSet,
    pub seed_set: VertexSet,
    pub seed_colors: Vec<VertexColor>,
    /// Non-seed placements in the order they happened.
    pub placements: Vec<VertexColor>,
    pub connected_at_close: bool,
    pub residual_components: Vec<ResidualComponent>,
    pub chosen_next: Option<VertexSet>,
    pub queued: Vec<VertexSet>,
    pub discarded: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub placement: PlacementMode,
    pub residual_policy: ResidualPolicy,
    pub assignment: PlaneAssignment,
    pub unplaced: VertexSet,
    #[serde(default)]
    pub trace: Vec<IterationRecord>,
}

impl Decomposition {
    pub fn plane_count(&self) -> usize {
        self.assignment.plane_count()
    }

    pub fn plane_sizes(&self) -> Vec<usize> {
        self.assignment
            .planes()
            .iter()
            .map(VertexSet::len)
            .collect()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Smallest vertex set (ties: lexicographically first) whose induced subgraph
/// has a `K_t` minor, or every vertex when `g` has none. `g` should be
/// connected.
pub fn find_seed(g: &Graph, t: usize, limits: &OracleLimits) -> Result<VertexSet> {
    if g.is_empty() {
        return Err(Error::InvalidConfig("cannot seed an empty graph".into()));
    }
    if has_clique_minor(g, t, limits)?.is_none() {
        return Ok(VertexSet::full(g.n()));
    }
    let masks = g
        .adjacency_masks()
        .expect("ceiling keeps graphs within 64 vertices");
    for size in t..=g.n() {
        for combo in Combinations::new(g.n(), size) {
            let set = VertexSet::from(combo);
            let mask = set.to_mask();
            let inner_edges: u32 = set
                .iter()
                .map(|&v| (masks[v] & mask).count_ones())
                .sum::<u32>()
                / 2;
            if (inner_edges as usize) < size - t + t * (t - 1) / 2 || !g.is_connected_within(&set) {
                continue;
            }
            let (sub, _) = g.induced_subgraph(&set)?;
            if has_clique_minor(&sub, t, limits)?.is_some() {
                return Ok(set);
            }
        }
    }
    unreachable!("the whole graph has a K_t minor")
}

pub fn find_k4_seed(g: &Graph, limits: &OracleLimits) -> Result<VertexSet> {
    find_seed(g, 4, limits)
}

fn pick_largest_minor(candidates: &[ResidualComponent]) -> usize {
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate() {
        let b = &candidates[best];
        if (c.hadwiger, std::cmp::Reverse(c.vertices.smallest()))
            > (b.hadwiger, std::cmp::Reverse(b.vertices.smallest()))
        {
            best = i;
        }
    }
    best
}

fn rate(g: &Graph, parts: Vec<VertexSet>, limits: &OracleLimits) -> Result<Vec<ResidualComponent>> {
    parts
        .into_iter()
        .map(|vertices| {
            let (sub, _) = g.induced_subgraph(&vertices)?;
            Ok(ResidualComponent {
                hadwiger: hadwiger_number(&sub, limits)?,
                vertices,
            })
        })
        .collect()
}

pub fn chromatic_fill(g: &Graph, config: &FillConfig) -> Result<Decomposition> {
    config.validate()?;
    let limits = &config.limits;
    if g.n() > limits.hadwiger_ceiling {
        return Err(Error::OracleLimit {
            n: g.n(),
            ceiling: limits.hadwiger_ceiling,
        });
    }
    let mut assignment = PlaneAssignment::new(g.n(), config.capacity);
    let mut pending = rate(g, g.connected_components(), limits)?;
    let mut unplaced = VertexSet::new();
    let mut trace = Vec::new();
    let mut current: Option<VertexSet> = None;

    loop {
        let sub = match current.take() {
            Some(s) => s,
            None if pending.is_empty() => break,
            None => pending.remove(pick_largest_minor(&pending)).vertices,
        };
        let plane = assignment.open_plane();

        let (sub_graph, _) = g.induced_subgraph(&sub)?;
        let seed = find_seed(&sub_graph, config.capacity, limits)?.map(|i| sub.as_slice()[i]);
        let (seed_graph, _) = g.induced_subgraph(&seed)?;
        let coloring = chromatic_coloring(&seed_graph, limits)?;
        if coloring.k > config.capacity {
            return Err(Error::SeedNotColorable {
                size: seed.len(),
                needed: coloring.k,
                capacity: config.capacity,
            });
        }
        let mut seed_colors = Vec::with_capacity(seed.len());
        for (&v, &color) in seed.iter().zip(&coloring.colors) {
            assignment.place(g, v, plane, color)?;
            seed_colors.push(VertexColor { v, color });
        }

        let mut residual = sub.difference(&seed);
        let mut placements = Vec::new();
        'scan: loop {
            for &v in residual.iter() {
                let touches = g
                    .neighbors(v)
                    .iter()
                    .any(|&u| assignment.plane_of(u) == Some(plane));
                if !touches {
                    continue;
                }
                if let Placement::Placeable { available } =
                    is_placeable(g, &assignment, plane, v, config.placement)?
                {
                    let color = available[0];
                    assignment.place(g, v, plane, color)?;
                    placements.push(VertexColor { v, color });
                    residual.remove(v);
                    continue 'scan;
                }
            }
            break;
        }

        let connected_at_close = g.is_connected_within(assignment.plane_vertices(plane)?);
        let residual_components = rate(g, g.components_within(&residual), limits)?;
        let mut queued = Vec::new();
        let mut discarded = Vec::new();
        let chosen_next = if residual_components.is_empty() {
            None
        } else {
            let best = pick_largest_minor(&residual_components);
            for (i, c) in residual_components.iter().enumerate() {
                if i == best {
                    continue;
                }
                match config.residual {
                    ResidualPolicy::ProcessAll => {
                        queued.push(c.vertices.clone());
                        pending.push(c.clone());
                    }
                    ResidualPolicy::DiscardSmaller => {
                        discarded.push(c.vertices.clone());
                        unplaced = unplaced.union(&c.vertices);
                    }
                }
            }
            Some(residual_components[best].vertices.clone())
        };
        current = chosen_next.clone();
        trace.push(IterationRecord {
            plane,
            subgraph: sub,
            seed_set: seed,
            seed_colors,
            placements,
            connected_at_close,
            residual_components,
            chosen_next,
            queued,
            discarded,
        });
    }

    Ok(Decomposition {
        placement: config.placement,
        residual_policy: config.residual,
        assignment,
        unplaced,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, outcome: std::result::Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Re-checks a decomposition against `g`; every failure is a report entry.
pub fn validate_decomposition(
    g: &Graph,
    d: &Decomposition,
    limits: &OracleLimits,
) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    let a = &d.assignment;

    if a.n() != g.n() {
        report.record(
            "vertex-count",
            Err(format!(
                "assignment covers {} vertices, graph has {}",
                a.n(),
                g.n()
            )),
        );
        return report;
    }
    report.record("vertex-count", Ok(()));

    report.record("coverage", {
        let missing = a.unassigned().difference(&d.unplaced);
        let doubled: Vec<usize> = d
            .unplaced
            .iter()
            .copied()
            .filter(|&v| a.slot(v).is_some())
            .collect();
        if !missing.is_empty() {
            Err(format!(
                "vertices neither placed nor listed as unplaced: {:?}",
                missing.as_slice()
            ))
        } else if !doubled.is_empty() {
            Err(format!("vertices both placed and unplaced: {doubled:?}"))
        } else if d.residual_policy == ResidualPolicy::ProcessAll && !d.unplaced.is_empty() {
            Err(format!(
                "process-all left vertices unplaced: {:?}",
                d.unplaced.as_slice()
            ))
        } else {
            Ok(())
        }
    });

    report.record(
        "plane-indices",
        match a.planes().iter().position(VertexSet::is_empty) {
            Some(p) => Err(format!("plane {p} is empty")),
            None => Ok(()),
        },
    );

    report.record("color-capacity", {
        match g
            .vertices()
            .find(|&v| a.color_of(v).is_some_and(|c| c >= a.capacity()))
        {
            Some(v) => Err(format!(
                "vertex {v} has color {} >= capacity {}",
                a.color_of(v).unwrap(),
                a.capacity()
            )),
            None => Ok(()),
        }
    });

    report.record("plane-properness", {
        let bad = g
            .edges()
            .find(|&(u, v)| a.slot(u).is_some() && a.slot(u) == a.slot(v));
        match bad {
            Some((u, v)) => Err(format!(
                "plane edge ({u},{v}) has both endpoints colored {}",
                a.color_of(u).unwrap()
            )),
            None => Ok(()),
        }
    });

    report.record("plane-colorable", {
        let mut outcome = Ok(());
        for (p, members) in a.planes().iter().enumerate() {
            let Ok((sub, _)) = g.induced_subgraph(members) else {
                outcome = Err(format!("plane {p} has out-of-range vertices"));
                break;
            };
            match is_k_colorable(&sub, a.capacity(), limits) {
                ColoringOutcome::Colorable(_) => {}
                ColoringOutcome::NotColorable => {
                    outcome = Err(format!("plane {p} is not {}-colorable", a.capacity()));
                    break;
                }
                ColoringOutcome::BudgetExhausted => {
                    outcome = Err(format!("plane {p}: coloring budget exhausted"));
                    break;
                }
            }
        }
        outcome
    });

    report.record("plane-connected", {
        let bad = a.planes().iter().position(|m| !g.is_connected_within(m));
        let unrecorded = d.trace.iter().find(|r| !r.connected_at_close);
        match (bad, unrecorded) {
            (Some(p), _) => Err(format!("plane {p} is not connected")),
            (None, Some(r)) => Err(format!(
                "trace marks plane {} disconnected at close",
                r.plane
            )),
            (None, None) => Ok(()),
        }
    });

    report.record("trace-replay", replay(g, d));

    report.record("palette-bound", {
        let colors = a.global_colors();
        let clash = g
            .edges()
            .find(|&(u, v)| colors[u].is_some() && colors[u] == colors[v]);
        if let Some((u, v)) = clash {
            Err(format!("combined palette repeats on edge ({u},{v})"))
        } else if let Ok(c) = a.combined_coloring() {
            if verify_coloring(g, &c, c.k) {
                Ok(())
            } else {
                Err(format!(
                    "combined coloring is not a proper {}-coloring",
                    c.k
                ))
            }
        } else {
            // partial under discard-paper: proper on the placed vertices
            Ok(())
        }
    });

    report
}

fn replay(g: &Graph, d: &Decomposition) -> std::result::Result<(), String> {
    let a = &d.assignment;
    let mut rebuilt = PlaneAssignment::new(g.n(), a.capacity());
    for record in &d.trace {
        let plane = rebuilt.open_plane();
        if plane != record.plane {
            return Err(format!("trace plane {} out of order", record.plane));
        }
        for s in &record.seed_colors {
            if !record.seed_set.contains(s.v) {
                return Err(format!("seed color for {} outside the seed set", s.v));
            }
            rebuilt
                .place(g, s.v, plane, s.color)
                .map_err(|e| format!("seed vertex {}: {e}", s.v))?;
        }
        for p in &record.placements {
            if record.seed_set.contains(p.v) {
                return Err(format!("placement of seed vertex {}", p.v));
            }
            match is_placeable(g, &rebuilt, plane, p.v, d.placement) {
                Ok(Placement::Placeable { available }) if available.contains(&p.color) => {}
                Ok(Placement::Placeable { .. }) => {
                    return Err(format!("vertex {} took unavailable color {}", p.v, p.color))
                }
                Ok(Placement::Blocked { distinct }) => {
                    return Err(format!(
                        "vertex {} was not placeable on plane {plane} ({distinct} neighbor colors)",
                        p.v
                    ))
                }
                Err(e) => return Err(format!("vertex {}: {e}", p.v)),
            }
            rebuilt
                .place(g, p.v, plane, p.color)
                .map_err(|e| format!("vertex {}: {e}", p.v))?;
        }
    }
    if &rebuilt != a {
        return Err("replayed trace differs from the final assignment".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chp::Slot;
    use crate::graph::{complete, cycle, empty, join};

    fn fill(g: &Graph) -> Decomposition {
        chromatic_fill(g, &FillConfig::default()).unwrap()
    }

    fn colors_on(d: &Decomposition, p: usize) -> Vec<(usize, usize)> {
        d.assignment.planes()[p]
            .iter()
            .map(|&v| (v, d.assignment.color_of(v).unwrap()))
            .collect()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn seeds() {
        let l = OracleLimits::default();
        assert_eq!(
            find_k4_seed(&complete(8), &l).unwrap(),
            VertexSet::from(vec![0, 1, 2, 3])
        );
        assert_eq!(
            find_k4_seed(&cycle(5).unwrap(), &l).unwrap(),
            VertexSet::full(5)
        );
        // K4 with edge (0,1) subdivided by vertex 4
        let sub =
            Graph::from_edge_list(5, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)])
                .unwrap();
        assert_eq!(find_k4_seed(&sub, &l).unwrap(), VertexSet::full(5));
        assert!(find_k4_seed(&empty(0), &l).is_err());
    }

    #[test]
    fn k5_splits_four_plus_one() {
        let d = fill(&complete(5));
        assert_eq!(d.plane_sizes(), vec![4, 1]);
        assert_eq!(colors_on(&d, 0), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(colors_on(&d, 1), vec![(4, 0)]);
    }

    #[test]
    fn k8_is_two_k4_planes() {
        let d = fill(&complete(8));
        assert_eq!(d.plane_sizes(), vec![4, 4]);
    }

    #[test]
    fn c5_uses_one_plane_three_colors() {
        let d = fill(&cycle(5).unwrap());
        assert_eq!(d.plane_count(), 1);
        assert_eq!(
            crate::chp::plane_chromatic_number(&d.assignment, 0).unwrap(),
            3
        );
    }

    #[test]
    fn isolated_vertices_get_their_own_planes() {
        let d = fill(&empty(3));
        assert_eq!(d.plane_sizes(), vec![1, 1, 1]);
        assert!(g_colors_all_zero(&d));
    }

    fn g_colors_all_zero(d: &Decomposition) -> bool {
        (0..d.assignment.n()).all(|v| d.assignment.color_of(v) == Some(0))
    }

    #[test]
    fn join_example_has_two_planes() {
        let g = join(&cycle(5).unwrap(), &complete(5));
        let d = fill(&g);
        assert_eq!(d.trace[0].seed_set, VertexSet::from(vec![0, 1, 5, 6]));
        assert_eq!(d.plane_count(), 2);
        assert!(validate_decomposition(&g, &d, &OracleLimits::default()).passed());
    }

    #[test]
    fn discard_policy_drops_smaller_components() {
        // K4 on {0..3}; vertex 3 bridges to two pendant triangles
        let g = Graph::from_edge_list(
            10,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
                (3, 7),
                (7, 8),
                (8, 9),
                (9, 7),
                (7, 4),
            ],
        )
        .unwrap();
        let keep = chromatic_fill(&g, &FillConfig::default()).unwrap();
        assert!(keep.unplaced.is_empty());
        let lossy = chromatic_fill(
            &g,
            &FillConfig {
                residual: ResidualPolicy::DiscardSmaller,
                ..FillConfig::default()
            },
        )
        .unwrap();
        let report = validate_decomposition(&g, &lossy, &OracleLimits::default());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn validation_passes_on_fill_output() {
        let g = complete(5);
        let report = validate_decomposition(&g, &fill(&g), &OracleLimits::default());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn validation_catches_improper_plane() {
        let g = complete(5);
        let mut d = fill(&g);
        let mut slots: Vec<Option<Slot>> = (0..5).map(|v| d.assignment.slot(v)).collect();
        slots[1] = Some(Slot { plane: 0, color: 0 });
        d.assignment = PlaneAssignment::from_slots(4, slots).unwrap();
        let report = validate_decomposition(&g, &d, &OracleLimits::default());
        assert!(!report.check("plane-properness").unwrap().passed);
    }

    #[test]
    fn validation_catches_missing_vertex() {
        let g = complete(5);
        let mut d = fill(&g);
        let mut slots: Vec<Option<Slot>> = (0..5).map(|v| d.assignment.slot(v)).collect();
        slots[2] = None;
        d.assignment = PlaneAssignment::from_slots(4, slots).unwrap();
        let report = validate_decomposition(&g, &d, &OracleLimits::default());
        assert!(!report.check("coverage").unwrap().passed);
    }

    #[test]
    fn oracle_limit_and_config_errors() {
        assert!(matches!(
            chromatic_fill(&complete(17), &FillConfig::default()),
            Err(Error::OracleLimit { .. })
        ));
        let bad = FillConfig {
            capacity: 0,
            ..FillConfig::default()
        };
        assert!(matches!(
            chromatic_fill(&complete(3), &bad),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let d = fill(&complete(5));
        let s = serde_json::to_string(&d).unwrap();
        let back: Decomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
