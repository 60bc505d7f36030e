//! Worked examples across modules.

use chroma_planes::chp::{
    classify_edges, is_placeable, plane_chromatic_number, project_pallet, Placement, Slot,
};
use chroma_planes::filling::{find_seed, validate_decomposition};
use chroma_planes::graph::{complete, cycle, empty, join, mycielski_iterate, path, petersen};
use chroma_planes::harness::{
    check_c31, check_completeness, check_fig1, check_l1, check_t8, fig1_layout, fuzz, ClaimStatus,
    FuzzConfig, InstanceFacts,
};
use chroma_planes::minor::has_clique_minor;
use chroma_planes::{
    chromatic_fill, chromatic_number, hadwiger_number, is_k_colorable, ColoringOutcome,
    Decomposition, FillConfig, Graph, OracleLimits, PlacementMode, PlaneAssignment, VertexSet,
};

fn limits() -> OracleLimits {
    OracleLimits::default()
}

fn fill(g: &Graph) -> Decomposition {
    chromatic_fill(g, &FillConfig::default()).unwrap()
}

fn c5k5() -> Graph {
    join(&cycle(5).unwrap(), &complete(5))
}

fn k5_minus_edge() -> Graph {
    Graph::from_edge_list(5, complete(5).edges().filter(|&e| e != (0, 1))).unwrap()
}

#[test]
fn eight_chromatic_exemplar() {
    let g = c5k5();
    assert_eq!(chromatic_number(&g, &limits()).unwrap(), 8);
    assert_eq!(hadwiger_number(&g, &limits()).unwrap(), 8);
    assert!(matches!(
        is_k_colorable(&g, 7, &limits()),
        ColoringOutcome::NotColorable
    ));
    assert!(matches!(
        is_k_colorable(&g, 8, &limits()),
        ColoringOutcome::Colorable(_)
    ));
}

#[test]
fn small_oracle_values() {
    assert!(has_clique_minor(&k5_minus_edge(), 5, &limits())
        .unwrap()
        .is_none());
    assert_eq!(hadwiger_number(&cycle(5).unwrap(), &limits()).unwrap(), 3);
    for n in 1..=8 {
        assert_eq!(hadwiger_number(&complete(n), &limits()).unwrap(), n);
    }
    assert_eq!(chromatic_number(&petersen(), &limits()).unwrap(), 3);
    assert_eq!(
        chromatic_number(&mycielski_iterate(2), &limits()).unwrap(),
        4
    );
}

#[test]
fn petersen_minors() {
    // K5 yes, K6 no: a K6 model needs 15 edges between branch sets plus 4
    // inside them, Petersen has 15 in total
    assert!(has_clique_minor(&petersen(), 5, &limits())
        .unwrap()
        .is_some());
    assert!(has_clique_minor(&petersen(), 6, &limits())
        .unwrap()
        .is_none());
    assert!(has_clique_minor(&petersen(), 7, &limits())
        .unwrap()
        .is_none());
}

#[test]
fn fig1_layout_classification() {
    let (g, a) = fig1_layout();
    let c = classify_edges(&g, &a).unwrap();
    assert_eq!(c.plane_edges[0].len(), 6);
    assert!(c.plane_edges[1].is_empty());
    assert_eq!(c.non_plane_edges.len(), 4);
    assert_eq!(plane_chromatic_number(&a, 0).unwrap(), 4);
    assert_eq!(plane_chromatic_number(&a, 1).unwrap(), 1);
    assert_eq!(project_pallet(&g, &a, &[0, 1]).unwrap(), g);
    assert_eq!(project_pallet(&g, &a, &[0]).unwrap(), complete(4));
    assert!(project_pallet(&g, &a, &[]).is_err());
}

#[test]
fn placeability_thresholds() {
    // star with centre 4 and leaves 0..3; vertex 5 is isolated
    let g = Graph::from_edge_list(6, (0..4).map(|v| (v, 4))).unwrap();
    let on_plane = |leaves: usize| {
        let slots = (0..6)
            .map(|v| (v < leaves).then_some(Slot { plane: 0, color: v }))
            .collect();
        PlaneAssignment::from_slots(4, slots).unwrap()
    };
    let four = on_plane(4);
    assert_eq!(
        is_placeable(&g, &four, 0, 4, PlacementMode::Capacity).unwrap(),
        Placement::Blocked { distinct: 4 }
    );
    assert_eq!(
        is_placeable(&g, &on_plane(3), 0, 4, PlacementMode::Capacity).unwrap(),
        Placement::Placeable { available: vec![3] }
    );
    assert_eq!(
        is_placeable(&g, &four, 0, 5, PlacementMode::Capacity).unwrap(),
        Placement::Placeable {
            available: vec![0, 1, 2, 3]
        }
    );
}

#[test]
fn seeds() {
    let set = |v: &[usize]| VertexSet::from(v.to_vec());
    assert_eq!(
        find_seed(&complete(8), 4, &limits()).unwrap(),
        set(&[0, 1, 2, 3])
    );
    assert_eq!(
        find_seed(&cycle(5).unwrap(), 4, &limits()).unwrap(),
        set(&[0, 1, 2, 3, 4])
    );
    // K4 with edge (0,1) subdivided by vertex 4
    let sub =
        Graph::from_edge_list(5, [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(
        find_seed(&sub, 4, &limits()).unwrap(),
        set(&[0, 1, 2, 3, 4])
    );
}

#[test]
fn filling_examples() {
    let d = fill(&complete(5));
    assert_eq!(d.plane_sizes(), [4, 1]);
    assert_eq!(fill(&complete(8)).plane_sizes(), [4, 4]);
    let c5 = fill(&cycle(5).unwrap());
    assert_eq!(c5.plane_count(), 1);
    assert_eq!(c5.assignment.combined_coloring().unwrap().colors_used(), 3);
    // isolated vertices never touch an open plane, so each gets its own
    let e = fill(&empty(3));
    assert_eq!(e.plane_sizes(), [1, 1, 1]);
    assert!((0..3).all(|v| e.assignment.color_of(v) == Some(0)));
}

#[test]
fn validation_catches_constructed_faults() {
    let g = complete(5);
    let d = fill(&g);
    assert!(validate_decomposition(&g, &d, &limits()).passed());

    let mut slots: Vec<Option<Slot>> = (0..5).map(|v| d.assignment.slot(v)).collect();
    slots[1] = Some(Slot { plane: 0, color: 0 });
    let clash = Decomposition {
        assignment: PlaneAssignment::from_slots(4, slots.clone()).unwrap(),
        ..d.clone()
    };
    let r = validate_decomposition(&g, &clash, &limits());
    assert!(!r.check("plane-properness").unwrap().passed);

    slots = (0..5).map(|v| d.assignment.slot(v)).collect();
    slots[4] = None;
    let gap = Decomposition {
        assignment: PlaneAssignment::from_slots(4, slots).unwrap(),
        ..d
    };
    let r = validate_decomposition(&g, &gap, &limits());
    assert!(!r.check("coverage").unwrap().passed);
}

#[test]
fn claim_examples() {
    assert_eq!(check_fig1(&limits()).status, ClaimStatus::Holds);
    for g in [complete(5), complete(4), complete(8)] {
        let d = fill(&g);
        let facts = InstanceFacts::compute(&g, &limits());
        assert_eq!(
            check_l1(&g, &d, &facts, &limits()).status,
            ClaimStatus::Holds
        );
        assert_eq!(
            check_completeness(&g, &d, &limits()).status,
            ClaimStatus::Holds
        );
        assert_eq!(check_c31(&g, &d, &limits()).status, ClaimStatus::Holds);
    }
    assert_eq!(
        check_c31(&path(5), &fill(&path(5)), &limits()).status,
        ClaimStatus::Holds
    );

    let k8 = complete(8);
    let facts = InstanceFacts::compute(&k8, &limits());
    let t8 = check_t8(&k8, &fill(&k8), &facts, &limits());
    assert!(t8
        .iter()
        .filter(|v| v.sub.as_deref() != Some("d"))
        .all(|v| v.status == ClaimStatus::Holds));

    let k7 = complete(7);
    let facts = InstanceFacts::compute(&k7, &limits());
    let t8 = check_t8(&k7, &fill(&k7), &facts, &limits());
    assert_eq!(t8.last().unwrap().status, ClaimStatus::Inconclusive);
    assert!(t8.last().unwrap().detail.contains("χ = 7"));
}

#[test]
fn structured_mix_reaches_t8() {
    let r = fuzz(&FuzzConfig {
        count: 12,
        ..FuzzConfig::default()
    })
    .unwrap();
    assert!(
        r.total("T8(a)").holds >= 2,
        "K8 and join(C5,K5) meet the precondition"
    );
    assert!(r.errors.is_empty());
}
