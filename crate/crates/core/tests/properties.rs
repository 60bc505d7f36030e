use chroma_planes::chp::{classify_edges, is_placeable, Placement};
use chroma_planes::coloring::chromatic_coloring;
use chroma_planes::filling::validate_decomposition;
use chroma_planes::graph::{
    canonical_form, join, parse_dimacs, parse_edge_list, write_dimacs, write_edge_list,
};
use chroma_planes::minor::{contract_edge, contract_plane_to_minor, hadwiger_witness};
use chroma_planes::reference::{naive_chromatic_number, naive_hadwiger_number};
use chroma_planes::{
    chromatic_fill, chromatic_number, hadwiger_number, verify_coloring, verify_minor_witness,
    FillConfig, Graph, OracleLimits, PlacementMode, PlaneAssignment, ResidualPolicy, VertexSet,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = pairs
                    .zip(bits)
                    .filter(|(_, keep)| *keep)
                    .map(|(e, _)| e)
                    .collect();
                Graph::from_edge_list(n, edges).unwrap()
            },
        )
    })
}

fn config() -> impl Strategy<Value = FillConfig> {
    (
        prop_oneof![
            Just(PlacementMode::Capacity),
            Just(PlacementMode::UsedColors)
        ],
        prop_oneof![
            Just(ResidualPolicy::ProcessAll),
            Just(ResidualPolicy::DiscardSmaller)
        ],
        2usize..=4,
    )
        .prop_map(|(placement, residual, capacity)| FillConfig {
            capacity,
            placement,
            residual,
            ..FillConfig::default()
        })
}

fn limits() -> OracleLimits {
    OracleLimits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn io_round_trips(g in graph(12)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    #[test]
    fn join_adds_all_cross_edges(a in graph(6), b in graph(6)) {
        let j = join(&a, &b);
        prop_assert_eq!(j.n(), a.n() + b.n());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
    }

    #[test]
    fn components_partition_vertices(g in graph(12)) {
        let comps = g.connected_components();
        let mut all: Vec<usize> = comps.iter().flat_map(|c| c.iter().copied()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for c in &comps {
            prop_assert!(g.is_connected_within(c));
        }
    }

    #[test]
    fn canonical_form_ignores_relabelling(g in graph(7), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = chroma_planes::rng::SplitMix64::new(seed);
        for i in (1..n).rev() {
            perm.swap(i, rng.range_inclusive(0, i));
        }
        let h = Graph::from_edge_list(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn chromatic_matches_naive(g in graph(7)) {
        prop_assert_eq!(chromatic_number(&g, &limits()).unwrap(), naive_chromatic_number(&g));
        let c = chromatic_coloring(&g, &limits()).unwrap();
        prop_assert!(verify_coloring(&g, &c, c.k));
    }

    #[test]
    fn hadwiger_matches_naive(g in graph(7)) {
        prop_assert_eq!(hadwiger_number(&g, &limits()).unwrap(), naive_hadwiger_number(&g));
    }

    #[test]
    fn witnesses_are_valid(g in graph(10)) {
        let w = hadwiger_witness(&g, &limits()).unwrap();
        match w {
            Some(w) => prop_assert!(verify_minor_witness(&g, &w)),
            None => prop_assert_eq!(g.n(), 0),
        }
    }

    #[test]
    fn contraction_never_raises_hadwiger(g in graph(8), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let (c, _) = contract_edge(&g, u, v).unwrap();
        prop_assert!(hadwiger_number(&c, &limits()).unwrap() <= hadwiger_number(&g, &limits()).unwrap());
    }

    #[test]
    fn chromatic_monotone_under_subgraphs(g in graph(9), drop in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let gone = edges[drop.index(edges.len())];
        let h = Graph::from_edge_list(g.n(), edges.iter().copied().filter(|&e| e != gone)).unwrap();
        let (cg, ch) = (chromatic_number(&g, &limits()).unwrap(), chromatic_number(&h, &limits()).unwrap());
        prop_assert!(ch <= cg && cg <= ch + 1);
    }

    #[test]
    fn placeable_colors_keep_planes_proper(g in graph(10), cfg in config()) {
        // greedily grow one plane from vertex 0 using only is_placeable
        prop_assume!(g.n() > 0);
        let mut a = PlaneAssignment::new(g.n(), cfg.capacity);
        let p = a.open_plane();
        a.place(&g, 0, p, 0).unwrap();
        let mut progress = true;
        while progress {
            progress = false;
            for v in 0..g.n() {
                if a.slot(v).is_some() || !g.neighbors(v).iter().any(|&u| a.plane_of(u) == Some(p)) {
                    continue;
                }
                if let Placement::Placeable { available } = is_placeable(&g, &a, p, v, cfg.placement).unwrap() {
                    prop_assert!(!available.is_empty());
                    a.place(&g, v, p, available[0]).unwrap();
                    progress = true;
                }
            }
        }
        prop_assert!(a.validate(&g).is_ok());
    }

    #[test]
    fn edges_classify_exactly_once(g in graph(12), cfg in config()) {
        let d = chromatic_fill(&g, &cfg).unwrap();
        prop_assume!(d.unplaced.is_empty());
        let c = classify_edges(&g, &d.assignment).unwrap();
        let total = c.plane_edges.iter().map(Vec::len).sum::<usize>() + c.non_plane_edges.len();
        prop_assert_eq!(total, g.edge_count());
        for &(u, v) in &c.non_plane_edges {
            prop_assert_ne!(d.assignment.plane_of(u), d.assignment.plane_of(v));
        }
    }

    #[test]
    fn filling_is_deterministic_and_valid(g in graph(12), cfg in config()) {
        let d = chromatic_fill(&g, &cfg).unwrap();
        prop_assert_eq!(&chromatic_fill(&g, &cfg).unwrap(), &d);
        let report = validate_decomposition(&g, &d, &cfg.limits);
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        if cfg.residual == ResidualPolicy::ProcessAll {
            prop_assert!(d.unplaced.is_empty());
            prop_assert!(d.assignment.is_total());
        }
    }

    #[test]
    fn planes_bound_the_chromatic_number(g in graph(12), cfg in config()) {
        let d = chromatic_fill(&g, &FillConfig { residual: ResidualPolicy::ProcessAll, ..cfg }).unwrap();
        let combined = d.assignment.combined_coloring().unwrap();
        prop_assert!(verify_coloring(&g, &combined, cfg.capacity * d.plane_count().max(1)));
        prop_assert!(chromatic_number(&g, &limits()).unwrap() <= cfg.capacity * d.plane_count().max(1));
    }

    #[test]
    fn plane_contraction_keeps_outside_adjacency(g in graph(10)) {
        let d = chromatic_fill(&g, &FillConfig::default()).unwrap();
        for p in 0..d.plane_count() {
            let plane = d.assignment.plane_vertices(p).unwrap().clone();
            let c = contract_plane_to_minor(&g, &d.assignment, p, &limits()).unwrap();
            let image: VertexSet = plane.iter().map(|&v| c.map.get(v).unwrap()).collect();
            for x in (0..g.n()).filter(|x| !plane.contains(*x)) {
                let before = g.neighbors(x).iter().any(|&u| plane.contains(u));
                let cx = c.map.get(x).unwrap();
                let after = c.graph.neighbors(cx).iter().any(|&u| image.contains(u));
                prop_assert_eq!(before, after);
            }
        }
    }
}
