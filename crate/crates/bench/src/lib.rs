//! Benchmark fixtures.

use chroma_planes::graph::{complete, cycle, erdos_renyi, join, mycielski_iterate, petersen};
use chroma_planes::Graph;

/// Named graphs shared by the benchmarks.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("petersen", petersen()),
        ("grotzsch", mycielski_iterate(2)),
        ("c5+k5", join(&cycle(5).expect("n >= 3"), &complete(5))),
        ("k8", complete(8)),
        ("er12-0.5", erdos_renyi(12, 0.5, 42).expect("valid p")),
        ("er14-0.3", erdos_renyi(14, 0.3, 7).expect("valid p")),
    ]
}
