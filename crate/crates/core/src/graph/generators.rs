//! Deterministic constructors for the test corpus.

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

pub fn empty(n: usize) -> Graph {
    Graph::from_sorted_adjacency(vec![Vec::new(); n])
}

pub fn complete(n: usize) -> Graph {
    Graph::from_sorted_adjacency(
        (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect(),
    )
}

pub fn path(n: usize) -> Graph {
    Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

/// The cycle `0 - 1 - .. - (n-1) - 0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidConfig(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i - i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edge_list(10, outer.chain(inner).chain(spokes)).expect("petersen edges are valid")
}

/// Disjoint union; `b`'s ids are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let edges = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + shift, v + shift)));
    Graph::from_edge_list(a.n() + b.n(), edges).expect("union edges are valid")
}

/// Join: disjoint union plus every edge between the two sides. `b`'s ids are
/// shifted by `a.n()`.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let cross = (0..a.n()).flat_map(|u| (0..b.n()).map(move |v| (u, v + shift)));
    let edges = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + shift, v + shift)))
        .chain(cross);
    Graph::from_edge_list(a.n() + b.n(), edges).expect("join edges are valid")
}

/// Mycielskian: originals `v_i = i`, shadows `u_i = n + i` with
/// `u_i ~ v_j` whenever `v_i ~ v_j`, and apex `2n` adjacent to every shadow.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, j) in g.edges() {
        edges.push((n + i, j));
        edges.push((n + j, i));
    }
    edges.extend((0..n).map(|i| (n + i, 2 * n)));
    Graph::from_edge_list(2 * n + 1, edges).expect("mycielski edges are valid")
}

/// `k`-fold Mycielskian of `K2`: 1 gives `C5`, 2 the Grötzsch graph.
pub fn mycielski_iterate(k: usize) -> Graph {
    (0..k).fold(complete(2), |g, _| mycielski(&g))
}

/// G(n, p). Pairs `(u, v)`, `u < v`, are visited in lexicographic order and
/// each is kept iff the next [`SplitMix64::next_f64`] draw is below `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

/// Builds a graph from a `name:params` expression:
///
/// ```text
/// complete:N  cycle:N  path:N  empty:N  petersen  mycielski:K
/// er:N,P,SEED  join:A,B  union:A,B
/// ```
///
/// Operands of `join`/`union` may be wrapped in parentheses and must be when
/// they contain a comma themselves, e.g. `join:(er:6,0.5,1),cycle:5`.
pub fn from_spec(spec: &str) -> Result<Graph> {
    let spec = strip_parens(spec.trim());
    let bad = |msg: String| Error::InvalidConfig(format!("generator {spec:?}: {msg}"));
    let (name, args) = match spec.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (spec, None),
    };
    let count = |args: Option<&str>| -> Result<usize> {
        let a = args.ok_or_else(|| bad("missing size".into()))?;
        a.trim()
            .parse()
            .map_err(|_| bad(format!("{a:?} is not a count")))
    };
    match name {
        "complete" => Ok(complete(count(args)?)),
        "cycle" => cycle(count(args)?),
        "path" => Ok(path(count(args)?)),
        "empty" => Ok(empty(count(args)?)),
        "mycielski" => Ok(mycielski_iterate(count(args)?)),
        "petersen" if args.is_none() => Ok(petersen()),
        "er" => {
            let a = args.ok_or_else(|| bad("expected er:N,P,SEED".into()))?;
            let parts: Vec<&str> = a.split(',').map(str::trim).collect();
            let [n, p, seed] = parts[..] else {
                return Err(bad("expected er:N,P,SEED".into()));
            };
            let n = n.parse().map_err(|_| bad(format!("{n:?} is not a count")))?;
            let p = p.parse().map_err(|_| bad(format!("{p:?} is not a probability")))?;
            let seed = seed.parse().map_err(|_| bad(format!("{seed:?} is not a seed")))?;
            erdos_renyi(n, p, seed)
        }
        "join" | "union" => {
            let a = args.ok_or_else(|| bad("expected two operands".into()))?;
            let (left, right) = split_operands(a).ok_or_else(|| bad("expected two operands".into()))?;
            let (left, right) = (from_spec(left)?, from_spec(right)?);
            Ok(if name == "join" { join(&left, &right) } else { disjoint_union(&left, &right) })
        }
        _ => Err(bad(
            "unknown generator (complete, cycle, path, empty, petersen, mycielski, er, join, union)".into(),
        )),
    }
}

fn strip_parens(s: &str) -> &str {
    match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if split_at_depth_zero(inner, ')').is_none() => inner,
        _ => s,
    }
}

// position of the first `c` outside parentheses; for ')' also flags underflow
fn split_at_depth_zero(s: &str, c: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Some(i);
                }
            }
            _ if ch == c && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn split_operands(s: &str) -> Option<(&str, &str)> {
    let i = split_at_depth_zero(s, ',')?;
    let (left, right) = (&s[..i], &s[i + 1..]);
    (!left.trim().is_empty() && !right.trim().is_empty()).then_some((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn complete_edge_counts() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(complete(0).n(), 0);
        assert_eq!(complete(1).edge_count(), 0);
    }

    #[test]
    fn cycle_needs_three() {
        assert!(cycle(2).is_err());
        assert_eq!(cycle(3).unwrap(), complete(3));
    }

    #[test]
    fn mycielski_of_k2_is_c5() {
        let m = mycielski(&complete(2));
        assert!(is_isomorphic(&m, &cycle(5).unwrap()));
        let grotzsch = mycielski_iterate(2);
        assert_eq!(grotzsch.n(), 11);
        assert_eq!(grotzsch.edge_count(), 20);
    }

    #[test]
    fn join_counts() {
        let g = join(&cycle(5).unwrap(), &complete(5));
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 5 + 10 + 25);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let a = erdos_renyi(12, 0.5, 7).unwrap();
        let b = erdos_renyi(12, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(erdos_renyi(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(6, 1.0, 1).unwrap(), complete(6));
        assert!(erdos_renyi(3, 1.5, 1).is_err());
        assert!(erdos_renyi(3, f64::NAN, 1).is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(from_spec("complete:8").unwrap(), complete(8));
        assert_eq!(from_spec("petersen").unwrap(), petersen());
        let j = join(&cycle(5).unwrap(), &complete(5));
        assert_eq!(from_spec("join:cycle:5,complete:5").unwrap(), j);
        assert_eq!(from_spec("join:(cycle:5),(complete:5)").unwrap(), j);
        let nested = from_spec("join:(er:6,0.5,1),(join:path:2,empty:1)").unwrap();
        assert_eq!(
            nested,
            join(&erdos_renyi(6, 0.5, 1).unwrap(), &join(&path(2), &empty(1)))
        );
        assert_eq!(
            from_spec("union:complete:2,complete:2")
                .unwrap()
                .edge_count(),
            2
        );
        assert_eq!(from_spec("mycielski:2").unwrap().n(), 11);
        for bad in [
            "",
            "complete",
            "complete:x",
            "cycle:2",
            "er:5,0.5",
            "join:complete:3",
            "nope:3",
            "petersen:1",
            "(complete:3",
        ] {
            assert!(from_spec(bad).is_err(), "{bad}");
        }
    }
}
