//! DIMACS `.col` and plain edge-list formats.
//!
//! DIMACS (1-based): `c ...` comment lines, exactly one `p edge <n> <m>` (or
//! `p col`) line, then `e <u> <v>` lines. The writer emits `p edge n m`
//! followed by one `e u v` line per edge, `u < v`, in lexicographic order,
//! each line terminated by `\n`.
//!
//! Edge list (0-based): first line `<n>`, then one `u v` line per edge. Blank
//! lines and lines starting with `#` are skipped when reading. The writer
//! emits edges in the same order as the DIMACS writer.

use std::fmt::Write;

use log::warn;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn int(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} is not a non-negative integer: {token:?}"),
        )
    })
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate p line"));
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            line,
                            format!("expected `p edge`, found format {other:?}"),
                        ))
                    }
                }
                let n = int(tokens.next(), line, "vertex count")?;
                let m = int(tokens.next(), line, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "edge line before p line"))?;
                let u = int(tokens.next(), line, "edge endpoint")?;
                let v = int(tokens.next(), line, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(line, format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop on vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(parse_err(line, format!("unrecognized line type {other:?}")))
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing p line"))?;
    let (g, dups) = Graph::from_edge_list_counting(n, edges)?;
    if dups > 0 {
        warn!("DIMACS input: merged {dups} duplicate edge(s)");
    }
    if g.edge_count() != m {
        warn!(
            "DIMACS input: p line declares {m} edges, found {} distinct",
            g.edge_count()
        );
    }
    Ok(g)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match n {
            None => {
                n = Some(int(tokens.next(), line, "vertex count")?);
                if tokens.next().is_some() {
                    return Err(parse_err(
                        line,
                        "first line must hold only the vertex count",
                    ));
                }
            }
            Some(count) => {
                let u = int(tokens.next(), line, "edge endpoint")?;
                let v = int(tokens.next(), line, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after edge"));
                }
                for w in [u, v] {
                    if w >= count {
                        return Err(parse_err(line, format!("vertex {w} outside 0..{count}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop on vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing vertex count line"))?;
    let (g, dups) = Graph::from_edge_list_counting(n, edges)?;
    if dups > 0 {
        warn!("edge-list input: merged {dups} duplicate edge(s)");
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads either format: DIMACS if any line starts with `p` or `c`, the edge
/// list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let dimacs = text.lines().any(|l| {
        let t = l.trim_start();
        t.starts_with("p ") || t.starts_with("c ") || t == "c" || t.starts_with("e ")
    });
    if dimacs {
        parse_dimacs(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty, petersen};

    #[test]
    fn dimacs_triangle() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g, complete(3));
    }

    #[test]
    fn dimacs_single_vertex() {
        assert_eq!(parse_dimacs("p edge 1 0").unwrap(), empty(1));
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        assert!(matches!(
            parse_dimacs("e 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("c nothing"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 4"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 2 2"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn dimacs_duplicates_only_warn() {
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn writer_is_bit_exact() {
        assert_eq!(
            write_dimacs(&complete(3)),
            "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"
        );
        assert_eq!(write_edge_list(&complete(3)), "3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn edge_list_reader() {
        let g = parse_edge_list("# K3\n3\n0 1\n\n1 2\n0 2\n").unwrap();
        assert_eq!(g, complete(3));
        assert!(parse_edge_list("3\n0 3\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn sniffing() {
        let g = petersen();
        assert_eq!(parse_graph(&write_dimacs(&g)).unwrap(), g);
        assert_eq!(parse_graph(&write_edge_list(&g)).unwrap(), g);
    }
}
