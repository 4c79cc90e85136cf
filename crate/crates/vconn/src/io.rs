//! Text graph format.
//!
//! ```text
//! c comment
//! p <n> <m> <u|d>
//! e <u> <v>
//! w <v> <weight>
//! ```
//!
//! A DIMACS header `p edge <n> <m>` switches to 1-based undirected edges.
//! Instance files may end with a cut block: a `cut` line followed by
//! `L: ...`, `S: ...` and `R: ...` lines.

use crate::cut::VertexCut;
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedDigraph};
use std::collections::HashSet;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Undirected(Graph),
    /// Directed input, or undirected input carrying weights (stored symmetrically).
    Weighted { graph: WeightedDigraph, directed: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: ParsedGraph,
    pub cut: Option<VertexCut>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<u64> {
    let t = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    t.parse::<u64>().map_err(|_| perr(line, format!("bad {what} '{t}'")))
}

fn ids(rest: &str, line: usize) -> Result<Vec<usize>> {
    rest.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| perr(line, format!("bad vertex id '{t}'"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    Ok(parse_instance(text)?.graph)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize, bool, bool, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut weights: Option<Vec<u64>> = None;
    let mut cut_parts: [Option<Vec<usize>>; 3] = [None, None, None];
    let mut in_cut = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if in_cut {
            let slot = match s.split_once(':') {
                Some(("L", _)) => 0,
                Some(("S", _)) => 1,
                Some(("R", _)) => 2,
                _ => return Err(perr(line, "expected 'L:', 'S:' or 'R:' in cut block")),
            };
            let (_, rest) = s.split_once(':').unwrap();
            cut_parts[slot] = Some(ids(rest, line)?);
            continue;
        }
        let mut toks = s.split_whitespace();
        let tag = toks.next().unwrap();
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                let first = toks.next().ok_or_else(|| perr(line, "missing vertex count"))?;
                if first == "edge" || first == "col" {
                    let n = num(toks.next(), line, "vertex count")? as usize;
                    let m = num(toks.next(), line, "edge count")? as usize;
                    header = Some((n, m, false, true, line));
                } else {
                    let n = num(Some(first), line, "vertex count")? as usize;
                    let m = num(toks.next(), line, "edge count")? as usize;
                    let directed = match toks.next() {
                        Some("u") => false,
                        Some("d") => true,
                        other => return Err(perr(line, format!("expected u or d, got {other:?}"))),
                    };
                    header = Some((n, m, directed, false, line));
                }
            }
            "e" | "a" => {
                let (n, _, directed, dimacs, _) = header.ok_or_else(|| perr(line, "edge before header"))?;
                let mut u = num(toks.next(), line, "endpoint")? as usize;
                let mut v = num(toks.next(), line, "endpoint")? as usize;
                if dimacs {
                    if u == 0 || v == 0 {
                        return Err(perr(line, "DIMACS ids are 1-based"));
                    }
                    u -= 1;
                    v -= 1;
                }
                if u >= n || v >= n {
                    return Err(perr(line, format!("vertex id out of range for n={n}")));
                }
                if u == v {
                    return Err(perr(line, format!("self-loop at {u}")));
                }
                let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
                if !seen.insert(key) {
                    return Err(Error::Invariant(format!("duplicate edge ({u},{v}) on line {line}")));
                }
                edges.push((u, v));
            }
            "w" => {
                let (n, ..) = header.ok_or_else(|| perr(line, "weight before header"))?;
                let v = num(toks.next(), line, "vertex")? as usize;
                let w = num(toks.next(), line, "weight")?;
                if v >= n {
                    return Err(perr(line, format!("vertex id out of range for n={n}")));
                }
                if w == 0 {
                    return Err(perr(line, "weights must be positive"));
                }
                weights.get_or_insert_with(|| vec![1; n])[v] = w;
            }
            "cut" => in_cut = true,
            other => return Err(perr(line, format!("unknown record '{other}'"))),
        }
        if toks.next().is_some() && tag != "c" && tag != "cut" {
            return Err(perr(line, "trailing tokens"));
        }
    }

    let (n, m, directed, _, hline) = header.ok_or_else(|| perr(0, "missing header"))?;
    if edges.len() != m {
        return Err(perr(hline, format!("header declares {m} edges, found {}", edges.len())));
    }
    let graph = if directed || weights.is_some() {
        let w = weights.unwrap_or_else(|| vec![1; n]);
        let arcs: Vec<(usize, usize)> = if directed {
            edges
        } else {
            edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect()
        };
        ParsedGraph::Weighted { graph: WeightedDigraph::from_arcs(n, &arcs, w)?, directed }
    } else {
        ParsedGraph::Undirected(Graph::from_edges(n, &edges)?)
    };
    let cut = match cut_parts {
        [Some(l), Some(s), Some(r)] => {
            let value = match &graph {
                ParsedGraph::Undirected(_) => s.len() as u64,
                ParsedGraph::Weighted { graph, .. } => s.iter().map(|&v| graph.weight(v)).sum(),
            };
            Some(VertexCut { left: l, sep: s, right: r, value })
        }
        [None, None, None] if !in_cut => None,
        _ => return Err(perr(0, "incomplete cut block")),
    };
    Ok(Instance { graph, cut })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {} u\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn write_digraph(d: &WeightedDigraph) -> String {
    let arcs: Vec<_> = d.arcs().collect();
    let mut out = format!("p {} {} d\n", d.n(), arcs.len());
    for (u, v) in arcs {
        let _ = writeln!(out, "e {u} {v}");
    }
    for v in 0..d.n() {
        if d.weight(v) != 1 {
            let _ = writeln!(out, "w {v} {}", d.weight(v));
        }
    }
    out
}

pub fn write_cut_block(cut: &VertexCut) -> String {
    let join = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    format!("cut\nL: {}\nS: {}\nR: {}\n", join(&cut.left), join(&cut.sep), join(&cut.right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_p3() {
        let g = parse_graph("p 3 2 u\ne 0 1\ne 1 2\n").unwrap();
        let ParsedGraph::Undirected(g) = g else { panic!() };
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn weight_line() {
        let g = parse_graph("p 2 1 d\ne 0 1\nw 0 5\n").unwrap();
        let ParsedGraph::Weighted { graph, directed } = g else { panic!() };
        assert!(directed);
        assert_eq!(graph.weight(0), 5);
        assert_eq!(graph.weight(1), 1);
    }

    #[test]
    fn self_loop_is_parse_error() {
        let e = parse_graph("p 2 1 u\ne 0 0\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "self-loop at 0".into() });
    }

    #[test]
    fn duplicate_edge_is_invariant_error() {
        assert!(matches!(parse_graph("p 2 2 u\ne 0 1\ne 1 0\n"), Err(Error::Invariant(_))));
    }

    #[test]
    fn dimacs_header() {
        let g = parse_graph("c x\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        let ParsedGraph::Undirected(g) = g else { panic!() };
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn instance_roundtrip() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cut = VertexCut { left: vec![0], sep: vec![1], right: vec![2], value: 1 };
        let text = write_graph(&g) + &write_cut_block(&cut);
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.graph, ParsedGraph::Undirected(g));
        assert_eq!(inst.cut, Some(cut));
    }
}
