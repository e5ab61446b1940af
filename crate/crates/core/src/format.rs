//! Line-oriented instance files.
//!
//! ```text
//! c a triangle with one non-terminal
//! p ntst 3 3
//! e 1 2 1/2
//! e 2 3 1
//! e 1 3 2.5
//! nt 2
//! ```
//!
//! Vertices are 1-based in files and 0-based in memory. Weights are optional
//! but must then be absent on every edge line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Instance, MultiGraph, Vertex, Weight};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_vertex(token: Option<&str>, n: usize, line: usize) -> Result<Vertex> {
    let token = token.ok_or_else(|| parse_error(line, "missing vertex id"))?;
    let id: usize = token.parse().map_err(|_| parse_error(line, format!("bad vertex id {token:?}")))?;
    if id == 0 || id > n {
        return Err(parse_error(line, format!("vertex {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut weights: Vec<Weight> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut nt = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_error(line, "second header line"));
                }
                if tokens.next() != Some("ntst") {
                    return Err(parse_error(line, "header must read `p ntst <n> <m>`"));
                }
                let mut number = |what: &str| -> Result<usize> {
                    let t = tokens.next().ok_or_else(|| parse_error(line, format!("header is missing {what}")))?;
                    t.parse().map_err(|_| parse_error(line, format!("bad {what} {t:?}")))
                };
                header = Some((number("vertex count")?, number("edge count")?));
            }
            "e" | "nt" => {
                let (n, m) = header.ok_or_else(|| parse_error(line, format!("`{kind}` line before the header")))?;
                if kind == "nt" {
                    nt.push(parse_vertex(tokens.next(), n, line)?);
                } else {
                    if edges.len() == m {
                        return Err(parse_error(line, format!("more than the declared {m} edges")));
                    }
                    let u = parse_vertex(tokens.next(), n, line)?;
                    let v = parse_vertex(tokens.next(), n, line)?;
                    if u == v {
                        return Err(parse_error(line, "self-loop"));
                    }
                    let w = tokens.next();
                    if *weighted.get_or_insert(w.is_some()) != w.is_some() {
                        return Err(parse_error(line, "either every edge line has a weight or none does"));
                    }
                    if let Some(w) = w {
                        weights.push(w.parse().map_err(|e: Error| parse_error(line, e.to_string()))?);
                    }
                    edges.push((u, v));
                }
                if let Some(extra) = tokens.next() {
                    return Err(parse_error(line, format!("unexpected token {extra:?}")));
                }
            }
            other => return Err(parse_error(line, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_error(0, "missing `p ntst <n> <m>` header"))?;
    if edges.len() != m {
        return Err(parse_error(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let graph = MultiGraph::new(n, edges)?;
    Instance::new(graph, nt, weighted.unwrap_or(false).then_some(weights))
}

pub fn render_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = format!("p ntst {} {}\n", g.n(), g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match inst.weights() {
            Some(w) => writeln!(out, "e {} {} {}", u + 1, v + 1, w[e]),
            None => writeln!(out, "e {} {}", u + 1, v + 1),
        }
        .expect("string write");
    }
    for v in inst.nt_vertices() {
        writeln!(out, "nt {}", v + 1).expect("string write");
    }
    out
}

/// One line `e u v w` per tree edge, weights always written.
pub fn render_tree(inst: &Instance, tree: &EdgeSet) -> String {
    let mut out = String::new();
    for &e in tree {
        let (u, v) = inst.graph().edge(e);
        writeln!(out, "e {} {} {}", u + 1, v + 1, inst.weight(e)).expect("string write");
    }
    out
}

/// Tree edge as written in a file: 0-based endpoints and an optional weight.
pub type TreeEdge = (Vertex, Vertex, Option<Weight>);

/// Reads `e u v [w]` lines (comments allowed) or a result document whose
/// `tree` field lists `[u, v, "w"]` triples.
pub fn parse_tree(text: &str, n: usize) -> Result<Vec<TreeEdge>> {
    if text.trim_start().starts_with('{') {
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
        let entries = doc.get("tree").and_then(|t| t.as_array()).ok_or_else(|| parse_error(0, "document has no `tree` array"))?;
        return entries
            .iter()
            .map(|entry| {
                let parts = entry.as_array().filter(|p| p.len() == 2 || p.len() == 3).ok_or_else(|| parse_error(0, "tree entries must be [u, v, w]"))?;
                let vertex = |x: &serde_json::Value| {
                    let id = x.as_u64().ok_or_else(|| parse_error(0, "vertex ids must be integers"))? as usize;
                    parse_vertex(Some(&id.to_string()), n, 0)
                };
                let weight = match parts.get(2) {
                    None => None,
                    Some(serde_json::Value::String(s)) => Some(s.parse().map_err(|e: Error| parse_error(0, e.to_string()))?),
                    Some(other) => Some(other.to_string().parse().map_err(|e: Error| parse_error(0, e.to_string()))?),
                };
                Ok((vertex(&parts[0])?, vertex(&parts[1])?, weight))
            })
            .collect();
    }
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("e") => {
                let u = parse_vertex(tokens.next(), n, line)?;
                let v = parse_vertex(tokens.next(), n, line)?;
                let w = tokens.next().map(|t| t.parse().map_err(|e: Error| parse_error(line, e.to_string()))).transpose()?;
                if let Some(extra) = tokens.next() {
                    return Err(parse_error(line, format!("unexpected token {extra:?}")));
                }
                edges.push((u, v, w));
            }
            Some(other) => return Err(parse_error(line, format!("unknown line type {other:?}"))),
        }
    }
    Ok(edges)
}

/// Maps listed tree edges to distinct edge ids of `inst`, preferring a
/// parallel copy whose weight matches. `Err(i)` names the first listed edge
/// with no unused match.
pub fn resolve_tree(inst: &Instance, edges: &[TreeEdge]) -> std::result::Result<EdgeSet, usize> {
    let g = inst.graph();
    let mut used = vec![false; g.m()];
    let mut tree = EdgeSet::new();
    for (i, (u, v, w)) in edges.iter().enumerate() {
        let candidates: Vec<EdgeId> = g.neighbors(*u).iter().filter(|&&(x, e)| x == *v && !used[e]).map(|&(_, e)| e).collect();
        let pick = candidates
            .iter()
            .copied()
            .find(|&e| w.as_ref().is_none_or(|w| *w == inst.weight(e)))
            .ok_or(i)?;
        used[pick] = true;
        tree.insert(pick);
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_instance, WeightMode};

    #[test]
    fn parses_the_documented_example() {
        let text = "c a triangle with one non-terminal\np ntst 3 3\ne 1 2 1/2\ne 2 3 1\ne 1 3 2.5\nnt 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.nt_vertices(), vec![1]);
        assert_eq!(inst.weight(2), Weight::ratio(5, 2).unwrap());
        assert_eq!(parse_instance(&render_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn round_trips_generated_instances() {
        for (seed, mode) in [(1, WeightMode::Unit), (2, WeightMode::Integer { max: 9 }), (3, WeightMode::Rational { max_num: 7, max_den: 4 })] {
            let inst = random_instance(seed, 8, 0.5, 3, mode).unwrap();
            assert_eq!(parse_instance(&render_instance(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("e 1 2\n", 1),
            ("p ntst 2 1\ne 1 3\n", 2),
            ("p ntst 3 2\ne 1 2 4\ne 2 3\n", 3),
            ("p ntst 2 1\np ntst 2 1\n", 2),
            ("p ntst 2 1\nx 1\n", 2),
            ("p ntst 2 1\ne 1 2 -3\n", 2),
            ("p ntst 2 1\ne 1 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_instance("p ntst 3 2\ne 1 2\n").is_err());
        assert!(parse_instance("").is_err());
    }

    #[test]
    fn tree_files_in_both_forms() {
        let inst = parse_instance("p ntst 3 3\ne 1 2 1\ne 1 2 5\ne 2 3 1\n").unwrap();
        let listed = parse_tree("c tree\ne 2 1 5\ne 2 3\n", 3).unwrap();
        assert_eq!(resolve_tree(&inst, &listed), Ok(EdgeSet::from([1, 2])));
        let doc = r#"{"status":"feasible","tree":[[1,2,"1"],[2,3,"1"]]}"#;
        assert_eq!(resolve_tree(&inst, &parse_tree(doc, 3).unwrap()), Ok(EdgeSet::from([0, 2])));
        assert_eq!(resolve_tree(&inst, &parse_tree("e 1 3\n", 3).unwrap()), Err(0));
        assert!(parse_tree("e 1\n", 3).is_err());
    }
}
