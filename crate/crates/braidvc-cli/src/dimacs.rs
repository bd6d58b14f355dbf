//! DIMACS edge format: a `p edge <n> <m>` header, one `e <u> <v>` line per
//! edge (1-indexed), comment lines starting with `c`.

use braidvc_core::graph::{Graph, VertexId};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse(input: &str) -> Result<Graph, ParseError> {
    let mut n: Option<u32> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(err(lineno, "duplicate problem line"));
                }
                if parts.next() != Some("edge") {
                    return Err(err(lineno, "expected `p edge <n> <m>`"));
                }
                let nv: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex count"))?;
                declared_m = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad edge count"))?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| err(lineno, "edge before problem line"))?;
                let u: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad endpoint"))?;
                let v: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad endpoint"))?;
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(err(
                        lineno,
                        format!("vertex out of range at line {}", lineno),
                    ));
                }
                if u == v {
                    return Err(err(lineno, "self-loop"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(err(lineno, format!("unknown record `{}`", other))),
            None => unreachable!(),
        }
    }
    let n = n.ok_or_else(|| err(input.lines().count() + 1, "missing problem line"))?;
    if edges.len() != declared_m {
        return Err(err(
            input.lines().count(),
            format!(
                "header declares {} edges, found {}",
                declared_m,
                edges.len()
            ),
        ));
    }
    Graph::build(n, &edges).map_err(|e| err(0, e.to_string()))
}

pub fn write(g: &Graph) -> String {
    let edges = g.edge_list();
    let mut out = format!("p edge {} {}\n", g.slots(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
