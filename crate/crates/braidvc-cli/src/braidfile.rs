//! Braid graph file format: two lines, each a space-separated permutation
//! of 0..n-1 (the two Hamiltonian path orders).

use braidvc_core::slabs::BraidGraph;
use braidvc_core::VertexId;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidFileError {
    pub message: String,
}

impl fmt::Display for BraidFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn parse(input: &str) -> Result<BraidGraph, BraidFileError> {
    let mut lines = input
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let parse_perm = |line: Option<&str>, which: &str| -> Result<Vec<VertexId>, BraidFileError> {
        let line = line.ok_or_else(|| BraidFileError {
            message: format!("missing {} line (expected two permutations)", which),
        })?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<VertexId>().map_err(|_| BraidFileError {
                    message: format!("{}: `{}` is not a vertex id", which, t),
                })
            })
            .collect()
    };
    let sigma = parse_perm(lines.next(), "sigma")?;
    let tau = parse_perm(lines.next(), "tau")?;
    BraidGraph::new(sigma, tau).map_err(|e| BraidFileError {
        message: e.to_string(),
    })
}

pub fn write(b: &BraidGraph) -> String {
    let fmt_perm = |p: &[VertexId]| {
        p.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{}\n{}\n", fmt_perm(b.sigma()), fmt_perm(b.tau()))
}
