//! Text formats.
//!
//! Edge list: optional `#` comment lines, then a header line `n m`, then `m`
//! lines `u v` with 0-indexed endpoints separated by whitespace. Blank lines
//! are skipped. Writing always emits the edges in lexicographic order, so
//! `write(parse(write(g))) == write(g)` byte for byte.
//!
//! Matching file: one `u v` line per matched edge, `#` comments allowed.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), ParseError> {
    let mut it = s.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| ParseError::Syntax {
            line,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| ParseError::Syntax {
            line,
            msg: format!("`{tok}` is not a nonnegative integer"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::Syntax {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(line, header)?;
    let edges = lines
        .map(|(line, l)| parse_pair(line, l))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges)?)
}

/// Serializes with optional leading comment lines (each gets a `# ` prefix).
pub fn write_edge_list(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v()).unwrap();
    }
    out
}

/// Parses a matching file into raw edges. Disjointness and membership in a
/// graph are left to the verifiers.
pub fn parse_matching(text: &str) -> Result<Vec<Edge>, ParseError> {
    content_lines(text)
        .map(|(line, l)| {
            let (a, b) = parse_pair(line, l)?;
            Ok(Edge::new(a, b)?)
        })
        .collect()
}

pub fn write_matching(edges: &[Edge]) -> String {
    let mut out = String::new();
    for e in edges {
        writeln!(out, "{} {}", e.u(), e.v()).unwrap();
    }
    out
}
