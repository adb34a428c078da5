//! Plain-text edge-list format.
//!
//! One record per line, whitespace separated:
//!
//! ```text
//! # comment
//! source target [weight]
//! vertex
//! ```
//!
//! A single-token line declares a vertex without adding an edge, which is how
//! isolated vertices (and vertex order) survive a round trip. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::io::{self, Write};

use super::{DirectedGraph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: DirectedGraph,
    /// Number of repeated `(source, target)` lines that were collapsed.
    pub duplicates: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn check_token(line: usize, token: &str) -> Result<()> {
    if token.contains('#') || token.chars().any(char::is_control) {
        return Err(parse_error(line, format!("malformed vertex token `{token}`")));
    }
    Ok(())
}

fn parse_weight(line: usize, token: &str) -> Result<f64> {
    let w: f64 = token
        .parse()
        .map_err(|_| parse_error(line, format!("malformed weight `{token}`")))?;
    if !(w.is_finite() && w > 0.0) {
        return Err(parse_error(
            line,
            format!("weight must be strictly positive, got `{token}`"),
        ));
    }
    Ok(w)
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses an edge list and an optional `vertex weight` file.
pub fn parse_edge_list(text: &str, vertex_weights: Option<&str>) -> Result<ParsedGraph> {
    let mut builder = GraphBuilder::new();
    for (line, tokens) in records(text) {
        for t in tokens.iter().take(2) {
            check_token(line, t)?;
        }
        match tokens.as_slice() {
            [v] => {
                builder.add_vertex(v);
            }
            [s, t] => {
                builder.add_edge(s, t, 1.0)?;
            }
            [s, t, w] => {
                let w = parse_weight(line, w)?;
                builder.add_edge(s, t, w)?;
            }
            _ => {
                return Err(parse_error(
                    line,
                    format!("expected `source target [weight]`, found {} fields", tokens.len()),
                ))
            }
        }
    }
    if let Some(text) = vertex_weights {
        for (v, w) in parse_vertex_weights(text)? {
            builder.set_vertex_weight(&v, w)?;
        }
    }
    Ok(builder.finish())
}

/// Parses `vertex weight` lines.
pub fn parse_vertex_weights(text: &str) -> Result<Vec<(String, f64)>> {
    records(text)
        .map(|(line, tokens)| match tokens.as_slice() {
            [v, w] => {
                check_token(line, v)?;
                Ok((v.to_string(), parse_weight(line, w)?))
            }
            _ => Err(parse_error(line, "expected `vertex weight`")),
        })
        .collect()
}

/// Writes `graph` so that [`parse_edge_list`] rebuilds it with identical
/// vertex order, edge order and edge weights.
///
/// Vertex declarations are emitted only where first appearance in the edge
/// lines would otherwise reorder vertices, plus trailing isolated vertices.
pub fn write_edge_list<W: Write>(graph: &DirectedGraph, out: &mut W) -> io::Result<()> {
    let mut next = 0usize;
    let mut buf = String::new();
    for edge in graph.edges() {
        let (s, t) = (edge.source, edge.target);
        // Vertices this line would introduce, in parse order.
        let fresh_s = s >= next;
        let fresh_t = t >= next && t != s;
        // Declare `next..first` so the line introduces `first` (and possibly
        // `first + 1`) exactly at the next free indices.
        let (first, introduced) = match (fresh_s, fresh_t) {
            (false, false) => (next, 0),
            (true, false) => (s, 1),
            (false, true) => (t, 1),
            (true, true) if t == s + 1 => (s, 2),
            (true, true) => (s.max(t), 1),
        };
        for v in next..first {
            writeln!(buf, "{}", graph.label(v)).ok();
        }
        next = first + introduced;
        if edge.weight == 1.0 {
            writeln!(buf, "{} {}", graph.label(s), graph.label(t)).ok();
        } else {
            writeln!(buf, "{} {} {}", graph.label(s), graph.label(t), edge.weight).ok();
        }
        if buf.len() > 1 << 16 {
            out.write_all(buf.as_bytes())?;
            buf.clear();
        }
    }
    for v in next..graph.vertex_count() {
        writeln!(buf, "{}", graph.label(v)).ok();
    }
    out.write_all(buf.as_bytes())
}
