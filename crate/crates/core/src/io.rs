//! Text formats.
//!
//! Edge-list format (bit-exact writer):
//!   line 1: `<n> <m>` in decimal ASCII, single space;
//!   then m lines `<u> <v>` with `u < v`, written in lexicographic order;
//!   every line LF-terminated.
//! Readers accept edge lines in any order and orientation but reject loops,
//! duplicates, bad counts and trailing garbage, reporting line numbers.
//!
//! Matching format: one line per edge, `<u> <v>` with `u < v`, lexicographic,
//! no header.

use crate::graph::{edge, Edge, Graph};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn fail<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), FormatError> {
    let mut it = line.split(' ');
    let a = it.next().filter(|s| !s.is_empty());
    let b = it.next().filter(|s| !s.is_empty());
    if a.is_none() || b.is_none() || it.next().is_some() {
        return fail(line_no, format!("expected two space-separated integers, got {line:?}"));
    }
    let a = a.unwrap().parse::<usize>().map_err(|e| FormatError {
        line: line_no,
        msg: format!("bad integer {:?}: {e}", a.unwrap()),
    })?;
    let b = b.unwrap().parse::<usize>().map_err(|e| FormatError {
        line: line_no,
        msg: format!("bad integer {:?}: {e}", b.unwrap()),
    })?;
    Ok((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s.lines().enumerate();
    let (_, header) = match lines.next() {
        Some(l) => l,
        None => return fail(1, "empty input, expected `<n> <m>` header"),
    };
    let (n, m) = parse_pair(1, header)?;
    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    let mut count = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() && count == m {
            // Tolerate nothing after the last edge except end of input.
            return fail(line_no, "unexpected blank line after edge list");
        }
        let (u, v) = parse_pair(line_no, line)?;
        if u >= n || v >= n {
            return fail(line_no, format!("vertex out of range for n={n}"));
        }
        if u == v {
            return fail(line_no, format!("loop edge at vertex {u}"));
        }
        let e = edge(u, v);
        if edges.contains(&e) {
            return fail(line_no, format!("duplicate edge ({}, {})", e.0, e.1));
        }
        edges.push(e);
        count += 1;
        if count > m {
            return fail(line_no, format!("more than the declared {m} edges"));
        }
    }
    if count != m {
        return fail(count + 1, format!("declared {m} edges but found {count}"));
    }
    Graph::from_edge_list(n, &edges).map_err(|e| FormatError { line: 1, msg: e.to_string() })
}

pub fn write_matching(edges: &[Edge]) -> String {
    let mut sorted: Vec<Edge> = edges.to_vec();
    sorted.sort_unstable();
    let mut out = String::new();
    for (u, v) in sorted {
        debug_assert!(u < v);
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Reads normalized edges; structural validation against a host graph is the
/// caller's job.
pub fn read_matching(s: &str) -> Result<Vec<Edge>, FormatError> {
    let mut out = Vec::new();
    for (idx, line) in s.lines().enumerate() {
        let line_no = idx + 1;
        let (u, v) = parse_pair(line_no, line)?;
        if u == v {
            return fail(line_no, format!("loop edge at vertex {u}"));
        }
        let e = edge(u, v);
        if out.contains(&e) {
            return fail(line_no, format!("duplicate edge ({}, {})", e.0, e.1));
        }
        out.push(e);
    }
    Ok(out)
}
