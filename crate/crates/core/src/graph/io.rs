//! Edge-list text: one `u v` pair per line, `#` starts a comment.
//!
//! A comment of the form `# n <count>` fixes the vertex count, so isolated
//! vertices past the largest id survive a round trip. Without it the graph
//! has `max id + 1` vertices.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for ParseError {}

fn header_count(comment: &str) -> Option<&str> {
    let mut words = comment.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("n"), Some(count), None) => Some(count),
        _ => None,
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut max_id: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ParseError { line, message };
        let (data, comment) = match raw.find('#') {
            Some(at) => (&raw[..at], Some(&raw[at + 1..])),
            None => (raw, None),
        };
        if let Some(count) = comment.and_then(header_count) {
            let n = count
                .parse::<usize>()
                .map_err(|_| err(format!("bad vertex count {count:?}")))?;
            declared = Some(n);
        }
        let mut words = data.split_whitespace();
        let (Some(a), Some(b)) = (words.next(), words.next()) else {
            if data.trim().is_empty() {
                continue;
            }
            return Err(err(format!(
                "expected two vertex ids, found {:?}",
                data.trim()
            )));
        };
        if let Some(extra) = words.next() {
            return Err(err(format!("unexpected token {extra:?}")));
        }
        let id = |w: &str| {
            w.parse::<usize>()
                .map_err(|_| err(format!("vertex id {w:?} is not a nonnegative integer")))
        };
        let (u, v) = (id(a)?, id(b)?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let needed = max_id.map_or(0, |m| m + 1);
    let n = match declared {
        Some(n) if n < needed => {
            return Err(ParseError {
                line: 0,
                message: format!("header declares {n} vertices but id {} occurs", needed - 1),
            })
        }
        Some(n) => n,
        None => needed,
    };
    Graph::from_edges(n, edges).map_err(|e: GraphError| ParseError {
        line: 0,
        message: format!("{e}"),
    })
}

impl Graph {
    /// Header line, then edges `u < v` in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n {}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}
