//! The `.hg` text format.
//!
//! ```text
//! <uniformity> <n> <m>
//! <v_1> ... <v_uniformity>     (m lines, strictly ascending, canonical order)
//! ```

use std::fmt::Write as _;

use super::{validate, Hypergraph, Violation};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_error(line_no, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_no, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let head = parse_numbers(header_no, header)?;
    let [uniformity, n, m] = head[..] else {
        return Err(parse_error(header_no, "header must be `<uniformity> <n> <m>`"));
    };
    if uniformity < 2 {
        return Err(parse_error(header_no, "uniformity must be at least 2"));
    }

    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut edge_lines = Vec::with_capacity(m.min(1 << 20));
    for _ in 0..m {
        let (no, line) = lines.next().ok_or_else(|| {
            parse_error(
                header_no + edges.len() + 1,
                format!("expected {m} edges, found {}", edges.len()),
            )
        })?;
        edges.push(parse_numbers(no, line)?);
        edge_lines.push(no);
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_error(no, format!("unexpected content after {m} edges")));
    }

    validate(uniformity, n, &edges).map_err(|v| {
        let edge = match v {
            Violation::UniformityTooSmall(_) => return parse_error(header_no, v.to_string()),
            Violation::WrongEdgeSize { edge, .. }
            | Violation::VertexOutOfRange { edge, .. }
            | Violation::NonAscendingEdge { edge }
            | Violation::DuplicateEdge { edge }
            | Violation::UnsortedEdgeList { edge } => edge,
        };
        parse_error(edge_lines[edge], v.to_string())
    })?;
    Ok(Hypergraph::from_canonical_unchecked(uniformity, n, edges))
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", h.uniformity(), h.n(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
