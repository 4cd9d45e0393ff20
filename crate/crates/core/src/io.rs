//! Graph file ingestion and emission.
//!
//! Gset format: optional comment lines starting with `%` or `#`, a header
//! line `n m`, then `m` lines `u v w` with 1-indexed endpoints and an
//! optional weight defaulting to 1. Matrix Market: coordinate-format
//! real/integer/pattern matrices; the sparsity pattern is read as an
//! undirected graph.

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};
use std::fmt::Write as _;

/// Outcome of a parse, with counts of silently repaired oddities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseWarnings {
    /// Diagonal / self-loop entries dropped.
    pub dropped_self_loops: usize,
    /// Unordered pairs that appeared more than once (merged by summation).
    pub merged_duplicates: usize,
}

/// Parses Gset text into a graph. Node ids are converted to 0-indexed,
/// duplicate pairs merge by weight summation, and the declared edge count
/// must match the number of edge lines.
pub fn load_gset(text: &str) -> Result<WeightedGraph> {
    load_gset_with_warnings(text).map(|(g, _)| g)
}

pub fn load_gset_with_warnings(text: &str) -> Result<(WeightedGraph, ParseWarnings)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty input"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_token(it.next(), header_line, "node count")?;
    let m: usize = parse_token(it.next(), header_line, "edge count")?;
    if it.next().is_some() {
        return Err(Error::parse(header_line, "header must be exactly 'n m'"));
    }

    let mut warnings = ParseWarnings::default();
    let mut builder = GraphBuilder::new(n);
    let mut seen = std::collections::HashSet::new();
    let mut parsed = 0usize;
    for (line_no, line) in lines {
        let mut tok = line.split_whitespace();
        let u: usize = parse_token(tok.next(), line_no, "source node")?;
        let v: usize = parse_token(tok.next(), line_no, "target node")?;
        let w: f64 = match tok.next() {
            Some(t) => t
                .parse()
                .map_err(|_| Error::parse(line_no, format!("non-numeric weight '{t}'")))?,
            None => 1.0,
        };
        if tok.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens after 'u v w'"));
        }
        if u == 0 || u > n || v == 0 || v > n {
            return Err(Error::parse(
                line_no,
                format!("node id out of range 1..={n}"),
            ));
        }
        parsed += 1;
        let (u, v) = (u - 1, v - 1);
        if u == v {
            warnings.dropped_self_loops += 1;
            continue;
        }
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.merged_duplicates += 1;
        }
        builder.add(u, v, w)?;
    }
    if parsed != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {parsed} edge lines found"),
        ));
    }
    Ok((builder.finish(), warnings))
}

/// Writes Gset text (LF endings, shortest round-trip decimals, 1-indexed).
pub fn save_gset(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w);
    }
    out
}

/// Parses a Matrix Market coordinate file as an undirected graph.
///
/// Diagonal entries are dropped with a warning count, `(i,j)`/`(j,i)`
/// duplicates merge by summation, pattern matrices get unit weights, and
/// signed values pass through unchanged.
pub fn load_matrix_market(text: &str) -> Result<WeightedGraph> {
    load_matrix_market_with_warnings(text).map(|(g, _)| g)
}

pub fn load_matrix_market_with_warnings(text: &str) -> Result<(WeightedGraph, ParseWarnings)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty input"))?;
    let banner: Vec<String> = first.split_whitespace().map(|t| t.to_lowercase()).collect();
    if banner.len() < 4 || banner[0] != "%%matrixmarket" || banner[1] != "matrix" {
        return Err(Error::parse(first_no, "missing %%MatrixMarket banner"));
    }
    if banner[2] != "coordinate" {
        return Err(Error::parse(
            first_no,
            format!("unsupported storage format '{}'", banner[2]),
        ));
    }
    let field = banner[3].as_str();
    let is_pattern = match field {
        "real" | "integer" => false,
        "pattern" => true,
        other => {
            return Err(Error::parse(
                first_no,
                format!("unsupported field type '{other}'"),
            ))
        }
    };

    let mut rest = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_no, size_line) = rest
        .next()
        .ok_or_else(|| Error::parse(0, "missing size line"))?;
    let mut it = size_line.split_whitespace();
    let rows: usize = parse_token(it.next(), size_no, "row count")?;
    let cols: usize = parse_token(it.next(), size_no, "column count")?;
    let nnz: usize = parse_token(it.next(), size_no, "entry count")?;
    if rows != cols {
        return Err(Error::parse(
            size_no,
            format!("matrix is {rows}x{cols}, adjacency requires square"),
        ));
    }

    let mut warnings = ParseWarnings::default();
    let mut builder = GraphBuilder::new(rows);
    let mut seen = std::collections::HashSet::new();
    let mut parsed = 0usize;
    for (line_no, line) in rest {
        let mut tok = line.split_whitespace();
        let i: usize = parse_token(tok.next(), line_no, "row index")?;
        let j: usize = parse_token(tok.next(), line_no, "column index")?;
        let w: f64 = if is_pattern {
            1.0
        } else {
            let t = tok
                .next()
                .ok_or_else(|| Error::parse(line_no, "missing value"))?;
            t.parse()
                .map_err(|_| Error::parse(line_no, format!("non-numeric value '{t}'")))?
        };
        if i == 0 || i > rows || j == 0 || j > rows {
            return Err(Error::parse(
                line_no,
                format!("index out of range 1..={rows}"),
            ));
        }
        parsed += 1;
        let (i, j) = (i - 1, j - 1);
        if i == j {
            warnings.dropped_self_loops += 1;
            continue;
        }
        if !seen.insert((i.min(j), i.max(j))) {
            warnings.merged_duplicates += 1;
        }
        builder.add(i, j, w)?;
    }
    if parsed != nnz {
        return Err(Error::parse(
            0,
            format!("size line declares {nnz} entries but {parsed} found"),
        ));
    }
    Ok((builder.finish(), warnings))
}

fn parse_token<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{t}'")))
}
