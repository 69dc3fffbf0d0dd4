//! Graph ingestion and serialization: graph6 and a line-based edge list.
//!
//! The edge-list format is a header line `n m`, then `u v` per edge and
//! optional `c v color` lines giving vertex colors. Blank lines and lines
//! starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexColoring};

fn format_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Format(msg.into()))
}

/// Parses one graph6 string. A leading `>>graph6<<` header is accepted.
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return format_err("empty graph6 string");
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return format_err(format!("byte {b} outside the graph6 range 63..=126"));
    }
    let (n, rest) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return format_err("truncated graph6 size field");
        }
        (sixes(&bytes[2..8]), &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return format_err("truncated graph6 size field");
        }
        (sixes(&bytes[1..4]), &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return format_err(format!("graph6 body has {} bytes, expected {need} for n = {n}", rest.len()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k < need * 6 {
        let last = rest[need - 1] - 63;
        if last & ((1u8 << (need * 6 - k)) - 1) != 0 {
            return format_err("nonzero padding bits in graph6 body");
        }
    }
    Graph::from_edges(n, &edges)
}

fn sixes(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | usize::from(b - 63))
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses the edge-list format. Returns the graph and, when any `c` line is
/// present, the color values as written (uncolored vertices get 0). Values
/// are kept raw so that two files can be normalized jointly.
pub fn parse_edge_list(s: &str) -> Result<(Graph, Option<Vec<usize>>)> {
    let mut lines =
        s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((_, header)) = lines.next() else {
        return format_err("missing `n m` header");
    };
    let head = numbers(header, 0)?;
    if head.len() != 2 {
        return format_err("header must be `n m`");
    }
    let (n, m) = (head[0], head[1]);
    let mut edges = Vec::with_capacity(m);
    let mut raw_colors: Option<Vec<usize>> = None;
    for (lineno, line) in lines {
        if let Some(rest) = line.strip_prefix('c') {
            let nums = numbers(rest, lineno)?;
            if nums.len() != 2 || nums[0] >= n {
                return format_err(format!("line {lineno}: expected `c v color` with v < {n}"));
            }
            raw_colors.get_or_insert_with(|| vec![0; n])[nums[0]] = nums[1];
        } else {
            let nums = numbers(line, lineno)?;
            if nums.len() != 2 {
                return format_err(format!("line {lineno}: expected `u v`"));
            }
            edges.push((nums[0], nums[1]));
        }
    }
    if edges.len() != m {
        return format_err(format!("header announces {m} edges, found {}", edges.len()));
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| Error::Format(e.to_string()))?;
    Ok((g, raw_colors))
}

fn numbers(s: &str, lineno: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Format(format!("line {lineno}: `{t}` is not a vertex number"))))
        .collect()
}

/// Writes the edge-list format, including `c` lines when colors are given.
pub fn to_edge_list(g: &Graph, colors: Option<&VertexColoring>) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if let Some(c) = colors {
        for (v, col) in c.colors.iter().enumerate() {
            out.push_str(&format!("c {v} {col}\n"));
        }
    }
    out
}

/// Reads a graph from text, choosing the format by content: a first line of
/// two integers means edge list, anything else graph6.
pub fn parse_any(s: &str) -> Result<(Graph, Option<Vec<usize>>)> {
    let first = s.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.split_whitespace().count() == 2 && l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => {
            parse_edge_list(s)
        }
        Some(l) => Ok((parse_graph6(l)?, None)),
        None => format_err("empty input"),
    }
}
