use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Graph, GraphBuilder};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// One `u v` pair per line, `#` comments, optional `n <count>` header.
    EdgeList,
    Graph6,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(Error::domain(format!("unknown graph format '{other}'"))),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g),
        Format::Graph6 => write_graph6(g),
    }
}

// Vertex names are compacted in order of first appearance. With an
// `n <count>` header, names must lie in 0..count and names that never occur
// in an edge are appended afterwards as isolated vertices, in increasing
// order.
fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut names: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(Error::parse(lineno, "header must be 'n <count>'"));
            }
            if declared.is_some() || !edges.is_empty() {
                return Err(Error::parse(lineno, "header must precede all edges and appear once"));
            }
            let count = tokens[1]
                .parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("bad vertex count '{}'", tokens[1])))?;
            declared = Some(count);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(lineno, format!("expected 'u v', found '{line}'")));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            let name = tok
                .parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("'{tok}' is not a non-negative integer")))?;
            if let Some(count) = declared {
                if name >= count as u64 {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex {name} outside declared range 0..{count}"),
                    ));
                }
            }
            *slot = *index.entry(name).or_insert_with(|| {
                names.push(name);
                names.len() - 1
            });
        }
        if ends[0] == ends[1] {
            return Err(Error::parse(lineno, format!("self-loop at vertex {}", tokens[0])));
        }
        edges.push((ends[0], ends[1], lineno));
    }

    if let Some(count) = declared {
        for name in 0..count as u64 {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(name) {
                e.insert(names.len());
                names.push(name);
            }
        }
    }

    let mut b = GraphBuilder::new(names.len());
    for (u, v, lineno) in edges {
        if b.has_edge(u, v) {
            return Err(Error::parse(
                lineno,
                format!("duplicate edge {} {}", names[u], names[v]),
            ));
        }
        b.add_edge(u, v);
    }
    Ok(b.build().with_labels(names.iter().map(u64::to_string).collect()))
}

fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut offset = 0usize;
    if let Some(rest) = s.strip_prefix(b">>graph6<<") {
        s = rest;
        offset = 10;
    }
    for (i, &c) in s.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(Error::parse(offset + i, format!("byte {c:#04x} outside graph6 range")));
        }
    }
    let (n, header) = match s {
        [] => return Err(Error::parse(offset, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse(offset + 2, "truncated 36-bit vertex count"));
            }
            (pack6(&rest[..6]), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(offset + 1, "truncated 18-bit vertex count"));
            }
            (pack6(&rest[..3]), 4)
        }
        [c, ..] => ((*c - 63) as usize, 1),
    };
    let body = &s[header..];
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::parse(
            offset + header,
            format!("expected {need} data bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(b.build())
}

fn pack6(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize)
}

fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
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
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
