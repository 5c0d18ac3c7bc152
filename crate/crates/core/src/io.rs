//! Edge-list text format and Graphviz export.
//!
//! The edge-list format is line oriented, `#` starts a comment, and all
//! indices are 1-based:
//!
//! ```text
//! graph 3
//! node 1 1
//! node 2 2
//! node 3 1
//! edge 1 2 edge:1-2
//! edge 2 3 edge:1-2
//! ```
//!
//! `node <id> <cluster>` lines are optional but, when present, must cover
//! every vertex. Cluster `0` marks an unassigned vertex, in which case no
//! partition is returned.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition, Provenance};

/// A parsed edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Graph,
    pub partition: Option<Partition>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

fn parse_provenance(tok: &str, line: usize) -> Result<Provenance> {
    if let Some(rest) = tok.strip_prefix("self:") {
        let i: usize = parse_num(rest, line, "cluster index")?;
        if i == 0 {
            return Err(perr(line, "cluster indices start at 1"));
        }
        return Ok(Provenance::SelfLoop(i - 1));
    }
    if let Some(rest) = tok.strip_prefix("edge:") {
        let (a, b) = rest
            .split_once('-')
            .ok_or_else(|| perr(line, format!("malformed provenance `{tok}`")))?;
        let j: usize = parse_num(a, line, "cluster index")?;
        let k: usize = parse_num(b, line, "cluster index")?;
        if j == 0 || j >= k {
            return Err(perr(line, format!("provenance `{tok}` needs 1 <= j < k")));
        }
        return Ok(Provenance::Pair(j - 1, k - 1));
    }
    Err(perr(line, format!("unknown provenance `{tok}`")))
}

/// Parses the edge-list format.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut n: Option<usize> = None;
    let mut clusters: Vec<Option<usize>> = Vec::new();
    let mut node_lines = 0usize;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(size) = n else {
            if toks.len() != 2 || toks[0] != "graph" {
                return Err(perr(line, "expected header `graph <n>`"));
            }
            let size = parse_num(toks[1], line, "vertex count")?;
            n = Some(size);
            clusters = vec![None; size];
            continue;
        };
        match toks[0] {
            "node" => {
                if toks.len() != 3 {
                    return Err(perr(line, "expected `node <id> <cluster>`"));
                }
                let id: usize = parse_num(toks[1], line, "vertex id")?;
                let c: usize = parse_num(toks[2], line, "cluster index")?;
                if id == 0 || id > size {
                    return Err(perr(line, format!("vertex {id} outside 1..={size}")));
                }
                if clusters[id - 1].is_some() {
                    return Err(perr(line, format!("vertex {id} declared twice")));
                }
                clusters[id - 1] = Some(c);
                node_lines += 1;
            }
            "edge" => {
                if toks.len() != 3 && toks.len() != 4 {
                    return Err(perr(line, "expected `edge <u> <v> [provenance]`"));
                }
                let u: usize = parse_num(toks[1], line, "vertex id")?;
                let v: usize = parse_num(toks[2], line, "vertex id")?;
                if u == 0 || v > size || u >= v {
                    return Err(perr(
                        line,
                        format!("edge ({u}, {v}) needs 1 <= u < v <= {size}"),
                    ));
                }
                let tag = toks.get(3).map(|t| parse_provenance(t, line)).transpose()?;
                edges.push(((u - 1, v - 1), tag, line));
            }
            "graph" => return Err(perr(line, "repeated `graph` header")),
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }

    let n = n.ok_or_else(|| perr(1, "missing `graph <n>` header"))?;
    if node_lines != 0 && node_lines != n {
        return Err(perr(
            text.lines().count().max(1),
            format!("{node_lines} node lines for {n} vertices"),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &(e, _, line) in &edges {
        if !seen.insert(e) {
            return Err(perr(line, format!("duplicate edge ({}, {})", e.0 + 1, e.1 + 1)));
        }
    }
    let graph = Graph::with_provenance(n, edges.into_iter().map(|(e, t, _)| (e, t)))?;

    let partition = if node_lines == n && n > 0 && clusters.iter().all(|c| c != &Some(0)) {
        let labels: Vec<usize> = clusters.into_iter().map(|c| c.unwrap() - 1).collect();
        Some(Partition::from_labels(labels).map_err(|e| perr(1, e.to_string()))?)
    } else {
        None
    };
    Ok(EdgeList { graph, partition })
}

/// Serializes a graph (and optionally its partition) in the edge-list format.
pub fn write_edge_list(g: &Graph, part: Option<&Partition>) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.n()).unwrap();
    if let Some(part) = part {
        for v in 0..g.n() {
            writeln!(out, "node {} {}", v + 1, part.cluster_of(v) + 1).unwrap();
        }
    }
    for ((u, v), tag) in g.tagged_edges() {
        match tag {
            Some(t) => writeln!(out, "edge {} {} {}", u + 1, v + 1, t).unwrap(),
            None => writeln!(out, "edge {} {}", u + 1, v + 1).unwrap(),
        }
    }
    out
}

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6a600", "#a65628", "#f781bf",
    "#999999", "#17becf",
];
const PAIR_STYLES: [&str; 3] = ["dashed", "dotted", "bold"];

/// Graphviz rendering: vertices filled by cluster, edges styled by provenance.
pub fn to_dot(g: &Graph, part: Option<&Partition>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled];\n");
    for v in 0..g.n() {
        match part {
            Some(p) => {
                let c = p.cluster_of(v);
                writeln!(
                    out,
                    "  {} [fillcolor=\"{}\", cluster={}];",
                    v + 1,
                    PALETTE[c % PALETTE.len()],
                    c + 1
                )
                .unwrap();
            }
            None => writeln!(out, "  {};", v + 1).unwrap(),
        }
    }
    let mut pair_ids: Vec<(usize, usize)> = g
        .tagged_edges()
        .filter_map(|(_, t)| match t {
            Some(Provenance::Pair(j, k)) => Some((j, k)),
            _ => None,
        })
        .collect();
    pair_ids.sort_unstable();
    pair_ids.dedup();
    for ((u, v), tag) in g.tagged_edges() {
        let attrs = match tag {
            Some(t @ Provenance::SelfLoop(_)) => format!(" [style=solid, label=\"{t}\"]"),
            Some(t @ Provenance::Pair(j, k)) => {
                let idx = pair_ids.binary_search(&(j, k)).unwrap();
                format!(
                    " [style={}, label=\"{t}\"]",
                    PAIR_STYLES[idx % PAIR_STYLES.len()]
                )
            }
            None => String::new(),
        };
        writeln!(out, "  {} -- {}{};", u + 1, v + 1, attrs).unwrap();
    }
    out.push_str("}\n");
    out
}
