use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Lines dropped while canonicalizing an edge list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl IngestReport {
    pub fn dropped(&self) -> usize {
        self.duplicates + self.self_loops
    }
}

enum Line<'a> {
    Blank,
    Header(usize),
    Edge(&'a str, &'a str),
}

fn classify(line: &str, lineno: usize) -> Result<Line<'_>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(Line::Blank);
    }
    let mut tokens = trimmed.split_whitespace();
    let first = tokens.next().unwrap_or_default();
    let second = tokens
        .next()
        .ok_or_else(|| Error::parse(lineno, "expected two node ids"))?;
    if tokens.next().is_some() {
        return Err(Error::parse(lineno, "expected exactly two tokens"));
    }
    if first == "nodes" {
        let n = parse_id(second, lineno)?;
        return Ok(Line::Header(n));
    }
    Ok(Line::Edge(first, second))
}

fn parse_id(token: &str, lineno: usize) -> Result<NodeId> {
    if let Some(rest) = token.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(lineno, format!("negative node id `{token}`")));
        }
    }
    token
        .parse::<NodeId>()
        .map_err(|_| Error::parse(lineno, format!("malformed node id `{token}`")))
}

/// Parses the `u v` edge-list format.
///
/// Blank lines and lines starting with `#` are skipped. An optional
/// `nodes N` line fixes the node count so isolated trailing nodes survive;
/// otherwise the count is one past the largest id seen.
pub fn from_edge_list(text: &str, directed: bool) -> Result<(Graph, IngestReport)> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut max_id: Option<NodeId> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        match classify(line, lineno)? {
            Line::Blank => {}
            Line::Header(n) => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate `nodes` header"));
                }
                header = Some((n, lineno));
            }
            Line::Edge(a, b) => {
                let u = parse_id(a, lineno)?;
                let v = parse_id(b, lineno)?;
                max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
                arcs.push((u, v));
            }
        }
    }
    let seen = max_id.map_or(0, |m| m + 1);
    let node_count = match header {
        Some((n, lineno)) if n < seen => {
            return Err(Error::parse(
                lineno,
                format!("header declares {n} nodes but id {} appears", seen - 1),
            ))
        }
        Some((n, _)) => n,
        None => seen,
    };
    let (graph, dropped) = Graph::canonical(node_count, directed, arcs)?;
    Ok((
        graph,
        IngestReport {
            duplicates: dropped.duplicates,
            self_loops: dropped.self_loops,
        },
    ))
}

/// Canonical serialization: `nodes N` header, then sorted `u v` lines
/// (`u < v` for undirected graphs), trailing newline.
pub fn to_edge_list(graph: &Graph) -> String {
    let mut out = String::with_capacity(16 + graph.edge_count() * 12);
    let _ = writeln!(out, "nodes {}", graph.node_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list_file(path: impl AsRef<Path>, directed: bool) -> Result<(Graph, IngestReport)> {
    let text = fs::read_to_string(path)?;
    from_edge_list(&text, directed)
}

pub fn write_edge_list_file(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_edge_list(graph))?;
    Ok(())
}

/// Dense-id to external-id mapping for edge lists with sparse or
/// non-numeric identifiers.
///
/// Persisted as a sidecar file with one `dense<TAB>external` line per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdMap {
    external: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl IdMap {
    fn intern(&mut self, token: &str) -> NodeId {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = self.external.len();
        self.external.push(token.to_owned());
        self.index.insert(token.to_owned(), id);
        id
    }

    pub fn len(&self) -> usize {
        self.external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.external.is_empty()
    }

    pub fn external(&self, id: NodeId) -> Option<&str> {
        self.external.get(id).map(String::as_str)
    }

    pub fn dense(&self, external: &str) -> Option<NodeId> {
        self.index.get(external).copied()
    }

    pub fn to_sidecar(&self) -> String {
        let mut out = String::new();
        for (i, ext) in self.external.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{ext}");
        }
        out
    }

    pub fn from_sidecar(text: &str) -> Result<IdMap> {
        let mut map = IdMap::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (dense, ext) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(i + 1, "expected `dense<TAB>external`"))?;
            let dense = parse_id(dense.trim(), i + 1)?;
            if dense != map.len() {
                return Err(Error::parse(i + 1, "dense ids must be consecutive from 0"));
            }
            if map.dense(ext).is_some() {
                return Err(Error::parse(i + 1, format!("external id `{ext}` repeated")));
            }
            map.intern(ext);
        }
        Ok(map)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_sidecar())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<IdMap> {
        IdMap::from_sidecar(&fs::read_to_string(path)?)
    }
}

/// Parses an edge list whose ids are arbitrary tokens, assigning dense ids in
/// order of first appearance. `nodes` headers are not allowed here.
pub fn from_edge_list_remapped(text: &str, directed: bool) -> Result<(Graph, IdMap, IngestReport)> {
    let mut map = IdMap::default();
    let mut arcs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match classify(line, i + 1)? {
            Line::Blank => {}
            Line::Header(_) => {
                return Err(Error::parse(i + 1, "`nodes` header not allowed with external ids"))
            }
            Line::Edge(a, b) => {
                let u = map.intern(a);
                let v = map.intern(b);
                arcs.push((u, v));
            }
        }
    }
    let (graph, dropped) = Graph::canonical(map.len(), directed, arcs)?;
    let report = IngestReport {
        duplicates: dropped.duplicates,
        self_loops: dropped.self_loops,
    };
    Ok((graph, map, report))
}
