//! Immutable adjacency structure, ingestion, generators and hop distances.

mod bfs;
mod generate;
mod io;

pub use bfs::{bfs_distances, bfs_distances_within, UNREACHED};
pub(crate) use bfs::bfs_masked;
pub use generate::{generate, GraphGenSpec};
pub use io::{from_edge_list, from_edge_list_remapped, read_edge_list_file, to_edge_list, write_edge_list_file, IdMap, IngestReport};

use crate::error::{Error, Result};

/// Dense 0-based node identifier.
pub type NodeId = usize;

/// Compressed adjacency with sorted, de-duplicated neighbor lists.
///
/// Undirected graphs store every edge as two arcs; `edge_count` counts
/// unordered pairs. Directed graphs additionally keep the transposed
/// adjacency so in-neighbors are as cheap as out-neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    reverse: Option<(Vec<usize>, Vec<NodeId>)>,
    edge_count: usize,
}

/// Number of arcs dropped while canonicalizing an arc list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Dropped {
    pub duplicates: usize,
    pub self_loops: usize,
}

fn csr(node_count: usize, arcs: &[(NodeId, NodeId)]) -> (Vec<usize>, Vec<NodeId>) {
    let mut offsets = vec![0usize; node_count + 1];
    for &(u, _) in arcs {
        offsets[u + 1] += 1;
    }
    for i in 0..node_count {
        offsets[i + 1] += offsets[i];
    }
    // `arcs` is sorted by (u, v), so a straight copy of the targets is already in CSR order.
    let targets = arcs.iter().map(|&(_, v)| v).collect();
    (offsets, targets)
}

impl Graph {
    /// Builds a graph from an arbitrary arc list, silently dropping self-loops
    /// and duplicates. Ids must be below `node_count`.
    pub fn from_edges(node_count: usize, directed: bool, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        Graph::canonical(node_count, directed, edges.iter().copied()).map(|(g, _)| g)
    }

    /// Undirected graph from an edge list; panics on out-of-range ids.
    /// Meant for tests and examples.
    pub fn undirected(node_count: usize, edges: &[(NodeId, NodeId)]) -> Graph {
        Graph::from_edges(node_count, false, edges).expect("edge ids within node_count")
    }

    /// Graph with `node_count` nodes and no edges.
    pub fn empty(node_count: usize, directed: bool) -> Graph {
        Graph::from_canonical_arcs(node_count, directed, Vec::new())
    }

    pub(crate) fn canonical(
        node_count: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<(Graph, Dropped)> {
        let mut dropped = Dropped::default();
        let mut arcs = Vec::new();
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::argument(format!(
                    "arc ({u}, {v}) outside node range 0..{node_count}"
                )));
            }
            if u == v {
                dropped.self_loops += 1;
                continue;
            }
            if directed {
                arcs.push((u, v));
            } else {
                arcs.push((u.min(v), u.max(v)));
            }
        }
        arcs.sort_unstable();
        let before = arcs.len();
        arcs.dedup();
        dropped.duplicates = before - arcs.len();
        if !directed {
            let mirrored: Vec<_> = arcs.iter().map(|&(u, v)| (v, u)).collect();
            arcs.extend(mirrored);
            arcs.sort_unstable();
        }
        Ok((Graph::from_canonical_arcs(node_count, directed, arcs), dropped))
    }

    /// `arcs` must already be canonical: sorted, unique, loop-free and
    /// symmetric when undirected.
    fn from_canonical_arcs(node_count: usize, directed: bool, arcs: Vec<(NodeId, NodeId)>) -> Graph {
        let (offsets, targets) = csr(node_count, &arcs);
        let (reverse, edge_count) = if directed {
            let mut rev: Vec<_> = arcs.iter().map(|&(u, v)| (v, u)).collect();
            rev.sort_unstable();
            (Some(csr(node_count, &rev)), arcs.len())
        } else {
            (None, arcs.len() / 2)
        };
        Graph {
            directed,
            offsets,
            targets,
            reverse,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Unordered pairs for undirected graphs, arcs for directed ones.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Sorted out-neighbors of `u`.
    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Sorted in-neighbors of `u` (same as `neighbors` when undirected).
    #[inline]
    pub fn in_neighbors(&self, u: NodeId) -> &[NodeId] {
        match &self.reverse {
            Some((offsets, targets)) => &targets[offsets[u]..offsets[u + 1]],
            None => self.neighbors(u),
        }
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_neighbors(u).len()
    }

    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Canonical edges: `u < v` pairs for undirected graphs, all arcs otherwise,
    /// in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let directed = self.directed;
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(move |&(u, v)| directed || u < v)
    }

    /// Copy of the graph with every arc incident to a node in `removed` dropped.
    /// Node ids and the node count are preserved.
    pub fn without_nodes(&self, removed: &[NodeId]) -> Result<Graph> {
        let n = self.node_count();
        let mut mask = vec![false; n];
        for &r in removed {
            if r >= n {
                return Err(Error::argument(format!("node {r} out of range 0..{n}")));
            }
            mask[r] = true;
        }
        let arcs: Vec<_> = (0..n)
            .filter(|&u| !mask[u])
            .flat_map(|u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(_, v)| !mask[v])
            .collect();
        Ok(Graph::from_canonical_arcs(n, self.directed, arcs))
    }

    pub(crate) fn check_node(&self, u: NodeId) -> Result<()> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(Error::argument(format!(
                "node {u} out of range 0..{}",
                self.node_count()
            )))
        }
    }
}
