//! Exact IC expectations by live-edge enumeration.
//!
//! Under IC every edge is examined at most once in a way that matters, so the
//! activated set has the same law as the set reachable from the seeds in a
//! random subgraph keeping each edge independently with probability `p`.
//! Enumerating all `2^|E|` subgraphs gives the exact expectation.

use super::config::{DiffusionConfig, ModelKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::seeding::SeedSet;

/// Largest edge count `exact_expected_spread` accepts.
pub const EXACT_EDGE_LIMIT: usize = 20;
/// Largest edge count an [`ExactSpreadTable`] accepts.
pub const TABLE_EDGE_LIMIT: usize = 24;
/// Node limit for bitmask reachability.
pub const EXACT_NODE_LIMIT: usize = 16;

/// Exact expected activated-set size for an IC configuration.
pub fn exact_expected_spread(graph: &Graph, config: &DiffusionConfig, seeds: &SeedSet) -> Result<f64> {
    if config.kind != ModelKind::Ic {
        return Err(Error::Unsupported(format!(
            "exact enumeration covers IC only, got {}",
            config.kind.name()
        )));
    }
    config.validate()?;
    if graph.edge_count() > EXACT_EDGE_LIMIT {
        return Err(Error::Capacity(format!(
            "{} edges exceed the enumeration limit of {EXACT_EDGE_LIMIT}",
            graph.edge_count()
        )));
    }
    let table = ExactSpreadTable::with_sets(graph, config.p, vec![mask_of(seeds.ids())])?;
    Ok(table.values[0])
}

fn mask_of(ids: &[NodeId]) -> u32 {
    ids.iter().fold(0u32, |m, &v| m | (1 << v))
}

/// Exact IC spreads of every seed set up to a given size, computed in one
/// pass over all live-edge subgraphs.
#[derive(Clone, Debug)]
pub struct ExactSpreadTable {
    node_count: usize,
    sets: Vec<u32>,
    values: Vec<f64>,
}

impl ExactSpreadTable {
    /// Tabulates every seed set with at most `max_size` nodes.
    pub fn build(graph: &Graph, p: f64, max_size: usize) -> Result<ExactSpreadTable> {
        let n = graph.node_count();
        if n > EXACT_NODE_LIMIT {
            return Err(Error::Capacity(format!("{n} nodes exceed {EXACT_NODE_LIMIT}")));
        }
        let sets: Vec<u32> = (1u32..(1u32 << n))
            .filter(|s| s.count_ones() as usize <= max_size)
            .collect();
        ExactSpreadTable::with_sets(graph, p, sets)
    }

    fn with_sets(graph: &Graph, p: f64, mut sets: Vec<u32>) -> Result<ExactSpreadTable> {
        let n = graph.node_count();
        if n > EXACT_NODE_LIMIT {
            return Err(Error::Capacity(format!("{n} nodes exceed {EXACT_NODE_LIMIT}")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::config(format!("p={p} outside [0, 1]")));
        }
        let edges: Vec<(NodeId, NodeId)> = graph.edges().collect();
        let m = edges.len();
        if m > TABLE_EDGE_LIMIT {
            return Err(Error::Capacity(format!("{m} edges exceed {TABLE_EDGE_LIMIT}")));
        }
        sets.sort_unstable();
        let weights: Vec<f64> = (0..=m)
            .map(|live| p.powi(live as i32) * (1.0 - p).powi((m - live) as i32))
            .collect();
        let directed = graph.is_directed();
        let mut values = vec![0.0; sets.len()];
        let mut adj = vec![0u32; n];
        let mut reach = vec![0u32; n];
        for assignment in 0u64..(1u64 << m) {
            let w = weights[assignment.count_ones() as usize];
            if w == 0.0 {
                continue;
            }
            adj.fill(0);
            for (i, &(u, v)) in edges.iter().enumerate() {
                if assignment >> i & 1 == 1 {
                    adj[u] |= 1 << v;
                    if !directed {
                        adj[v] |= 1 << u;
                    }
                }
            }
            for (u, r) in reach.iter_mut().enumerate() {
                *r = closure(&adj, 1 << u);
            }
            for (value, &set) in values.iter_mut().zip(&sets) {
                let mut covered = 0u32;
                let mut rest = set;
                while rest != 0 {
                    covered |= reach[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                *value += w * covered.count_ones() as f64;
            }
        }
        Ok(ExactSpreadTable {
            node_count: n,
            sets,
            values,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Exact spread of `seeds`; `None` if the set was not tabulated.
    /// The empty set has spread 0.
    pub fn spread(&self, seeds: &[NodeId]) -> Option<f64> {
        if seeds.is_empty() {
            return Some(0.0);
        }
        if seeds.iter().any(|&s| s >= self.node_count) {
            return None;
        }
        let mask = mask_of(seeds);
        self.sets.binary_search(&mask).ok().map(|i| self.values[i])
    }
}

fn closure(adj: &[u32], start: u32) -> u32 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0u32;
        let mut rest = frontier;
        while rest != 0 {
            next |= adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}
