//! Seed sets and the strategies that choose them.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

/// A non-empty set of distinct source nodes, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedSet(Vec<NodeId>);

impl SeedSet {
    /// Validates and sorts `ids`. Rejects empty sets, duplicates and ids
    /// outside `0..node_count`.
    pub fn new(mut ids: Vec<NodeId>, node_count: usize) -> Result<SeedSet> {
        if ids.is_empty() {
            return Err(Error::argument("seed set is empty"));
        }
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::argument(format!("seed {} repeated", w[0])));
        }
        if let Some(&last) = ids.last() {
            if last >= node_count {
                return Err(Error::argument(format!("seed {last} out of range 0..{node_count}")));
            }
        }
        Ok(SeedSet(ids))
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.0
    }

    /// The budget `k`, equal to the number of seeds.
    pub fn budget(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

impl fmt::Display for SeedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// How `select_seeds` ranks nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedStrategy {
    Random,
    Degree,
    Eigen,
}

impl SeedStrategy {
    pub const ALL: [SeedStrategy; 3] = [SeedStrategy::Random, SeedStrategy::Degree, SeedStrategy::Eigen];

    pub fn name(self) -> &'static str {
        match self {
            SeedStrategy::Random => "random",
            SeedStrategy::Degree => "degree",
            SeedStrategy::Eigen => "eigen",
        }
    }
}

impl FromStr for SeedStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(SeedStrategy::Random),
            "degree" => Ok(SeedStrategy::Degree),
            "eigen" => Ok(SeedStrategy::Eigen),
            other => Err(Error::config(format!("unknown seed strategy `{other}`"))),
        }
    }
}

impl fmt::Display for SeedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const EIGEN_TOLERANCE: f64 = 1e-10;
pub const EIGEN_MAX_ITERATIONS: usize = 1000;

/// Picks `budget` seeds. Rankings break ties toward the lower node id.
pub fn select_seeds(graph: &Graph, strategy: SeedStrategy, budget: usize, rng_seed: u64) -> Result<SeedSet> {
    let n = graph.node_count();
    if budget == 0 || budget > n {
        return Err(Error::argument(format!("seed budget {budget} outside 1..={n}")));
    }
    let ids = match strategy {
        SeedStrategy::Random => {
            let mut rng = rng::sequential(rng_seed);
            index::sample(&mut rng, n, budget).into_vec()
        }
        SeedStrategy::Degree => {
            let scores: Vec<f64> = (0..n).map(|u| graph.degree(u) as f64).collect();
            top_k(&scores, budget, |_| true)
        }
        SeedStrategy::Eigen => {
            let scores = eigen_centrality(graph, EIGEN_TOLERANCE, EIGEN_MAX_ITERATIONS).scores;
            top_k(&scores, budget, |_| true)
        }
    };
    SeedSet::new(ids, n)
}

/// Ordering key used for every score ranking: scores closer than 1e-9 in
/// absolute terms compare equal, so floating-point noise between symmetric
/// nodes cannot override the lower-id tie rule.
#[inline]
pub(crate) fn score_key(score: f64) -> i64 {
    (score * 1e9).round() as i64
}

/// The `k` highest-scoring nodes accepted by `eligible`, best first, ties to
/// the lower id.
pub(crate) fn top_k(scores: &[f64], k: usize, eligible: impl Fn(NodeId) -> bool) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len()).filter(|&u| eligible(u)).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(score_key(scores[u])), u));
    order.truncate(k);
    order
}

/// Power-iteration result.
#[derive(Clone, Debug, PartialEq)]
pub struct Centrality {
    /// Scores normalized to unit max-norm.
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Dominant-eigenvector centrality of the adjacency operator.
///
/// Iterates `x <- (A + I) x` from the uniform vector, rescaling to unit
/// max-norm each step. The identity shift leaves the eigenvectors unchanged
/// but keeps bipartite graphs (stars, paths) from oscillating between the
/// `+lambda` and `-lambda` eigenvectors. On a disconnected graph the iteration
/// settles on the component with the largest eigenvalue.
///
/// A graph without edges has no dominant direction; the uniform vector is
/// returned with `converged == false`.
pub fn eigen_centrality(graph: &Graph, tolerance: f64, max_iterations: usize) -> Centrality {
    let n = graph.node_count();
    let mut x = vec![1.0; n];
    if n == 0 || graph.edge_count() == 0 {
        return Centrality {
            scores: x,
            iterations: 0,
            converged: false,
        };
    }
    let mut next = vec![0.0; n];
    for iteration in 1..=max_iterations {
        for v in 0..n {
            next[v] = x[v] + graph.in_neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        let norm = next.iter().fold(0.0f64, |m, &y| m.max(y.abs()));
        let mut delta = 0.0f64;
        for v in 0..n {
            let y = next[v] / norm;
            delta = delta.max((y - x[v]).abs());
            x[v] = y;
        }
        if delta < tolerance {
            return Centrality {
                scores: x,
                iterations: iteration,
                converged: true,
            };
        }
    }
    Centrality {
        scores: x,
        iterations: max_iterations,
        converged: false,
    }
}
