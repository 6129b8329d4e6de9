use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng;

/// Random graph model and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphGenSpec {
    /// Each unordered pair is an edge independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Preferential attachment of `m` edges per new node onto an `m + 1` clique.
    BarabasiAlbert { n: usize, m: usize },
    /// Ring lattice of degree `k` with each lattice edge rewired with probability `p`.
    WattsStrogatz {
        n: usize,
        #[serde(default = "default_ws_k")]
        k: usize,
        #[serde(default = "default_ws_p")]
        p: f64,
    },
}

fn default_ws_k() -> usize {
    6
}

fn default_ws_p() -> f64 {
    0.1
}

impl GraphGenSpec {
    /// Small-world graph with the default lattice degree 6 and rewiring 0.1.
    pub fn small_world(n: usize) -> GraphGenSpec {
        GraphGenSpec::WattsStrogatz {
            n,
            k: default_ws_k(),
            p: default_ws_p(),
        }
    }

    pub fn node_count(&self) -> usize {
        match *self {
            GraphGenSpec::ErdosRenyi { n, .. }
            | GraphGenSpec::BarabasiAlbert { n, .. }
            | GraphGenSpec::WattsStrogatz { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check_p = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::config(format!("probability {p} outside [0, 1]")))
            }
        };
        match *self {
            GraphGenSpec::ErdosRenyi { p, .. } => check_p(p),
            GraphGenSpec::BarabasiAlbert { n, m } => {
                if m == 0 || m >= n {
                    Err(Error::config(format!("barabasi_albert needs 1 <= m < n (m={m}, n={n})")))
                } else {
                    Ok(())
                }
            }
            GraphGenSpec::WattsStrogatz { n, k, p } => {
                check_p(p)?;
                if k < 2 || k % 2 != 0 || k >= n {
                    Err(Error::config(format!(
                        "watts_strogatz needs even k with 2 <= k < n (k={k}, n={n})"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for GraphGenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphGenSpec::ErdosRenyi { n, p } => write!(f, "er(n={n},p={p})"),
            GraphGenSpec::BarabasiAlbert { n, m } => write!(f, "ba(n={n},m={m})"),
            GraphGenSpec::WattsStrogatz { n, k, p } => write!(f, "ws(n={n},k={k},p={p})"),
        }
    }
}

/// Draws an undirected graph from `spec`. The result is a pure function of
/// `(spec, rng_seed)`.
pub fn generate(spec: &GraphGenSpec, rng_seed: u64) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::sequential(rng_seed);
    let edges = match *spec {
        GraphGenSpec::ErdosRenyi { n, p } => erdos_renyi(n, p, &mut rng),
        GraphGenSpec::BarabasiAlbert { n, m } => barabasi_albert(n, m, &mut rng),
        GraphGenSpec::WattsStrogatz { n, k, p } => watts_strogatz(n, k, p, &mut rng),
    };
    Graph::from_edges(spec.node_count(), false, &edges)
}

fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn barabasi_albert(n: usize, m: usize, rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // every node appears once per incident edge, so a uniform pick is degree-proportional
    let mut pool = Vec::with_capacity(2 * edges.capacity());
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            pool.push(u);
            pool.push(v);
        }
    }
    let mut chosen = BTreeSet::new();
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            chosen.insert(pool[rng.random_range(0..pool.len())]);
        }
        for &u in &chosen {
            edges.push((u, v));
            pool.push(u);
        }
        pool.extend(std::iter::repeat_n(v, m));
    }
    edges
}

fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    let mut adj: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.random::<f64>() >= p || !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    adj.iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect()
}
