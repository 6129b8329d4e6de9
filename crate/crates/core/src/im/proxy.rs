use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::{eigen_centrality, EIGEN_MAX_ITERATIONS, EIGEN_TOLERANCE};

pub const DEFAULT_HORIZON: usize = 5;

/// Closed-form node scores standing in for simulated influence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Proxy {
    Degree,
    Eigen,
    /// Spread score plus the damped spread scores of the one-hop neighborhood.
    Pi,
    /// Truncated power series `sum_{t=1..H} (beta A)^t 1`.
    Sigma,
}

impl Proxy {
    pub const ALL: [Proxy; 4] = [Proxy::Degree, Proxy::Eigen, Proxy::Pi, Proxy::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Proxy::Degree => "degree",
            Proxy::Eigen => "eigen",
            Proxy::Pi => "pi",
            Proxy::Sigma => "sigma",
        }
    }
}

impl FromStr for Proxy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(Proxy::Degree),
            "eigen" => Ok(Proxy::Eigen),
            "pi" => Ok(Proxy::Pi),
            "sigma" => Ok(Proxy::Sigma),
            other => Err(Error::config(format!("unknown proxy `{other}`"))),
        }
    }
}

impl fmt::Display for Proxy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn spread_series(graph: &Graph, beta_hat: f64, horizon: usize) -> Vec<f64> {
    let n = graph.node_count();
    let mut term = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut total = vec![0.0; n];
    for _ in 0..horizon {
        for v in 0..n {
            next[v] = beta_hat * graph.neighbors(v).iter().map(|&u| term[u]).sum::<f64>();
        }
        std::mem::swap(&mut term, &mut next);
        for (t, x) in total.iter_mut().zip(&term) {
            *t += x;
        }
    }
    total
}

/// Per-node proxy scores. `beta_hat` and `horizon` only affect `pi` and
/// `sigma`, but are validated for every proxy.
pub fn proxy_scores(graph: &Graph, proxy: Proxy, beta_hat: f64, horizon: usize) -> Result<Vec<f64>> {
    if !(beta_hat > 0.0 && beta_hat <= 1.0) {
        return Err(Error::argument(format!("beta_hat={beta_hat} outside (0, 1]")));
    }
    if horizon == 0 {
        return Err(Error::argument("horizon must be at least 1"));
    }
    let n = graph.node_count();
    Ok(match proxy {
        Proxy::Degree => (0..n).map(|v| graph.degree(v) as f64).collect(),
        Proxy::Eigen => eigen_centrality(graph, EIGEN_TOLERANCE, EIGEN_MAX_ITERATIONS).scores,
        Proxy::Sigma => spread_series(graph, beta_hat, horizon),
        Proxy::Pi => {
            let s = spread_series(graph, beta_hat, horizon);
            (0..n)
                .map(|v| s[v] + beta_hat * graph.neighbors(v).iter().map(|&u| s[u]).sum::<f64>())
                .collect()
        }
    })
}
