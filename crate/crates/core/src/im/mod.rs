//! Influence maximization: choose `k` seeds maximizing expected spread.
//!
//! Three families are provided: simulation-based greedy ([`greedy_im`],
//! [`celf_im`]), sketch-based ([`ris_im`]) and proxy-based ([`proxy_im`]).

mod greedy;
mod oracle;
mod proxy;
mod ris;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use greedy::{greedy, lazy_greedy, Selection};
pub use oracle::{ExactOracle, MonteCarloOracle, SpreadOracle};
pub use proxy::{proxy_scores, Proxy, DEFAULT_HORIZON};

use crate::diffusion::{DiffusionConfig, ModelKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::seeding::{top_k, SeedSet};

pub const DEFAULT_SIMS_PER_EVAL: usize = 100;
pub const DEFAULT_RR_SETS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ImResult {
    pub seeds: SeedSet,
    /// Seeds in the order they were picked.
    pub order: Vec<NodeId>,
    /// Estimated gain of each pick when it was chosen, aligned with `order`.
    pub marginal_gains: Vec<f64>,
    /// Spread evaluations performed (simulation-based methods only).
    pub evaluations: usize,
    pub wall_time: f64,
}

impl ImResult {
    fn new(order: Vec<NodeId>, gains: Vec<f64>, evaluations: usize, n: usize, start: Instant) -> Result<Self> {
        Ok(ImResult {
            seeds: SeedSet::new(order.clone(), n)?,
            order,
            marginal_gains: gains,
            evaluations,
            wall_time: start.elapsed().as_secs_f64(),
        })
    }
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if budget == 0 || budget > n {
        Err(Error::argument(format!("budget {budget} outside 1..={n}")))
    } else {
        Ok(())
    }
}

/// Greedy selection driven by an arbitrary spread oracle.
pub fn greedy_im_with<O: SpreadOracle + ?Sized>(oracle: &O, budget: usize, rng_seed: u64) -> Result<ImResult> {
    let start = Instant::now();
    check_budget(oracle.node_count(), budget)?;
    let s = greedy(oracle, budget, rng_seed);
    ImResult::new(s.picks, s.gains, s.evaluations, oracle.node_count(), start)
}

/// CELF (or CELF++ with `lookahead`) driven by an arbitrary spread oracle.
pub fn celf_im_with<O: SpreadOracle + ?Sized>(
    oracle: &O,
    budget: usize,
    rng_seed: u64,
    lookahead: bool,
) -> Result<ImResult> {
    let start = Instant::now();
    check_budget(oracle.node_count(), budget)?;
    let s = lazy_greedy(oracle, budget, rng_seed, lookahead);
    ImResult::new(s.picks, s.gains, s.evaluations, oracle.node_count(), start)
}

/// Monte Carlo greedy with `sims_per_eval` simulations per spread estimate.
pub fn greedy_im(
    graph: &Graph,
    config: &DiffusionConfig,
    budget: usize,
    sims_per_eval: usize,
    rng_seed: u64,
) -> Result<ImResult> {
    greedy_im_with(&MonteCarloOracle::new(graph, config, sims_per_eval)?, budget, rng_seed)
}

/// Monte Carlo CELF; `lookahead` selects CELF++.
pub fn celf_im(
    graph: &Graph,
    config: &DiffusionConfig,
    budget: usize,
    sims_per_eval: usize,
    rng_seed: u64,
    lookahead: bool,
) -> Result<ImResult> {
    celf_im_with(
        &MonteCarloOracle::new(graph, config, sims_per_eval)?,
        budget,
        rng_seed,
        lookahead,
    )
}

/// Arc liveness used to build RR sets. SI is approximated by IC with the
/// probability that at least one of `max_steps` attempts succeeds.
pub fn sketch_probability(config: &DiffusionConfig) -> Result<f64> {
    config.validate()?;
    match config.kind {
        ModelKind::Ic => Ok(config.p),
        ModelKind::Si => Ok(1.0 - (1.0 - config.beta).powi(config.max_steps as i32)),
        other => Err(Error::Unsupported(format!("RR sketches do not support {}", other.name()))),
    }
}

/// Reverse-reachable sketch selection. Gains are reported as the fraction of
/// sets newly covered times the node count.
pub fn ris_im(
    graph: &Graph,
    config: &DiffusionConfig,
    budget: usize,
    num_rr_sets: usize,
    rng_seed: u64,
) -> Result<ImResult> {
    let start = Instant::now();
    let p = sketch_probability(config)?;
    let n = graph.node_count();
    check_budget(n, budget)?;
    if num_rr_sets == 0 {
        return Err(Error::argument("num_rr_sets must be at least 1"));
    }
    let sets = ris::sample_rr_sets(graph, p, num_rr_sets, rng_seed);
    let (picks, newly) = ris::max_coverage(n, &sets, budget);
    let scale = n as f64 / num_rr_sets as f64;
    let gains = newly.into_iter().map(|c| c as f64 * scale).collect();
    ImResult::new(picks, gains, 0, n, start)
}

/// Top-`budget` nodes by proxy score, ties to the lower id.
pub fn proxy_im(graph: &Graph, proxy: Proxy, budget: usize, beta_hat: f64, horizon: usize) -> Result<ImResult> {
    let start = Instant::now();
    check_budget(graph.node_count(), budget)?;
    let scores = proxy_scores(graph, proxy, beta_hat, horizon)?;
    let order = top_k(&scores, budget, |_| true);
    let gains = order.iter().map(|&v| scores[v]).collect();
    ImResult::new(order, gains, 0, graph.node_count(), start)
}

/// Method names accepted in experiment configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImMethod {
    Greedy,
    Celf,
    CelfPlusPlus,
    Ris,
    Proxy(Proxy),
}

impl ImMethod {
    pub fn name(self) -> &'static str {
        match self {
            ImMethod::Greedy => "greedy",
            ImMethod::Celf => "celf",
            ImMethod::CelfPlusPlus => "celfpp",
            ImMethod::Ris => "ris",
            ImMethod::Proxy(p) => p.name(),
        }
    }
}

impl FromStr for ImMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(ImMethod::Greedy),
            "celf" => Ok(ImMethod::Celf),
            "celfpp" | "celf++" => Ok(ImMethod::CelfPlusPlus),
            "ris" => Ok(ImMethod::Ris),
            other => other
                .parse::<Proxy>()
                .map(ImMethod::Proxy)
                .map_err(|_| Error::config(format!("unknown IM method `{other}`"))),
        }
    }
}

impl fmt::Display for ImMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
