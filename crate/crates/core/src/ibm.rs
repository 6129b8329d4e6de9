//! Influence blocking: remove a budget of non-seed nodes to shrink the
//! expected spread from a known seed set.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::diffusion::{expected_spread, DiffusionConfig, ModelKind, Run, SpreadEstimate, SUSCEPTIBLE};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::im::{proxy_scores, Proxy};
use crate::rng;
use crate::seeding::{score_key, top_k, SeedSet};

/// Nodes removed from the graph. Never contains a protected seed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BlockSet(Vec<NodeId>);

impl BlockSet {
    /// Validates `ids` against the node range and the seed set.
    pub fn new(mut ids: Vec<NodeId>, seeds: &SeedSet, node_count: usize) -> Result<BlockSet> {
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&v| v >= node_count) {
            return Err(Error::argument(format!("blocked node {bad} out of range 0..{node_count}")));
        }
        if let Some(&bad) = ids.iter().find(|&&v| seeds.contains(v)) {
            return Err(Error::argument(format!("node {bad} is a seed and cannot be blocked")));
        }
        Ok(BlockSet(ids))
    }

    /// The identity block.
    pub fn empty() -> BlockSet {
        BlockSet(Vec::new())
    }

    pub fn removed(&self) -> &[NodeId] {
        &self.0
    }

    pub fn budget(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// `G - ΔG`: the blocked nodes keep their ids but lose every incident arc.
pub fn apply_block(graph: &Graph, block: &BlockSet) -> Result<Graph> {
    graph.without_nodes(block.removed())
}

fn check_budget(graph: &Graph, seeds: &SeedSet, budget: usize) -> Result<()> {
    for &s in seeds.ids() {
        graph.check_node(s)?;
    }
    let free = graph.node_count() - seeds.budget();
    if budget > free {
        return Err(Error::argument(format!(
            "blocking budget {budget} exceeds the {free} non-seed nodes"
        )));
    }
    Ok(())
}

/// Greedy blocking: each round removes the non-seed node whose removal gives
/// the smallest Monte Carlo spread on the already-blocked graph.
///
/// All candidates of a round share the round's simulation streams. Under
/// that coupling a node that no baseline run ever activates cannot change
/// any run when removed, so IC, SI and SIR only simulate nodes some run
/// reached. LT re-normalizes in-weights after a removal and is evaluated
/// exhaustively.
pub fn greedy_block(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &SeedSet,
    budget: usize,
    sims_per_eval: usize,
    rng_seed: u64,
) -> Result<BlockSet> {
    config.validate()?;
    check_budget(graph, seeds, budget)?;
    if sims_per_eval == 0 {
        return Err(Error::argument("simulations per evaluation must be at least 1"));
    }
    let seed_ids = seeds.ids();
    let order = greedy_block_core(graph, config, budget, sims_per_eval, rng_seed, |v| seeds.contains(v), |_| {
        seed_ids.to_vec()
    });
    BlockSet::new(order, seeds, graph.node_count())
}

/// Blocking against unknown sources: every simulation draws `source_count`
/// uniform seeds from its own stream, and any node may be removed.
pub fn greedy_block_unknown_sources(
    graph: &Graph,
    config: &DiffusionConfig,
    source_count: usize,
    budget: usize,
    sims_per_eval: usize,
    rng_seed: u64,
) -> Result<BlockSet> {
    config.validate()?;
    let n = graph.node_count();
    if source_count == 0 || source_count > n || budget > n || sims_per_eval == 0 {
        return Err(Error::argument("source count, budget or simulation count out of range"));
    }
    let order = greedy_block_core(graph, config, budget, sims_per_eval, rng_seed, |_| false, |key| {
        let mut rng = rng::sequential(rng::derive(key, 0x50));
        rand::seq::index::sample(&mut rng, n, source_count).into_vec()
    });
    let mut ids = order;
    ids.sort_unstable();
    Ok(BlockSet(ids))
}

fn greedy_block_core(
    graph: &Graph,
    config: &DiffusionConfig,
    budget: usize,
    sims: usize,
    rng_seed: u64,
    protected: impl Fn(NodeId) -> bool + Sync,
    seeds_for: impl Fn(u64) -> Vec<NodeId> + Sync,
) -> Vec<NodeId> {
    let n = graph.node_count();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(budget);
    let run_seeds: Vec<Vec<NodeId>> = (0..sims).map(|r| seeds_for(rng::derive(rng_seed, r as u64))).collect();
    for round in 0..budget {
        let stream = rng::derive(rng_seed, 0x1000 + round as u64);
        let simulate = |mask: &[bool]| -> Vec<Vec<u8>> {
            (0..sims)
                .into_par_iter()
                .map(|r| {
                    Run {
                        graph,
                        config,
                        seeds: &run_seeds[r],
                        key: rng::derive(stream, r as u64),
                        removed: Some(mask),
                        thresholds: None,
                    }
                    .execute(false)
                    .states
                })
                .collect()
        };
        let total = |states: &[Vec<u8>]| -> usize {
            states
                .iter()
                .map(|s| s.iter().filter(|&&x| x != SUSCEPTIBLE).count())
                .sum()
        };
        let base_states = simulate(&removed);
        let base = total(&base_states);
        let candidates: Vec<NodeId> = (0..n).filter(|&v| !removed[v] && !protected(v)).collect();
        let reached: Vec<bool> = if config.kind == ModelKind::Lt {
            vec![true; n]
        } else {
            let mut reached = vec![false; n];
            for states in &base_states {
                for (v, &s) in states.iter().enumerate() {
                    reached[v] |= s != SUSCEPTIBLE;
                }
            }
            reached
        };
        let evaluated: Vec<(NodeId, f64)> = candidates
            .iter()
            .filter(|&&v| reached[v])
            .map(|&v| {
                let mut mask = removed.clone();
                mask[v] = true;
                let reduction = (base as f64 - total(&simulate(&mask)) as f64) / sims as f64;
                (v, reduction)
            })
            .collect();
        let mut reduction = vec![0.0; n];
        for &(v, r) in &evaluated {
            reduction[v] = r;
        }
        let best = candidates
            .iter()
            .copied()
            .min_by_key(|&v| (std::cmp::Reverse(score_key(reduction[v])), v))
            .expect("budget checked against free nodes");
        removed[best] = true;
        order.push(best);
    }
    order
}

/// Top-`budget` non-seed nodes by proxy score on the original graph.
pub fn proxy_block(
    graph: &Graph,
    proxy: Proxy,
    seeds: &SeedSet,
    budget: usize,
    beta_hat: f64,
    horizon: usize,
) -> Result<BlockSet> {
    check_budget(graph, seeds, budget)?;
    let scores = proxy_scores(graph, proxy, beta_hat, horizon)?;
    let picks = top_k(&scores, budget, |v| !seeds.contains(v));
    BlockSet::new(picks, seeds, graph.node_count())
}

/// Spread with and without a block, estimated on shared streams.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockingEffect {
    pub baseline: SpreadEstimate,
    pub blocked: SpreadEstimate,
    /// `baseline.mean - blocked.mean`; negative for counterproductive blocks.
    pub effect: f64,
}

pub fn blocking_effect(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &SeedSet,
    block: &BlockSet,
    runs: usize,
    rng_seed: u64,
) -> Result<BlockingEffect> {
    let blocked_graph = apply_block(graph, block)?;
    let baseline = expected_spread(graph, config, seeds, runs, rng_seed)?;
    let blocked = expected_spread(&blocked_graph, config, seeds, runs, rng_seed)?;
    Ok(BlockingEffect {
        baseline,
        blocked,
        effect: baseline.mean - blocked.mean,
    })
}

/// Method names accepted for the blocking task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IbmMethod {
    Greedy,
    Proxy(Proxy),
}

impl IbmMethod {
    pub fn name(self) -> &'static str {
        match self {
            IbmMethod::Greedy => "greedy",
            IbmMethod::Proxy(p) => p.name(),
        }
    }
}

impl FromStr for IbmMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(IbmMethod::Greedy),
            other => other
                .parse::<Proxy>()
                .map(IbmMethod::Proxy)
                .map_err(|_| Error::config(format!("unknown blocking method `{other}`"))),
        }
    }
}
