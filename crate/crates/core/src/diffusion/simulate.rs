use rayon::prelude::*;

use super::config::{DiffusionConfig, ModelKind, SirOrder};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;
use crate::seeding::SeedSet;

pub const SUSCEPTIBLE: u8 = 0;
pub const ACTIVE: u8 = 1;
pub const RECOVERED: u8 = 2;
// transient marker for nodes activated during the current round
const PENDING: u8 = 3;

const TAG_IC: u64 = 0x1C;
const TAG_LT: u64 = 0x17;
const TAG_RECOVER: u64 = 0x2EC0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// No further state change is possible.
    Quiescent,
    StepCap,
}

/// Per-step node states of one run.
///
/// `steps[0]` marks exactly the seeds; each later frame is the state after
/// one synchronous round. Rounds that leave a progressive model unchanged end
/// the run and are not recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Vec<u8>>,
    pub seeds: Vec<NodeId>,
    pub terminated: Termination,
}

impl Trace {
    pub fn final_states(&self) -> &[u8] {
        self.steps.last().expect("trace has an initial frame")
    }

    /// Nodes ever activated: active or recovered in the final frame.
    pub fn activated(&self) -> Vec<NodeId> {
        self.final_states()
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s != SUSCEPTIBLE)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn activated_count(&self) -> usize {
        self.final_states().iter().filter(|&&s| s != SUSCEPTIBLE).count()
    }

    /// Number of executed rounds.
    pub fn rounds(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Everything a single run can be parameterized with beyond the public
/// `simulate` arguments.
pub(crate) struct Run<'a> {
    pub graph: &'a Graph,
    pub config: &'a DiffusionConfig,
    pub seeds: &'a [NodeId],
    pub key: u64,
    /// Nodes treated as deleted: they never change state and carry no arcs.
    pub removed: Option<&'a [bool]>,
    /// Fixed LT thresholds instead of per-run draws.
    pub thresholds: Option<&'a [f64]>,
}

pub(crate) struct Outcome {
    pub states: Vec<u8>,
    pub frames: Option<Vec<Vec<u8>>>,
    pub terminated: Termination,
}

impl Outcome {
    pub fn activated_count(&self) -> usize {
        self.states.iter().filter(|&&s| s != SUSCEPTIBLE).count()
    }
}

impl Run<'_> {
    #[inline]
    fn present(&self, v: NodeId) -> bool {
        self.removed.is_none_or(|r| !r[v])
    }

    fn lt_degree(&self, v: NodeId) -> usize {
        match self.removed {
            None => self.graph.in_degree(v),
            Some(r) => self.graph.in_neighbors(v).iter().filter(|&&u| !r[u]).count(),
        }
    }

    fn threshold(&self, v: NodeId) -> f64 {
        match self.thresholds {
            Some(t) => t[v],
            // (0, 1]: a node with no active neighbor never fires
            None => 1.0 - rng::uniform(self.key, TAG_LT, v as u64, 0),
        }
    }

    pub fn execute(&self, record: bool) -> Outcome {
        let n = self.graph.node_count();
        let mut states = vec![SUSCEPTIBLE; n];
        for &s in self.seeds {
            states[s] = ACTIVE;
        }
        let mut frames = record.then(|| vec![states.clone()]);
        let terminated = match self.config.kind {
            ModelKind::Ic => self.run_ic(&mut states, &mut frames),
            ModelKind::Lt => self.run_lt(&mut states, &mut frames),
            ModelKind::Si | ModelKind::Sir => self.run_epidemic(&mut states, &mut frames),
        };
        Outcome {
            states,
            frames,
            terminated,
        }
    }

    fn run_ic(&self, states: &mut [u8], frames: &mut Option<Vec<Vec<u8>>>) -> Termination {
        let p = self.config.p;
        let mut frontier: Vec<NodeId> = self.seeds.to_vec();
        let mut next = Vec::new();
        for _ in 0..self.config.max_steps {
            next.clear();
            for &u in &frontier {
                if !self.present(u) {
                    continue;
                }
                for &v in self.graph.neighbors(u) {
                    if states[v] == SUSCEPTIBLE
                        && self.present(v)
                        && rng::coin(p, self.key, TAG_IC, u as u64, v as u64)
                    {
                        states[v] = ACTIVE;
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                return Termination::Quiescent;
            }
            if let Some(f) = frames {
                f.push(states.to_vec());
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        Termination::StepCap
    }

    fn run_lt(&self, states: &mut [u8], frames: &mut Option<Vec<Vec<u8>>>) -> Termination {
        let n = self.graph.node_count();
        let mut hits = vec![0u32; n];
        let mut frontier: Vec<NodeId> = self.seeds.to_vec();
        let mut touched = Vec::new();
        let mut next = Vec::new();
        for _ in 0..self.config.max_steps {
            touched.clear();
            for &u in &frontier {
                if !self.present(u) {
                    continue;
                }
                for &v in self.graph.neighbors(u) {
                    if states[v] == SUSCEPTIBLE && self.present(v) {
                        touched.push(v);
                        hits[v] += 1;
                    }
                }
            }
            next.clear();
            touched.sort_unstable();
            touched.dedup();
            for &v in &touched {
                let weight = hits[v] as f64 / self.lt_degree(v) as f64;
                if weight >= self.threshold(v) {
                    next.push(v);
                }
            }
            if next.is_empty() {
                return Termination::Quiescent;
            }
            for &v in &next {
                states[v] = ACTIVE;
            }
            if let Some(f) = frames {
                f.push(states.to_vec());
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        Termination::StepCap
    }

    fn run_epidemic(&self, states: &mut [u8], frames: &mut Option<Vec<Vec<u8>>>) -> Termination {
        let beta = self.config.beta;
        let sir = self.config.kind == ModelKind::Sir;
        let gamma = if sir { self.config.gamma } else { 0.0 };
        let recover_first = sir && self.config.sir_order == SirOrder::RecoverThenInfect;
        let mut infected: Vec<NodeId> = self.seeds.iter().copied().filter(|&s| self.present(s)).collect();
        let mut fresh = Vec::new();
        for step in 1..=self.config.max_steps {
            let t = step as u64;
            if infected.is_empty() || (beta <= 0.0 && gamma <= 0.0) {
                return Termination::Quiescent;
            }
            if recover_first {
                self.recover(t, gamma, states, &mut infected);
            }
            fresh.clear();
            let mut contacts = 0usize;
            if beta > 0.0 {
                for &u in &infected {
                    for &v in self.graph.neighbors(u) {
                        if states[v] == SUSCEPTIBLE && self.present(v) {
                            contacts += 1;
                            if rng::coin(beta, self.key, t, u as u64, v as u64) {
                                states[v] = PENDING;
                                fresh.push(v);
                            }
                        }
                    }
                }
            }
            if !sir && contacts == 0 {
                // every infected node is surrounded; SI can never change again
                return Termination::Quiescent;
            }
            if !recover_first {
                self.recover(t, gamma, states, &mut infected);
            }
            for &v in &fresh {
                states[v] = ACTIVE;
            }
            infected.extend_from_slice(&fresh);
            if let Some(f) = frames {
                f.push(states.to_vec());
            }
        }
        Termination::StepCap
    }

    fn recover(&self, t: u64, gamma: f64, states: &mut [u8], infected: &mut Vec<NodeId>) {
        if gamma <= 0.0 {
            return;
        }
        infected.retain(|&u| {
            if rng::coin(gamma, self.key, TAG_RECOVER, t, u as u64) {
                states[u] = RECOVERED;
                false
            } else {
                true
            }
        });
    }
}

fn check_seeds(graph: &Graph, config: &DiffusionConfig, seeds: &SeedSet) -> Result<()> {
    config.validate()?;
    if seeds.ids().is_empty() {
        return Err(Error::argument("seed set is empty"));
    }
    for &s in seeds.ids() {
        graph.check_node(s)?;
    }
    Ok(())
}

/// Runs one synchronous simulation and records every frame.
pub fn simulate(graph: &Graph, config: &DiffusionConfig, seeds: &SeedSet, rng_seed: u64) -> Result<Trace> {
    check_seeds(graph, config, seeds)?;
    Ok(trace_of(Run {
        graph,
        config,
        seeds: seeds.ids(),
        key: rng_seed,
        removed: None,
        thresholds: None,
    }))
}

/// LT simulation with caller-supplied thresholds, one per node.
pub fn simulate_with_thresholds(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &SeedSet,
    thresholds: &[f64],
) -> Result<Trace> {
    check_seeds(graph, config, seeds)?;
    if config.kind != ModelKind::Lt {
        return Err(Error::Unsupported("fixed thresholds apply to LT only".into()));
    }
    if thresholds.len() != graph.node_count() {
        return Err(Error::argument("one threshold per node required"));
    }
    Ok(trace_of(Run {
        graph,
        config,
        seeds: seeds.ids(),
        key: 0,
        removed: None,
        thresholds: Some(thresholds),
    }))
}

fn trace_of(run: Run<'_>) -> Trace {
    let outcome = run.execute(true);
    Trace {
        steps: outcome.frames.expect("recorded"),
        seeds: run.seeds.to_vec(),
        terminated: outcome.terminated,
    }
}

/// Monte Carlo estimate of the expected activated-set size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpreadEstimate {
    pub mean: f64,
    /// Sample standard deviation (zero for a single run).
    pub std: f64,
    pub runs: usize,
}

impl SpreadEstimate {
    pub fn from_samples(samples: &[f64]) -> SpreadEstimate {
        let runs = samples.len();
        let mean = samples.iter().sum::<f64>() / runs as f64;
        let std = if runs > 1 {
            let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
            (ss / (runs - 1) as f64).sqrt()
        } else {
            0.0
        };
        SpreadEstimate { mean, std, runs }
    }

    pub fn standard_error(&self) -> f64 {
        self.std / (self.runs as f64).sqrt()
    }
}

/// Activated-set sizes of `runs` simulations; run `r` uses stream
/// `derive(key, r)`. Output order follows the run index.
pub(crate) fn spread_samples(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &[NodeId],
    runs: usize,
    key: u64,
    removed: Option<&[bool]>,
) -> Vec<usize> {
    (0..runs)
        .into_par_iter()
        .with_min_len(16)
        .map(|r| {
            Run {
                graph,
                config,
                seeds,
                key: rng::derive(key, r as u64),
                removed,
                thresholds: None,
            }
            .execute(false)
            .activated_count()
        })
        .collect()
}

pub(crate) fn mean_spread(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &[NodeId],
    runs: usize,
    key: u64,
    removed: Option<&[bool]>,
) -> f64 {
    let samples = spread_samples(graph, config, seeds, runs, key, removed);
    samples.iter().sum::<usize>() as f64 / runs as f64
}

/// Mean and sample standard deviation of the activated-set size over `runs`
/// independent simulations. Run `r` draws from stream `derive(rng_seed, r)`,
/// so the estimate does not depend on how runs are scheduled.
pub fn expected_spread(
    graph: &Graph,
    config: &DiffusionConfig,
    seeds: &SeedSet,
    runs: usize,
    rng_seed: u64,
) -> Result<SpreadEstimate> {
    check_seeds(graph, config, seeds)?;
    if runs == 0 {
        return Err(Error::argument("runs must be at least 1"));
    }
    let samples: Vec<f64> = spread_samples(graph, config, seeds.ids(), runs, rng_seed, None)
        .into_iter()
        .map(|c| c as f64)
        .collect();
    Ok(SpreadEstimate::from_samples(&samples))
}
