use std::time::Instant;

use rayon::prelude::*;

use super::spec::{ExperimentSpec, MethodEntry, Method, Output, RunDescriptor, DEFAULT_BLOCK_BUDGET};
use super::expand_spec;
use crate::diffusion::{expected_spread, simulate, DiffusionConfig, ModelKind, SpreadEstimate, Trace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ibm::{apply_block, blocking_effect, greedy_block, proxy_block, IbmMethod};
use crate::im::{celf_im, greedy_im, proxy_im, ris_im, ImMethod, ImResult, DEFAULT_HORIZON, DEFAULT_RR_SETS, DEFAULT_SIMS_PER_EVAL};
use crate::rng;
use crate::seeding::select_seeds;
use crate::sl::{source_distance, Observation};

const TAG_GRAPH: u64 = 0x6772_6170_6800_0000;
const STREAM_METHOD: u64 = 1;
const STREAM_EVAL: u64 = 2;
const STREAM_SEEDS: u64 = 3;
const STREAM_CASCADE: u64 = 4;

/// One row of results: a descriptor aggregated over its epochs.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub run_index: usize,
    pub graph: String,
    pub diffusion: String,
    pub seed_strategy: String,
    pub method: String,
    pub budget: usize,
    pub epochs: usize,
    pub metric: String,
    pub mean: f64,
    pub std: f64,
    /// Mean wall time of the method call per epoch, evaluation excluded.
    pub runtime_seconds: f64,
    /// Reason the run failed; mean and std are NaN when set.
    pub error: Option<String>,
}

impl ResultRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// A diffusion trace kept for export, with the graph it ran on.
#[derive(Clone, Debug)]
pub struct TraceRecord {
    pub run_index: usize,
    pub graph: Graph,
    pub trace: Trace,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub records: Vec<ResultRecord>,
    /// Epoch-0 trace of every successful run, when `trace_json` output is on.
    pub traces: Vec<TraceRecord>,
}

impl RunReport {
    pub fn any_failed(&self) -> bool {
        self.records.iter().any(ResultRecord::failed)
    }
}

struct EpochOutcome {
    value: f64,
    seconds: f64,
    trace: Option<(Graph, Trace)>,
}

/// Stream for `(run_index, epoch)`; the root of every random draw in a job.
pub fn epoch_key(master_seed: u64, run_index: usize, epoch: usize) -> u64 {
    rng::derive(rng::derive(master_seed, run_index as u64), epoch as u64)
}

/// Generator seed for the `index`-th graph entry.
pub fn graph_seed(master_seed: u64, index: usize) -> u64 {
    rng::derive(master_seed ^ TAG_GRAPH, index as u64)
}

/// Runs every descriptor for `spec.epochs` epochs on a pool of `parallelism`
/// threads. Values do not depend on `parallelism`; a failing run becomes a
/// failed record and the rest still execute.
pub fn run_experiments(spec: &ExperimentSpec, parallelism: usize) -> Result<RunReport> {
    if parallelism == 0 {
        return Err(Error::argument("parallelism must be at least 1"));
    }
    let runs = expand_spec(spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::argument(format!("cannot start thread pool: {e}")))?;
    let keep_traces = spec.outputs.contains(&Output::TraceJson);

    pool.install(|| {
        let graphs: Vec<std::result::Result<Graph, String>> = spec
            .graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| g.load(graph_seed(spec.master_seed, i)).map_err(|e| e.to_string()))
            .collect();
        let jobs: Vec<(usize, usize)> = (0..runs.len())
            .flat_map(|r| (0..spec.epochs).map(move |e| (r, e)))
            .collect();
        let outcomes: Vec<std::result::Result<EpochOutcome, String>> = jobs
            .par_iter()
            .map(|&(r, epoch)| {
                let run = &runs[r];
                let graph = graphs[run.graph].as_ref().map_err(Clone::clone)?;
                run_epoch(spec, run, graph, epoch, keep_traces && epoch == 0).map_err(|e| e.to_string())
            })
            .collect();

        let mut report = RunReport::default();
        for (run, chunk) in runs.iter().zip(outcomes.chunks(spec.epochs)) {
            let mut record = ResultRecord {
                run_index: run.run_index,
                graph: spec.graphs[run.graph].label(),
                diffusion: spec.diffusions[run.diffusion].to_string(),
                seed_strategy: spec.seeds[run.seed].strategy.name().to_string(),
                method: run.resolved.name().to_string(),
                budget: record_budget(spec, run),
                epochs: spec.epochs,
                metric: spec.task.metric().to_string(),
                mean: f64::NAN,
                std: f64::NAN,
                runtime_seconds: 0.0,
                error: None,
            };
            match chunk.iter().find_map(|o| o.as_ref().err()) {
                Some(reason) => record.error = Some(reason.clone()),
                None => {
                    let ok: Vec<&EpochOutcome> = chunk.iter().map(|o| o.as_ref().expect("checked")).collect();
                    let values: Vec<f64> = ok.iter().map(|o| o.value).collect();
                    let stats = SpreadEstimate::from_samples(&values);
                    record.mean = stats.mean;
                    record.std = stats.std;
                    record.runtime_seconds = ok.iter().map(|o| o.seconds).sum::<f64>() / spec.epochs as f64;
                }
            }
            report.records.push(record);
        }
        for (&(r, _), outcome) in jobs.iter().zip(outcomes) {
            if let Ok(EpochOutcome { trace: Some((graph, trace)), .. }) = outcome {
                report.traces.push(TraceRecord {
                    run_index: runs[r].run_index,
                    graph,
                    trace,
                });
            }
        }
        Ok(report)
    })
}

fn record_budget(spec: &ExperimentSpec, run: &RunDescriptor) -> usize {
    match run.resolved {
        Method::Ibm(_) => spec.methods[run.method].budget.unwrap_or(DEFAULT_BLOCK_BUDGET),
        _ => spec.seeds[run.seed].budget,
    }
}

/// Proxy transmission estimate when the method entry gives none.
fn default_beta_hat(config: &DiffusionConfig) -> f64 {
    let own = match config.kind {
        ModelKind::Ic => config.p,
        ModelKind::Si | ModelKind::Sir => config.beta,
        ModelKind::Lt => 0.0,
    };
    if own > 0.0 {
        own
    } else {
        0.1
    }
}

fn run_epoch(
    spec: &ExperimentSpec,
    run: &RunDescriptor,
    graph: &Graph,
    epoch: usize,
    keep_trace: bool,
) -> Result<EpochOutcome> {
    let key = epoch_key(spec.master_seed, run.run_index, epoch);
    let stream = |s| rng::derive(key, s);
    let config = &spec.diffusions[run.diffusion];
    let seed_entry = spec.seeds[run.seed];
    let params: &MethodEntry = &spec.methods[run.method];
    let sims = params.sims.unwrap_or(DEFAULT_SIMS_PER_EVAL);
    let beta_hat = params.beta_hat.unwrap_or_else(|| default_beta_hat(config));
    let horizon = params.horizon.unwrap_or(DEFAULT_HORIZON);

    match run.resolved {
        Method::Im(method) => {
            let budget = seed_entry.budget;
            let start = Instant::now();
            let result: ImResult = match method {
                ImMethod::Greedy => greedy_im(graph, config, budget, sims, stream(STREAM_METHOD))?,
                ImMethod::Celf => celf_im(graph, config, budget, sims, stream(STREAM_METHOD), false)?,
                ImMethod::CelfPlusPlus => celf_im(graph, config, budget, sims, stream(STREAM_METHOD), true)?,
                ImMethod::Ris => ris_im(
                    graph,
                    config,
                    budget,
                    params.rr_sets.unwrap_or(DEFAULT_RR_SETS),
                    stream(STREAM_METHOD),
                )?,
                ImMethod::Proxy(proxy) => proxy_im(graph, proxy, budget, beta_hat, horizon)?,
            };
            let seconds = start.elapsed().as_secs_f64();
            let estimate = expected_spread(graph, config, &result.seeds, spec.eval_runs, stream(STREAM_EVAL))?;
            let trace = if keep_trace {
                Some((graph.clone(), simulate(graph, config, &result.seeds, stream(STREAM_EVAL))?))
            } else {
                None
            };
            Ok(EpochOutcome {
                value: estimate.mean,
                seconds,
                trace,
            })
        }
        Method::Ibm(method) => {
            let seeds = select_seeds(graph, seed_entry.strategy, seed_entry.budget, stream(STREAM_SEEDS))?;
            let budget = params.budget.unwrap_or(DEFAULT_BLOCK_BUDGET);
            let start = Instant::now();
            let block = match method {
                IbmMethod::Greedy => greedy_block(graph, config, &seeds, budget, sims, stream(STREAM_METHOD))?,
                IbmMethod::Proxy(proxy) => proxy_block(graph, proxy, &seeds, budget, beta_hat, horizon)?,
            };
            let seconds = start.elapsed().as_secs_f64();
            let effect = blocking_effect(graph, config, &seeds, &block, spec.eval_runs, stream(STREAM_EVAL))?;
            let trace = if keep_trace {
                let blocked = apply_block(graph, &block)?;
                let trace = simulate(&blocked, config, &seeds, stream(STREAM_EVAL))?;
                Some((blocked, trace))
            } else {
                None
            };
            Ok(EpochOutcome {
                value: effect.effect,
                seconds,
                trace,
            })
        }
        Method::Sl(method) => {
            let truth = select_seeds(graph, seed_entry.strategy, seed_entry.budget, stream(STREAM_SEEDS))?;
            let cascade = simulate(graph, config, &truth, stream(STREAM_CASCADE))?;
            let obs = Observation::new(cascade.activated(), graph.node_count(), Some(config.max_steps))?;
            let start = Instant::now();
            let located = method.locate(graph, &obs, seed_entry.budget)?;
            let seconds = start.elapsed().as_secs_f64();
            let distance = source_distance(graph, &located.predicted, truth.ids())?;
            Ok(EpochOutcome {
                value: distance,
                seconds,
                trace: keep_trace.then(|| (graph.clone(), cascade)),
            })
        }
    }
}
