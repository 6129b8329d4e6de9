use crate::diffusion::{mean_spread, DiffusionConfig, ExactSpreadTable, ModelKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Estimator of `f(S)`, the expected activated-set size of seed set `S`.
///
/// `stream` selects the randomness. Two calls with the same stream are
/// coupled, so `f(S ∪ {v}) - f(S)` under one stream is a low-variance gain
/// estimate.
pub trait SpreadOracle: Sync {
    fn node_count(&self) -> usize;

    fn spread(&self, seeds: &[NodeId], stream: u64) -> f64;

    /// True when `spread` ignores `stream`, so values may be reused across
    /// streams.
    fn is_exact(&self) -> bool {
        false
    }
}

/// Averages `runs` simulations per call.
#[derive(Clone, Copy, Debug)]
pub struct MonteCarloOracle<'a> {
    pub graph: &'a Graph,
    pub config: &'a DiffusionConfig,
    pub runs: usize,
}

impl<'a> MonteCarloOracle<'a> {
    pub fn new(graph: &'a Graph, config: &'a DiffusionConfig, runs: usize) -> Result<Self> {
        config.validate()?;
        if runs == 0 {
            return Err(Error::argument("simulations per evaluation must be at least 1"));
        }
        Ok(MonteCarloOracle { graph, config, runs })
    }
}

impl SpreadOracle for MonteCarloOracle<'_> {
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn spread(&self, seeds: &[NodeId], stream: u64) -> f64 {
        if seeds.is_empty() {
            return 0.0;
        }
        mean_spread(self.graph, self.config, seeds, self.runs, stream, None)
    }
}

/// Exact IC spreads from live-edge enumeration, for seed sets up to a fixed
/// size.
#[derive(Clone, Debug)]
pub struct ExactOracle {
    table: ExactSpreadTable,
}

impl ExactOracle {
    pub fn new(graph: &Graph, config: &DiffusionConfig, max_seeds: usize) -> Result<ExactOracle> {
        if config.kind != ModelKind::Ic {
            return Err(Error::Unsupported("the exact oracle covers IC only".into()));
        }
        Ok(ExactOracle {
            table: ExactSpreadTable::build(graph, config.p, max_seeds)?,
        })
    }

    pub fn from_table(table: ExactSpreadTable) -> ExactOracle {
        ExactOracle { table }
    }
}

impl SpreadOracle for ExactOracle {
    fn node_count(&self) -> usize {
        self.table.node_count()
    }

    fn spread(&self, seeds: &[NodeId], _stream: u64) -> f64 {
        let mut sorted = seeds.to_vec();
        sorted.sort_unstable();
        self.table
            .spread(&sorted)
            .unwrap_or_else(|| panic!("seed set {sorted:?} larger than the tabulated size"))
    }

    fn is_exact(&self) -> bool {
        true
    }
}
