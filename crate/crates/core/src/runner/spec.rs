use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::diffusion::{DiffusionConfig, ModelKind, SirOrder, DEFAULT_IC_P};
use crate::error::{Error, Result};
use crate::graph::{generate, read_edge_list_file, Graph, GraphGenSpec};
use crate::ibm::IbmMethod;
use crate::im::ImMethod;
use crate::seeding::SeedStrategy;
use crate::sl::SlMethod;

/// Simulations used to score a method's output when the config is silent.
pub const DEFAULT_EVAL_RUNS: usize = 1000;
/// Blocking budget when a blocking method entry does not set one.
pub const DEFAULT_BLOCK_BUDGET: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Im,
    Ibm,
    Sl,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Im => "im",
            Task::Ibm => "ibm",
            Task::Sl => "sl",
        }
    }

    /// Metric column value for records of this task.
    pub fn metric(self) -> &'static str {
        match self {
            Task::Im => "IE",
            Task::Ibm => "blocked",
            Task::Sl => "distance",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Csv,
    TraceJson,
    Summary,
}

/// A generated graph or an edge-list file.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    File {
        path: PathBuf,
        #[serde(default)]
        directed: bool,
        label: Option<String>,
    },
    Generated(GraphGenSpec),
}

impl GraphSource {
    pub fn label(&self) -> String {
        match self {
            GraphSource::File { path, label, .. } => label.clone().unwrap_or_else(|| {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string())
            }),
            GraphSource::Generated(spec) => spec.to_string(),
        }
    }

    /// Reads or generates the graph; `rng_seed` only matters for generators.
    pub fn load(&self, rng_seed: u64) -> Result<Graph> {
        match self {
            GraphSource::File { path, directed, .. } => read_edge_list_file(path, *directed).map(|(g, _)| g),
            GraphSource::Generated(spec) => generate(spec, rng_seed),
        }
    }
}

/// One `[[seed]]` entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedEntry {
    pub strategy: SeedStrategy,
    pub budget: usize,
}

/// One `[[method]]` entry. Parameters a method does not use are ignored.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodEntry {
    pub name: String,
    /// Simulations per spread evaluation (greedy, CELF, CELF++, greedy blocking).
    pub sims: Option<usize>,
    /// Number of RR sets (ris).
    pub rr_sets: Option<usize>,
    /// Transmission estimate for proxies; defaults to the diffusion's own.
    pub beta_hat: Option<f64>,
    pub horizon: Option<usize>,
    /// Nodes to remove (blocking task).
    pub budget: Option<usize>,
}

/// A method resolved against the task it runs under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Im(ImMethod),
    Ibm(IbmMethod),
    Sl(SlMethod),
}

impl Method {
    pub fn resolve(task: Task, name: &str) -> Result<Method> {
        let method = match task {
            Task::Im => name.parse().map(Method::Im),
            Task::Ibm => name.parse().map(Method::Ibm),
            Task::Sl => name.parse().map(Method::Sl),
        };
        method.map_err(|_| Error::config(format!("method `{name}` is not valid for task {}", task.name())))
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Im(m) => m.name(),
            Method::Ibm(m) => m.name(),
            Method::Sl(m) => m.name(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parsed experiment configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub task: Task,
    pub epochs: usize,
    pub master_seed: u64,
    pub outputs: Vec<Output>,
    pub eval_runs: usize,
    pub graphs: Vec<GraphSource>,
    pub diffusions: Vec<DiffusionConfig>,
    pub seeds: Vec<SeedEntry>,
    pub methods: Vec<MethodEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    task: Task,
    epochs: usize,
    master_seed: u64,
    #[serde(default = "default_outputs")]
    outputs: Vec<Output>,
    #[serde(default = "default_eval_runs")]
    eval_runs: usize,
    #[serde(default)]
    graph: Vec<GraphSource>,
    #[serde(default)]
    diffusion: Vec<RawDiffusion>,
    #[serde(default)]
    seed: Vec<RawSeed>,
    #[serde(default)]
    method: Vec<MethodEntry>,
}

fn default_outputs() -> Vec<Output> {
    vec![Output::Csv]
}

fn default_eval_runs() -> usize {
    DEFAULT_EVAL_RUNS
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiffusion {
    model: String,
    p: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    max_steps: Option<usize>,
    sir_order: Option<String>,
}

impl RawDiffusion {
    fn build(self, index: usize) -> Result<DiffusionConfig> {
        let entry = |msg: String| Error::config(format!("diffusion entry {}: {msg}", index + 1));
        let kind = ModelKind::from_str(&self.model).map_err(|e| entry(e.detail()))?;
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| entry(format!("{} requires `{name}`", kind.name())));
        let mut config = match kind {
            ModelKind::Ic => DiffusionConfig::ic(self.p.unwrap_or(DEFAULT_IC_P)),
            ModelKind::Lt => DiffusionConfig::lt(),
            ModelKind::Si => DiffusionConfig::si(need(self.beta, "beta")?),
            ModelKind::Sir => DiffusionConfig::sir(need(self.beta, "beta")?, need(self.gamma, "gamma")?),
        };
        if let Some(steps) = self.max_steps {
            config = config.with_max_steps(steps);
        }
        match self.sir_order.as_deref() {
            None | Some("infect_then_recover") => {}
            Some("recover_then_infect") => config = config.with_sir_order(SirOrder::RecoverThenInfect),
            Some(other) => return Err(entry(format!("unknown sir_order `{other}`"))),
        }
        config.validate().map_err(|e| entry(e.detail()))?;
        Ok(config)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeed {
    strategy: String,
    budget: usize,
}

impl ExperimentSpec {
    /// Parses a TOML document. Relative graph paths are resolved against
    /// `base_dir` when given.
    pub fn from_toml(text: &str, base_dir: Option<&Path>) -> Result<ExperimentSpec> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        let diffusions = raw
            .diffusion
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.build(i))
            .collect::<Result<Vec<_>>>()?;
        let seeds = raw
            .seed
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let strategy = s
                    .strategy
                    .parse()
                    .map_err(|e: Error| Error::config(format!("seed entry {}: {}", i + 1, e.detail())))?;
                Ok(SeedEntry { strategy, budget: s.budget })
            })
            .collect::<Result<Vec<_>>>()?;
        let graphs = raw
            .graph
            .into_iter()
            .map(|g| match (g, base_dir) {
                (GraphSource::File { path, directed, label }, Some(base)) if path.is_relative() => GraphSource::File {
                    path: base.join(path),
                    directed,
                    label,
                },
                (g, _) => g,
            })
            .collect();
        let spec = ExperimentSpec {
            task: raw.task,
            epochs: raw.epochs,
            master_seed: raw.master_seed,
            outputs: raw.outputs,
            eval_runs: raw.eval_runs,
            graphs,
            diffusions,
            seeds,
            methods: raw.method,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<ExperimentSpec> {
        let text = std::fs::read_to_string(path)?;
        ExperimentSpec::from_toml(&text, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, len) in [
            ("graph", self.graphs.len()),
            ("diffusion", self.diffusions.len()),
            ("seed", self.seeds.len()),
            ("method", self.methods.len()),
        ] {
            if len == 0 {
                return Err(Error::config(format!("at least one [[{name}]] entry is required")));
            }
        }
        if self.epochs == 0 {
            return Err(Error::config("epochs must be at least 1"));
        }
        if self.eval_runs == 0 {
            return Err(Error::config("eval_runs must be at least 1"));
        }
        for (i, g) in self.graphs.iter().enumerate() {
            if let GraphSource::Generated(spec) = g {
                spec.validate()
                    .map_err(|e| Error::config(format!("graph entry {}: {e}", i + 1)))?;
            }
        }
        for (i, d) in self.diffusions.iter().enumerate() {
            d.validate()
                .map_err(|e| Error::config(format!("diffusion entry {}: {e}", i + 1)))?;
        }
        for (i, s) in self.seeds.iter().enumerate() {
            if s.budget == 0 {
                return Err(Error::config(format!("seed entry {}: budget must be at least 1", i + 1)));
            }
        }
        for (i, m) in self.methods.iter().enumerate() {
            let at = |msg: String| Error::config(format!("method entry {} (`{}`): {msg}", i + 1, m.name));
            Method::resolve(self.task, &m.name).map_err(|e| at(e.detail()))?;
            let zero = [("sims", m.sims), ("rr_sets", m.rr_sets), ("horizon", m.horizon), ("budget", m.budget)]
                .into_iter()
                .find(|(_, v)| *v == Some(0));
            if let Some((field, _)) = zero {
                return Err(at(format!("`{field}` must be at least 1")));
            }
            if let Some(b) = m.beta_hat {
                if !(b > 0.0 && b <= 1.0) {
                    return Err(at(format!("beta_hat={b} outside (0, 1]")));
                }
            }
        }
        Ok(())
    }
}

/// One cell of the Cartesian product, by index into the spec's lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunDescriptor {
    pub run_index: usize,
    pub graph: usize,
    pub diffusion: usize,
    pub seed: usize,
    pub method: usize,
    pub resolved: Method,
}

/// Full product ordered by (graph, diffusion, seed, method).
pub fn expand_spec(spec: &ExperimentSpec) -> Result<Vec<RunDescriptor>> {
    spec.validate()?;
    let methods: Vec<Method> = spec
        .methods
        .iter()
        .map(|m| Method::resolve(spec.task, &m.name))
        .collect::<Result<_>>()?;
    let mut runs = Vec::with_capacity(spec.graphs.len() * spec.diffusions.len() * spec.seeds.len() * methods.len());
    for graph in 0..spec.graphs.len() {
        for diffusion in 0..spec.diffusions.len() {
            for seed in 0..spec.seeds.len() {
                for (method, &resolved) in methods.iter().enumerate() {
                    runs.push(RunDescriptor {
                        run_index: runs.len(),
                        graph,
                        diffusion,
                        seed,
                        method,
                        resolved,
                    });
                }
            }
        }
    }
    Ok(runs)
}
