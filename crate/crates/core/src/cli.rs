//! Command-line front end. Every subcommand is a thin wrapper over the
//! library calls of the same name.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diffusion::{simulate, DiffusionConfig, ModelKind, Termination, DEFAULT_IC_P, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::graph::{generate, read_edge_list_file, to_edge_list, Graph, GraphGenSpec, NodeId};
use crate::runner::{expand_spec, run_experiments, summary, write_outputs, write_trace_json, ExperimentSpec};
use crate::seeding::SeedSet;
use crate::sl::{source_distance, Observation, SlMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "graphflow", version, about = "Diffusion experiments on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Execute an experiment config and write its outputs.
    Run(RunArgs),
    /// Generate a random graph as an edge list.
    Gen(GenArgs),
    /// Run one diffusion from given seeds.
    Simulate(SimulateArgs),
    /// Infer sources from an infected node list.
    Locate(LocateArgs),
    /// Check a config and report how many runs it expands to.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
    #[arg(long, env = "GRAPHFLOW_OUT_DIR", default_value = "results")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// ws, er or ba (long names also accepted).
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    /// Lattice degree (ws).
    #[arg(long)]
    k: Option<usize>,
    /// Rewiring (ws) or edge (er) probability.
    #[arg(long)]
    p: Option<f64>,
    /// Edges per new node (ba).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GraphArg {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    directed: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    model: ModelKind,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Comma-separated seed ids.
    #[arg(long, value_delimiter = ',', required = true)]
    seeds: Vec<NodeId>,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-step trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LocateArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// File with one infected node id per line.
    #[arg(long)]
    infected: PathBuf,
    #[arg(long, default_value = "jordan")]
    method: SlMethod,
    #[arg(long, default_value_t = 1)]
    sources: usize,
    /// Comma-separated true sources; prints the matching distance.
    #[arg(long, value_delimiter = ',')]
    truth: Option<Vec<NodeId>>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    config: PathBuf,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } | Error::Config(_) | Error::Argument(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Run(args) => {
            let spec = ExperimentSpec::load(&args.config)?;
            let report = run_experiments(&spec, args.parallelism)?;
            let written = write_outputs(&spec, &report, &args.out_dir)?;
            out.write_all(summary(&report.records).as_bytes())?;
            for path in written {
                writeln!(err, "wrote {}", path.display())?;
            }
            Ok(if report.any_failed() { EXIT_FAILED } else { EXIT_OK })
        }
        Command::Gen(args) => {
            let spec = gen_spec(&args)?;
            let graph = generate(&spec, args.seed)?;
            let text = to_edge_list(&graph);
            match &args.out {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Simulate(args) => {
            let graph = load_graph(&args.graph)?;
            let config = diffusion_config(&args)?;
            let seeds = SeedSet::new(args.seeds.clone(), graph.node_count())?;
            let trace = simulate(&graph, &config, &seeds, args.seed)?;
            if let Some(path) = &args.trace {
                write_trace_json(&trace, &graph, path)?;
            }
            let ending = match trace.terminated {
                Termination::Quiescent => "quiescent",
                Termination::StepCap => "step cap",
            };
            writeln!(
                out,
                "activated {} of {} nodes in {} rounds ({ending})",
                trace.activated_count(),
                graph.node_count(),
                trace.rounds()
            )?;
            Ok(EXIT_OK)
        }
        Command::Locate(args) => {
            let graph = load_graph(&args.graph)?;
            let infected = read_id_list(&args.infected)?;
            let obs = Observation::new(infected, graph.node_count(), None)?;
            let result = args.method.locate(&graph, &obs, args.sources)?;
            let ids: Vec<String> = result.predicted.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", ids.join(","))?;
            if result.degenerate {
                writeln!(err, "note: spectrum degenerate, ranked by degree within the infected set")?;
            }
            if let Some(truth) = &args.truth {
                writeln!(out, "distance {}", source_distance(&graph, &result.predicted, truth)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Validate(args) => {
            let spec = ExperimentSpec::load(&args.config)?;
            let runs = expand_spec(&spec)?;
            writeln!(out, "{} runs", runs.len())?;
            Ok(EXIT_OK)
        }
    }
}

fn gen_spec(args: &GenArgs) -> Result<GraphGenSpec> {
    let missing = |flag: &str| Error::argument(format!("--kind {} needs --{flag}", args.kind));
    let spec = match args.kind.as_str() {
        "ws" | "watts_strogatz" => GraphGenSpec::WattsStrogatz {
            n: args.n,
            k: args.k.unwrap_or(6),
            p: args.p.unwrap_or(0.1),
        },
        "er" | "erdos_renyi" => GraphGenSpec::ErdosRenyi {
            n: args.n,
            p: args.p.ok_or_else(|| missing("p"))?,
        },
        "ba" | "barabasi_albert" => GraphGenSpec::BarabasiAlbert {
            n: args.n,
            m: args.m.ok_or_else(|| missing("m"))?,
        },
        other => return Err(Error::argument(format!("unknown graph kind `{other}`"))),
    };
    spec.validate()?;
    Ok(spec)
}

fn diffusion_config(args: &SimulateArgs) -> Result<DiffusionConfig> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Error::argument(format!("model {} needs --{flag}", args.model.name())))
    };
    let config = match args.model {
        ModelKind::Ic => DiffusionConfig::ic(args.p.unwrap_or(DEFAULT_IC_P)),
        ModelKind::Lt => DiffusionConfig::lt(),
        ModelKind::Si => DiffusionConfig::si(need(args.beta, "beta")?),
        ModelKind::Sir => DiffusionConfig::sir(need(args.beta, "beta")?, need(args.gamma, "gamma")?),
    }
    .with_max_steps(args.steps);
    config.validate()?;
    Ok(config)
}

fn load_graph(arg: &GraphArg) -> Result<Graph> {
    read_edge_list_file(&arg.graph, arg.directed).map(|(g, _)| g)
}

fn read_id_list(path: &Path) -> Result<Vec<NodeId>> {
    let text = std::fs::read_to_string(path)?;
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        ids.push(
            line.parse()
                .map_err(|_| Error::parse(i + 1, format!("`{line}` is not a node id")))?,
        );
    }
    Ok(ids)
}
