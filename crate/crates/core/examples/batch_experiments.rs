// Describe a sweep in TOML, run it on a thread pool and write the CSV.

use graphflow::runner::{expand_spec, run_experiments, summary, write_outputs, ExperimentSpec};

const SPEC: &str = r#"
task = "im"
epochs = 3
master_seed = 42
eval_runs = 200
outputs = ["csv", "summary"]

[[graph]]
kind = "watts_strogatz"
n = 200

[[graph]]
kind = "barabasi_albert"
n = 200
m = 2

[[diffusion]]
model = "ic"
p = 0.05

[[diffusion]]
model = "si"
beta = 0.1
max_steps = 5

[[seed]]
strategy = "random"
budget = 5

[[method]]
name = "degree"

[[method]]
name = "sigma"

[[method]]
name = "ris"
rr_sets = 2000
"#;

pub fn run_example() -> graphflow::Result<()> {
    let spec = ExperimentSpec::from_toml(SPEC, None)?;
    println!("{} runs x {} epochs", expand_spec(&spec)?.len(), spec.epochs);
    let report = run_experiments(&spec, 2)?;
    print!("{}", summary(&report.records));
    let dir = std::env::temp_dir().join(format!("graphflow-batch-{}", std::process::id()));
    for path in write_outputs(&spec, &report, &dir)? {
        println!("wrote {}", path.display());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
