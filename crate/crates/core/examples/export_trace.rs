// Write an SIR run as the JSON frame format consumed by animation tools.

use graphflow::diffusion::{simulate, DiffusionConfig, RECOVERED};
use graphflow::graph::{generate, GraphGenSpec};
use graphflow::runner::write_trace_json;
use graphflow::seeding::{select_seeds, SeedStrategy};

pub fn run_example() -> graphflow::Result<()> {
    let graph = generate(&GraphGenSpec::small_world(60), 4)?;
    let seeds = select_seeds(&graph, SeedStrategy::Degree, 2, 0)?;
    let config = DiffusionConfig::sir(0.4, 0.3).with_max_steps(25);
    let trace = simulate(&graph, &config, &seeds, 4)?;
    for (step, frame) in trace.steps.iter().enumerate() {
        let infected = frame.iter().filter(|&&s| s == 1).count();
        let recovered = frame.iter().filter(|&&s| s == RECOVERED).count();
        println!("step {step:>2}: {infected:>2} infected, {recovered:>2} recovered");
    }
    let path = std::env::temp_dir().join(format!("graphflow-trace-{}.json", std::process::id()));
    write_trace_json(&trace, &graph, &path)?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());
    std::fs::remove_file(&path)?;
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
