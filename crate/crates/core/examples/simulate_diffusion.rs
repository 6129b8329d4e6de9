// One trace per diffusion model, then Monte Carlo spread estimates.

use graphflow::diffusion::{expected_spread, simulate, DiffusionConfig};
use graphflow::graph::{generate, GraphGenSpec};
use graphflow::seeding::SeedSet;

pub fn run_example() -> graphflow::Result<()> {
    let graph = generate(&GraphGenSpec::small_world(300), 1)?;
    let seeds = SeedSet::new(vec![0, 150], graph.node_count())?;
    let models = [
        DiffusionConfig::ic(0.3),
        DiffusionConfig::lt(),
        DiffusionConfig::si(0.1).with_max_steps(10),
        DiffusionConfig::sir(0.3, 0.2).with_max_steps(30),
    ];
    for config in &models {
        let trace = simulate(&graph, config, &seeds, 7)?;
        let estimate = expected_spread(&graph, config, &seeds, 200, 7)?;
        println!(
            "{config}: one run reached {} nodes in {} rounds; mean over {} runs {:.1} ± {:.1}",
            trace.activated_count(),
            trace.rounds(),
            estimate.runs,
            estimate.mean,
            estimate.standard_error()
        );
    }
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
