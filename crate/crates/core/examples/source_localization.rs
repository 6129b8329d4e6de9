// Plant cascades from hidden sources and try to recover them.

use graphflow::diffusion::DiffusionConfig;
use graphflow::graph::{generate, GraphGenSpec};
use graphflow::rng::derive;
use graphflow::sl::{plant_cascade, source_distance, SlMethod};

pub fn run_example() -> graphflow::Result<()> {
    let graph = generate(&GraphGenSpec::small_world(300), 8)?;
    let config = DiffusionConfig::si(0.1).with_max_steps(15);
    let trials = 5;
    let mut totals = [0.0; 2];
    for trial in 0..trials {
        let (truth, obs) = plant_cascade(&graph, &config, 2, derive(8, trial))?;
        print!("truth {truth}, {} infected:", obs.infected().len());
        for (i, method) in SlMethod::ALL.into_iter().enumerate() {
            let result = method.locate(&graph, &obs, 2)?;
            let d = source_distance(&graph, &result.predicted, truth.ids())?;
            totals[i] += d;
            print!(" {method} {:?} (d={d})", result.predicted);
        }
        println!();
    }
    for (i, method) in SlMethod::ALL.into_iter().enumerate() {
        println!("{method}: mean distance {:.2}", totals[i] / trials as f64);
    }
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
