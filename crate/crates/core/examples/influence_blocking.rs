// Remove nodes to contain a spread from known seeds.

use std::time::Instant;

use graphflow::diffusion::DiffusionConfig;
use graphflow::graph::{generate, GraphGenSpec};
use graphflow::ibm::{blocking_effect, greedy_block, proxy_block, BlockSet};
use graphflow::im::Proxy;
use graphflow::seeding::{select_seeds, SeedStrategy};

pub fn run_example() -> graphflow::Result<()> {
    let graph = generate(&GraphGenSpec::small_world(200), 5)?;
    let config = DiffusionConfig::si(0.1).with_max_steps(10);
    let seeds = select_seeds(&graph, SeedStrategy::Random, 3, 5)?;
    let budget = 3;

    let start = Instant::now();
    let mut blocks: Vec<(String, BlockSet, f64)> = Vec::new();
    let greedy = greedy_block(&graph, &config, &seeds, budget, 30, 1)?;
    blocks.push(("greedy".into(), greedy, start.elapsed().as_secs_f64()));
    for proxy in Proxy::ALL {
        let start = Instant::now();
        let block = proxy_block(&graph, proxy, &seeds, budget, 0.1, 5)?;
        blocks.push((proxy.name().into(), block, start.elapsed().as_secs_f64()));
    }

    println!("seeds {seeds}");
    for (name, block, seconds) in &blocks {
        let effect = blocking_effect(&graph, &config, &seeds, block, 500, 2)?;
        println!(
            "{name:>6}: remove {block} spread {:.2} -> {:.2} (effect {:.2}, {seconds:.4}s)",
            effect.baseline.mean, effect.blocked.mean, effect.effect
        );
    }
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
