// Compare seed selection methods by the spread their seed sets achieve.

use graphflow::diffusion::{expected_spread, DiffusionConfig};
use graphflow::graph::{generate, GraphGenSpec};
use graphflow::im::{celf_im, greedy_im, proxy_im, ris_im, ImResult, Proxy};

pub fn run_example() -> graphflow::Result<()> {
    let graph = generate(&GraphGenSpec::small_world(200), 3)?;
    let config = DiffusionConfig::si(0.1).with_max_steps(10);
    let budget = 3;
    let sims = 30;

    let mut results: Vec<(&str, ImResult)> = vec![
        ("greedy", greedy_im(&graph, &config, budget, sims, 1)?),
        ("celf", celf_im(&graph, &config, budget, sims, 1, false)?),
        ("celf++", celf_im(&graph, &config, budget, sims, 1, true)?),
        ("ris", ris_im(&graph, &config, budget, 5_000, 1)?),
    ];
    for proxy in Proxy::ALL {
        results.push((proxy.name(), proxy_im(&graph, proxy, budget, 0.1, 5)?));
    }
    for (name, result) in &results {
        let ie = expected_spread(&graph, &config, &result.seeds, 500, 99)?;
        println!(
            "{name:>7}: seeds {} IE {:.2} ({} evaluations, {:.3}s)",
            result.seeds, ie.mean, result.evaluations, result.wall_time
        );
    }
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
