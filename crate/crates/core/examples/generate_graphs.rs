// Generate the three random graph families and round-trip one through an
// edge-list file.

use graphflow::graph::{generate, read_edge_list_file, write_edge_list_file, GraphGenSpec};

pub fn run_example() -> graphflow::Result<()> {
    let specs = [
        GraphGenSpec::ErdosRenyi { n: 500, p: 0.012 },
        GraphGenSpec::BarabasiAlbert { n: 500, m: 3 },
        GraphGenSpec::small_world(500),
    ];
    for spec in &specs {
        let g = generate(spec, 42)?;
        let max_degree = (0..g.node_count()).map(|v| g.degree(v)).max().unwrap_or(0);
        println!(
            "{spec}: {} nodes, {} edges, mean degree {:.2}, max degree {max_degree}",
            g.node_count(),
            g.edge_count(),
            2.0 * g.edge_count() as f64 / g.node_count() as f64
        );
    }

    let ws = generate(&GraphGenSpec::small_world(500), 42)?;
    let path = std::env::temp_dir().join(format!("graphflow-ws-{}.edges", std::process::id()));
    write_edge_list_file(&ws, &path)?;
    let (back, report) = read_edge_list_file(&path, false)?;
    std::fs::remove_file(&path)?;
    assert_eq!(back, ws);
    println!("edge list round trip ok ({} lines dropped)", report.dropped());
    Ok(())
}

fn main() -> graphflow::Result<()> {
    run_example()
}
