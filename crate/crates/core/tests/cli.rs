use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphflow::diffusion::{simulate, DiffusionConfig};
use graphflow::graph::{generate, read_edge_list_file, to_edge_list, Graph, GraphGenSpec};
use graphflow::runner::trace_json;
use graphflow::seeding::SeedSet;

fn graphflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphflow"))
        .args(args)
        .env_remove("GRAPHFLOW_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_counts_runs() {
    for (name, runs) in [("im_grid.toml", 36), ("ibm_blocking.toml", 3), ("sl_localization.toml", 2)] {
        let path = config(name);
        let o = graphflow(&["validate", "--config", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), format!("{runs} runs"));
    }
}

#[test]
fn usage_errors_exit_2() {
    let o = graphflow(&["validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--config"));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(graphflow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(graphflow(&["gen", "--kind", "ws", "--n", "10", "--bogus"]).status.code(), Some(2));
    assert_eq!(graphflow(&[]).status.code(), Some(2));
    assert_eq!(graphflow(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "task = \"im\"\nepochs = 1\nmaster_seed = 1\n").unwrap();
    let o = graphflow(&["validate", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("configuration error"));
}

#[test]
fn gen_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.edges");
    let o = graphflow(&[
        "gen", "--kind", "ws", "--n", "200", "--k", "6", "--p", "0.1", "--seed", "5", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let expected = generate(&GraphGenSpec::small_world(200), 5).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), to_edge_list(&expected));
    let o = graphflow(&["gen", "--kind", "er", "--n", "20"]);
    assert_eq!(o.status.code(), Some(2));
    let o = graphflow(&["gen", "--kind", "ba", "--n", "30", "--m", "2", "--seed", "1"]);
    let expected = generate(&GraphGenSpec::BarabasiAlbert { n: 30, m: 2 }, 1).unwrap();
    assert_eq!(stdout(&o), to_edge_list(&expected));
}

fn write_graph(dir: &Path, graph: &Graph) -> PathBuf {
    let path = dir.join("g.edges");
    std::fs::write(&path, to_edge_list(graph)).unwrap();
    path
}

#[test]
fn simulate_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate(&GraphGenSpec::small_world(100), 2).unwrap();
    let gpath = write_graph(dir.path(), &graph);
    let tpath = dir.path().join("t.json");
    let o = graphflow(&[
        "simulate", "--graph", gpath.to_str().unwrap(), "--model", "ic", "--p", "0.3", "--seeds", "0,5", "--steps",
        "10", "--seed", "9", "--trace", tpath.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let config = DiffusionConfig::ic(0.3).with_max_steps(10);
    let trace = simulate(&graph, &config, &SeedSet::new(vec![0, 5], 100).unwrap(), 9).unwrap();
    assert_eq!(std::fs::read_to_string(&tpath).unwrap(), trace_json(&trace, &graph));
    assert!(stdout(&o).starts_with(&format!("activated {} of 100 nodes", trace.activated_count())));
}

#[test]
fn simulate_without_spread_has_one_frame() {
    let dir = tempfile::tempdir().unwrap();
    let gpath = write_graph(dir.path(), &Graph::undirected(3, &[(0, 1), (1, 2)]));
    let tpath = dir.path().join("t.json");
    let o = graphflow(&[
        "simulate", "--graph", gpath.to_str().unwrap(), "--model", "ic", "--p", "0", "--seeds", "0", "--trace",
        tpath.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&tpath).unwrap();
    assert!(text.ends_with("\"steps\":[[1,0,0]]}\n"), "{text}");
    let o = graphflow(&["simulate", "--graph", gpath.to_str().unwrap(), "--model", "si", "--seeds", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = graphflow(&["simulate", "--graph", gpath.to_str().unwrap(), "--model", "ic", "--seeds", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn locate_prints_sources() {
    let dir = tempfile::tempdir().unwrap();
    let path = Graph::undirected(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    let gpath = write_graph(dir.path(), &path);
    let ipath = dir.path().join("infected.txt");
    std::fs::write(&ipath, "1\n2 # observed\n\n3\n").unwrap();
    for method in ["jordan", "netsleuth"] {
        let o = graphflow(&[
            "locate", "--graph", gpath.to_str().unwrap(), "--infected", ipath.to_str().unwrap(), "--method", method,
            "--sources", "1", "--truth", "1",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_eq!(stdout(&o), "2\ndistance 1\n");
    }
    let o = graphflow(&[
        "locate", "--graph", gpath.to_str().unwrap(), "--infected", ipath.to_str().unwrap(), "--method", "lpsi",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_writes_outputs_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "task = \"im\"\nepochs = 2\nmaster_seed = 3\neval_runs = 50\noutputs = [\"csv\", \"summary\"]\n\n\
                [[graph]]\nkind = \"erdos_renyi\"\nn = 40\np = 0.1\n\n[[diffusion]]\nmodel = \"ic\"\np = 0.2\n\n\
                [[seed]]\nstrategy = \"random\"\nbudget = 3\n\n[[method]]\nname = \"degree\"\n\n[[method]]\nname = \"celf\"\nsims = 20\n";
    let cpath = dir.path().join("exp.toml");
    std::fs::write(&cpath, spec).unwrap();
    let out_dir = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_graphflow"))
        .args(["run", "--config", cpath.to_str().unwrap(), "--parallelism", "2"])
        .env("GRAPHFLOW_OUT_DIR", &out_dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(out_dir.join("summary.txt").exists());
    assert_eq!(stdout(&o).lines().count(), 2);

    let failing = spec.replace("name = \"degree\"", "name = \"ris\"").replace("model = \"ic\"\np = 0.2", "model = \"lt\"");
    std::fs::write(&cpath, failing).unwrap();
    let o = graphflow(&[
        "run", "--config", cpath.to_str().unwrap(), "--out-dir", dir.path().join("out2").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
    let csv = std::fs::read_to_string(dir.path().join("out2").join("results.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().contains("NaN"));
}

#[test]
fn edge_lists_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.edges");
    let o = graphflow(&["gen", "--kind", "er", "--n", "50", "--p", "0.1", "--seed", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (g, report) = read_edge_list_file(&out, false).unwrap();
    assert_eq!(report.dropped(), 0);
    assert_eq!(g, generate(&GraphGenSpec::ErdosRenyi { n: 50, p: 0.1 }, 4).unwrap());
}
