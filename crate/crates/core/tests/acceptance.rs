// Acceptance checks. Runs without the libtest harness so every criterion
// prints exactly one PASS/FAIL line. Pass criterion numbers as arguments to
// run a subset; set GRAPHFLOW_ACCEPTANCE_GREEDY=1 to use plain greedy (not
// CELF) for the budget sweep.

use std::collections::HashSet;
use std::panic;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::Rng;

use graphflow::diffusion::{
    exact_expected_spread, expected_spread, simulate, DiffusionConfig, ExactSpreadTable, EXACT_EDGE_LIMIT, RECOVERED,
    SUSCEPTIBLE,
};
use graphflow::graph::{bfs_distances, generate, Graph, GraphGenSpec, NodeId, UNREACHED};
use graphflow::ibm::{blocking_effect, greedy_block, proxy_block};
use graphflow::im::{celf_im, celf_im_with, greedy_im, greedy_im_with, proxy_im, ExactOracle, Proxy};
use graphflow::rng::{derive, sequential};
use graphflow::runner::{run_experiments, write_outputs, ExperimentSpec, CSV_FILE, TRACE_DIR};
use graphflow::seeding::{select_seeds, SeedSet, SeedStrategy};
use graphflow::sl::{jordan_center, netsleuth, plant_cascade, source_distance, Observation};

// pinned tolerances
const MC_SIGMAS: f64 = 3.0;
const MC_RUNS: usize = 100_000;
const MC_MIN_AGREEING: usize = 19;
const GREEDY_RATIO: f64 = 1.0 - 1.0 / std::f64::consts::E;
const BETA_RATIO_MIN: f64 = 4.0;
const SL_IMPROVEMENT: f64 = 0.30;
const RUNTIME_SHARE: f64 = 0.01;
const IE_EVAL_RUNS: usize = 2000;
const IBM_EVAL_RUNS: usize = 1000;
const SIMS: usize = 100;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria: [Criterion; 10] = [
        (1, "Monte Carlo agrees with exact enumeration", minutes(1), oracle_equivalence),
        (2, "greedy within 1-1/e of optimum", minutes(2), greedy_near_optimal),
        (3, "CELF and CELF++ match greedy with fewer evaluations", minutes(10), lazy_matches_greedy),
        (4, "budget and beta trends on WS(1000)", minutes(30), budget_trends),
        (5, "greedy blocking beats proxy blocking", minutes(30), blocking_dominance),
        (6, "SIR conservation and SI completeness", minutes(10), epidemic_invariants),
        (7, "Jordan center is exact", minutes(10), jordan_exact),
        (8, "localization beats random guessing", minutes(10), localization_beats_random),
        (9, "proxy runtime under 1% of greedy", minutes(30), runtime_ordering),
        (10, "determinism across thread counts", minutes(10), determinism),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = outcome.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "acceptance {id:>2} {}: {name}: {}{} [{:.1}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            if in_time { "" } else { "; over time limit" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}

fn oracle_equivalence() -> Verdict {
    let mut rng = sequential(101);
    let mut agreeing = 0;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let p = [0.2, 0.5, 1.0][i % 3];
        let n = rng.random_range(3..=8);
        let graph = loop {
            let g = generate(&GraphGenSpec::ErdosRenyi { n, p: 0.5 }, rng.random()).unwrap();
            if g.edge_count() > 0 && g.edge_count() <= EXACT_EDGE_LIMIT {
                break g;
            }
        };
        let seed_count = rng.random_range(1..=2);
        let ids = rand::seq::index::sample(&mut rng, n, seed_count).into_vec();
        let seeds = SeedSet::new(ids, n).unwrap();
        let config = DiffusionConfig::ic(p);
        let exact = exact_expected_spread(&graph, &config, &seeds).unwrap();
        let mc = expected_spread(&graph, &config, &seeds, MC_RUNS, rng.random()).unwrap();
        let z = if mc.standard_error() > 0.0 {
            (mc.mean - exact).abs() / mc.standard_error()
        } else if (mc.mean - exact).abs() < 1e-9 {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(z);
        if z <= MC_SIGMAS {
            agreeing += 1;
        }
    }
    verdict(
        agreeing >= MC_MIN_AGREEING,
        format!("{agreeing}/20 within {MC_SIGMAS} SE (worst {worst:.2} SE)"),
    )
}

/// Connected graphs on `n` nodes, one per isomorphism class, as edge lists.
fn connected_graphs(max_n: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    let mut levels: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![vec![]]];
    for n in 2..=max_n {
        let perms = permutations(n);
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &levels[n - 2] {
            for attach in 1u32..(1 << (n - 1)) {
                let mut edges = base.clone();
                edges.extend((0..n - 1).filter(|u| attach >> u & 1 == 1).map(|u| (u, n - 1)));
                let key = canonical(n, &edges, &perms);
                if seen.insert(key) {
                    next.push(edges);
                }
            }
        }
        levels.push(next);
    }
    levels
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == items.len() {
            out.push(items.clone());
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            go(items, at + 1, out);
            items.swap(at, i);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), 0, &mut out);
    out
}

fn canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let bit = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        1u64 << (a * n + b)
    };
    perms
        .iter()
        .map(|p| edges.iter().fold(0u64, |m, &(u, v)| m | bit(p[u], p[v])))
        .min()
        .unwrap_or(0)
}

struct Instance {
    graph: Graph,
    table: ExactSpreadTable,
}

const FAMILY_P: [f64; 2] = [0.2, 0.5];
const KNOWN_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];

fn family() -> &'static (Vec<usize>, Vec<Instance>) {
    static FAMILY: OnceLock<(Vec<usize>, Vec<Instance>)> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let levels = connected_graphs(7);
        let counts = levels.iter().map(Vec::len).collect();
        let mut instances = Vec::new();
        for (i, level) in levels.iter().enumerate() {
            for edges in level {
                let graph = Graph::undirected(i + 1, edges);
                for p in FAMILY_P {
                    let table = ExactSpreadTable::build(&graph, p, 3).unwrap();
                    instances.push(Instance {
                        graph: graph.clone(),
                        table,
                    });
                }
            }
        }
        (counts, instances)
    })
}

fn optimum(table: &ExactSpreadTable, n: usize, k: usize) -> f64 {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| {
            let set: Vec<NodeId> = (0..n).filter(|v| m >> v & 1 == 1).collect();
            table.spread(&set).unwrap()
        })
        .fold(f64::MIN, f64::max)
}

fn greedy_near_optimal() -> Verdict {
    let (counts, instances) = family();
    if counts[..] != KNOWN_COUNTS {
        return verdict(false, format!("graph enumeration produced {counts:?}"));
    }
    let mut checked = 0;
    let mut worst: f64 = f64::INFINITY;
    let mut failures = 0;
    for inst in instances {
        let n = inst.graph.node_count();
        let oracle = ExactOracle::from_table(inst.table.clone());
        for k in 1..=n.min(3) {
            let opt = optimum(&inst.table, n, k);
            let got = greedy_im_with(&oracle, k, 0).unwrap();
            let value = inst.table.spread(got.seeds.ids()).unwrap();
            worst = worst.min(value / opt);
            checked += 1;
            if value < GREEDY_RATIO * opt - 1e-12 {
                failures += 1;
            }
        }
    }
    verdict(
        failures == 0,
        format!(
            "{checked} instances over {} graphs x p {FAMILY_P:?}, {failures} below bound, worst ratio {worst:.4}",
            counts.iter().sum::<usize>()
        ),
    )
}

fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    Graph::undirected(leaves + 1, &edges)
}

fn lazy_matches_greedy() -> Verdict {
    let (_, instances) = family();
    let mut mismatches = 0;
    let mut checked = 0;
    for inst in instances {
        let n = inst.graph.node_count();
        let oracle = ExactOracle::from_table(inst.table.clone());
        for k in 1..=n.min(3) {
            let plain = greedy_im_with(&oracle, k, 0).unwrap();
            for lookahead in [false, true] {
                let lazy = celf_im_with(&oracle, k, 0, lookahead).unwrap();
                checked += 1;
                if lazy.seeds != plain.seeds {
                    mismatches += 1;
                }
            }
        }
    }
    let mut star_counts = Vec::new();
    let mut star_ok = true;
    let g = star(9);
    for p in [0.2, 0.5, 1.0] {
        for k in [2, 3] {
            let oracle = ExactOracle::new(&g, &DiffusionConfig::ic(p), k).unwrap();
            let plain = greedy_im_with(&oracle, k, 0).unwrap().evaluations;
            let celf = celf_im_with(&oracle, k, 0, false).unwrap().evaluations;
            let celfpp = celf_im_with(&oracle, k, 0, true).unwrap().evaluations;
            star_ok &= celf < plain && celfpp < plain;
            star_counts.push(format!("p={p},k={k}: {plain}/{celf}/{celfpp}"));
        }
    }
    verdict(
        mismatches == 0 && star_ok,
        format!(
            "{mismatches}/{checked} seed-set mismatches; K1,9 evaluations greedy/celf/celf++ {}",
            star_counts.join(", ")
        ),
    )
}

fn ie(graph: &Graph, config: &DiffusionConfig, seeds: &[NodeId]) -> f64 {
    let set = SeedSet::new(seeds.to_vec(), graph.node_count()).unwrap();
    expected_spread(graph, config, &set, IE_EVAL_RUNS, 77).unwrap().mean
}

fn budget_trends() -> Verdict {
    let graph = generate(&GraphGenSpec::small_world(1000), 2024).unwrap();
    let low = DiffusionConfig::si(0.1).with_max_steps(10);
    let high = DiffusionConfig::si(0.5).with_max_steps(10);
    let budgets = [5, 10, 15, 20, 25, 30];
    let use_greedy = std::env::var("GRAPHFLOW_ACCEPTANCE_GREEDY").is_ok_and(|v| v == "1");
    let search = |config: &DiffusionConfig, k: usize| {
        if use_greedy {
            greedy_im(&graph, config, k, SIMS, 5).unwrap().order
        } else {
            celf_im(&graph, config, k, SIMS, 5, false).unwrap().order
        }
    };
    let search_name = if use_greedy { "greedy" } else { "celf" };

    let mut orders: Vec<(&str, Vec<NodeId>, Vec<NodeId>)> = Vec::new();
    orders.push((search_name, search(&low, 30), search(&high, 5)));
    for proxy in [Proxy::Degree, Proxy::Eigen] {
        let order = proxy_im(&graph, proxy, 30, 0.1, 5).unwrap().order;
        let top5 = proxy_im(&graph, proxy, 5, 0.5, 5).unwrap().order;
        orders.push((proxy.name(), order, top5));
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, order, top5_high) in &orders {
        let curve: Vec<f64> = budgets.iter().map(|&k| ie(&graph, &low, &order[..k])).collect();
        let monotone = curve.windows(2).all(|w| w[1] >= w[0]);
        let ratio = ie(&graph, &high, top5_high) / curve[0];
        pass &= monotone && ratio >= BETA_RATIO_MIN;
        let shown: Vec<String> = curve.iter().map(|x| format!("{x:.1}")).collect();
        parts.push(format!(
            "{name} IE [{}] {}monotone, beta ratio {ratio:.2}",
            shown.join(" "),
            if monotone { "" } else { "NOT " }
        ));
    }
    verdict(pass, parts.join("; "))
}

fn blocking_dominance() -> Verdict {
    let graph = generate(&GraphGenSpec::small_world(500), 5).unwrap();
    let config = DiffusionConfig::si(0.1).with_max_steps(10);
    let epochs = 50;
    let mut totals = [0.0; 5];
    for e in 0..epochs {
        let seeds = select_seeds(&graph, SeedStrategy::Random, 5, derive(500, e)).unwrap();
        let eval = derive(501, e);
        let greedy = greedy_block(&graph, &config, &seeds, 5, SIMS, derive(502, e)).unwrap();
        totals[0] += blocking_effect(&graph, &config, &seeds, &greedy, IBM_EVAL_RUNS, eval).unwrap().effect;
        for (i, proxy) in Proxy::ALL.into_iter().enumerate() {
            let block = proxy_block(&graph, proxy, &seeds, 5, 0.1, 5).unwrap();
            totals[i + 1] += blocking_effect(&graph, &config, &seeds, &block, IBM_EVAL_RUNS, eval).unwrap().effect;
        }
    }
    let means: Vec<f64> = totals.iter().map(|t| t / epochs as f64).collect();
    let pass = means[1..].iter().all(|&m| means[0] > m);
    let names = ["greedy", "degree", "eigen", "pi", "sigma"];
    let shown: Vec<String> = names.iter().zip(&means).map(|(n, m)| format!("{n} {m:.2}")).collect();
    verdict(pass, format!("mean effect over {epochs} epochs: {}", shown.join(", ")))
}

fn random_connected(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let g = generate(
            &GraphGenSpec::WattsStrogatz { n, k: 4, p: 0.3 },
            rng.random(),
        )
        .unwrap();
        if bfs_distances(&g, 0).unwrap().iter().all(|&d| d != UNREACHED) {
            return g;
        }
    }
}

fn epidemic_invariants() -> Verdict {
    let mut rng = sequential(606);
    let mut sir_bad = 0;
    for _ in 0..1000 {
        let n = rng.random_range(5..80);
        let graph = match rng.random_range(0..3) {
            0 => generate(&GraphGenSpec::ErdosRenyi { n, p: 0.1 }, rng.random()).unwrap(),
            1 => generate(&GraphGenSpec::BarabasiAlbert { n, m: 2 }, rng.random()).unwrap(),
            _ => generate(&GraphGenSpec::WattsStrogatz { n, k: 4, p: 0.2 }, rng.random()).unwrap(),
        };
        let seeds = SeedSet::new(vec![rng.random_range(0..n)], n).unwrap();
        let config = DiffusionConfig::sir(rng.random(), rng.random()).with_max_steps(50);
        let trace = simulate(&graph, &config, &seeds, rng.random()).unwrap();
        let mut prev_recovered = 0;
        let mut prev_susceptible = n;
        for frame in &trace.steps {
            let s = frame.iter().filter(|&&x| x == SUSCEPTIBLE).count();
            let i = frame.iter().filter(|&&x| x == 1).count();
            let r = frame.iter().filter(|&&x| x == RECOVERED).count();
            if frame.len() != n || s + i + r != n || r < prev_recovered || s > prev_susceptible {
                sir_bad += 1;
                break;
            }
            prev_recovered = r;
            prev_susceptible = s;
        }
    }
    let mut si_bad = 0;
    for _ in 0..100 {
        let n = rng.random_range(5..120);
        let graph = random_connected(&mut rng, n);
        let seed = rng.random_range(0..n);
        let dist = bfs_distances(&graph, seed).unwrap();
        let ecc = *dist.iter().max().unwrap() as usize;
        let seeds = SeedSet::new(vec![seed], n).unwrap();
        let trace = simulate(&graph, &DiffusionConfig::si(1.0).with_max_steps(n), &seeds, rng.random()).unwrap();
        let balls_match = trace
            .steps
            .iter()
            .enumerate()
            .all(|(t, f)| (0..n).all(|v| (f[v] != SUSCEPTIBLE) == (dist[v] as usize <= t)));
        if trace.activated_count() != n || trace.rounds() > ecc || !balls_match {
            si_bad += 1;
        }
    }
    verdict(
        sir_bad == 0 && si_bad == 0,
        format!("{sir_bad}/1000 SIR traces violate conservation, {si_bad}/100 SI runs incomplete"),
    )
}

fn floyd_eccentricities(graph: &Graph, nodes: &[NodeId]) -> Vec<u32> {
    let m = nodes.len();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; m]; m];
    for i in 0..m {
        d[i][i] = 0;
        for j in 0..m {
            if graph.has_arc(nodes[i], nodes[j]) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d.iter().map(|row| *row.iter().max().unwrap()).collect()
}

fn jordan_exact() -> Verdict {
    let mut rng = sequential(707);
    let mut matches = 0;
    for _ in 0..200 {
        let graph = generate(&GraphGenSpec::ErdosRenyi { n: 40, p: 0.08 }, rng.random()).unwrap();
        let size = rng.random_range(1..=15);
        let mut set = vec![rng.random_range(0..40)];
        while set.len() < size {
            let frontier: Vec<NodeId> = set
                .iter()
                .flat_map(|&v| graph.neighbors(v).iter().copied())
                .filter(|u| !set.contains(u))
                .collect();
            match frontier.choose(&mut rng) {
                Some(&u) => set.push(u),
                None => break,
            }
        }
        set.sort_unstable();
        let ecc = floyd_eccentricities(&graph, &set);
        let best = (0..set.len()).min_by_key(|&i| (ecc[i], i)).unwrap();
        let obs = Observation::new(set.clone(), 40, None).unwrap();
        if jordan_center(&graph, &obs, 1).unwrap().predicted == vec![set[best]] {
            matches += 1;
        }
    }
    verdict(matches == 200, format!("{matches}/200 match brute force"))
}

fn localization_beats_random() -> Verdict {
    let graph = generate(&GraphGenSpec::small_world(1000), 808).unwrap();
    let config = DiffusionConfig::si(0.1).with_max_steps(20);
    let trials = 30;
    let (mut jordan, mut sleuth, mut random) = (0.0, 0.0, 0.0);
    let mut rng = sequential(809);
    for t in 0..trials {
        let (truth, obs) = plant_cascade(&graph, &config, 2, derive(810, t)).unwrap();
        let j = jordan_center(&graph, &obs, 2).unwrap();
        jordan += source_distance(&graph, &j.predicted, truth.ids()).unwrap();
        let s = netsleuth(&graph, &obs, 2).unwrap();
        sleuth += source_distance(&graph, &s.predicted, truth.ids()).unwrap();
        let draws = 200;
        let mut guess_total = 0.0;
        for _ in 0..draws {
            let guess: Vec<NodeId> = obs.infected().choose_multiple(&mut rng, 2).copied().collect();
            guess_total += source_distance(&graph, &guess, truth.ids()).unwrap();
        }
        random += guess_total / draws as f64;
    }
    let [jordan, sleuth, random] = [jordan, sleuth, random].map(|x| x / trials as f64);
    let bound = (1.0 - SL_IMPROVEMENT) * random;
    verdict(
        jordan <= bound && sleuth <= bound,
        format!("mean distance jordan {jordan:.2}, netsleuth {sleuth:.2}, random {random:.2} (bound {bound:.2})"),
    )
}

fn timed<T>(f: impl FnOnce() -> T) -> f64 {
    let start = Instant::now();
    std::hint::black_box(f());
    start.elapsed().as_secs_f64()
}

fn runtime_ordering() -> Verdict {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        let graph = generate(&GraphGenSpec::small_world(500), 909).unwrap();
        let config = DiffusionConfig::si(0.1).with_max_steps(10);
        let seeds = select_seeds(&graph, SeedStrategy::Random, 5, 910).unwrap();
        let greedy_im_s = timed(|| greedy_im(&graph, &config, 5, SIMS, 911).unwrap());
        let greedy_block_s = timed(|| greedy_block(&graph, &config, &seeds, 5, SIMS, 912).unwrap());
        let mut worst_im: f64 = 0.0;
        let mut worst_block: f64 = 0.0;
        for proxy in Proxy::ALL {
            worst_im = worst_im.max(timed(|| proxy_im(&graph, proxy, 5, 0.1, 5).unwrap()));
            worst_block = worst_block.max(timed(|| proxy_block(&graph, proxy, &seeds, 5, 0.1, 5).unwrap()));
        }
        let (im_share, block_share) = (worst_im / greedy_im_s, worst_block / greedy_block_s);
        verdict(
            im_share <= RUNTIME_SHARE && block_share <= RUNTIME_SHARE,
            format!(
                "greedy IM {greedy_im_s:.3}s vs slowest proxy {worst_im:.5}s ({:.3}%); greedy blocking {greedy_block_s:.3}s vs {worst_block:.5}s ({:.3}%)",
                100.0 * im_share,
                100.0 * block_share
            ),
        )
    })
}

const DETERMINISM_SPECS: [(&str, &str); 3] = [
    ("im", "[[method]]\nname = \"celf\"\nsims = 20\n\n[[method]]\nname = \"pi\"\n"),
    ("ibm", "[[method]]\nname = \"greedy\"\nsims = 20\nbudget = 3\n\n[[method]]\nname = \"sigma\"\nbudget = 3\n"),
    ("sl", "[[method]]\nname = \"jordan\"\n\n[[method]]\nname = \"netsleuth\"\n"),
];

fn determinism_spec(task: &str, methods: &str) -> ExperimentSpec {
    let text = format!(
        "task = \"{task}\"\nepochs = 3\nmaster_seed = 1010\neval_runs = 200\noutputs = [\"csv\", \"trace_json\"]\n\n\
         [[graph]]\nkind = \"watts_strogatz\"\nn = 150\n\n[[graph]]\nkind = \"barabasi_albert\"\nn = 150\nm = 2\n\n\
         [[diffusion]]\nmodel = \"si\"\nbeta = 0.1\nmax_steps = 10\n\n[[diffusion]]\nmodel = \"sir\"\nbeta = 0.3\ngamma = 0.2\nmax_steps = 20\n\n\
         [[seed]]\nstrategy = \"random\"\nbudget = 2\n\n{methods}"
    );
    ExperimentSpec::from_toml(&text, None).unwrap()
}

/// CSV without the runtime column, plus every trace file's bytes.
fn snapshot(spec: &ExperimentSpec, parallelism: usize) -> (String, Vec<Vec<u8>>) {
    let report = run_experiments(spec, parallelism).unwrap();
    assert!(!report.any_failed(), "{:?}", report.records);
    let dir = tempfile::tempdir().unwrap();
    write_outputs(spec, &report, dir.path()).unwrap();
    let csv = std::fs::read_to_string(dir.path().join(CSV_FILE)).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let mut stripped = String::new();
    for row in reader.records() {
        let row = row.unwrap();
        let fields: Vec<&str> = row.iter().take(row.len() - 1).collect();
        stripped.push_str(&fields.join("|"));
        stripped.push('\n');
    }
    let mut files: Vec<_> = std::fs::read_dir(dir.path().join(TRACE_DIR))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    (stripped, files.iter().map(|f| std::fs::read(f).unwrap()).collect())
}

fn determinism() -> Verdict {
    let mut compared = 0;
    let mut differing = Vec::new();
    for (task, methods) in DETERMINISM_SPECS {
        let spec = determinism_spec(task, methods);
        let reference = snapshot(&spec, 1);
        for parallelism in [1, 2, 8] {
            compared += 1;
            if snapshot(&spec, parallelism) != reference {
                differing.push(format!("{task} x{parallelism}"));
            }
        }
    }
    verdict(
        differing.is_empty(),
        format!(
            "{compared} repeated runs over im/ibm/sl compared, differing: {}",
            if differing.is_empty() { "none".to_string() } else { differing.join(", ") }
        ),
    )
}
