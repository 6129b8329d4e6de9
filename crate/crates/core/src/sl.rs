//! Multi-source localization from a snapshot of activated nodes.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::diffusion::{simulate, DiffusionConfig, SUSCEPTIBLE};
use crate::error::{Error, Result};
use crate::graph::{bfs_masked, Graph, NodeId, UNREACHED};
use crate::rng;
use crate::seeding::{score_key, select_seeds, SeedSet, SeedStrategy};

/// Largest set size accepted by [`source_distance`].
pub const MATCHING_LIMIT: usize = 6;
/// Relative gap below which two Laplacian eigenvalues count as equal.
pub const EIGEN_GAP_TOLERANCE: f64 = 1e-9;

/// Activated subgraph observed at a snapshot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    infected: Vec<NodeId>,
    pub snapshot_step: Option<usize>,
}

impl Observation {
    pub fn new(mut infected: Vec<NodeId>, node_count: usize, snapshot_step: Option<usize>) -> Result<Observation> {
        infected.sort_unstable();
        infected.dedup();
        if infected.is_empty() {
            return Err(Error::argument("observation has no infected nodes"));
        }
        if let Some(&bad) = infected.iter().find(|&&v| v >= node_count) {
            return Err(Error::argument(format!("infected node {bad} out of range 0..{node_count}")));
        }
        Ok(Observation { infected, snapshot_step })
    }

    /// Sorted infected ids.
    pub fn infected(&self) -> &[NodeId] {
        &self.infected
    }

    fn mask(&self, node_count: usize) -> Vec<bool> {
        let mut mask = vec![false; node_count];
        for &v in &self.infected {
            mask[v] = true;
        }
        mask
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlResult {
    /// Predicted sources in selection order.
    pub predicted: Vec<NodeId>,
    /// One score per infected node, aligned with `Observation::infected`.
    /// Jordan: eccentricity in its cell (infinite when excluded).
    /// NetSleuth: first-round ranking score.
    pub scores: Vec<f64>,
    /// Set when NetSleuth fell back to degree ranking in any round.
    pub degenerate: bool,
}

fn check_sources(graph: &Graph, obs: &Observation, num_sources: usize) -> Result<()> {
    if let Some(&bad) = obs.infected.iter().find(|&&v| v >= graph.node_count()) {
        return Err(Error::argument(format!("infected node {bad} out of range")));
    }
    if num_sources == 0 || num_sources > obs.infected.len() {
        return Err(Error::argument(format!(
            "cannot locate {num_sources} sources among {} infected nodes",
            obs.infected.len()
        )));
    }
    Ok(())
}

/// Jordan centers of the infected subgraph.
///
/// Several sources split the infected nodes by farthest-point anchors and
/// nearest-anchor assignment; each cell contributes its own center. Nodes
/// no anchor can reach belong to no cell.
pub fn jordan_center(graph: &Graph, obs: &Observation, num_sources: usize) -> Result<SlResult> {
    check_sources(graph, obs, num_sources)?;
    let n = graph.node_count();
    let members = obs.mask(n);
    // induced distances from every infected node, row i for infected[i]
    let dist: Vec<Vec<u32>> = obs
        .infected
        .iter()
        .map(|&v| {
            let full = bfs_masked(graph, v, Some(&members));
            obs.infected.iter().map(|&u| full[u]).collect()
        })
        .collect();
    let m = obs.infected.len();

    let mut anchors = vec![0usize];
    let mut nearest: Vec<u32> = dist[0].clone();
    while anchors.len() < num_sources {
        let next = (0..m)
            .filter(|i| !anchors.contains(i))
            .max_by_key(|&i| (nearest[i], std::cmp::Reverse(i)))
            .expect("num_sources <= infected");
        anchors.push(next);
        for i in 0..m {
            nearest[i] = nearest[i].min(dist[next][i]);
        }
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); anchors.len()];
    if anchors.len() == 1 {
        cells[0] = (0..m).collect();
    } else {
        let mut by_id: Vec<usize> = (0..anchors.len()).collect();
        by_id.sort_by_key(|&c| anchors[c]);
        for i in 0..m {
            let best = by_id.iter().copied().min_by_key(|&c| dist[anchors[c]][i]).expect("anchors");
            if dist[anchors[best]][i] != UNREACHED {
                cells[best].push(i);
            }
        }
    }

    let mut scores = vec![f64::INFINITY; m];
    let mut predicted = Vec::with_capacity(num_sources);
    for cell in &cells {
        let mut best: Option<(u32, usize)> = None;
        for &c in cell {
            let ecc = cell.iter().map(|&j| dist[c][j]).max().unwrap_or(0);
            if ecc == UNREACHED {
                continue;
            }
            scores[c] = ecc as f64;
            if best.is_none_or(|(e, _)| ecc < e) {
                best = Some((ecc, c));
            }
        }
        let (_, c) = best.ok_or_else(|| {
            Error::Degenerate("no infected node reaches its whole cell in the induced subgraph".into())
        })?;
        predicted.push(obs.infected[c]);
    }
    Ok(SlResult {
        predicted,
        scores,
        degenerate: false,
    })
}

fn undirected_neighbors(graph: &Graph, v: NodeId) -> Vec<NodeId> {
    if !graph.is_directed() {
        return graph.neighbors(v).to_vec();
    }
    let mut all: Vec<NodeId> = graph.neighbors(v).iter().chain(graph.in_neighbors(v)).copied().collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// One ranking round over `nodes`: scores and whether the fallback was used.
fn sleuth_scores(graph: &Graph, nodes: &[NodeId]) -> (Vec<f64>, bool) {
    let m = nodes.len();
    if m == 1 {
        return (vec![1.0], false);
    }
    let mut laplacian = DMatrix::<f64>::zeros(m, m);
    let mut inner_degree = vec![0.0; m];
    for (i, &v) in nodes.iter().enumerate() {
        let adj = undirected_neighbors(graph, v);
        laplacian[(i, i)] = adj.len() as f64;
        for u in adj {
            if let Ok(j) = nodes.binary_search(&u) {
                laplacian[(i, j)] = -1.0;
                inner_degree[i] += 1.0;
            }
        }
    }
    let eigen = SymmetricEigen::new(laplacian);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
    let (low, next) = (eigen.eigenvalues[order[0]], eigen.eigenvalues[order[1]]);
    let scale = next.abs().max(1.0);
    let vector: Vec<f64> = eigen.eigenvectors.column(order[0]).iter().map(|x| x.abs()).collect();
    let spread = vector.iter().cloned().fold(f64::MIN, f64::max) - vector.iter().cloned().fold(f64::MAX, f64::min);
    let repeated = (next - low).abs() <= EIGEN_GAP_TOLERANCE * scale;
    let flat = spread <= EIGEN_GAP_TOLERANCE.sqrt();
    if repeated || flat {
        (inner_degree, true)
    } else {
        (vector, false)
    }
}

fn argtop(scores: &[f64]) -> usize {
    (0..scores.len())
        .min_by_key(|&i| (std::cmp::Reverse(score_key(scores[i])), i))
        .expect("non-empty")
}

/// Ranks infected nodes by the principal eigenvector of the Laplacian
/// submatrix `L_σ` (full-graph degrees on the diagonal). Further sources are
/// found by deleting earlier picks and ranking again.
pub fn netsleuth(graph: &Graph, obs: &Observation, num_sources: usize) -> Result<SlResult> {
    check_sources(graph, obs, num_sources)?;
    let mut remaining = obs.infected.clone();
    let mut predicted = Vec::with_capacity(num_sources);
    let mut degenerate = false;
    let mut first_scores = Vec::new();
    for round in 0..num_sources {
        let (scores, fallback) = sleuth_scores(graph, &remaining);
        degenerate |= fallback;
        let top = argtop(&scores);
        if round == 0 {
            first_scores = scores;
        }
        predicted.push(remaining.remove(top));
    }
    Ok(SlResult {
        predicted,
        scores: first_scores,
        degenerate,
    })
}

/// Minimum-cost matching distance between predicted and true sources, as a
/// sum of hop distances. Unreachable pairs cost `node_count`.
pub fn source_distance(graph: &Graph, predicted: &[NodeId], truth: &[NodeId]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::argument(format!(
            "predicted {} sources but truth has {}",
            predicted.len(),
            truth.len()
        )));
    }
    if predicted.len() > MATCHING_LIMIT {
        return Err(Error::Capacity(format!("exact matching supports at most {MATCHING_LIMIT} sources")));
    }
    for &v in predicted.iter().chain(truth) {
        graph.check_node(v)?;
    }
    let n = graph.node_count();
    let cost: Vec<Vec<usize>> = predicted
        .iter()
        .map(|&p| {
            let dist = bfs_masked(graph, p, None);
            truth
                .iter()
                .map(|&t| if dist[t] == UNREACHED { n } else { dist[t] as usize })
                .collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..truth.len()).collect();
    let mut best = usize::MAX;
    permute(&mut perm, 0, &mut |p| {
        let total = p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
        best = best.min(total);
    });
    Ok(if truth.is_empty() { 0.0 } else { best as f64 })
}

fn permute(items: &mut [usize], at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// Draws uniform random sources, runs the diffusion for `config.max_steps`
/// and observes every node that left the susceptible state.
pub fn plant_cascade(
    graph: &Graph,
    config: &DiffusionConfig,
    num_sources: usize,
    rng_seed: u64,
) -> Result<(SeedSet, Observation)> {
    let truth = select_seeds(graph, SeedStrategy::Random, num_sources, rng::derive(rng_seed, 0))?;
    let trace = simulate(graph, config, &truth, rng::derive(rng_seed, 1))?;
    let infected = trace
        .final_states()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != SUSCEPTIBLE)
        .map(|(v, _)| v)
        .collect();
    let obs = Observation::new(infected, graph.node_count(), Some(config.max_steps))?;
    Ok((truth, obs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlMethod {
    Jordan,
    Netsleuth,
}

impl SlMethod {
    pub const ALL: [SlMethod; 2] = [SlMethod::Jordan, SlMethod::Netsleuth];

    pub fn name(self) -> &'static str {
        match self {
            SlMethod::Jordan => "jordan",
            SlMethod::Netsleuth => "netsleuth",
        }
    }

    pub fn locate(self, graph: &Graph, obs: &Observation, num_sources: usize) -> Result<SlResult> {
        match self {
            SlMethod::Jordan => jordan_center(graph, obs, num_sources),
            SlMethod::Netsleuth => netsleuth(graph, obs, num_sources),
        }
    }
}

impl fmt::Display for SlMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SlMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jordan" => Ok(SlMethod::Jordan),
            "netsleuth" => Ok(SlMethod::Netsleuth),
            other => Err(Error::config(format!("unknown localization method `{other}`"))),
        }
    }
}
