//! Simulation-based greedy selection and its lazy variants.
//!
//! Every routine maximizes `f(S ∪ {v}) - f(S)` one pick at a time and breaks
//! ties toward the lower node id. Round `r` evaluates all of its spreads under
//! stream `derive(key, r)`, so within a round the candidates are compared on
//! common random numbers.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use super::oracle::SpreadOracle;
use crate::graph::NodeId;
use crate::rng;
use crate::seeding::score_key;

/// Picks in selection order with the gain each had when chosen.
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub picks: Vec<NodeId>,
    pub gains: Vec<f64>,
    /// Number of `SpreadOracle::spread` calls made.
    pub evaluations: usize,
}

fn round_stream(key: u64, round: usize) -> u64 {
    rng::derive(key, round as u64)
}

fn with(selected: &[NodeId], v: NodeId) -> Vec<NodeId> {
    let mut s = Vec::with_capacity(selected.len() + 1);
    s.extend_from_slice(selected);
    s.push(v);
    s
}

/// Plain greedy: every round re-estimates `f(S)` and the spread of every
/// remaining candidate.
pub fn greedy<O: SpreadOracle + ?Sized>(oracle: &O, k: usize, key: u64) -> Selection {
    let n = oracle.node_count();
    let mut selected: Vec<NodeId> = Vec::with_capacity(k);
    let mut chosen = vec![false; n];
    let mut gains = Vec::with_capacity(k);
    let mut evaluations = 0;
    for round in 0..k {
        let stream = round_stream(key, round);
        let base = if selected.is_empty() {
            0.0
        } else {
            evaluations += 1;
            oracle.spread(&selected, stream)
        };
        let candidates: Vec<NodeId> = (0..n).filter(|&v| !chosen[v]).collect();
        evaluations += candidates.len();
        let values: Vec<f64> = candidates
            .par_iter()
            .map(|&v| oracle.spread(&with(&selected, v), stream))
            .collect();
        let (best, value) = candidates
            .iter()
            .zip(&values)
            .map(|(&v, &f)| (v, f))
            .min_by_key(|&(v, f)| (Reverse(score_key(f - base)), v))
            .expect("k <= n leaves a candidate");
        chosen[best] = true;
        selected.push(best);
        gains.push(value - base);
    }
    Selection {
        picks: selected,
        gains,
        evaluations,
    }
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    node: NodeId,
    gain: f64,
    /// Size of the seed set the gain was computed against.
    round: usize,
    prev_best: Option<NodeId>,
    lookahead_gain: f64,
}

impl Entry {
    fn key(&self) -> (i64, Reverse<NodeId>) {
        (score_key(self.gain), Reverse(self.node))
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Memoizes `f` per (stream, set) and counts oracle calls.
struct Evaluator<'o, O: ?Sized> {
    oracle: &'o O,
    key: u64,
    memo: HashMap<(usize, Vec<NodeId>), f64>,
    evaluations: usize,
}

impl<O: SpreadOracle + ?Sized> Evaluator<'_, O> {
    fn spread(&mut self, round: usize, seeds: &[NodeId]) -> f64 {
        if seeds.is_empty() {
            return 0.0;
        }
        let mut set = seeds.to_vec();
        set.sort_unstable();
        let round = if self.oracle.is_exact() { 0 } else { round };
        if let Some(&f) = self.memo.get(&(round, set.clone())) {
            return f;
        }
        self.evaluations += 1;
        let f = self.oracle.spread(&set, round_stream(self.key, round));
        self.memo.insert((round, set), f);
        f
    }

    fn gain(&mut self, round: usize, selected: &[NodeId], v: NodeId) -> f64 {
        let base = self.spread(round, selected);
        self.spread(round, &with(selected, v)) - base
    }
}

/// Lazy greedy (CELF). With `lookahead` each entry also caches its gain
/// assuming the current round's best candidate is picked next (CELF++), which
/// saves the re-evaluation when that candidate is indeed chosen.
///
/// Stale gains are upper bounds on current gains by submodularity, so with an
/// exact oracle the picks equal those of [`greedy`].
pub fn lazy_greedy<O: SpreadOracle + ?Sized>(oracle: &O, k: usize, key: u64, lookahead: bool) -> Selection {
    let n = oracle.node_count();
    let mut eval = Evaluator {
        oracle,
        key,
        memo: HashMap::new(),
        evaluations: 0,
    };
    let mut selected: Vec<NodeId> = Vec::with_capacity(k);
    let mut gains = Vec::with_capacity(k);
    let mut heap = BinaryHeap::with_capacity(n);

    // initial pass over single nodes; the full round-0 batch is independent
    // of the heap, so it runs in parallel
    let stream = round_stream(key, 0);
    let singles: Vec<f64> = (0..n).into_par_iter().map(|v| oracle.spread(&[v], stream)).collect();
    eval.evaluations += n;
    for (v, &f) in singles.iter().enumerate() {
        eval.memo.insert((0, vec![v]), f);
    }
    let mut cur_best: Option<Entry> = None;
    for (v, &f) in singles.iter().enumerate() {
        let mut entry = Entry {
            node: v,
            gain: f,
            round: 0,
            prev_best: None,
            lookahead_gain: 0.0,
        };
        if lookahead && k > 1 {
            if let Some(best) = cur_best {
                entry.prev_best = Some(best.node);
                entry.lookahead_gain = eval.gain(0, &[best.node], v);
            }
        }
        if cur_best.is_none_or(|b| entry > b) {
            cur_best = Some(entry);
        }
        heap.push(entry);
    }

    let mut last_seed: Option<NodeId> = None;
    let mut cur_best: Option<Entry> = None;
    while selected.len() < k {
        let round = selected.len();
        let mut top = heap.pop().expect("k <= n leaves a candidate");
        if top.round == round {
            selected.push(top.node);
            gains.push(top.gain);
            last_seed = Some(top.node);
            cur_best = None;
            continue;
        }
        if lookahead && top.round + 1 == round && top.prev_best.is_some() && top.prev_best == last_seed {
            top.gain = top.lookahead_gain;
            top.prev_best = None;
        } else {
            top.gain = eval.gain(round, &selected, top.node);
            top.prev_best = None;
            // a lookahead gain only pays off if another round follows
            if lookahead && round + 1 < k {
                if let Some(best) = cur_best.filter(|b| b.node != top.node) {
                    top.prev_best = Some(best.node);
                    top.lookahead_gain = eval.gain(round, &with(&selected, best.node), top.node);
                }
            }
        }
        top.round = round;
        if cur_best.is_none_or(|b| top > b) {
            cur_best = Some(top);
        }
        heap.push(top);
    }
    Selection {
        picks: selected,
        gains,
        evaluations: eval.evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::DiffusionConfig;
    use crate::graph::{generate, Graph, GraphGenSpec};
    use crate::im::oracle::{ExactOracle, MonteCarloOracle};

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Graph::undirected(leaves + 1, &edges)
    }

    fn two_triangles() -> Graph {
        Graph::undirected(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    }

    #[test]
    fn one_pick_per_triangle() {
        let g = two_triangles();
        let oracle = ExactOracle::new(&g, &DiffusionConfig::ic(1.0), 2).unwrap();
        let s = greedy(&oracle, 2, 0);
        assert_eq!(s.picks, vec![0, 3]);
        assert_eq!(s.gains, vec![3.0, 3.0]);
        for lookahead in [false, true] {
            assert_eq!(lazy_greedy(&oracle, 2, 0, lookahead).picks, vec![0, 3]);
        }
    }

    #[test]
    fn lazy_variants_save_evaluations_on_star() {
        let g = star(9);
        for p in [1.0, 0.5] {
            let oracle = ExactOracle::new(&g, &DiffusionConfig::ic(p), 2).unwrap();
            let plain = greedy(&oracle, 2, 0);
            assert_eq!(plain.evaluations, 2 * 10);
            assert_eq!(plain.picks[0], 0);
            for lookahead in [false, true] {
                let lazy = lazy_greedy(&oracle, 2, 0, lookahead);
                assert_eq!(lazy.picks, plain.picks);
                assert!(lazy.evaluations < plain.evaluations, "{lazy:?}");
            }
        }
    }

    #[test]
    fn monte_carlo_greedy_prefix_property() {
        let g = generate(&GraphGenSpec::small_world(60), 1).unwrap();
        let config = DiffusionConfig::ic(0.2);
        let oracle = MonteCarloOracle::new(&g, &config, 30).unwrap();
        let long = greedy(&oracle, 4, 9);
        let short = greedy(&oracle, 2, 9);
        assert_eq!(&long.picks[..2], &short.picks[..]);
        assert!(long.gains.iter().all(|&g| g >= 0.0));
    }
}
