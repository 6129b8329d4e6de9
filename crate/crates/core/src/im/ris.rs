//! Reverse-reachable set sketches with greedy maximum coverage.

use rayon::prelude::*;

use crate::graph::{Graph, NodeId};
use crate::rng;

const TAG_ROOT: u64 = 0x5007;
const TAG_ARC: u64 = 0xA5C;

/// Samples one RR set per index: a uniform root plus every node reaching it
/// through in-arcs that are live with probability `p`. Set `j` uses stream
/// `derive(key, j)`.
pub(crate) fn sample_rr_sets(graph: &Graph, p: f64, count: usize, key: u64) -> Vec<Vec<u32>> {
    let n = graph.node_count();
    (0..count)
        .into_par_iter()
        .with_min_len(64)
        .map_init(
            || vec![false; n],
            |visited, j| {
                let k = rng::derive(key, j as u64);
                let root = rng::below(n, k, TAG_ROOT, 0, 0);
                let mut set = vec![root as u32];
                visited[root] = true;
                let mut head = 0;
                while head < set.len() {
                    let v = set[head] as usize;
                    head += 1;
                    for &u in graph.in_neighbors(v) {
                        if !visited[u] && rng::coin(p, k, TAG_ARC, u as u64, v as u64) {
                            visited[u] = true;
                            set.push(u as u32);
                        }
                    }
                }
                for &u in &set {
                    visited[u as usize] = false;
                }
                set
            },
        )
        .collect()
}

/// Greedy maximum coverage: `k` nodes, each covering the most not-yet-covered
/// sets, ties to the lower id. Returns picks and the number of sets each pick
/// newly covered.
pub(crate) fn max_coverage(node_count: usize, sets: &[Vec<u32>], k: usize) -> (Vec<NodeId>, Vec<usize>) {
    let mut membership: Vec<Vec<u32>> = vec![Vec::new(); node_count];
    for (j, set) in sets.iter().enumerate() {
        for &u in set {
            membership[u as usize].push(j as u32);
        }
    }
    let mut counts: Vec<usize> = membership.iter().map(Vec::len).collect();
    let mut covered = vec![false; sets.len()];
    let mut taken = vec![false; node_count];
    let mut picks = Vec::with_capacity(k);
    let mut newly = Vec::with_capacity(k);
    for _ in 0..k {
        let best = (0..node_count)
            .filter(|&u| !taken[u])
            .max_by_key(|&u| (counts[u], std::cmp::Reverse(u)))
            .expect("k <= n leaves a candidate");
        taken[best] = true;
        picks.push(best);
        newly.push(counts[best]);
        for &j in &membership[best] {
            let j = j as usize;
            if covered[j] {
                continue;
            }
            covered[j] = true;
            for &w in &sets[j] {
                counts[w as usize] -= 1;
            }
        }
    }
    (picks, newly)
}
