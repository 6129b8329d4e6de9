use std::collections::VecDeque;

use super::{Graph, NodeId};
use crate::error::Result;

/// Distance reported for nodes the search never reaches.
pub const UNREACHED: u32 = u32::MAX;

/// Unweighted hop distances from `source` along out-arcs.
pub fn bfs_distances(graph: &Graph, source: NodeId) -> Result<Vec<u32>> {
    graph.check_node(source)?;
    Ok(bfs_masked(graph, source, None))
}

/// Hop distances inside the subgraph induced by `members` (`members[v]`
/// true). Nodes outside the subgraph are reported as [`UNREACHED`].
pub fn bfs_distances_within(graph: &Graph, source: NodeId, members: &[bool]) -> Result<Vec<u32>> {
    graph.check_node(source)?;
    Ok(bfs_masked(graph, source, Some(members)))
}

pub(crate) fn bfs_masked(graph: &Graph, source: NodeId, members: Option<&[bool]>) -> Vec<u32> {
    let mut dist = vec![UNREACHED; graph.node_count()];
    if members.is_some_and(|m| !m[source]) {
        return dist;
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &v in graph.neighbors(u) {
            if dist[v] == UNREACHED && members.is_none_or(|m| m[v]) {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn path_distances() {
        let g = Graph::undirected(3, &[(0, 1), (1, 2)]);
        assert_eq!(bfs_distances(&g, 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn unreachable_sentinel() {
        let g = Graph::undirected(4, &[(0, 1), (2, 3)]);
        assert_eq!(bfs_distances(&g, 0).unwrap(), vec![0, 1, UNREACHED, UNREACHED]);
    }

    #[test]
    fn star_from_leaf() {
        let g = Graph::undirected(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(bfs_distances(&g, 3).unwrap(), vec![1, 2, 2, 0, 2]);
    }

    #[test]
    fn out_of_range_source() {
        let g = Graph::undirected(2, &[(0, 1)]);
        assert!(matches!(bfs_distances(&g, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn induced_subgraph_detours() {
        // 0-1-2 plus shortcut 0-3-2; excluding 1 forces the detour
        let g = Graph::undirected(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]);
        let members = [true, false, true, true, true];
        let d = bfs_distances_within(&g, 0, &members).unwrap();
        assert_eq!(d, vec![0, UNREACHED, 3, 1, 2]);
    }
}
