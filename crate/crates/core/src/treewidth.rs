//! Exact treewidth of the simple graph underlying a metrised graph.
//!
//! Loops and parallel edges do not change treewidth, so only the adjacency
//! of distinct vertices is used. The algorithm is the subset recurrence
//! `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is
//! the set of vertices outside `S + v` reachable from `v` through `S`.

use crate::error::{Error, Result};
use crate::graph::MetrisedGraph;

pub const TREEWIDTH_LIMIT: usize = 14;
/// Largest limit accepted at all; the table has `2^n` entries.
pub const MAX_TREEWIDTH_LIMIT: usize = 24;

fn neighbour_masks(g: &MetrisedGraph) -> Vec<u32> {
    let mut masks = vec![0u32; g.vertex_count()];
    for e in g.edges() {
        let [u, v] = e.ends;
        if u != v {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
    }
    masks
}

/// `|Q(s, v)|`
fn boundary(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut reached = 1u32 << v;
    let mut frontier = reached;
    let mut outside = 0u32;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[x];
        outside |= nb & !s;
        let fresh = nb & s & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    (outside & !(1 << v)).count_ones()
}

pub fn treewidth(g: &MetrisedGraph) -> Result<usize> {
    treewidth_with_limit(g, TREEWIDTH_LIMIT)
}

pub fn treewidth_with_limit(g: &MetrisedGraph, limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    let limit = limit.min(MAX_TREEWIDTH_LIMIT);
    if n > limit {
        return Err(Error::SizeLimit { size: n, limit });
    }
    let adj = neighbour_masks(g);
    let full = (1u32 << n) - 1;
    // tw[S] for S a subset, with -1 for the empty set
    let mut tw = vec![i32::MAX; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let q = boundary(&adj, without, v) as i32;
            best = best.min(tw[without as usize].max(q));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::monoid::MonoidSpec;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> MetrisedGraph {
        let mut b = GraphBuilder::new(MonoidSpec::free(1)).vertices((0..n).map(|i| format!("x{i}")));
        for (i, &(u, v)) in edges.iter().enumerate() {
            b = b.edge(format!("e{i}"), format!("x{u}"), format!("x{v}"), &[1]);
        }
        b.build().unwrap()
    }

    /// Minimum over elimination orders of the largest neighbourhood met.
    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        permute(&mut order, 0, &mut |ord| {
            let mut a = adj.clone();
            let mut gone = vec![false; n];
            let mut width = 0;
            for &v in ord {
                let nb: Vec<usize> = (0..n).filter(|&w| !gone[w] && a[v][w]).collect();
                width = width.max(nb.len());
                for &x in &nb {
                    for &y in &nb {
                        if x != y {
                            a[x][y] = true;
                        }
                    }
                }
                gone[v] = true;
            }
            best = best.min(width);
        });
        best
    }

    fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == xs.len() {
            f(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            permute(xs, k + 1, f);
            xs.swap(k, i);
        }
    }

    #[test]
    fn spot_values() {
        let path = graph(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(treewidth(&path).unwrap(), 1);
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(treewidth(&c5).unwrap(), 2);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(treewidth(&k4).unwrap(), 3);
        // parallel edges and loops are ignored
        let banana = graph(2, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(treewidth(&banana).unwrap(), 1);
        assert_eq!(treewidth(&graph(1, &[])).unwrap(), 0);
    }

    #[test]
    fn size_limit() {
        let edges: Vec<(usize, usize)> = (0..15).map(|i| (i, (i + 1) % 15)).collect();
        let g = graph(15, &edges);
        assert!(matches!(treewidth(&g), Err(Error::SizeLimit { size: 15, limit: 14 })));
        assert_eq!(treewidth_with_limit(&g, 16).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn matches_elimination_orders(n in 2usize..7, raw in prop::collection::vec((0usize..7, 0usize..7), 0..14)) {
            // a spanning path keeps the graph connected
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            edges.extend(raw.into_iter().map(|(a, b)| (a % n, b % n)));
            let g = graph(n, &edges);
            prop_assert_eq!(treewidth(&g).unwrap(), brute_force(n, &edges));
        }
    }
}
