//! Named example graphs.

use crate::graph::{GraphBuilder, MetrisedGraph};
use crate::monoid::MonoidSpec;

fn build(b: GraphBuilder) -> MetrisedGraph {
    b.build().expect("catalog graphs are valid")
}

/// Two vertices joined by edges of lengths `(1,0)` and `(0,1)` over `N^2`.
pub fn orthogonal_two_gon() -> MetrisedGraph {
    build(
        GraphBuilder::new(MonoidSpec::free(2))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1, 0])
            .edge("b", "u", "v", &[0, 1]),
    )
}

/// The 2-gon with both lengths `1` over `N`.
pub fn unit_two_gon() -> MetrisedGraph {
    build(
        GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1])
            .edge("b", "u", "v", &[1]),
    )
}

/// The unit cycle on `c0, ..., c(n-1)`, `n >= 2`.
pub fn cycle(n: usize) -> MetrisedGraph {
    let mut b = GraphBuilder::new(MonoidSpec::free(1)).vertices((0..n).map(|i| format!("c{i}")));
    for i in 0..n {
        b = b.edge(format!("e{i}"), format!("c{i}"), format!("c{}", (i + 1) % n), &[1]);
    }
    build(b)
}

/// The complete graph on `k0, ..., k(n-1)` with unit lengths.
pub fn complete(n: usize) -> MetrisedGraph {
    let mut b = GraphBuilder::new(MonoidSpec::free(1)).vertices((0..n).map(|i| format!("k{i}")));
    for i in 0..n {
        for j in i + 1..n {
            b = b.edge(format!("e{i}_{j}"), format!("k{i}"), format!("k{j}"), &[1]);
        }
    }
    build(b)
}

/// `k` copies of a `(2k+1)`-cycle glued in a chain.
///
/// In copy `i` the vertex `v{i}` lies opposite the one long edge `h{i}` of
/// length `k`; the short arc `v{i}, c{i}_1, ..., c{i}_(k-1), v{i+1}` has `k`
/// unit edges and the long arc runs from `v{i+1}` over `h{i}` and `k` more
/// unit edges back to `v{i}`. The last joint is called `w{k}`, so copy `i`
/// meets copy `i+1` in `v{i+1}`.
pub fn glued_cycles(k: usize) -> MetrisedGraph {
    assert!(k >= 1, "at least one copy");
    let joint = |i: usize| if i == k + 1 { format!("w{k}") } else { format!("v{i}") };
    let kk = k as i64;
    let mut b = GraphBuilder::new(MonoidSpec::free(1));
    for i in 1..=k + 1 {
        b = b.vertex(joint(i));
    }
    for i in 1..=k {
        let short: Vec<String> = (1..k).map(|j| format!("c{i}_{j}")).collect();
        let long: Vec<String> = (k..2 * k).map(|j| format!("c{i}_{j}")).collect();
        b = b.vertices(short.iter().chain(&long).cloned());
        let mut arc = vec![joint(i)];
        arc.extend(short);
        arc.push(joint(i + 1));
        for (j, w) in arc.windows(2).enumerate() {
            b = b.edge(format!("s{i}_{j}"), w[0].clone(), w[1].clone(), &[1]);
        }
        b = b.edge(format!("h{i}"), joint(i + 1), long[0].clone(), &[kk]);
        let mut back = long;
        back.push(joint(i));
        for (j, w) in back.windows(2).enumerate() {
            b = b.edge(format!("l{i}_{j}"), w[0].clone(), w[1].clone(), &[1]);
        }
    }
    build(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glued_cycle_shape() {
        for k in 1..=4 {
            let g = glued_cycles(k);
            assert_eq!(g.edge_count(), k * (2 * k + 1));
            assert_eq!(g.vertex_count(), k * (2 * k + 1) - (k - 1));
            let long: Vec<_> = g.edges().iter().filter(|e| e.length != [1]).collect();
            assert_eq!(long.len(), if k == 1 { 0 } else { k });
            assert_eq!(g.edges().iter().map(|e| e.length[0]).sum::<i64>(), (3 * k * k) as i64);
        }
        let g = glued_cycles(2);
        for id in ["v1", "v2", "w2"] {
            assert!(g.vertex_index(id).is_some());
        }
    }
}
