//! Chip-firing on unit-length loopless multigraphs via q-reduced divisors.
//!
//! This is independent of the lattice machinery in [`crate::divisor`]: it
//! only fires sets of vertices, and is used to cross-check ranks and to
//! compute gonalities of subdivided graphs quickly.

use std::collections::VecDeque;

use crate::divisor::{Divisor, EffectiveDivisors};
use crate::error::{Error, Result};
use crate::graph::MetrisedGraph;

#[derive(Debug, Clone)]
pub struct Burning {
    /// `(neighbour, edge multiplicity)`
    adj: Vec<Vec<(usize, i64)>>,
    /// BFS distance from every root
    dist: Vec<Vec<usize>>,
}

impl Burning {
    pub fn new(g: &MetrisedGraph) -> Result<Self> {
        if !g.is_unit_length() {
            return Err(Error::MonoidMode("burning needs unit lengths over N".into()));
        }
        if g.has_loops() {
            return Err(Error::MonoidMode("burning needs a loopless graph".into()));
        }
        let n = g.vertex_count();
        let mut mult = vec![vec![0i64; n]; n];
        for e in g.edges() {
            mult[e.ends[0]][e.ends[1]] += 1;
            mult[e.ends[1]][e.ends[0]] += 1;
        }
        let adj: Vec<Vec<(usize, i64)>> = mult
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &m)| m > 0).map(|(v, &m)| (v, m)).collect())
            .collect();
        let dist = (0..n)
            .map(|q| {
                let mut d = vec![usize::MAX; n];
                d[q] = 0;
                let mut queue = VecDeque::from([q]);
                while let Some(u) = queue.pop_front() {
                    for &(v, _) in &adj[u] {
                        if d[v] == usize::MAX {
                            d[v] = d[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                d
            })
            .collect();
        Ok(Burning { adj, dist })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Replaces `d` by the `q`-reduced divisor equivalent to it.
    pub fn reduce(&self, d: &mut [i64], q: usize) {
        let n = self.adj.len();
        let dist = &self.dist[q];
        let radius = dist.iter().copied().max().unwrap_or(0);
        // clear debt layer by layer, from the outside in: firing the ball of
        // radius r - 1 only moves chips across edges into layer r
        for r in (1..=radius).rev() {
            let mut times = 0;
            for v in (0..n).filter(|&v| dist[v] == r && d[v] < 0) {
                let inward: i64 = self.adj[v].iter().filter(|(w, _)| dist[*w] < r).map(|(_, m)| m).sum();
                times = times.max((-d[v] + inward - 1) / inward);
            }
            if times > 0 {
                for x in (0..n).filter(|&x| dist[x] < r) {
                    for &(y, m) in &self.adj[x] {
                        if dist[y] >= r {
                            d[x] -= times * m;
                            d[y] += times * m;
                        }
                    }
                }
            }
        }
        // Dhar's burning: fire the unburnt set until everything burns
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        let mut queue = VecDeque::new();
        loop {
            burnt.iter_mut().for_each(|b| *b = false);
            heat.iter_mut().for_each(|h| *h = 0);
            burnt[q] = true;
            queue.push_back(q);
            while let Some(x) = queue.pop_front() {
                for &(y, m) in &self.adj[x] {
                    if !burnt[y] {
                        heat[y] += m;
                        if heat[y] > d[y] {
                            burnt[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
            if burnt.iter().all(|&b| b) {
                return;
            }
            let times = (0..n)
                .filter(|&v| !burnt[v] && heat[v] > 0)
                .map(|v| d[v] / heat[v])
                .min()
                .expect("a connected graph has an edge leaving the unburnt set");
            for v in (0..n).filter(|&v| !burnt[v]) {
                for &(w, m) in &self.adj[v] {
                    if burnt[w] {
                        d[v] -= times * m;
                        d[w] += times * m;
                    }
                }
            }
        }
    }

    /// Whether `d` is equivalent to an effective divisor.
    pub fn has_effective(&self, d: &Divisor) -> bool {
        if d.degree() < 0 {
            return false;
        }
        let mut work = d.0.clone();
        self.reduce(&mut work, 0);
        work[0] >= 0
    }

    /// `rank(d) >= 1`: for every `q`, the `q`-reduced form keeps a chip on `q`.
    pub fn rank_at_least_one(&self, d: &Divisor) -> bool {
        if d.degree() < 1 {
            return false;
        }
        // vertices without chips are the likely failures, try them first
        let order = (0..d.len()).filter(|&q| d[q] <= 0).chain((0..d.len()).filter(|&q| d[q] > 0));
        let mut work = vec![0; d.len()];
        for q in order {
            work.copy_from_slice(&d.0);
            self.reduce(&mut work, q);
            if work[q] < 1 {
                return false;
            }
        }
        true
    }

    pub fn rank(&self, d: &Divisor) -> i64 {
        if !self.has_effective(d) {
            return -1;
        }
        let deg = d.degree();
        for k in 1..=deg {
            let ok = EffectiveDivisors::new(d.len(), k).all(|f| self.has_effective(&(d - &f)));
            if !ok {
                return k - 1;
            }
        }
        deg
    }

    /// Divisorial gonality with the first witness in colexicographic order.
    pub fn dgon(&self) -> (i64, Divisor) {
        let n = self.vertex_count();
        for d in 1..=n as i64 {
            if let Some(w) = EffectiveDivisors::new(n, d).find(|c| self.rank_at_least_one(c)) {
                return (d, w);
            }
        }
        unreachable!("the sum of all vertices has positive rank")
    }
}

/// Rank via q-reduced divisors; needs unit lengths and no loops.
pub fn dhar_rank(g: &MetrisedGraph, d: &Divisor) -> Result<i64> {
    Ok(Burning::new(g)?.rank(d))
}

pub fn dhar_dgon(g: &MetrisedGraph) -> Result<(i64, Divisor)> {
    Ok(Burning::new(g)?.dgon())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::monoid::MonoidSpec;

    fn cycle(n: usize) -> MetrisedGraph {
        let mut b = GraphBuilder::new(MonoidSpec::free(1)).vertices((0..n).map(|i| format!("c{i}")));
        for i in 0..n {
            b = b.edge(format!("e{i}"), format!("c{i}"), format!("c{}", (i + 1) % n), &[1]);
        }
        b.build().unwrap()
    }

    #[test]
    fn reduced_divisor_on_a_cycle() {
        let b = Burning::new(&cycle(4)).unwrap();
        // [c2] - [c0] is not principal on C4, and [c1] + [c3] ~ 2[c0]
        let mut d = vec![0, 1, 0, 1];
        b.reduce(&mut d, 0);
        assert_eq!(d, vec![2, 0, 0, 0]);
        let mut d = vec![-1, 0, 1, 0];
        b.reduce(&mut d, 0);
        assert_eq!(d, vec![-1, 0, 1, 0]);
        let mut d = vec![0, 0, -3, 0];
        b.reduce(&mut d, 0);
        assert!(d[1..].iter().all(|&c| c >= 0));
        assert_eq!(d.iter().sum::<i64>(), -3);
    }

    #[test]
    fn rank_examples() {
        let two_gon = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1])
            .edge("b", "u", "v", &[1])
            .build()
            .unwrap();
        assert_eq!(dhar_rank(&two_gon, &Divisor(vec![0, 2])).unwrap(), 1);
        assert_eq!(dhar_rank(&cycle(3), &Divisor(vec![0, 1, 0])).unwrap(), 0);
        assert_eq!(dhar_rank(&cycle(5), &Divisor::zero(5)).unwrap(), 0);
        assert_eq!(dhar_rank(&cycle(5), &Divisor(vec![1, -2, 0, 0, 0])).unwrap(), -1);
        assert_eq!(dhar_dgon(&cycle(4)).unwrap().0, 2);
    }

    #[test]
    fn rejects_non_unit_graphs() {
        let g = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[2])
            .build()
            .unwrap();
        assert!(matches!(Burning::new(&g), Err(Error::MonoidMode(_))));
        let lp = GraphBuilder::new(MonoidSpec::free(1)).vertex("v").edge("l", "v", "v", &[1]).build().unwrap();
        assert!(matches!(Burning::new(&lp), Err(Error::MonoidMode(_))));
    }
}
