//! Reproducible graph, morphism, PL function and homomorphism corpora.
//!
//! The exhaustive part lists every connected loopless multigraph within the
//! size bounds, once per isomorphism class of length-labelled multigraphs,
//! for each length pool. The random part is drawn from a ChaCha stream, so a
//! corpus is fixed by its seed and bounds.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::divisor::{integrate_slopes, slope_lattice, PlFunction};
use crate::ggon::tree_morphisms;
use crate::graph::{Element, GraphBuilder, MetrisedGraph};
use crate::io::GraphDocument;
use crate::monoid::{MonoidHom, MonoidSpec};
use crate::morphism::GraphMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthPool {
    #[serde(skip)]
    pub monoid: MonoidSpec,
    pub lengths: Vec<Vec<i64>>,
}

impl LengthPool {
    /// `{1, 2, 3}` in `N`.
    pub fn free1() -> Self {
        LengthPool {
            monoid: MonoidSpec::free(1),
            lengths: vec![vec![1], vec![2], vec![3]],
        }
    }

    /// `{(1,0), (0,1), (1,1)}` in `N^2`.
    pub fn free2() -> Self {
        LengthPool {
            monoid: MonoidSpec::free(2),
            lengths: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        }
    }

    pub fn unit() -> Self {
        LengthPool {
            monoid: MonoidSpec::free(1),
            lengths: vec![vec![1]],
        }
    }

    /// A non-free monoid: `<(1,0), (1,1), (1,2)>`.
    pub fn generated() -> Self {
        let gens = vec![vec![1, 0], vec![1, 1], vec![1, 2]];
        LengthPool {
            monoid: MonoidSpec::generated(2, gens.clone()).expect("sharp"),
            lengths: gens,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub pools: Vec<LengthPool>,
    pub random: usize,
    pub random_max_vertices: usize,
    pub random_extra_edges: usize,
}

impl CorpusBounds {
    /// Exhaustive only, over the `free1` and `free2` pools.
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        CorpusBounds {
            max_vertices,
            max_edges,
            pools: vec![LengthPool::free1(), LengthPool::free2()],
            random: 0,
            random_max_vertices: 6,
            random_extra_edges: 3,
        }
    }

    /// At most 4 vertices and 5 edges, plus 40 random graphs on up to 6.
    pub fn standard() -> Self {
        CorpusBounds {
            random: 40,
            ..CorpusBounds::new(4, 5)
        }
    }

    pub fn with_pools(mut self, pools: Vec<LengthPool>) -> Self {
        self.pools = pools;
        self
    }

    pub fn with_random(mut self, count: usize) -> Self {
        self.random = count;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Corpus {
    pub seed: u64,
    pub bounds: CorpusBounds,
    #[serde(skip)]
    pub graphs: Vec<MetrisedGraph>,
}

impl Corpus {
    pub fn documents(&self) -> Vec<GraphDocument> {
        self.graphs.iter().map(GraphDocument::from_graph).collect()
    }
}

#[derive(Serialize)]
struct CorpusFile<'a> {
    seed: u64,
    bounds: &'a CorpusBounds,
    graphs: Vec<GraphDocument>,
}

/// The corpus as a JSON value with full graph documents.
pub fn corpus_json(c: &Corpus) -> serde_json::Value {
    serde_json::to_value(CorpusFile {
        seed: c.seed,
        bounds: &c.bounds,
        graphs: c.documents(),
    })
    .expect("corpus serialises")
}

pub fn generate_corpus(seed: u64, bounds: &CorpusBounds) -> Corpus {
    let mut graphs = Vec::new();
    for pool in &bounds.pools {
        graphs.extend(exhaustive(bounds.max_vertices, bounds.max_edges, pool));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..bounds.random {
        let pool = match i % 3 {
            0 => LengthPool::free1(),
            1 => LengthPool::free2(),
            _ => LengthPool::generated(),
        };
        let n = rng.gen_range(2..=bounds.random_max_vertices.max(2));
        let extra = rng.gen_range(1..=bounds.random_extra_edges.max(1));
        graphs.push(random_graph(&mut rng, n, extra, &pool, false));
    }
    Corpus {
        seed,
        bounds: bounds.clone(),
        graphs,
    }
}

/// Edges as `(u, v, length index)` with `u <= v`.
type Shape = Vec<(usize, usize, usize)>;

fn canonical(n: usize, edges: &Shape) -> Shape {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Shape> = None;
    permutations(&mut perm, 0, &mut |p| {
        let mut relabelled: Shape = edges
            .iter()
            .map(|&(u, v, l)| {
                let (a, b) = (p[u], p[v]);
                (a.min(b), a.max(b), l)
            })
            .collect();
        relabelled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
    });
    best.unwrap_or_default()
}

fn permutations(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations(xs, k + 1, f);
        xs.swap(k, i);
    }
}

fn connected(n: usize, edges: &Shape) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut parts = n;
    for &(u, v, _) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts == 1
}

fn realise(n: usize, edges: &[(usize, usize, Vec<i64>)], monoid: &MonoidSpec) -> MetrisedGraph {
    let mut b = GraphBuilder::new(monoid.clone()).vertices((0..n).map(|i| format!("x{i}")));
    for (i, (u, v, l)) in edges.iter().enumerate() {
        b = b.edge(format!("e{i}"), format!("x{u}"), format!("x{v}"), l);
    }
    b.build().expect("corpus graphs are valid")
}

/// Every connected loopless multigraph on `1..=max_vertices` vertices with at
/// most `max_edges` edges and lengths from `pool`, up to isomorphism.
pub fn exhaustive(max_vertices: usize, max_edges: usize, pool: &LengthPool) -> Vec<MetrisedGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut kinds = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                for l in 0..pool.lengths.len() {
                    kinds.push((u, v, l));
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut current = Vec::new();
        multisets(&kinds, 0, max_edges.min(if n == 1 { 0 } else { usize::MAX }), &mut current, &mut |shape| {
            if shape.len() + 1 >= n && connected(n, shape) {
                let c = canonical(n, shape);
                if seen.insert(c.clone()) {
                    let edges: Vec<_> = c.iter().map(|&(u, v, l)| (u, v, pool.lengths[l].clone())).collect();
                    out.push(realise(n, &edges, &pool.monoid));
                }
            }
        });
    }
    out
}

fn multisets(
    kinds: &[(usize, usize, usize)],
    from: usize,
    remaining: usize,
    current: &mut Shape,
    f: &mut dyn FnMut(&Shape),
) {
    f(current);
    if remaining == 0 {
        return;
    }
    for k in from..kinds.len() {
        current.push(kinds[k]);
        multisets(kinds, k, remaining - 1, current, f);
        current.pop();
    }
}

/// A random spanning tree on `n` vertices plus `extra` edges; with `loops`
/// some of the extra edges may be loops.
pub fn random_graph(rng: &mut impl Rng, n: usize, extra: usize, pool: &LengthPool, loops: bool) -> MetrisedGraph {
    let mut edges = Vec::new();
    let pick = |rng: &mut dyn rand::RngCore| pool.lengths.choose(rng).expect("nonempty pool").clone();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, pick(rng)));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = if loops && rng.gen_bool(0.3) {
            u
        } else if n > 1 {
            let w = rng.gen_range(0..n - 1);
            if w >= u {
                w + 1
            } else {
                w
            }
        } else {
            continue;
        };
        edges.push((u, v, pick(rng)));
    }
    realise(n, &edges, &pool.monoid)
}

/// `g` with `count` loops of random pool lengths at random vertices.
pub fn add_loops(rng: &mut impl Rng, g: &MetrisedGraph, count: usize) -> MetrisedGraph {
    let mut b = GraphBuilder::new(g.monoid().clone()).vertices(g.vertices().iter().cloned());
    for e in g.edges() {
        b = b.edge(e.id.clone(), g.vertex_id(e.ends[0]), g.vertex_id(e.ends[1]), &e.length);
    }
    let lengths: Vec<Vec<i64>> = g.edges().iter().map(|e| e.length.clone()).collect();
    for i in 0..count {
        let v = rng.gen_range(0..g.vertex_count());
        let l = match lengths.choose(rng) {
            Some(l) => l.clone(),
            None => g.monoid().witness().to_vec(),
        };
        b = b.edge(format!("loop{i}"), g.vertex_id(v), g.vertex_id(v), &l);
    }
    b.build().expect("adding loops keeps a graph valid")
}

/// A random PL function: an integer combination of slope lattice basis
/// vectors with coefficients in `-2..=2`, integrated from a random base.
pub fn random_pl(rng: &mut impl Rng, g: &MetrisedGraph) -> PlFunction {
    let lattice = slope_lattice(g);
    let mut slopes = vec![0i64; g.edge_count()];
    for b in &lattice.basis {
        let c = rng.gen_range(-2..=2);
        for (s, x) in slopes.iter_mut().zip(b) {
            *s += c * x;
        }
    }
    let base: Vec<i64> = (0..g.monoid().rank()).map(|_| rng.gen_range(-3..=3)).collect();
    integrate_slopes(g, &slopes, &base)
}

/// A random homomorphism out of `g`'s monoid into `N^target_rank`, with
/// matrix entries in `0..=2`.
pub fn random_hom(rng: &mut impl Rng, source: &MonoidSpec, target_rank: usize) -> MonoidHom {
    let matrix = (0..target_rank)
        .map(|_| (0..source.rank()).map(|_| rng.gen_range(0..=2)).collect())
        .collect();
    MonoidHom::new(matrix, source.clone(), MonoidSpec::free(target_rank)).expect("nonnegative maps land in N^k")
}

/// The `d`-fold cyclic cover `C_{dn} -> C_n`; target edge `i` has length
/// `lengths[i]`, source edges `scale` times shorter.
pub fn cyclic_cover(n: usize, d: usize, lengths: &[Vec<i64>], monoid: &MonoidSpec, scale: i64) -> GraphMorphism {
    assert!(n >= 2 && d >= 1 && lengths.len() == n);
    let target = {
        let mut b = GraphBuilder::new(monoid.clone()).vertices((0..n).map(|i| format!("t{i}")));
        for (i, l) in lengths.iter().enumerate() {
            let l: Vec<i64> = l.iter().map(|x| x * scale).collect();
            b = b.edge(format!("f{i}"), format!("t{i}"), format!("t{}", (i + 1) % n), &l);
        }
        b.build().expect("valid cycle")
    };
    let m = d * n;
    let source = {
        let mut b = GraphBuilder::new(monoid.clone()).vertices((0..m).map(|i| format!("s{i}")));
        for i in 0..m {
            b = b.edge(format!("e{i}"), format!("s{i}"), format!("s{}", (i + 1) % m), &lengths[i % n]);
        }
        b.build().expect("valid cycle")
    };
    let vertices = (0..m).map(|i| i % n).collect();
    let half_edges = (0..2 * m).map(|h| Element::HalfEdge(2 * ((h / 2) % n) + h % 2)).collect();
    GraphMorphism::new(source, target, vertices, half_edges).expect("covers are morphisms")
}

/// Harmonic non-degenerate morphisms: cyclic covers, identities of corpus
/// graphs with edges, and tree morphisms of corpus graphs, in that order.
pub fn morphism_corpus(seed: u64, count: usize) -> Vec<GraphMorphism> {
    let mut out = Vec::new();
    let free1 = LengthPool::free1();
    let free2 = LengthPool::free2();
    for n in 2..=4 {
        for d in 1..=3 {
            let unit = vec![vec![1]; n];
            out.push(cyclic_cover(n, d, &unit, &free1.monoid, 1));
            out.push(cyclic_cover(n, d, &unit, &free1.monoid, 2));
            let mixed: Vec<Vec<i64>> = (0..n).map(|i| free2.lengths[i % 3].clone()).collect();
            out.push(cyclic_cover(n, d, &mixed, &free2.monoid, 1));
        }
    }
    let mut graphs = generate_corpus(seed, &CorpusBounds::new(3, 4).with_random(12)).graphs;
    graphs.retain(|g| g.edge_count() > 0);
    graphs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for g in graphs.iter().take(10) {
        out.push(GraphMorphism::identity(g));
    }
    for g in &graphs {
        if out.len() >= count {
            break;
        }
        out.extend(tree_morphisms(g, crate::ggon::DEFAULT_CAP).into_iter().take(2));
    }
    out.retain(|phi| phi.is_nondegenerate());
    out.truncate(count);
    out
}
