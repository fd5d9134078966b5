//! Geometric gonality: the least degree of a harmonic, non-degenerate
//! morphism onto a metrised tree.
//!
//! A harmonic non-degenerate morphism of positive degree hits every target
//! half-edge (each has multiplicity `deg > 0`), hence every target vertex,
//! so the target may be replaced by the image: it suffices to search
//! surjections `psi: V -> V(T)` onto trees with at most `|V|` vertices.
//!
//! For a fixed `psi`, loops and edges inside a fibre are contracted and an
//! edge `{u, v}` with `psi(u) != psi(v)` must go to the tree edge joining
//! them. All lengths landing on a tree edge `t` must lie on one ray
//! `a_e * p_t`, and the target length is `c_t * p_t` with `c_t` a common
//! multiple of the `a_e`. With `W(v, t) = sum 1 / a_e` over the half-edges
//! at `v` going to `t`, harmonicity says `c_t * W(v, t)` is the same for all
//! `t` at `psi(v)`. These ratio conditions either fail outright or pin the
//! vector `(c_t)` down up to one positive scalar; only membership of
//! `c_t * p_t` in the monoid depends on that scalar, and it is searched up
//! to `cap` multiples of the smallest integral solution.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Axiom, Violation};
use crate::graph::{Element, GraphBuilder, MetrisedGraph};
use crate::monoid::ray_decompose;
use crate::morphism::GraphMorphism;
use crate::trees::{enumerate_trees, Tree};

pub const DEFAULT_CAP: u32 = 8;

/// Why a candidate `(T, psi)` admits no harmonic non-degenerate morphism at
/// any scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The lengths landing on one tree edge are not on a common ray.
    RayMismatch { tree_edge: usize, edges: Vec<String> },
    /// `v` has edges towards some neighbours of `psi(v)` but not this one.
    UncoveredDirection { vertex: String, tree_edge: usize },
    /// Every edge at `v` is contracted.
    Degenerate { vertex: String },
    /// The conformality ratios around `v` contradict each other.
    RatioConflict { vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateFailure {
    pub tree_edges: Vec<(usize, usize)>,
    pub assignment: BTreeMap<String, usize>,
    pub obstruction: Obstruction,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum GonalityResult {
    Finite { degree: i64, witness: GraphMorphism },
    Infinite { certificate: Vec<CandidateFailure> },
    /// Some candidate could only be completed beyond the scale cap, and its
    /// degree there would be at least `lower_bound`.
    Exceeded { cap: u32, lower_bound: i64, best_known: Option<i64> },
}

impl GonalityResult {
    pub fn degree(&self) -> Option<i64> {
        match self {
            GonalityResult::Finite { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GonalityResult::Infinite { .. })
    }
}

enum Outcome {
    Found { degree: i64, lengths: Vec<Vec<i64>> },
    Structural(Obstruction),
    /// Needs a scale above the cap; the degree would be at least this.
    Scale(i64),
}

struct Candidate<'a> {
    g: &'a MetrisedGraph,
    tree: &'a Tree,
    psi: Vec<usize>,
}

impl Candidate<'_> {
    fn tree_edge_of(&self, e: usize) -> Option<usize> {
        let [u, v] = self.g.edges()[e].ends;
        let (a, b) = (self.psi[u], self.psi[v]);
        if a == b {
            return None;
        }
        Some(self.tree.edge_between(a, b).expect("psi respects adjacency"))
    }

    fn evaluate(&self, cap: u32) -> Outcome {
        let g = self.g;
        let tree = self.tree;
        let m = tree.edges.len();
        let n = g.vertex_count();
        let edge_to_tree: Vec<Option<usize>> = (0..g.edge_count()).map(|e| self.tree_edge_of(e)).collect();

        let mut primitive = vec![Vec::new(); m];
        let mut mult = vec![0i64; g.edge_count()];
        let mut base = vec![1i64; m];
        for t in 0..m {
            let members: Vec<usize> = (0..g.edge_count()).filter(|&e| edge_to_tree[e] == Some(t)).collect();
            let lengths: Vec<Vec<i64>> = members.iter().map(|&e| g.edges()[e].length.clone()).collect();
            let Some((p, a)) = ray_decompose(&lengths) else {
                return Outcome::Structural(Obstruction::RayMismatch {
                    tree_edge: t,
                    edges: members.iter().map(|&e| g.edges()[e].id.clone()).collect(),
                });
            };
            primitive[t] = p;
            for (&e, &ae) in members.iter().zip(&a) {
                mult[e] = ae;
                base[t] = base[t].lcm(&ae);
            }
        }

        // w[v][t] = sum of 1 / a_e over half-edges at v going to t
        let zero = Ratio::from_integer(0i128);
        let mut w = vec![vec![zero; m]; n];
        for (e, edge) in g.edges().iter().enumerate() {
            if let Some(t) = edge_to_tree[e] {
                for &v in &edge.ends {
                    w[v][t] += Ratio::new(1, i128::from(mult[e]));
                }
            }
        }
        let incident: Vec<Vec<usize>> =
            (0..tree.n).map(|x| (0..m).filter(|&t| tree.edges[t].0 == x || tree.edges[t].1 == x).collect()).collect();
        for v in 0..n {
            let around = &incident[self.psi[v]];
            if around.iter().all(|&t| w[v][t] == zero) {
                return Outcome::Structural(Obstruction::Degenerate { vertex: g.vertex_id(v).to_owned() });
            }
            if let Some(&t) = around.iter().find(|&&t| w[v][t] == zero) {
                return Outcome::Structural(Obstruction::UncoveredDirection {
                    vertex: g.vertex_id(v).to_owned(),
                    tree_edge: t,
                });
            }
        }

        // propagate the ratios r_t from r_0 = 1
        let mut fibre = vec![Vec::new(); tree.n];
        for v in 0..n {
            fibre[self.psi[v]].push(v);
        }
        let mut r: Vec<Option<Ratio<i128>>> = vec![None; m];
        r[0] = Some(Ratio::from_integer(1));
        let mut queue = VecDeque::from([0]);
        while let Some(t) = queue.pop_front() {
            let rt = r[t].expect("queued edges have a ratio");
            for x in [tree.edges[t].0, tree.edges[t].1] {
                for &v in &fibre[x] {
                    let mv = rt * w[v][t];
                    for &s in &incident[x] {
                        let want = mv / w[v][s];
                        match r[s] {
                            None => {
                                r[s] = Some(want);
                                queue.push_back(s);
                            }
                            Some(rs) if rs != want => {
                                return Outcome::Structural(Obstruction::RatioConflict {
                                    vertex: g.vertex_id(v).to_owned(),
                                })
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }

        // smallest kappa with kappa * r_t a positive multiple of base_t for all t
        let q: Vec<Ratio<i128>> =
            (0..m).map(|t| r[t].expect("a tree is connected") / i128::from(base[t])).collect();
        let den = q.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
        let num = q.iter().fold(0i128, |acc, x| acc.gcd(x.numer()));
        let kappa = Ratio::new(den, num);
        let c0: Vec<i64> = (0..m)
            .map(|t| {
                let c = kappa * r[t].expect("a tree is connected");
                assert!(c.is_integer(), "scale is not integral");
                i64::try_from(c.to_integer()).expect("edge scale exceeds i64")
            })
            .collect();
        let (x0, y0) = tree.edges[0];
        let degree0: i64 = fibre[x0]
            .iter()
            .chain(&fibre[y0])
            .map(|&v| (Ratio::from_integer(i128::from(c0[0])) * w[v][0]).to_integer())
            .sum::<i128>()
            .try_into()
            .expect("degree exceeds i64");
        // each half of tree edge 0 was counted once
        let degree0 = degree0 / 2;

        for k in 1..=i64::from(cap) {
            let lengths: Vec<Vec<i64>> =
                (0..m).map(|t| primitive[t].iter().map(|x| x * c0[t] * k).collect()).collect();
            let members = lengths
                .iter()
                .all(|l| g.monoid().is_member(l).expect("dimension matches the monoid"));
            if members {
                return Outcome::Found { degree: degree0 * k, lengths };
            }
        }
        Outcome::Scale(degree0 * (i64::from(cap) + 1))
    }

    fn witness(&self, lengths: &[Vec<i64>]) -> GraphMorphism {
        let g = self.g;
        let mut b = GraphBuilder::new(g.monoid().clone()).vertices((0..self.tree.n).map(|i| format!("t{i}")));
        for (i, &(x, y)) in self.tree.edges.iter().enumerate() {
            b = b.edge(format!("f{i}"), format!("t{x}"), format!("t{y}"), &lengths[i]);
        }
        let target = b.build().expect("witness tree is a valid graph");
        let mut half_edges = Vec::with_capacity(g.half_edge_count());
        for (e, edge) in g.edges().iter().enumerate() {
            match self.tree_edge_of(e) {
                None => {
                    let x = Element::Vertex(self.psi[edge.ends[0]]);
                    half_edges.extend([x, x]);
                }
                Some(t) => {
                    let forward = self.psi[edge.ends[0]] == self.tree.edges[t].0;
                    let (h0, h1) = if forward { (2 * t, 2 * t + 1) } else { (2 * t + 1, 2 * t) };
                    half_edges.extend([Element::HalfEdge(h0), Element::HalfEdge(h1)]);
                }
            }
        }
        GraphMorphism::new(g.clone(), target, self.psi.clone(), half_edges).expect("witness is a morphism")
    }

    fn failure(&self, obstruction: Obstruction) -> CandidateFailure {
        CandidateFailure {
            tree_edges: self.tree.edges.clone(),
            assignment: (0..self.g.vertex_count()).map(|v| (self.g.vertex_id(v).to_owned(), self.psi[v])).collect(),
            obstruction,
        }
    }
}

/// Surjections `V(g) -> V(tree)` sending adjacent vertices to equal or
/// adjacent tree vertices, in lexicographic order along a BFS order of `g`.
fn assignments(g: &MetrisedGraph, tree: &Tree, mut visit: impl FnMut(&[usize])) {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &(w, _) in &adj[order[i]] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut tadj = vec![vec![false; tree.n]; tree.n];
    for &(a, b) in &tree.edges {
        tadj[a][b] = true;
        tadj[b][a] = true;
    }
    let tdeg: Vec<usize> = (0..tree.n).map(|x| tree.degree(x)).collect();
    let gdeg: Vec<usize> = adj.iter().map(Vec::len).collect();

    struct State<'a> {
        order: &'a [usize],
        adj: &'a [Vec<(usize, usize)>],
        tadj: &'a [Vec<bool>],
        tdeg: &'a [usize],
        gdeg: &'a [usize],
        psi: Vec<usize>,
        hits: Vec<usize>,
        unhit: usize,
    }
    fn go(s: &mut State<'_>, depth: usize, visit: &mut dyn FnMut(&[usize])) {
        if depth == s.order.len() {
            if s.unhit == 0 {
                visit(&s.psi);
            }
            return;
        }
        if s.order.len() - depth < s.unhit {
            return;
        }
        let v = s.order[depth];
        for x in 0..s.tdeg.len() {
            if s.tdeg[x] > s.gdeg[v] {
                continue;
            }
            let fits = s.adj[v]
                .iter()
                .filter(|(u, _)| s.psi[*u] != usize::MAX)
                .all(|&(u, _)| s.psi[u] == x || s.tadj[s.psi[u]][x]);
            if !fits {
                continue;
            }
            s.psi[v] = x;
            s.hits[x] += 1;
            if s.hits[x] == 1 {
                s.unhit -= 1;
            }
            go(s, depth + 1, visit);
            s.hits[x] -= 1;
            if s.hits[x] == 0 {
                s.unhit += 1;
            }
            s.psi[v] = usize::MAX;
        }
    }
    let mut state = State {
        order: &order,
        adj: &adj,
        tadj: &tadj,
        tdeg: &tdeg,
        gdeg: &gdeg,
        psi: vec![usize::MAX; n],
        hits: vec![0; tree.n],
        unhit: tree.n,
    };
    go(&mut state, 0, &mut visit);
}

#[derive(Default)]
struct TreeSummary {
    best: Option<(i64, Vec<usize>, Vec<Vec<i64>>)>,
    failures: Vec<CandidateFailure>,
    scale_floor: Option<i64>,
    found: Vec<(Vec<usize>, Vec<Vec<i64>>)>,
}

fn search_tree(g: &MetrisedGraph, tree: &Tree, cap: u32, keep_all: bool) -> TreeSummary {
    let mut summary = TreeSummary::default();
    assignments(g, tree, |psi| {
        let cand = Candidate { g, tree, psi: psi.to_vec() };
        match cand.evaluate(cap) {
            Outcome::Found { degree, lengths } => {
                if summary.best.as_ref().is_none_or(|(d, _, _)| degree < *d) {
                    summary.best = Some((degree, psi.to_vec(), lengths.clone()));
                }
                if keep_all {
                    summary.found.push((psi.to_vec(), lengths));
                }
            }
            Outcome::Structural(o) => summary.failures.push(cand.failure(o)),
            Outcome::Scale(floor) => {
                summary.scale_floor = Some(summary.scale_floor.map_or(floor, |f| f.min(floor)));
            }
        }
    });
    summary
}

fn candidate_trees(g: &MetrisedGraph) -> Vec<Tree> {
    enumerate_trees(g.vertex_count()).into_iter().filter(|t| t.n >= 2).collect()
}

fn single_vertex_witness(g: &MetrisedGraph) -> GraphMorphism {
    let target = GraphBuilder::new(g.monoid().clone()).vertex("t0").build().expect("one vertex is a valid graph");
    let half_edges = vec![Element::Vertex(0); g.half_edge_count()];
    GraphMorphism::new(g.clone(), target, vec![0], half_edges).expect("collapsing loops is a morphism")
}

/// Geometric gonality with target scales searched up to `cap` multiples of
/// the least conformal solution.
pub fn ggon(g: &MetrisedGraph, cap: u32) -> GonalityResult {
    if g.vertex_count() == 1 {
        return GonalityResult::Finite {
            degree: 1,
            witness: single_vertex_witness(g),
        };
    }
    let trees = candidate_trees(g);
    let summaries: Vec<TreeSummary> = trees.par_iter().map(|t| search_tree(g, t, cap, false)).collect();
    let mut best: Option<(i64, usize)> = None;
    let mut floor: Option<i64> = None;
    for (i, s) in summaries.iter().enumerate() {
        if let Some((d, _, _)) = &s.best {
            if best.is_none_or(|(b, _)| *d < b) {
                best = Some((*d, i));
            }
        }
        if let Some(f) = s.scale_floor {
            floor = Some(floor.map_or(f, |x: i64| x.min(f)));
        }
    }
    match (best, floor) {
        (Some((degree, i)), f) if f.is_none_or(|f| degree <= f) => {
            let (_, psi, lengths) = summaries[i].best.clone().expect("best tree has a witness");
            let witness = Candidate { g, tree: &trees[i], psi }.witness(&lengths);
            let h = witness.harmonic().expect("target has edges").expect("witness is harmonic");
            assert_eq!(h.degree, degree, "witness degree differs from the predicted one");
            assert!(h.is_nondegenerate(), "witness is degenerate");
            GonalityResult::Finite { degree, witness }
        }
        (best, Some(f)) => GonalityResult::Exceeded {
            cap,
            lower_bound: f.max(2),
            best_known: best.map(|(d, _)| d),
        },
        (None, None) => GonalityResult::Infinite {
            certificate: summaries.into_iter().flat_map(|s| s.failures).collect(),
        },
        (Some(_), None) => unreachable!("handled by the first arm"),
    }
}

/// Every harmonic non-degenerate morphism onto a tree found by the search,
/// one per assignment, at the least admissible scale.
pub fn tree_morphisms(g: &MetrisedGraph, cap: u32) -> Vec<GraphMorphism> {
    candidate_trees(g)
        .iter()
        .flat_map(|t| {
            search_tree(g, t, cap, true)
                .found
                .into_iter()
                .map(move |(psi, lengths)| Candidate { g, tree: t, psi }.witness(&lengths))
        })
        .collect()
}

/// Outcome of re-checking a claimed gonality witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub degree: Option<i64>,
    pub failure: Option<Violation>,
}

impl WitnessReport {
    fn fail(axiom: Axiom, detail: impl Into<String>) -> Self {
        WitnessReport {
            degree: None,
            failure: Some(Violation::new(axiom, None, detail)),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Harmonic, non-degenerate, onto a tree; returns the degree.
pub fn verify_witness(phi: &GraphMorphism) -> WitnessReport {
    if phi.target().vertex_count() == 1 {
        if phi.source().vertex_count() == 1 {
            return WitnessReport { degree: Some(1), failure: None };
        }
        return WitnessReport::fail(Axiom::Degenerate, "target is a single vertex");
    }
    let h = match phi.harmonic() {
        Ok(Some(h)) => h,
        _ => return WitnessReport::fail(Axiom::NotHarmonic, "horizontal multiplicities differ"),
    };
    if let Some(v) = h.multiplicities.iter().position(|&m| m == 0) {
        return WitnessReport {
            degree: None,
            failure: Some(Violation::new(Axiom::Degenerate, Some(phi.source().vertex_id(v)), "multiplicity zero")),
        };
    }
    if !phi.target().is_tree() {
        return WitnessReport::fail(Axiom::NotATree, "target has a cycle");
    }
    WitnessReport { degree: Some(h.degree), failure: None }
}

/// Like [`verify_witness`], starting from an id map.
pub fn verify_witness_map(
    source: &MetrisedGraph,
    target: &MetrisedGraph,
    map: &BTreeMap<String, String>,
) -> WitnessReport {
    match GraphMorphism::from_ids(source.clone(), target.clone(), map) {
        Ok(phi) => verify_witness(&phi),
        Err(v) => WitnessReport {
            degree: None,
            failure: Some(v),
        },
    }
}
