//! Divisors, piecewise linear functions and the chip-firing rank on
//! monoid-metrised graphs.
//!
//! Principal divisors are computed through slopes rather than potentials:
//! each non-loop edge `e` with ends `(u, v)` carries an integer slope `s_e`
//! meaning `g(u) - g(v) = s_e * l(e)`, and the slope vectors that come from
//! an actual function are those summing to zero (in `Z^k`) around every
//! fundamental cycle. The Laplacian of such a slope vector is its image
//! under the incidence map.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::graph::{MetrisedGraph, VertexMap};
use crate::lattice::{integer_kernel, HermiteBasis};
use crate::monoid::integer_multiple;

/// An integer combination of vertices, stored densely in the graph's
/// vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// `k [v]`.
    pub fn point(n: usize, v: usize, k: i64) -> Self {
        let mut d = vec![0; n];
        d[v] = k;
        Divisor(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The partial order `self >= other`, coefficientwise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|a| -a).collect())
    }
}

/// Effective divisors of a fixed degree in colexicographic order: the last
/// coordinate varies slowest, e.g. `(2,0,0), (1,1,0), (0,2,0), (1,0,1), ...`.
#[derive(Debug, Clone)]
pub struct EffectiveDivisors {
    cur: Option<Vec<i64>>,
}

impl EffectiveDivisors {
    pub fn new(n: usize, degree: i64) -> Self {
        let cur = (n > 0 && degree >= 0).then(|| {
            let mut v = vec![0; n];
            v[0] = degree;
            v
        });
        EffectiveDivisors { cur }
    }
}

impl Iterator for EffectiveDivisors {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        if let Some(i) = next.iter().position(|&c| c > 0) {
            if i + 1 < next.len() {
                let v = next[i];
                next[i] = 0;
                next[i + 1] += 1;
                next[0] = v - 1;
                self.cur = Some(next);
            }
        }
        Some(Divisor(out))
    }
}

/// A vertex labelling in the groupification, one `Z^k` vector per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlFunction {
    pub values: Vec<Vec<i64>>,
}

impl PlFunction {
    pub fn constant(g: &MetrisedGraph, value: &[i64]) -> Self {
        PlFunction {
            values: vec![value.to_vec(); g.vertex_count()],
        }
    }

    /// The integer slope `(f(u) - f(v)) / l(e)` along each edge, or the
    /// first edge where the difference is not a multiple of the length.
    pub fn slopes(&self, g: &MetrisedGraph) -> Result<Vec<i64>> {
        if self.values.len() != g.vertex_count() {
            return Err(Error::Dimension {
                expected: g.vertex_count(),
                actual: self.values.len(),
            });
        }
        g.edges()
            .iter()
            .map(|e| {
                let (a, b) = (&self.values[e.ends[0]], &self.values[e.ends[1]]);
                if a.len() != e.length.len() || b.len() != e.length.len() {
                    return Err(Error::Dimension {
                        expected: e.length.len(),
                        actual: a.len().min(b.len()),
                    });
                }
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                integer_multiple(&diff, &e.length).ok_or_else(|| Error::NotPiecewiseLinear(e.id.clone()))
            })
            .collect()
    }

    pub fn is_piecewise_linear(&self, g: &MetrisedGraph) -> bool {
        self.slopes(g).is_ok()
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// `sum_v sum_{e in H_v} (f(v) - f(r(i(e)))) / l(e) [v]`.
pub fn laplacian(g: &MetrisedGraph, f: &PlFunction) -> Result<Divisor> {
    let slopes = f.slopes(g)?;
    Ok(slopes_to_divisor(g, &slopes))
}

/// Incidence image of per-edge slopes. Loops contribute nothing.
pub fn slopes_to_divisor(g: &MetrisedGraph, slopes: &[i64]) -> Divisor {
    let mut d = vec![0; g.vertex_count()];
    for (e, s) in g.edges().iter().zip(slopes) {
        if !e.is_loop() {
            d[e.ends[0]] += s;
            d[e.ends[1]] -= s;
        }
    }
    Divisor(d)
}

struct SpanningTree {
    parent: Vec<Option<(usize, usize)>>, // (parent vertex, edge index)
    depth: Vec<usize>,
    order: Vec<usize>,
    in_tree: Vec<bool>,
}

fn spanning_tree(g: &MetrisedGraph) -> SpanningTree {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.edge_count()];
    let mut order = vec![0];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, e));
                depth[v] = depth[u] + 1;
                in_tree[e] = true;
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    SpanningTree {
        parent,
        depth,
        order,
        in_tree,
    }
}

/// The lattice of slope vectors of piecewise linear functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeLattice {
    /// Basis vectors indexed by edge; loop entries are always zero.
    pub basis: Vec<Vec<i64>>,
}

/// Integer solutions of the cycle constraints `sum_e +-s_e l(e) = 0`.
pub fn slope_lattice(g: &MetrisedGraph) -> SlopeLattice {
    let tree = spanning_tree(g);
    let m = g.edge_count();
    let k = g.monoid().rank();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        if tree.in_tree[ei] {
            continue;
        }
        if e.is_loop() {
            // s l(e) = 0 forces s = 0
            let mut row = vec![0; m];
            row[ei] = 1;
            rows.push(row);
            continue;
        }
        // g(a) - g(b) = s_e l(e) must equal the sum along the tree path
        let mut coeff = vec![0i64; m]; // multiples of l(edge) in g(a) - g(b)
        let (mut a, mut b) = (e.ends[0], e.ends[1]);
        let mut from_a = Vec::new();
        let mut from_b = Vec::new();
        while tree.depth[a] > tree.depth[b] {
            let (p, te) = tree.parent[a].unwrap();
            from_a.push((a, te));
            a = p;
        }
        while tree.depth[b] > tree.depth[a] {
            let (p, te) = tree.parent[b].unwrap();
            from_b.push((b, te));
            b = p;
        }
        while a != b {
            let (pa, ta) = tree.parent[a].unwrap();
            from_a.push((a, ta));
            a = pa;
            let (pb, tb) = tree.parent[b].unwrap();
            from_b.push((b, tb));
            b = pb;
        }
        // walking up from x to its parent p: g(x) - g(p) = +-s_t l(t)
        for (x, t) in from_a {
            coeff[t] += if g.edges()[t].ends[0] == x { 1 } else { -1 };
        }
        for (x, t) in from_b {
            coeff[t] -= if g.edges()[t].ends[0] == x { 1 } else { -1 };
        }
        coeff[ei] -= 1;
        for c in 0..k {
            rows.push(
                (0..m)
                    .map(|t| coeff[t] * g.edges()[t].length[c])
                    .collect(),
            );
        }
    }
    SlopeLattice {
        basis: integer_kernel(&rows, m),
    }
}

/// Integrates slopes along a spanning tree from `base` at the first vertex.
/// Only meaningful for slope vectors in the [`slope_lattice`].
pub fn integrate_slopes(g: &MetrisedGraph, slopes: &[i64], base: &[i64]) -> PlFunction {
    let tree = spanning_tree(g);
    let mut values = vec![base.to_vec(); g.vertex_count()];
    for &v in &tree.order[1..] {
        let (p, t) = tree.parent[v].unwrap();
        let e = &g.edges()[t];
        // g(ends0) - g(ends1) = s l
        let sign = if e.ends[0] == p { -1 } else { 1 };
        values[v] = values[p]
            .iter()
            .zip(&e.length)
            .map(|(x, l)| x + sign * slopes[t] * l)
            .collect();
    }
    PlFunction { values }
}

/// The principal divisors `Prin = Delta(PL)` as a lattice in `Div^0`.
///
/// Degree-zero divisors are coordinatised by their coefficients at every
/// vertex except the pivot, which is the lexicographically last vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrinBasis {
    vertex_count: usize,
    pivot: usize,
    hermite: HermiteBasis,
}

impl PrinBasis {
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn hermite(&self) -> &HermiteBasis {
        &self.hermite
    }

    pub fn rank(&self) -> usize {
        self.hermite.rows().len()
    }

    pub fn is_empty(&self) -> bool {
        self.hermite.is_empty()
    }

    /// Coefficients away from the pivot.
    pub fn project(&self, d: &Divisor) -> Vec<i64> {
        d.0.iter()
            .enumerate()
            .filter(|&(v, _)| v != self.pivot)
            .map(|(_, &c)| c)
            .collect()
    }

    fn lift(&self, coords: &[i64]) -> Divisor {
        let mut d = Vec::with_capacity(self.vertex_count);
        let mut it = coords.iter();
        for v in 0..self.vertex_count {
            d.push(if v == self.pivot { 0 } else { *it.next().unwrap() });
        }
        d[self.pivot] = -coords.iter().sum::<i64>();
        Divisor(d)
    }

    /// The basis as degree-zero divisors.
    pub fn divisors(&self) -> Vec<Divisor> {
        self.hermite.rows().iter().map(|r| self.lift(r)).collect()
    }

    /// The integer combination of basis divisors equal to `d`, if `d` is
    /// principal.
    pub fn certificate(&self, d: &Divisor) -> Option<Vec<i64>> {
        if d.degree() != 0 {
            return None;
        }
        self.hermite.solve(&self.project(d))
    }

    /// Canonical representative of the class of `d` among divisors of the
    /// same degree.
    pub fn class_key(&self, d: &Divisor) -> Vec<i64> {
        let mut p = self.project(d);
        self.hermite.reduce_in_place(&mut p);
        p
    }
}

pub fn prin_basis(g: &MetrisedGraph) -> PrinBasis {
    let slopes = slope_lattice(g);
    let pivot = (0..g.vertex_count())
        .max_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)))
        .unwrap();
    let generators: Vec<Vec<i64>> = slopes
        .basis
        .iter()
        .map(|s| {
            let d = slopes_to_divisor(g, s);
            d.0.iter()
                .enumerate()
                .filter(|&(v, _)| v != pivot)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect();
    PrinBasis {
        vertex_count: g.vertex_count(),
        pivot,
        hermite: HermiteBasis::new(g.vertex_count() - 1, &generators),
    }
}

/// Linear systems and ranks on one graph, caching class keys of effective
/// divisors by degree.
#[derive(Debug, Clone)]
pub struct LinearSystems {
    n: usize,
    prin: PrinBasis,
    effective: HashMap<i64, HashSet<Vec<i64>>>,
}

impl LinearSystems {
    pub fn new(g: &MetrisedGraph) -> Self {
        LinearSystems {
            n: g.vertex_count(),
            prin: prin_basis(g),
            effective: HashMap::new(),
        }
    }

    pub fn prin(&self) -> &PrinBasis {
        &self.prin
    }

    pub fn is_principal(&self, d: &Divisor) -> Option<Vec<i64>> {
        self.prin.certificate(d)
    }

    pub fn equivalent(&self, a: &Divisor, b: &Divisor) -> bool {
        self.is_principal(&(a - b)).is_some()
    }

    /// `d` itself when effective, else the first effective `E ~ d` in
    /// colexicographic order.
    pub fn linear_system_witness(&self, d: &Divisor) -> Option<Divisor> {
        if d.is_effective() {
            return Some(d.clone());
        }
        EffectiveDivisors::new(self.n, d.degree()).find(|e| self.equivalent(e, d))
    }

    fn effective_keys(&mut self, degree: i64) -> &HashSet<Vec<i64>> {
        let (n, prin) = (self.n, &self.prin);
        self.effective
            .entry(degree)
            .or_insert_with(|| EffectiveDivisors::new(n, degree).map(|e| prin.class_key(&e)).collect())
    }

    /// Whether `|d| != {}`.
    pub fn has_effective(&mut self, d: &Divisor) -> bool {
        let deg = d.degree();
        if deg < 0 {
            return false;
        }
        let key = self.prin.class_key(d);
        self.effective_keys(deg).contains(&key)
    }

    /// Whether `|d - F| != {}` for every effective `F` of degree `k`.
    fn all_subtractions(&mut self, d: &Divisor, k: i64) -> bool {
        let deg = d.degree();
        if k > deg {
            return false;
        }
        let keys: Vec<Vec<i64>> = EffectiveDivisors::new(self.n, k)
            .map(|f| self.prin.class_key(&(d - &f)))
            .collect();
        let reps = self.effective_keys(deg - k);
        keys.iter().all(|key| reps.contains(key))
    }

    /// Baker-Norine rank; `-1` when the linear system is empty.
    pub fn rank(&mut self, d: &Divisor) -> i64 {
        if !self.has_effective(d) {
            return -1;
        }
        let deg = d.degree();
        for k in 1..=deg {
            if !self.all_subtractions(d, k) {
                return k - 1;
            }
        }
        deg
    }

    /// `rank(d) >= k`, checking only degree `k` subtractions.
    pub fn rank_at_least(&mut self, d: &Divisor, k: i64) -> bool {
        match k {
            k if k < 0 => true,
            0 => self.has_effective(d),
            k => self.all_subtractions(d, k),
        }
    }

    /// Divisorial gonality with the first witness in colexicographic order.
    pub fn dgon(&mut self) -> (i64, Divisor) {
        for d in 1..=self.n as i64 {
            for candidate in EffectiveDivisors::new(self.n, d) {
                if self.rank_at_least(&candidate, 1) {
                    return (d, candidate);
                }
            }
        }
        unreachable!("the sum of all vertices has positive rank")
    }
}

pub fn is_principal(g: &MetrisedGraph, d: &Divisor) -> Option<Vec<i64>> {
    prin_basis(g).certificate(d)
}

/// An effective divisor linearly equivalent to `d`, if any.
pub fn linear_system_nonempty(g: &MetrisedGraph, d: &Divisor) -> Option<Divisor> {
    if d.degree() < 0 {
        return None;
    }
    LinearSystems::new(g).linear_system_witness(d)
}

pub fn rank(g: &MetrisedGraph, d: &Divisor) -> i64 {
    LinearSystems::new(g).rank(d)
}

/// `(dgon, witness)`.
pub fn dgon(g: &MetrisedGraph) -> (i64, Divisor) {
    LinearSystems::new(g).dgon()
}

/// `D -> sum D(v) [phi(v)]` along a contraction's vertex map.
pub fn pushforward_contraction(vm: &VertexMap, d: &Divisor) -> Result<Divisor> {
    if d.len() != vm.source.len() {
        return Err(Error::Dimension {
            expected: vm.source.len(),
            actual: d.len(),
        });
    }
    let mut out = vec![0; vm.target.len()];
    for (v, &c) in d.0.iter().enumerate() {
        out[vm.map[v]] += c;
    }
    Ok(Divisor(out))
}

/// [`pushforward_contraction`] on id-keyed divisors.
pub fn pushforward_contraction_ids(
    vm: &VertexMap,
    d: &std::collections::BTreeMap<String, i64>,
) -> Result<std::collections::BTreeMap<String, i64>> {
    let mut out = std::collections::BTreeMap::new();
    for (id, &c) in d {
        let v = vm
            .source
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        *out.entry(vm.target[vm.map[v]].clone()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `f^gp o g` on the contracted graph; fails if `g` is not constant on the
/// fibres of the vertex map.
pub fn push_pl(vm: &VertexMap, f: &crate::monoid::MonoidHom, g: &PlFunction) -> Result<PlFunction> {
    let mut values: Vec<Option<Vec<i64>>> = vec![None; vm.target.len()];
    for (v, value) in g.values.iter().enumerate() {
        let image = f.apply(value)?;
        match &values[vm.map[v]] {
            Some(existing) if *existing != image => {
                return Err(Error::NotPiecewiseLinear(format!("fibre of {}", vm.target[vm.map[v]])));
            }
            _ => values[vm.map[v]] = Some(image),
        }
    }
    Ok(PlFunction {
        values: values.into_iter().map(|v| v.expect("vertex maps are surjective")).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::monoid::MonoidSpec;

    fn unit_two_gon() -> MetrisedGraph {
        GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1])
            .edge("b", "u", "v", &[1])
            .build()
            .unwrap()
    }

    fn two_gon() -> MetrisedGraph {
        GraphBuilder::new(MonoidSpec::free(2))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1, 0])
            .edge("b", "u", "v", &[0, 1])
            .build()
            .unwrap()
    }

    fn d(v: &[i64]) -> Divisor {
        Divisor(v.to_vec())
    }

    #[test]
    fn colex_enumeration() {
        let all: Vec<Divisor> = EffectiveDivisors::new(3, 2).collect();
        assert_eq!(
            all,
            vec![d(&[2, 0, 0]), d(&[1, 1, 0]), d(&[0, 2, 0]), d(&[1, 0, 1]), d(&[0, 1, 1]), d(&[0, 0, 2])]
        );
        assert_eq!(EffectiveDivisors::new(4, 0).count(), 1);
        assert_eq!(EffectiveDivisors::new(4, -1).count(), 0);
        assert_eq!(EffectiveDivisors::new(5, 3).count(), 35);
    }

    #[test]
    fn laplacian_examples() {
        let g = unit_two_gon();
        let f = PlFunction {
            values: vec![vec![0], vec![1]],
        };
        assert_eq!(laplacian(&g, &f).unwrap(), d(&[-2, 2]));
        assert!(laplacian(&g, &PlFunction::constant(&g, &[5])).unwrap().is_zero());

        let g = two_gon();
        assert!(laplacian(&g, &PlFunction::constant(&g, &[3, 4])).unwrap().is_zero());
        let bad = PlFunction {
            values: vec![vec![0, 0], vec![1, 0]],
        };
        assert!(matches!(laplacian(&g, &bad), Err(Error::NotPiecewiseLinear(e)) if e == "b"));
    }

    #[test]
    fn prin_examples() {
        assert!(prin_basis(&two_gon()).is_empty());
        let p = prin_basis(&unit_two_gon());
        // pivot vertex is v; the normal form makes the u coefficient positive
        assert_eq!(p.divisors(), vec![d(&[2, -2])]);

        let path = GraphBuilder::new(MonoidSpec::free(2))
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b", &[2, 1])
            .edge("y", "b", "c", &[0, 3])
            .build()
            .unwrap();
        assert_eq!(prin_basis(&path).rank(), 2);
    }

    #[test]
    fn principal_examples() {
        let g = unit_two_gon();
        assert_eq!(is_principal(&g, &d(&[0, 0])), Some(vec![0]));
        assert_eq!(is_principal(&g, &d(&[-1, 1])), None);
        assert_eq!(is_principal(&g, &d(&[-2, 2])), Some(vec![-1]));
        assert_eq!(is_principal(&g, &d(&[4, -4])), Some(vec![2]));
        assert_eq!(is_principal(&g, &d(&[1, 0])), None);
        assert_eq!(is_principal(&two_gon(), &d(&[0, 0])), Some(vec![]));
    }

    #[test]
    fn linear_system_examples() {
        let g = unit_two_gon();
        assert_eq!(linear_system_nonempty(&g, &d(&[1, 2])), Some(d(&[1, 2])));
        assert_eq!(linear_system_nonempty(&g, &d(&[0, -1])), None);
        // 2[v] - (-2[u] + 2[v]) = 2[u]
        assert_eq!(linear_system_nonempty(&g, &d(&[2, 0])), Some(d(&[2, 0])));
        let sys = LinearSystems::new(&g);
        let e = sys.linear_system_witness(&d(&[0, 2])).unwrap();
        assert!(e.is_effective());
        assert!(sys.equivalent(&e, &d(&[0, 2])));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&two_gon(), &d(&[0, 1])), 0);
        assert_eq!(rank(&unit_two_gon(), &d(&[0, 2])), 1);
        assert_eq!(rank(&unit_two_gon(), &d(&[1, -2])), -1);
        assert_eq!(rank(&two_gon(), &d(&[0, 0])), 0);
    }

    #[test]
    fn dgon_examples() {
        assert_eq!(dgon(&two_gon()), (2, d(&[1, 1])));
        let tree = GraphBuilder::new(MonoidSpec::free(2))
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b", &[2, 1])
            .edge("y", "b", "c", &[0, 3])
            .build()
            .unwrap();
        assert_eq!(dgon(&tree), (1, d(&[1, 0, 0])));
        let single = GraphBuilder::new(MonoidSpec::free(1)).vertex("v").build().unwrap();
        assert_eq!(dgon(&single), (1, d(&[1])));
    }

    #[test]
    fn contraction_pushforward() {
        let vm = VertexMap {
            source: vec!["u".into(), "v".into()],
            target: vec!["u".into()],
            map: vec![0, 0],
        };
        assert_eq!(pushforward_contraction(&vm, &d(&[1, 1])).unwrap(), d(&[2]));
        assert_eq!(pushforward_contraction(&vm, &d(&[1, -1])).unwrap(), d(&[0]));
        let id = VertexMap::identity(&["u".into(), "v".into()]);
        assert_eq!(pushforward_contraction(&id, &d(&[3, -1])).unwrap(), d(&[3, -1]));
        let map = [("w".to_string(), 1)].into_iter().collect();
        assert!(matches!(pushforward_contraction_ids(&vm, &map), Err(Error::UnknownVertex(_))));
    }
}
