//! Sharp, integral, finitely generated monoids presented inside `Z^k`.
//!
//! A monoid is either the full orthant `N^k` or the submonoid of `Z^k`
//! generated by a finite list of nonzero vectors. Groupifications are taken
//! inside the ambient lattice, so monoids whose groupification has torsion
//! cannot be expressed.

use std::collections::HashSet;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Axiom, Error, Result, Violation};
use crate::lattice;

/// Default number of ray multiples tried by [`ray_lcm`].
pub const DEFAULT_RAY_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// The full nonnegative orthant.
    Free,
    /// The submonoid generated by these vectors.
    Generated(Vec<Vec<i64>>),
}

/// A validated monoid presentation, together with a strictly positive
/// integer functional witnessing sharpness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidSpec {
    rank: usize,
    presentation: Presentation,
    functional: Vec<i64>,
}

impl MonoidSpec {
    pub fn new(rank: usize, presentation: Presentation) -> Result<Self> {
        let functional = validate_spec(rank, &presentation)?;
        Ok(MonoidSpec {
            rank,
            presentation,
            functional,
        })
    }

    /// `N^rank`.
    pub fn free(rank: usize) -> Self {
        assert!(rank > 0, "a free monoid needs positive rank");
        MonoidSpec {
            rank,
            presentation: Presentation::Free,
            functional: vec![1; rank],
        }
    }

    pub fn generated(rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rank, Presentation::Generated(generators))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_free(&self) -> bool {
        matches!(self.presentation, Presentation::Free)
    }

    /// The generators; for `N^k` these are the standard basis vectors.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        match &self.presentation {
            Presentation::Free => (0..self.rank).map(|i| unit(self.rank, i)).collect(),
            Presentation::Generated(gens) => gens.clone(),
        }
    }

    /// The witness functional found at validation time.
    pub fn witness(&self) -> &[i64] {
        &self.functional
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn check_dim(&self, m: &[i64]) -> Result<()> {
        if m.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                actual: m.len(),
            });
        }
        Ok(())
    }

    /// Exact membership test.
    ///
    /// For generated monoids every coefficient `c_g` of a representation
    /// `m = sum c_g g` satisfies `c_g * f(g) <= f(m)` for the witness
    /// functional `f`, so the search below is finite.
    pub fn is_member(&self, m: &[i64]) -> Result<bool> {
        self.check_dim(m)?;
        Ok(match &self.presentation {
            Presentation::Free => m.iter().all(|&x| x >= 0),
            Presentation::Generated(gens) => {
                let weights: Vec<i64> = gens.iter().map(|g| dot(&self.functional, g)).collect();
                let mut failed = HashSet::new();
                member_search(gens, &weights, &self.functional, 0, m.to_vec(), &mut failed)
            }
        })
    }
}

fn member_search(
    gens: &[Vec<i64>],
    weights: &[i64],
    functional: &[i64],
    idx: usize,
    rest: Vec<i64>,
    failed: &mut HashSet<(usize, Vec<i64>)>,
) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    if idx == gens.len() {
        return false;
    }
    let budget = dot(functional, &rest);
    if budget <= 0 || failed.contains(&(idx, rest.clone())) {
        return false;
    }
    let max_coeff = budget / weights[idx];
    let mut cur = rest.clone();
    for _ in 0..=max_coeff {
        if member_search(gens, weights, functional, idx + 1, cur.clone(), failed) {
            return true;
        }
        for (c, g) in cur.iter_mut().zip(&gens[idx]) {
            *c -= g;
        }
    }
    failed.insert((idx, rest));
    false
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

/// Checks a presentation and returns a strictly positive witness functional.
///
/// `rank == 0` is a malformed spec; a zero generator, a generator of the wrong
/// length, or the absence of any strictly positive functional are reported
/// as [`Error::Invalid`].
pub fn validate_spec(rank: usize, presentation: &Presentation) -> Result<Vec<i64>> {
    if rank == 0 {
        return Err(Error::MalformedSpec("ambient rank must be positive".into()));
    }
    let gens = match presentation {
        Presentation::Free => return Ok(vec![1; rank]),
        Presentation::Generated(gens) => gens,
    };
    for (i, g) in gens.iter().enumerate() {
        let id = format!("generators[{i}]");
        if g.len() != rank {
            return Err(Violation::new(
                Axiom::GeneratorDimension,
                Some(&id),
                format!("expected {rank} coordinates, got {}", g.len()),
            )
            .into());
        }
        if g.iter().all(|&x| x == 0) {
            return Err(Violation::new(Axiom::ZeroGenerator, Some(&id), "generator is zero").into());
        }
    }
    positive_functional(rank, gens).ok_or_else(|| {
        Violation::new(
            Axiom::NotSharp,
            None,
            "no linear functional is strictly positive on every generator",
        )
        .into()
    })
}

/// Smallest strictly positive integer functional, or `None` if the monoid is
/// not sharp.
///
/// Candidates are ordered by max-norm, then by 1-norm, then in decreasing
/// lexicographic order; the search covers coefficients up to
/// `10 * max |generator coordinate|`. Beyond that cap, feasibility of
/// `g . f >= 1` is decided exactly by Fourier-Motzkin elimination.
fn positive_functional(rank: usize, gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    if gens.is_empty() {
        return Some(vec![1; rank]);
    }
    let max_coord = gens.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    let cap = 10 * max_coord.max(1);
    for shell in 1..=cap {
        let best = box_vectors(rank, shell)
            .filter(|f| f.iter().any(|x| x.abs() == shell))
            .filter(|f| gens.iter().all(|g| dot(f, g) > 0))
            .min_by(|a, b| {
                let l1 = |v: &Vec<i64>| v.iter().map(|x| x.abs()).sum::<i64>();
                l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
            });
        if best.is_some() {
            return best;
        }
    }
    fourier_motzkin_point(rank, gens)
}

/// All vectors in `[-bound, bound]^rank`, in lexicographic order.
fn box_vectors(rank: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut cur = Some(vec![-bound; rank]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = rank;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < bound {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = -bound;
        }
        Some(out)
    })
}

type Q = Ratio<i128>;

/// Finds an integer point with `g . f >= 1` for every generator, if any
/// rational point exists.
fn fourier_motzkin_point(rank: usize, gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    // rows: (coefficients, rhs) meaning coeffs . x >= rhs
    let start: Vec<(Vec<Q>, Q)> = gens
        .iter()
        .map(|g| (g.iter().map(|&x| Q::from(x as i128)).collect(), Q::from(1)))
        .collect();
    let mut stages = vec![start];
    for var in (0..rank).rev() {
        let cur = stages.last().unwrap();
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for row in cur {
            let c = row.0[var];
            if c > Q::from(0) {
                pos.push(row);
            } else if c < Q::from(0) {
                neg.push(row);
            } else {
                next.push(row.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let (wp, wn) = (-n.0[var], p.0[var]);
                let coeffs = p.0.iter().zip(&n.0).map(|(a, b)| *a * wp + *b * wn).collect();
                next.push((coeffs, p.1 * wp + n.1 * wn));
            }
        }
        next.sort();
        next.dedup();
        stages.push(next);
    }
    if stages.last().unwrap().iter().any(|(_, rhs)| *rhs > Q::from(0)) {
        return None;
    }
    // back-substitute: stage i constrains variables 0..rank-i given later ones
    let mut x = vec![Q::from(0); rank];
    for var in 0..rank {
        let stage = &stages[rank - 1 - var];
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for (coeffs, rhs) in stage {
            let c = coeffs[var];
            if c == Q::from(0) {
                continue;
            }
            let known: Q = (0..var).map(|j| coeffs[j] * x[j]).sum();
            let bound = (*rhs - known) / c;
            if c > Q::from(0) {
                lo = Some(lo.map_or(bound, |l: Q| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound, |h: Q| h.min(bound)));
            }
        }
        x[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Q::from(2),
            (Some(l), None) => l + Q::from(1),
            (None, Some(h)) => h - Q::from(1),
            (None, None) => Q::from(0),
        };
    }
    let denom = x.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = x
        .iter()
        .map(|q| i64::try_from(q.numer() * (denom / q.denom())).ok())
        .collect::<Option<_>>()?;
    gens.iter().all(|g| dot(&ints, g) > 0).then_some(ints)
}

/// If `a * n = m` for a positive integer `a`, returns it.
///
/// In a sharp integral monoid such an `a` is unique unless `m = n = 0`.
pub fn divide(m: &[i64], n: &[i64]) -> Result<Option<i64>> {
    if m.len() != n.len() {
        return Err(Error::Dimension {
            expected: n.len(),
            actual: m.len(),
        });
    }
    if n.iter().all(|&x| x == 0) {
        return Err(Error::ZeroDivisor);
    }
    Ok(integer_multiple(m, n).filter(|&a| a > 0))
}

/// The integer `t` (any sign) with `diff = t * len`, if there is one.
/// `len` must be nonzero.
pub fn integer_multiple(diff: &[i64], len: &[i64]) -> Option<i64> {
    let (i, &li) = len.iter().enumerate().find(|(_, &x)| x != 0)?;
    if diff[i] % li != 0 {
        return None;
    }
    let t = diff[i] / li;
    diff.iter().zip(len).all(|(d, l)| *d == t * l).then_some(t)
}

/// A homomorphism between presented monoids, given by an integer matrix
/// (`target.rank()` rows, `source.rank()` columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    matrix: Vec<Vec<i64>>,
    source: MonoidSpec,
    target: MonoidSpec,
}

impl MonoidHom {
    pub fn new(matrix: Vec<Vec<i64>>, source: MonoidSpec, target: MonoidSpec) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(Error::Dimension {
                expected: target.rank(),
                actual: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source.rank()) {
            return Err(Error::Dimension {
                expected: source.rank(),
                actual: row.len(),
            });
        }
        let hom = MonoidHom {
            matrix,
            source,
            target,
        };
        for (i, g) in hom.source.generators().iter().enumerate() {
            let image = hom.apply(g)?;
            if !hom.target.is_member(&image)? {
                return Err(Error::HomRange {
                    element: format!("generator {i} {g:?}"),
                    image,
                });
            }
        }
        Ok(hom)
    }

    pub fn identity(spec: &MonoidSpec) -> Self {
        let k = spec.rank();
        MonoidHom {
            matrix: (0..k).map(|i| unit(k, i)).collect(),
            source: spec.clone(),
            target: spec.clone(),
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn source(&self) -> &MonoidSpec {
        &self.source
    }

    pub fn target(&self) -> &MonoidSpec {
        &self.target
    }

    pub fn apply(&self, m: &[i64]) -> Result<Vec<i64>> {
        self.source.check_dim(m)?;
        Ok(self.matrix.iter().map(|row| dot(row, m)).collect())
    }

    /// Whether the map is injective on the groupification of the source.
    pub fn is_injective(&self) -> bool {
        let gens = self.source.generators();
        let images: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| self.matrix.iter().map(|row| dot(row, g)).collect())
            .collect();
        lattice::rational_rank(&images) == lattice::rational_rank(&gens)
    }
}

/// A strictly positive functional `spec -> N`, as a homomorphism into `N^1`.
///
/// Deterministic: for `N^k` this is the all-ones functional, otherwise the
/// first candidate in the order documented on the validation search.
pub fn find_positive_functional(spec: &MonoidSpec) -> MonoidHom {
    MonoidHom {
        matrix: vec![spec.witness().to_vec()],
        source: spec.clone(),
        target: MonoidSpec::free(1),
    }
}

/// Decomposes nonzero vectors along a common ray: returns the primitive
/// lattice vector `p` and positive integers `a_i` with `ms[i] = a_i * p`.
pub fn ray_decompose(ms: &[Vec<i64>]) -> Option<(Vec<i64>, Vec<i64>)> {
    let first = ms.first()?;
    let g = first.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return None;
    }
    let primitive: Vec<i64> = first.iter().map(|x| x / g).collect();
    let multipliers = ms
        .iter()
        .map(|m| {
            if m.len() != primitive.len() {
                return None;
            }
            integer_multiple(m, &primitive).filter(|&a| a > 0)
        })
        .collect::<Option<Vec<_>>>()?;
    Some((primitive, multipliers))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayLcm {
    /// The smallest admissible common multiple.
    pub length: Vec<i64>,
    /// `length / ms[i]` for each input.
    pub multipliers: Vec<i64>,
}

/// Smallest monoid member that is a positive integer multiple of every
/// element of `ms`.
///
/// Returns `None` if the inputs do not lie on a common ray, or if none of
/// the first `cap` multiples of `lcm * p` is a member.
pub fn ray_lcm(ms: &[Vec<i64>], spec: &MonoidSpec, cap: u32) -> Result<Option<RayLcm>> {
    if ms.is_empty() {
        return Err(Error::EmptyInput);
    }
    for m in ms {
        spec.check_dim(m)?;
        if m.iter().all(|&x| x == 0) {
            return Err(Error::ZeroDivisor);
        }
    }
    let Some((primitive, mults)) = ray_decompose(ms) else {
        return Ok(None);
    };
    let base = mults.iter().fold(1i64, |acc, a| acc.lcm(a));
    for t in 1..=i64::from(cap) {
        let c = base * t;
        let length: Vec<i64> = primitive.iter().map(|x| x * c).collect();
        if spec.is_member(&length)? {
            let multipliers = mults.iter().map(|a| c / a).collect();
            return Ok(Some(RayLcm {
                length,
                multipliers,
            }));
        }
    }
    Ok(None)
}
