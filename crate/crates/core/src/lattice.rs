//! Integer lattice routines: echelon (Hermite) bases, integer kernels and
//! coset reduction. Arithmetic is done in `i128`.

/// Brings `rows` into row echelon form on the first `active` columns using
/// unimodular row operations. Returns the pivot columns; the rows after the
/// pivot rows are zero on the active columns.
fn echelonize(rows: &mut [Vec<i128>], active: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..active {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry in this column among the remaining rows
            let best = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[top][col]);
                    let (head, tail) = rows.split_at_mut(r);
                    sub_multiple(&mut tail[0], &head[top], q);
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col] != 0 {
            if rows[top][col] < 0 {
                rows[top].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(col);
            top += 1;
        }
    }
    pivots
}

fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) {
    if q == 0 {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Reduces the entries above each pivot into `[0, pivot)`.
fn reduce_above(rows: &mut [Vec<i128>], pivots: &[usize]) {
    for (i, &col) in pivots.iter().enumerate() {
        for j in 0..i {
            let q = rows[j][col].div_euclid(rows[i][col]);
            let (head, tail) = rows.split_at_mut(i);
            sub_multiple(&mut head[j], &tail[0], q);
        }
    }
}

fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| i128::from(x)).collect()
}

fn narrow(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("lattice entry exceeds i64"))
        .collect()
}

/// Rank over the rationals of a list of row vectors.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| widen(r)).collect();
    echelonize(&mut m, width).len()
}

/// A basis of `{x in Z^n : A x = 0}` where `A` has the given rows.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // columns of A augmented by the identity; row reduce the A part
    let m = rows.len();
    let mut aug: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut r: Vec<i128> = rows.iter().map(|row| i128::from(row[j])).collect();
            r.extend((0..n).map(|k| i128::from(k == j)));
            r
        })
        .collect();
    let pivots = echelonize(&mut aug, m);
    let kernel: Vec<Vec<i64>> = aug[pivots.len()..].iter().map(|r| narrow(&r[m..])).collect();
    HermiteBasis::new(n, &kernel).rows
}

/// A lattice basis in Hermite normal form: echelon rows with strictly
/// increasing pivot columns, positive pivots, and every entry above a pivot
/// reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteBasis {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl HermiteBasis {
    /// The normal-form basis of the lattice spanned by `generators`.
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i128>> = generators.iter().map(|g| widen(g)).collect();
        let pivots = echelonize(&mut rows, dim);
        rows.truncate(pivots.len());
        reduce_above(&mut rows, &pivots);
        HermiteBasis {
            dim,
            rows: rows.iter().map(|r| narrow(r)).collect(),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of `x` modulo the lattice, and the
    /// coefficients `c` with `x - residue = sum c_i rows_i`.
    pub fn reduce(&self, x: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut r = x.to_vec();
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &col)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let q = r[col].div_euclid(row[col]);
            if q != 0 {
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= q * b;
                }
                coeffs[i] = q;
            }
        }
        (r, coeffs)
    }

    /// Canonical coset representative only.
    pub fn residue(&self, x: &[i64]) -> Vec<i64> {
        let mut r = x.to_vec();
        self.reduce_in_place(&mut r);
        r
    }

    pub fn reduce_in_place(&self, r: &mut [i64]) {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let q = r[col].div_euclid(row[col]);
            if q != 0 {
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= q * b;
                }
            }
        }
    }

    /// Integer coordinates of `x` in this basis, if `x` is in the lattice.
    pub fn solve(&self, x: &[i64]) -> Option<Vec<i64>> {
        let (residue, coeffs) = self.reduce(x);
        residue.iter().all(|&v| v == 0).then_some(coeffs)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.solve(x).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn combo(basis: &HermiteBasis, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; basis.dim()];
        for (row, c) in basis.rows().iter().zip(coeffs) {
            for (o, r) in out.iter_mut().zip(row) {
                *o += c * r;
            }
        }
        out
    }

    #[test]
    fn hermite_form_shape() {
        let b = HermiteBasis::new(3, &[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]]);
        assert_eq!(b.rows(), &[vec![1, 1, 1], vec![0, 2, 4]]);
        assert_eq!(b.pivots(), &[0, 1]);
        assert!(b.contains(&[3, 7, 11]));
        assert!(!b.contains(&[0, 1, 2]));
    }

    #[test]
    fn empty_lattice() {
        let b = HermiteBasis::new(2, &[vec![0, 0]]);
        assert!(b.is_empty());
        assert_eq!(b.solve(&[0, 0]), Some(vec![]));
        assert_eq!(b.solve(&[1, 0]), None);
    }

    #[test]
    fn kernel_of_cycle_constraint() {
        // s1 - s2 = 0
        let k = integer_kernel(&[vec![1, -1]], 2);
        assert_eq!(k, vec![vec![1, 1]]);
        // (1,0) s1 - (0,1) s2 = 0 has only the zero solution
        let k = integer_kernel(&[vec![1, 0], vec![0, -1]], 2);
        assert!(k.is_empty());
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    proptest! {
        #[test]
        fn reduction_is_canonical(
            gens in prop::collection::vec(prop::collection::vec(-6i64..6, 3), 0..4),
            x in prop::collection::vec(-20i64..20, 3),
            c in prop::collection::vec(-3i64..3, 4),
        ) {
            let b = HermiteBasis::new(3, &gens);
            // shifting x by a lattice element does not change the residue
            let mut shifted = x.clone();
            for (g, k) in gens.iter().zip(&c) {
                for (s, v) in shifted.iter_mut().zip(g) { *s += k * v; }
            }
            prop_assert_eq!(b.residue(&x), b.residue(&shifted));
            let (res, coeffs) = b.reduce(&x);
            let back = combo(&b, &coeffs);
            for i in 0..3 { prop_assert_eq!(back[i] + res[i], x[i]); }
            // every generator is in the lattice
            for g in &gens { prop_assert!(b.contains(g)); }
        }

        #[test]
        fn kernel_vectors_are_solutions(
            a in prop::collection::vec(prop::collection::vec(-4i64..4, 4), 1..3),
            x in prop::collection::vec(-3i64..3, 4),
        ) {
            let k = integer_kernel(&a, 4);
            for v in &k {
                for row in &a { prop_assert_eq!(crate::monoid::dot(row, v), 0); }
            }
            prop_assert_eq!(k.len() + rational_rank(&a), 4);
            // any integer solution is an integer combination of the kernel basis
            if a.iter().all(|row| crate::monoid::dot(row, &x) == 0) {
                prop_assert!(HermiteBasis::new(4, &k).contains(&x));
            }
        }
    }
}
