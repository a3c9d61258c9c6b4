//! Exact rational linear algebra on small sparse matrices.
//!
//! Everything here works over `Q` with arbitrary precision. Subspaces are
//! stored in reduced row echelon form, so two subspaces are equal exactly
//! when their stored bases are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `num/den`, including integers (`3/1`).
pub fn render_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, q(v));
            }
        }
        m
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry. Zero values remove the entry so no zeros are stored.
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            let s = out.get(r, c) + v;
            out.set(r, c, s);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let s = out.get(i, j) + a * b;
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            out[r] += a * &v[c];
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{})[", self.rows, self.cols)?;
        for (i, (&(r, c), v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c})={v}")?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination. Returns the nonzero rows of the reduced row
/// echelon form together with their pivot columns.
fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][col].recip();
        for x in rows[lead].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    (rows, pivots)
}

/// A subspace of `Q^n`, stored as the nonzero rows of a reduced row echelon
/// form. The representation is unique per subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_spanning(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| unit_vector(ambient_dim, i))
                .collect(),
        )
    }

    /// Canonical subspace spanned by the given vectors (which need not be
    /// independent).
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        let (basis, pivots) = rref(vectors, ambient_dim);
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[p].is_zero() {
                continue;
            }
            let f = rest[p].clone();
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Re-runs canonicalization on the stored basis.
    pub fn recanonicalized(&self) -> Self {
        Self::from_spanning(self.ambient_dim, self.basis.clone())
    }

    /// True when the stored basis is exactly in reduced row echelon form.
    pub fn is_canonical(&self) -> bool {
        let mut last = None;
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if last.is_some_and(|l| p <= l) || !row[p].is_one() {
                return false;
            }
            if row[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            last = Some(p);
        }
        self.pivots.iter().enumerate().all(|(i, &p)| {
            self.basis
                .iter()
                .enumerate()
                .all(|(j, row)| i == j || row[p].is_zero())
        })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in Q^{}) {{",
            self.dim(),
            self.ambient_dim
        )?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}}")
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Solution space of `m * v = 0`.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    let (reduced, pivots) = rref(m.to_dense(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = unit_vector(m.cols(), free);
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        vectors.push(v);
    }
    Subspace::from_spanning(m.cols(), vectors)
}

/// Canonical complement of the column space: the span of the standard basis
/// vectors at the non-pivot positions of the column space's echelon form.
pub fn cokernel_basis(m: &SparseMatrix) -> Subspace {
    let (_, pivots) = rref(m.transpose().to_dense(), m.rows());
    let mut is_pivot = vec![false; m.rows()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..m.rows())
        .filter(|&r| !is_pivot[r])
        .map(|r| unit_vector(m.rows(), r))
        .collect();
    Subspace::from_spanning(m.rows(), vectors)
}

/// Column space of `m` as a subspace of `Q^rows`.
pub fn image(m: &SparseMatrix) -> Subspace {
    Subspace::from_spanning(m.rows(), m.transpose().to_dense())
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m.to_dense(), m.cols()).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecq(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn kernel_of_empty_matrix() {
        let k = kernel(&SparseMatrix::zero(0, 0));
        assert_eq!(k.dim(), 0);
        assert_eq!(k.ambient_dim(), 0);
    }

    #[test]
    fn kernel_of_zero_scalar_is_full_line() {
        let k = kernel(&SparseMatrix::from_rows(&[vec![0]]));
        assert_eq!(k, Subspace::full(1));
    }

    #[test]
    fn kernel_by_hand() {
        let m = SparseMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let expected = Subspace::from_spanning(3, vec![vecq(&[-1, -1, 1])]);
        assert_eq!(kernel(&m), expected);
        assert_eq!(m.mul_vec(&vecq(&[-1, -1, 1])), vecq(&[0, 0]));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_basis(&SparseMatrix::identity(2)).dim(), 0);
        let c = cokernel_basis(&SparseMatrix::from_rows(&[vec![1], vec![0]]));
        assert_eq!(c, Subspace::from_spanning(2, vec![vecq(&[0, 1])]));
        assert_eq!(cokernel_basis(&SparseMatrix::zero(3, 3)), Subspace::full(3));
    }

    #[test]
    fn cokernel_of_map_with_no_columns() {
        assert_eq!(cokernel_basis(&SparseMatrix::zero(2, 0)), Subspace::full(2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
        assert_eq!(rank(&SparseMatrix::zero(3, 5)), 0);
        assert_eq!(rank(&SparseMatrix::from_rows(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn set_zero_removes_entry() {
        let mut m = SparseMatrix::identity(2);
        m.set(0, 0, q(0));
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_rows(&[vec![1, 2], vec![0, 3]]);
        let b = SparseMatrix::from_rows(&[vec![4], vec![5]]);
        assert_eq!(a.mul(&b), SparseMatrix::from_rows(&[vec![14], vec![15]]));
        assert_eq!(b.transpose(), SparseMatrix::from_rows(&[vec![4, 5]]));
    }

    #[test]
    fn contains_uses_echelon_basis() {
        let s = Subspace::from_spanning(3, vec![vecq(&[1, 1, 0]), vecq(&[0, 2, 2])]);
        assert!(s.contains(&vecq(&[1, 3, 2])));
        assert!(!s.contains(&vecq(&[0, 0, 1])));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_rational(&q(3)), "3/1");
        assert_eq!(render_rational(&(q(-2) / q(6))), "-1/3");
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=3), c), r).prop_map(
                move |rows| {
                    let rows: Vec<Vec<Rational>> = rows
                        .into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|(n, d)| Rational::new(n.into(), d.into()))
                                .collect()
                        })
                        .collect();
                    SparseMatrix::from_rational_rows(&rows, c)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
        }

        #[test]
        fn cokernel_dimension(m in small_matrix()) {
            prop_assert_eq!(cokernel_basis(&m).dim(), m.rows() - rank(&m));
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix()) {
            for v in kernel(&m).basis() {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn echelon_form_is_fixed_point(m in small_matrix()) {
            let k = kernel(&m);
            let c = cokernel_basis(&m);
            prop_assert!(k.is_canonical());
            prop_assert!(c.is_canonical());
            prop_assert_eq!(k.recanonicalized(), k);
            prop_assert_eq!(c.recanonicalized(), c);
        }

        #[test]
        fn cokernel_complements_image(m in small_matrix()) {
            let im = image(&m);
            let c = cokernel_basis(&m);
            let mut all: Vec<Vec<Rational>> = im.basis().to_vec();
            all.extend(c.basis().iter().cloned());
            prop_assert_eq!(Subspace::from_spanning(m.rows(), all).dim(), m.rows());
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("3/6"),
            Some(Rational::new(BigInt::from(1), BigInt::from(2)))
        );
        assert_eq!(parse_rational("-4"), Some(q(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
