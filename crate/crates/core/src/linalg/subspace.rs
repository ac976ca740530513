use super::echelon::Echelon;
use super::matrix::Matrix;
use super::rational::Rational;
use super::sparse::{sparse_from_dense, SparseVec};

/// A linear subspace of `Q^n` in canonical form: the basis rows are the
/// nonzero rows of the reduced row-echelon form of any spanning set, so two
/// subspaces are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    fn from_echelon(e: Echelon) -> Self {
        let ambient_dim = e.ncols();
        let pivots = e.pivots();
        let rows = e.into_rows();
        let mut basis = Matrix::zeros(rows.len(), ambient_dim);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r {
                basis.set(i, j, v);
            }
        }
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn from_sparse_rows(ambient_dim: usize, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for r in rows {
            if e.is_full() {
                break;
            }
            e.insert(&r);
        }
        Self::from_echelon(e)
    }

    /// Span of the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::from_sparse_rows(
            ambient_dim,
            vectors.iter().map(|v| {
                assert_eq!(v.len(), ambient_dim, "vector length mismatch");
                sparse_from_dense(v)
            }),
        )
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::from_sparse_rows(m.cols(), (0..m.rows()).map(|i| sparse_from_dense(m.row(i))))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for i in 0..self.dim() {
            e.insert(&sparse_from_dense(self.basis.row(i)));
        }
        e
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis. Because the basis is in
    /// RREF, these are just the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Rational::zero(); self.ambient_dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    rebuilt[j] += &(c * b);
                }
            }
        }
        (rebuilt == v).then_some(coords)
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &(c * b);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let mut e = self.echelon();
        for i in 0..other.dim() {
            e.insert(&sparse_from_dense(other.basis.row(i)));
        }
        Self::from_echelon(e)
    }

    /// `dim(self ∩ other)` by inclusion–exclusion.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Inclusion map as an `ambient x dim` matrix (basis vectors as columns).
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    #[test]
    fn canonical_regardless_of_generators() {
        let a = Subspace::span(3, &vecs(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::span(3, &vecs(&[&[1, 2, 1], &[2, 1, -1], &[0, 0, 0]]));
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn coordinates_and_membership() {
        let s = Subspace::span(3, &vecs(&[&[1, 0, 2], &[0, 1, 3]]));
        let v = vecs(&[&[2, -1, 1]]).remove(0);
        assert_eq!(s.coordinates(&v), Some(vecs(&[&[2, -1]]).remove(0)));
        assert!(!s.contains(&vecs(&[&[1, 0, 0]])[0]));
        assert_eq!(s.combine(&vecs(&[&[2, -1]])[0]), v);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12), cols in 1usize..5) {
            let rows = 12 / cols;
            let m = Matrix::from_fn(rows, cols, |i, j| Rational::from(entries[i * cols + j]));
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.dim(), cols);
            for v in k.basis_vectors() {
                prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
            }
            let c = m.cokernel();
            prop_assert_eq!(c.quotient_dim, rows - m.rank());
            prop_assert!(c.projection.mul(&m).is_zero());
        }

        #[test]
        fn row_permutation_invariance(entries in proptest::collection::vec(-3i64..4, 12), shift in 0usize..4) {
            let m = Matrix::from_fn(4, 3, |i, j| Rational::from(entries[i * 3 + j]));
            let p = Matrix::from_fn(4, 3, |i, j| m.get((i + shift) % 4, j).clone());
            prop_assert_eq!(Subspace::row_space(&m), Subspace::row_space(&p));
            prop_assert_eq!(m.kernel(), p.kernel());
        }
    }
}
