//! Recognition of simple blocks as full matrix algebras over `Q`.
//!
//! For a rank-one idempotent `e` of `A ≅ M_n(Q)` the left ideal `A e` is
//! the column module, and left multiplication on it gives the isomorphism
//! `rho: A -> End(A e) = M_n(Q)`. The rank-one idempotent is found by
//! repeatedly splitting corner algebras `f A f`; a rank-two corner that
//! resists the candidate scan is handled as a quaternion algebra.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::idempotents::candidates;
use super::{find_split_idempotent, quaternion, vec_sub, Algebra, SplitPolicy};
use crate::linalg::{Matrix, Rational};

/// An explicit isomorphism `A -> M_n(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixAlgebraIso {
    pub n: usize,
    /// Coefficients of the rank-one idempotent `e` in `A`.
    pub rank_one_idempotent: Vec<Rational>,
    /// `n^2 x dim A`; column `k` is `rho(b_k)` flattened row-major.
    pub rho: Matrix,
    /// `matrix_units[i * n + j]` is `rho^{-1}(E_ij)` in `A`.
    pub matrix_units: Vec<Vec<Rational>>,
}

impl MatrixAlgebraIso {
    /// `rho(x)` as an `n x n` matrix.
    pub fn apply(&self, x: &[Rational]) -> Matrix {
        Matrix::from_vec(self.n, self.n, self.rho.mul_vec(x))
    }

    pub fn matrix_unit(&self, i: usize, j: usize) -> &[Rational] {
        &self.matrix_units[i * self.n + j]
    }

    /// Checks bijectivity, multiplicativity on basis pairs, the unit, and
    /// that the matrix units invert `rho`.
    pub fn verify(&self, a: &Algebra) -> bool {
        let n = self.n;
        let d = a.dim();
        if d != n * n || self.rho.rows() != d || self.rho.cols() != d || self.rho.rank() != d {
            return false;
        }
        if self.apply(a.unit()) != Matrix::identity(n) {
            return false;
        }
        let images: Vec<Matrix> = (0..d).map(|k| self.apply(&a.basis_element(k).into_coeffs())).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = a.product(i, j);
                let mut lhs = Matrix::zeros(n, n);
                for (k, v) in prod {
                    lhs = lhs.add(&images[*k].scale(v));
                }
                if lhs != images[i].mul(&images[j]) {
                    return false;
                }
            }
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut eij = Matrix::zeros(n, n);
                eij.set(i, j, Rational::one());
                self.apply(self.matrix_unit(i, j)) == eij
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "obstruction", rename_all = "snake_case")]
pub enum NotSplitReport {
    /// The center is a field extension of `Q` of this degree.
    CenterDimension { center_dim: usize },
    /// The center is `Q` but the block dimension is not a square.
    NonSquareDimension { dim: usize },
    /// Central simple of dimension `n^2`, but the scan found no idempotent
    /// of rank below `current_rank`; consistent with a division-algebra
    /// factor.
    NoRankOneIdempotent { n: usize, current_rank: usize },
}

impl std::fmt::Display for NotSplitReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::CenterDimension { center_dim } => {
                write!(f, "center has dimension {center_dim} over Q")
            }
            Self::NonSquareDimension { dim } => write!(f, "dimension {dim} is not a square"),
            Self::NoRankOneIdempotent { n, current_rank } => write!(
                f,
                "no idempotent of rank below {current_rank} found (n = {n}); possible division algebra"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedderburnOutcome {
    Split(MatrixAlgebraIso),
    NotSplit(NotSplitReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedderburnError {
    #[error("algebra is not semisimple (radical dimension {0})")]
    NotSemisimple(usize),
    #[error("algebra is not a single block ({0} blocks)")]
    NotSimple(usize),
}

/// `dim(A x)`, which is `n * rank(x)` in `M_n`.
fn left_ideal_dim(a: &Algebra, x: &[Rational]) -> usize {
    a.right_mult(x).rank()
}

fn find_rank_one(a: &Algebra, n: usize, policy: &SplitPolicy) -> Result<Vec<Rational>, usize> {
    let mut f = a.unit().to_vec();
    let mut rank = n;
    while rank > 1 {
        let (corner, incl) = a.corner(&f).expect("corner of an idempotent is an algebra");
        let basis: Vec<Vec<Rational>> = (0..corner.dim())
            .map(|k| corner.basis_element(k).into_coeffs())
            .collect();
        let split = candidates(&basis, policy)
            .iter()
            .find_map(|x| find_split_idempotent(&corner, x))
            .or_else(|| {
                if rank == 2 {
                    quaternion::split_idempotent(&corner)
                } else {
                    None
                }
            });
        let Some(e) = split else {
            return Err(rank);
        };
        let e = incl.mul_vec(&e);
        let rest = vec_sub(&f, &e);
        let (re, rr) = (left_ideal_dim(a, &e) / n, left_ideal_dim(a, &rest) / n);
        (f, rank) = if re <= rr { (e, re) } else { (rest, rr) };
    }
    Ok(f)
}

impl Algebra {
    /// Decides whether a simple block is `M_n(Q)` and, if so, builds the
    /// isomorphism.
    pub fn wedderburn_split(&self, policy: &SplitPolicy) -> Result<WedderburnOutcome, WedderburnError> {
        let rad = self.radical().dim();
        if rad != 0 {
            return Err(WedderburnError::NotSemisimple(rad));
        }
        let blocks = self.central_idempotents(policy).len();
        if blocks != 1 {
            return Err(WedderburnError::NotSimple(blocks));
        }
        let center_dim = self.center().dim();
        if center_dim > 1 {
            return Ok(WedderburnOutcome::NotSplit(NotSplitReport::CenterDimension {
                center_dim,
            }));
        }
        let d = self.dim();
        let n = (1..=d).find(|n| n * n >= d).unwrap_or(0);
        if n * n != d {
            return Ok(WedderburnOutcome::NotSplit(NotSplitReport::NonSquareDimension {
                dim: d,
            }));
        }
        let e = match find_rank_one(self, n, policy) {
            Ok(e) => e,
            Err(current_rank) => {
                return Ok(WedderburnOutcome::NotSplit(NotSplitReport::NoRankOneIdempotent {
                    n,
                    current_rank,
                }))
            }
        };
        let column_module = self.right_mult(&e).image();
        let basis = column_module.basis_vectors();
        let mut rho = Matrix::zeros(d, d);
        for k in 0..d {
            let bk = self.basis_element(k).into_coeffs();
            for (j, v) in basis.iter().enumerate() {
                let c = column_module
                    .coordinates(&self.mul(&bk, v))
                    .expect("A e is a left ideal");
                for (i, x) in c.into_iter().enumerate() {
                    rho.set(i * n + j, k, x);
                }
            }
        }
        let inv = rho
            .inverse()
            .expect("rho of a central simple algebra with a rank-one idempotent is bijective");
        let matrix_units = (0..d).map(|ij| inv.column(ij)).collect();
        let iso = MatrixAlgebraIso {
            n,
            rank_one_idempotent: e,
            rho,
            matrix_units,
        };
        debug_assert!(iso.verify(self));
        Ok(WedderburnOutcome::Split(iso))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::zoo;

    fn split(a: &Algebra) -> MatrixAlgebraIso {
        match a.wedderburn_split(&SplitPolicy::default()).unwrap() {
            WedderburnOutcome::Split(iso) => {
                assert!(iso.verify(a));
                iso
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn matrix_units_basis_gives_identity() {
        let m2 = zoo::matrix_algebra(2);
        let iso = split(&m2);
        assert_eq!(iso.n, 2);
        assert_eq!(iso.rho, Matrix::identity(4));
    }

    #[test]
    fn scrambled_matrix_algebras_recover_n() {
        for n in 1..=4 {
            for seed in 0..3 {
                let a = zoo::scramble(&zoo::matrix_algebra(n), seed);
                assert_eq!(split(&a).n, n);
            }
        }
    }

    #[test]
    fn field_extension_is_not_split() {
        let gauss = zoo::polynomial_quotient(&Poly::from_i64(&[1, 0, 1]));
        assert_eq!(
            gauss.wedderburn_split(&SplitPolicy::default()).unwrap(),
            WedderburnOutcome::NotSplit(NotSplitReport::CenterDimension { center_dim: 2 })
        );
    }

    #[test]
    fn quaternions_have_no_rank_one_idempotent() {
        let q = zoo::quaternions(-1, -1);
        assert_eq!(
            q.wedderburn_split(&SplitPolicy::default()).unwrap(),
            WedderburnOutcome::NotSplit(NotSplitReport::NoRankOneIdempotent { n: 2, current_rank: 2 })
        );
        // (1, 1) is split: M_2(Q)
        assert_eq!(split(&zoo::quaternions(1, 1)).n, 2);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            zoo::dual_numbers().wedderburn_split(&SplitPolicy::default()),
            Err(WedderburnError::NotSemisimple(1))
        );
        let qq = zoo::direct_product(&[zoo::rationals(), zoo::rationals()]);
        assert_eq!(
            qq.wedderburn_split(&SplitPolicy::default()),
            Err(WedderburnError::NotSimple(2))
        );
    }
}
