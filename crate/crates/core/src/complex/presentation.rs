//! Cokernel of the first differential of a resolution after applying a
//! linear realization to its terms.

use serde::{Deserialize, Serialize};

use super::{ChainComplex, ComplexError};
use crate::linalg::{Cokernel, Matrix, SparseMatrix, Subspace};

/// Linear maps `F` from the last three positions of a complex to realized
/// spaces: the resolved bimodule, `P_1` and `P_2`. Each has as many columns
/// as its position has dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub target: Matrix,
    pub first: Matrix,
    /// Absent when the complex has a single term.
    pub second: Option<Matrix>,
}

impl Realization {
    pub fn identity(c: &ChainComplex) -> Self {
        Self {
            target: Matrix::identity(c.target().dim()),
            first: Matrix::identity(c.terms()[0].dim()),
            second: c.terms().get(1).map(|t| Matrix::identity(t.dim())),
        }
    }

    /// Zero maps: into `Q^first_dim` for `P_1`, into the zero space
    /// elsewhere.
    pub fn zero(c: &ChainComplex, first_dim: usize) -> Self {
        Self {
            target: Matrix::zeros(0, c.target().dim()),
            first: Matrix::zeros(first_dim, c.terms()[0].dim()),
            second: c.terms().get(1).map(|t| Matrix::zeros(0, t.dim())),
        }
    }
}

/// `ker F_source ⊆ ker(F_target d)`, so that `d` descends to the realized
/// spaces.
fn descends(f_source: &Matrix, f_target: &Matrix, d: &SparseMatrix) -> bool {
    let composite = f_target.mul(&d.to_dense());
    let k = f_source.kernel();
    k.basis_vectors()
        .iter()
        .all(|v| composite.mul_vec(v).iter().all(|x| x.is_zero()))
}

fn check_cols(m: &Matrix, expected: usize, position: usize) -> Result<(), ComplexError> {
    if m.cols() != expected {
        return Err(ComplexError::Realization {
            position,
            reason: format!("expected {expected} columns, found {}", m.cols()),
        });
    }
    Ok(())
}

/// Quotient of the realized `P_1` by the image of the realized first
/// differential `F_1 d_1`. The squares with the augmentation and with
/// `d_1` are checked to commute up to the realizations.
pub fn presentation_cokernel(c: &ChainComplex, r: &Realization) -> Result<Cokernel, ComplexError> {
    check_cols(&r.target, c.target().dim(), 0)?;
    check_cols(&r.first, c.terms()[0].dim(), 1)?;
    if !descends(&r.first, &r.target, c.augmentation().matrix()) {
        return Err(ComplexError::Realization {
            position: 1,
            reason: "augmentation does not descend to the realized spaces".into(),
        });
    }
    let image = match (c.differentials().first(), &r.second) {
        (Some(d1), Some(second)) => {
            check_cols(second, c.terms()[1].dim(), 2)?;
            if !descends(second, &r.first, d1.matrix()) {
                return Err(ComplexError::Realization {
                    position: 2,
                    reason: "first differential does not descend to the realized spaces".into(),
                });
            }
            r.first.mul(&d1.matrix().to_dense()).image()
        }
        (Some(_), None) => {
            return Err(ComplexError::Realization {
                position: 2,
                reason: "missing realization of the second term".into(),
            })
        }
        (None, _) => Subspace::zero(r.first.rows()),
    };
    Ok(crate::linalg::cokernel_of_image(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{dual_numbers_resolution, eps_operators};
    use crate::zoo;

    #[test]
    fn identity_realization_of_dual_resolution() {
        let c = dual_numbers_resolution(2).unwrap();
        let coker = presentation_cokernel(&c, &Realization::identity(&c)).unwrap();
        assert_eq!(coker.quotient_dim, 2);
        // the image of the first differential is the image of l_eps - r_eps
        let a = zoo::dual_numbers();
        let (l, r) = eps_operators(&a, &a.basis_element(1).into_coeffs());
        assert_eq!(c.differentials()[0].matrix().image(), l.sub(&r).image());
        // l_eps + r_eps has a different image of the same dimension
        let plus = l.add(&r).image();
        assert_ne!(plus, l.sub(&r).image());
        assert_eq!(4 - plus.dim(), 2);
    }

    #[test]
    fn zero_realization() {
        let c = dual_numbers_resolution(2).unwrap();
        let coker = presentation_cokernel(&c, &Realization::zero(&c, 3)).unwrap();
        assert_eq!(coker.quotient_dim, 3);
    }

    #[test]
    fn collapse_to_eps_eps_line() {
        let c = dual_numbers_resolution(2).unwrap();
        let line = Matrix::from_i64(&[&[0, 0, 0, 1]]);
        let r = Realization {
            target: Matrix::zeros(0, 2),
            first: line,
            second: Some(Matrix::identity(4)),
        };
        let coker = presentation_cokernel(&c, &r).unwrap();
        // f(1⊗eps) = eps⊗eps, so the line is hit
        assert_eq!(coker.quotient_dim, 0);
    }

    #[test]
    fn incompatible_realization() {
        let c = dual_numbers_resolution(2).unwrap();
        let r = Realization {
            target: Matrix::identity(2),
            first: Matrix::from_i64(&[&[0, 0, 0, 1]]),
            second: Some(Matrix::identity(4)),
        };
        assert!(matches!(
            presentation_cokernel(&c, &r),
            Err(ComplexError::Realization { position: 1, .. })
        ));
    }
}
