//! The 2-periodic resolution of the dual numbers by copies of `A ⊗ A`.
//!
//! The maps are bimodule maps `A ⊗ A -> A ⊗ A` fixed by the image of
//! `1 ⊗ 1`: `f(1⊗1) = eps⊗1 - 1⊗eps` and `g(1⊗1) = eps⊗1 + 1⊗eps`, with
//! augmentation `m(1⊗1) = 1`. Under `a (x⊗y) b = ax ⊗ yb` one has
//! `m f = 0` but `m g (1⊗1) = 2 eps`, so `f` is the differential next to
//! `m`, followed by `g, f, g, ...`.

use std::sync::Arc;

use super::{ChainComplex, ComplexError};
use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMorphism, LeftModule, RightModule};
use crate::linalg::{Rational, SparseMatrix};
use crate::zoo;

/// Recorded in every periodic complex and its exactness certificate.
pub const ORIENTATION_NOTE: &str = "orientation: f(1⊗1) = eps⊗1 - 1⊗eps is adjacent to the augmentation \
m(1⊗1) = 1, then g(1⊗1) = eps⊗1 + 1⊗eps, alternating; with g adjacent instead, m∘g(1⊗1) = 2eps != 0 \
under the action a(x⊗y)b = ax⊗yb";

fn kron_vec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// Left and right multiplication by `eps` on `A ⊗ A`, i.e. `L_eps ⊗ 1` and
/// `1 ⊗ R_eps`.
pub fn eps_operators(a: &Algebra, eps: &[Rational]) -> (SparseMatrix, SparseMatrix) {
    let id = SparseMatrix::identity(a.dim());
    let l = SparseMatrix::from_dense(&a.left_mult(eps)).kron(&id);
    let r = id.kron(&SparseMatrix::from_dense(&a.right_mult(eps)));
    (l, r)
}

/// Resolution of the regular bimodule of a two-dimensional algebra
/// `Q[eps]/(eps^2)` given the coordinates of `eps`; `length` copies of
/// `A ⊗ A`, the last one truncated.
pub fn periodic_dual_resolution(
    a: Arc<Algebra>,
    eps: &[Rational],
    length: usize,
) -> Result<ChainComplex, ComplexError> {
    if length == 0 {
        return Err(ComplexError::Depth { min: 1, found: 0 });
    }
    let one = a.unit().to_vec();
    let e1 = kron_vec(eps, &one);
    let one_e = kron_vec(&one, eps);
    let wf: Vec<Rational> = e1.iter().zip(&one_e).map(|(x, y)| x - y).collect();
    let wg: Vec<Rational> = e1.iter().zip(&one_e).map(|(x, y)| x + y).collect();

    let term = Arc::new(Bimodule::tensor(
        &LeftModule::regular(a.clone()),
        &RightModule::regular(a.clone()),
    )?);
    let target = Arc::new(Bimodule::regular(a.clone()));
    let m = BimoduleMorphism::from_generator(term.clone(), target, &one)?;
    let f = BimoduleMorphism::from_generator(term.clone(), term.clone(), &wf)?;
    let g = BimoduleMorphism::from_generator(term.clone(), term, &wg)?;
    let differentials = (0..length - 1)
        .map(|k| if k % 2 == 0 { f.clone() } else { g.clone() })
        .collect();
    ChainComplex::new(m, differentials, true, vec![ORIENTATION_NOTE.to_string()])
}

/// [`periodic_dual_resolution`] for the standard basis `{1, eps}`.
pub fn dual_numbers_resolution(length: usize) -> Result<ChainComplex, ComplexError> {
    let a = Arc::new(zoo::dual_numbers());
    let eps = a.basis_element(1).into_coeffs();
    periodic_dual_resolution(a, &eps, length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn length_one() {
        let c = dual_numbers_resolution(1).unwrap();
        assert_eq!(c.term_dims(), vec![4]);
        let m = c.augmentation().matrix();
        assert_eq!((m.rows(), m.cols(), m.rank()), (2, 4, 2));
        assert_eq!(m.kernel().dim(), 2);
        assert!(c.verify_exactness().all_exact());
    }

    #[test]
    fn length_four() {
        let c = dual_numbers_resolution(4).unwrap();
        assert!(c.differentials().iter().all(|d| d.matrix().rank() == 2));
        let cert = c.verify_exactness();
        assert_eq!(cert.records.len(), 4);
        assert!(cert.all_exact());
        assert!(cert.notes.iter().any(|n| n == ORIENTATION_NOTE));
        assert!(c.is_two_periodic());
    }

    #[test]
    fn explicit_matrices() {
        // basis 1⊗1, 1⊗eps, eps⊗1, eps⊗eps; columns are images of basis vectors
        let c = dual_numbers_resolution(3).unwrap();
        let f = Matrix::from_i64(&[&[0, 0, 0, 0], &[-1, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, -1, 0]]);
        let g = Matrix::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 1, 0]]);
        assert_eq!(c.differentials()[0].matrix().to_dense(), f);
        assert_eq!(c.differentials()[1].matrix().to_dense(), g);
    }

    #[test]
    fn wrong_orientation_is_not_a_complex() {
        let a = Arc::new(zoo::dual_numbers());
        let t = Arc::new(Bimodule::tensor(&LeftModule::regular(a.clone()), &RightModule::regular(a.clone())).unwrap());
        let target = Arc::new(Bimodule::regular(a.clone()));
        let one = a.unit().to_vec();
        let m = BimoduleMorphism::from_generator(t.clone(), target, &one).unwrap();
        // g(1⊗1) = eps⊗1 + 1⊗eps next to m
        let wg = vec![Rational::zero(), Rational::one(), Rational::one(), Rational::zero()];
        let g = BimoduleMorphism::from_generator(t.clone(), t, &wg).unwrap();
        assert_eq!(
            ChainComplex::new(m, vec![g], true, vec![]).unwrap_err(),
            ComplexError::NotAComplex(1)
        );
    }

    #[test]
    fn sign_flip_breaks_the_complex() {
        // f followed by f: f(f(1⊗1)) = -2 eps⊗eps
        let c = dual_numbers_resolution(2).unwrap();
        let f = c.differentials()[0].clone();
        let err = ChainComplex::new(c.augmentation().clone(), vec![f.clone(), f], true, vec![]).unwrap_err();
        assert_eq!(err, ComplexError::NotAComplex(2));
    }
}
