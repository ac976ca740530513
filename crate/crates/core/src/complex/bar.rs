//! The bar complex `... -> A⊗A⊗A -> A⊗A -> A -> 0`.

use std::sync::Arc;

use super::{ChainComplex, ComplexError};
use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMorphism, FactorizationCertificate, LeftModule, RightModule};
use crate::linalg::{Rational, SparseMatrix};

/// Default bound on the dimension of the largest tensor power.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

/// `A^{⊗m}` as `X ⊗ Y` with `X = A^{⊗(m-1)}` a left module through its
/// first factor and `Y = A` the right regular module.
pub(crate) fn tensor_power_factors(a: &Arc<Algebra>, m: usize) -> (LeftModule, RightModule) {
    let d = a.dim();
    let x = LeftModule::regular(a.clone()).with_multiplicity(d.pow(m as u32 - 2));
    (x, RightModule::regular(a.clone()))
}

/// `sum_i (-1)^i 1^{⊗i} ⊗ mu ⊗ 1^{⊗(m-2-i)}` from `A^{⊗m}` to `A^{⊗(m-1)}`.
fn bar_differential(mu: &SparseMatrix, d: usize, m: usize) -> SparseMatrix {
    let rows = d.pow(m as u32 - 1);
    let cols = d.pow(m as u32);
    let mut acc = SparseMatrix::zeros(rows, cols);
    for i in 0..m - 1 {
        let left = SparseMatrix::identity(d.pow(i as u32));
        let right = SparseMatrix::identity(d.pow((m - 2 - i) as u32));
        let term = left.kron(mu).kron(&right);
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        acc = acc.add_scaled(&sign, &term);
    }
    acc
}

/// Terms `A^{⊗2}, ..., A^{⊗(depth+1)}` with the alternating-sum
/// differentials and multiplication as augmentation, together with the
/// certificate `A^{⊗m} = A^{⊗(m-1)} ⊗ A` for every term.
pub fn bar_complex(
    a: Arc<Algebra>,
    depth: usize,
    cap: usize,
) -> Result<(ChainComplex, Vec<FactorizationCertificate>), ComplexError> {
    if depth == 0 {
        return Err(ComplexError::Depth { min: 1, found: 0 });
    }
    let d = a.dim();
    let required = u32::try_from(depth)
        .ok()
        .and_then(|e| e.checked_add(1))
        .and_then(|e| d.checked_pow(e))
        .unwrap_or(usize::MAX);
    if required > cap {
        return Err(ComplexError::SizeCap { required, cap });
    }
    let mu = a.multiplication_matrix();
    let mut terms = Vec::with_capacity(depth);
    let mut certs = Vec::with_capacity(depth);
    for m in 2..=depth + 1 {
        let (x, y) = tensor_power_factors(&a, m);
        terms.push(Arc::new(Bimodule::tensor(&x, &y)?));
        certs.push(FactorizationCertificate::tautological(x, y)?);
    }
    let target = Arc::new(Bimodule::regular(a.clone()));
    let augmentation = BimoduleMorphism::new(terms[0].clone(), target, mu.clone())?;
    let differentials = (1..depth)
        .map(|k| BimoduleMorphism::new(terms[k].clone(), terms[k - 1].clone(), bar_differential(&mu, d, k + 2)))
        .collect::<Result<Vec<_>, _>>()?;
    let c = ChainComplex::new(augmentation, differentials, true, Vec::new())?;
    Ok((c, certs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn rationals_bar_complex() {
        let (c, _) = bar_complex(Arc::new(zoo::rationals()), 4, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(c.term_dims(), vec![1, 1, 1, 1]);
        // delta on Q^{⊗m} is sum of m-1 alternating ones: 1, 0, 1, ...
        let ranks: Vec<usize> = c.differentials().iter().map(|d| d.matrix().rank()).collect();
        assert_eq!(ranks, vec![0, 1, 0]);
        assert!(c.verify_exactness().all_exact());
    }

    #[test]
    fn dual_numbers_bar_complex() {
        let (c, certs) = bar_complex(Arc::new(zoo::dual_numbers()), 3, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(c.term_dims(), vec![4, 8, 16]);
        let cert = c.verify_exactness();
        assert!(cert.all_exact(), "{cert:?}");
        assert_eq!(cert.records.len(), 3);
        assert_eq!(certs.len(), 3);
        assert_eq!(certs[2].summand_dims(), vec![(8, 2)]);
    }

    #[test]
    fn m2_bar_complex() {
        let (c, _) = bar_complex(Arc::new(zoo::matrix_algebra(2)), 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(c.term_dims(), vec![16, 64]);
        assert!(c.verify_exactness().all_exact());
    }

    #[test]
    fn size_cap() {
        let err = bar_complex(Arc::new(zoo::matrix_algebra(2)), 8, DEFAULT_SIZE_CAP).unwrap_err();
        assert_eq!(
            err,
            ComplexError::SizeCap {
                required: 262_144,
                cap: DEFAULT_SIZE_CAP
            }
        );
    }
}
