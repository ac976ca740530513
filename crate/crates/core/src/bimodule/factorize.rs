//! Factorization certificates: isomorphisms `⊕ X_i ⊗ Y_i -> E` of bimodules
//! with left modules `X_i` and right modules `Y_i`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Bimodule, BimoduleError, BimoduleMorphism, LeftModule, RightModule};
use crate::algebra::{Algebra, BlockDecomposition, MatrixAlgebraIso, NotSplitReport, SplitPolicy, WedderburnOutcome};
use crate::linalg::{Matrix, Rational, SparseMatrix};

/// Summands `(X_i, Y_i)` and a bimodule isomorphism `⊕ X_i ⊗ Y_i -> E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub summands: Vec<(LeftModule, RightModule)>,
    pub iso: BimoduleMorphism,
}

impl FactorizationCertificate {
    /// Builds the source `⊕ X_i ⊗ Y_i` and checks that `map` is a bijective
    /// bimodule morphism from it onto `target`.
    pub fn new(
        summands: Vec<(LeftModule, RightModule)>,
        target: Arc<Bimodule>,
        map: SparseMatrix,
    ) -> Result<Self, BimoduleError> {
        let source = Arc::new(tensor_sum(&summands, target.parent())?);
        let iso = BimoduleMorphism::new(source, target, map)?;
        if !iso.is_bijective() {
            return Err(BimoduleError::Shape {
                what: "rank of the certificate map",
                expected: iso.target().dim(),
                found: iso.matrix().rank(),
            });
        }
        Ok(Self { summands, iso })
    }

    /// The certificate `X ⊗ Y -> X ⊗ Y` given by the identity.
    pub fn tautological(x: LeftModule, y: RightModule) -> Result<Self, BimoduleError> {
        let b = Arc::new(Bimodule::tensor(&x, &y)?);
        let n = b.dim();
        Self::new(vec![(x, y)], b, SparseMatrix::identity(n))
    }

    /// `Q^n ⊗ Q^n -> A` for `A ≅ M_n(Q)`, columns tensor rows, sending
    /// `x_i ⊗ y_j` to the matrix unit `E_ij`.
    pub fn from_matrix_iso(a: &Arc<Algebra>, iso: &MatrixAlgebraIso) -> Result<Self, BimoduleError> {
        let pair = column_and_row(a, iso.n, &iso.rho)?;
        let map = SparseMatrix::from_dense(&Matrix::from_columns(a.dim(), &iso.matrix_units));
        Self::new(vec![pair], Arc::new(Bimodule::regular(a.clone())), map)
    }

    /// Re-checks the certificate from its parts.
    pub fn verify(&self) -> Result<(), BimoduleError> {
        Self::new(
            self.summands.clone(),
            self.iso.target().clone(),
            self.iso.matrix().clone(),
        )
        .map(|_| ())
    }

    /// `(dim X_i, dim Y_i)` per summand.
    pub fn summand_dims(&self) -> Vec<(usize, usize)> {
        self.summands.iter().map(|(x, y)| (x.dim(), y.dim())).collect()
    }
}

fn tensor_sum(summands: &[(LeftModule, RightModule)], parent: &Arc<Algebra>) -> Result<Bimodule, BimoduleError> {
    if summands.is_empty() {
        return Ok(Bimodule::zero(parent.clone()));
    }
    let parts = summands
        .iter()
        .map(|(x, y)| Bimodule::tensor(x, y))
        .collect::<Result<Vec<_>, _>>()?;
    if parts[0].parent().fingerprint() != parent.fingerprint() {
        return Err(BimoduleError::ParentMismatch);
    }
    Bimodule::direct_sum(&parts.iter().collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RefusalReason {
    /// The algebra has a nonzero radical; no factorization of the regular
    /// bimodule exists at all.
    NonSemisimple,
    /// A simple block that is not a matrix algebra over `Q`.
    NonSplit { report: NotSplitReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub block: usize,
    pub block_dim: usize,
    #[serde(flatten)]
    pub reason: RefusalReason,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.reason {
            RefusalReason::NonSemisimple => {
                write!(
                    f,
                    "non-semisimple: block {} (dim {}) has a nonzero radical",
                    self.block, self.block_dim
                )
            }
            RefusalReason::NonSplit { report } => {
                write!(f, "non-split: block {} (dim {}): {report}", self.block, self.block_dim)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Certificate(FactorizationCertificate),
    Refused(Refusal),
}

/// Column module `Q^n` of a block via `rho`, pulled back to `A`, and the
/// matching row module with `R_a = rho(a)^T`.
fn column_and_row(a: &Arc<Algebra>, n: usize, rho_of_a: &Matrix) -> Result<(LeftModule, RightModule), BimoduleError> {
    let mats: Vec<Matrix> = (0..a.dim())
        .map(|k| Matrix::from_vec(n, n, rho_of_a.column(k)))
        .collect();
    let left = mats.iter().map(SparseMatrix::from_dense).collect();
    let right = mats.iter().map(|m| SparseMatrix::from_dense(&m.transpose())).collect();
    Ok((
        LeftModule::new(a.clone(), n, left)?,
        RightModule::new(a.clone(), n, right)?,
    ))
}

impl Algebra {
    /// Factorizes the regular bimodule of a semisimple algebra whose blocks
    /// are all matrix algebras over `Q`, or explains why not.
    ///
    /// All blocks are tested for semisimplicity before any Wedderburn split
    /// is attempted, so a refusal for non-semisimplicity happens exactly
    /// when the algebra is not semisimple.
    pub fn factorize_semisimple(
        self: &Arc<Self>,
        dec: &BlockDecomposition,
        policy: &SplitPolicy,
    ) -> Result<Factorization, BimoduleError> {
        if dec.parent_fingerprint() != self.fingerprint() {
            return Err(BimoduleError::DecompositionMismatch);
        }
        for (i, b) in dec.blocks.iter().enumerate() {
            if !b.algebra.is_semisimple() {
                return Ok(Factorization::Refused(Refusal {
                    block: i,
                    block_dim: b.algebra.dim(),
                    reason: RefusalReason::NonSemisimple,
                }));
            }
        }
        let d = self.dim();
        let mut summands = Vec::new();
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for (i, (b, e)) in dec.blocks.iter().zip(&dec.idempotents).enumerate() {
            let iso = match b.algebra.wedderburn_split(policy) {
                Ok(WedderburnOutcome::Split(iso)) => iso,
                Ok(WedderburnOutcome::NotSplit(report)) => {
                    return Ok(Factorization::Refused(Refusal {
                        block: i,
                        block_dim: b.algebra.dim(),
                        reason: RefusalReason::NonSplit { report },
                    }))
                }
                Err(_) => return Err(BimoduleError::DecompositionMismatch),
            };
            // pi: A -> block, a -> coordinates of e a
            let back = b.inclusion.left_inverse().ok_or(BimoduleError::DecompositionMismatch)?;
            let ea = self.left_mult(e.coeffs());
            let pi = back.mul(&ea);
            let rho_a = iso.rho.mul(&pi);
            summands.push(column_and_row(self, iso.n, &rho_a)?);
            for unit in &iso.matrix_units {
                columns.push(b.inclusion.mul_vec(unit));
            }
        }
        let map = SparseMatrix::from_dense(&Matrix::from_columns(d, &columns));
        let target = Arc::new(Bimodule::regular(self.clone()));
        FactorizationCertificate::new(summands, target, map).map(Factorization::Certificate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn factorize(a: Algebra) -> Factorization {
        let a = Arc::new(a);
        let dec = a.central_idempotents(&SplitPolicy::default());
        a.factorize_semisimple(&dec, &SplitPolicy::default()).unwrap()
    }

    #[test]
    fn q_times_m2() {
        match factorize(zoo::direct_product(&[zoo::rationals(), zoo::matrix_algebra(2)])) {
            Factorization::Certificate(c) => {
                assert_eq!(c.summand_dims(), vec![(1, 1), (2, 2)]);
                c.verify().unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dual_numbers_refused() {
        match factorize(zoo::dual_numbers()) {
            Factorization::Refused(r) => assert_eq!(r.reason, RefusalReason::NonSemisimple),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triplet_refused_at_dual_block() {
        match factorize(zoo::triplet_zhu(2)) {
            Factorization::Refused(r) => {
                assert_eq!(r.reason, RefusalReason::NonSemisimple);
                assert_eq!(r.block_dim, 2);
                assert!(r.to_string().starts_with("non-semisimple"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn field_extension_refused_as_non_split() {
        let gauss = zoo::polynomial_quotient(&crate::poly::Poly::from_i64(&[1, 0, 1]));
        match factorize(gauss) {
            Factorization::Refused(r) => assert!(matches!(r.reason, RefusalReason::NonSplit { .. })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scrambled_matrix_algebra_round_trip() {
        let a = zoo::scramble(&zoo::matrix_algebra(3), 11);
        match factorize(a) {
            Factorization::Certificate(c) => {
                assert_eq!(c.summand_dims(), vec![(3, 3)]);
                // re-tensoring the summands gives back the certified source
                let (x, y) = &c.summands[0];
                let t = Bimodule::tensor(x, y).unwrap();
                assert_eq!(&t, c.iso.source().as_ref());
                assert!(c.iso.is_bijective());
            }
            other => panic!("{other:?}"),
        }
    }
}
