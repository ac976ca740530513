//! Blockwise factorization resolutions of the regular bimodule.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bar::bar_complex;
use super::periodic::periodic_dual_resolution;
use super::{ChainComplex, ComplexError};
use crate::algebra::{Algebra, BlockDecomposition, SplitPolicy, WedderburnOutcome};
use crate::bimodule::{BimoduleError, BimoduleMorphism, FactorizationCertificate, LeftModule, RightModule};
use crate::linalg::{Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionKind {
    /// `M_n(Q)`: the regular bimodule is already `Q^n ⊗ Q^n`; `n = 1` is the
    /// trivial block `Q`.
    Wedderburn { n: usize },
    /// A dual-number block with its 2-periodic resolution.
    Periodic,
    /// Any other block, resolved by the truncated bar complex.
    Bar,
}

impl std::fmt::Display for ResolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Wedderburn { n: 1 } => f.write_str("trivial"),
            Self::Wedderburn { n } => write!(f, "wedderburn M_{n}"),
            Self::Periodic => f.write_str("periodic"),
            Self::Bar => f.write_str("bar"),
        }
    }
}

/// A resolution of one block's regular bimodule over the block algebra.
#[derive(Clone, Debug)]
pub struct BlockResolution {
    pub block: usize,
    pub kind: ResolutionKind,
    /// Block basis in the parent algebra, as columns.
    pub inclusion: Matrix,
    pub complex: ChainComplex,
    /// One certificate per term of `complex`.
    pub certificates: Vec<FactorizationCertificate>,
}

#[derive(Clone, Debug)]
pub struct FactorizationResolution {
    pub parent: u64,
    pub blocks: Vec<BlockResolution>,
}

impl FactorizationResolution {
    pub fn kinds(&self) -> Vec<ResolutionKind> {
        self.blocks.iter().map(|b| b.kind).collect()
    }

    /// Largest length over the blocks.
    pub fn length(&self) -> usize {
        self.blocks.iter().map(|b| b.complex.length()).max().unwrap_or(0)
    }
}

/// The generator of the radical when `b` is `Q[eps]/(eps^2)` in some basis:
/// dimension 2, commutative, radical of dimension 1. The generator is
/// scaled to have leading coordinate 1.
pub(crate) fn dual_number_generator(b: &Algebra) -> Option<Vec<Rational>> {
    if b.dim() != 2 || !b.is_commutative() {
        return None;
    }
    let rad = b.radical();
    if rad.dim() != 1 {
        return None;
    }
    let eps = rad.basis_vectors().remove(0);
    let lead = eps.iter().find(|x| !x.is_zero())?.recip();
    Some(eps.iter().map(|x| x * &lead).collect())
}

/// `0 -> B -> B -> 0`; the term carries the Wedderburn certificate.
fn wedderburn_block(cert: &FactorizationCertificate) -> Result<ChainComplex, ComplexError> {
    let term = cert.iso.target().clone();
    ChainComplex::new(BimoduleMorphism::identity(term), Vec::new(), false, Vec::new())
}

/// Resolves each block of `a`: matrix blocks by their Wedderburn
/// factorization (length 0), dual-number blocks periodically and all other
/// blocks by the bar complex, both truncated to `depth` terms.
pub fn factorization_resolution(
    a: &Algebra,
    dec: &BlockDecomposition,
    depth: usize,
    policy: &SplitPolicy,
    cap: usize,
) -> Result<FactorizationResolution, ComplexError> {
    if dec.parent_fingerprint() != a.fingerprint() {
        return Err(BimoduleError::DecompositionMismatch.into());
    }
    if depth < 2 {
        return Err(ComplexError::Depth { min: 2, found: depth });
    }
    let mut blocks = Vec::with_capacity(dec.len());
    for (i, blk) in dec.blocks.iter().enumerate() {
        let b = Arc::new(blk.algebra.clone());
        let split = if b.is_semisimple() {
            match b.wedderburn_split(policy) {
                Ok(WedderburnOutcome::Split(iso)) => Some(iso),
                _ => None,
            }
        } else {
            None
        };
        let (kind, complex, certificates) = if let Some(iso) = split {
            let cert = FactorizationCertificate::from_matrix_iso(&b, &iso)?;
            let c = wedderburn_block(&cert)?;
            (ResolutionKind::Wedderburn { n: iso.n }, c, vec![cert])
        } else if let Some(eps) = dual_number_generator(&b) {
            let c = periodic_dual_resolution(b.clone(), &eps, depth)?;
            let cert = FactorizationCertificate::tautological(LeftModule::regular(b.clone()), RightModule::regular(b))?;
            let certs = vec![cert; c.terms().len()];
            (ResolutionKind::Periodic, c, certs)
        } else {
            let (c, certs) = bar_complex(b, depth, cap)?;
            (ResolutionKind::Bar, c, certs)
        };
        blocks.push(BlockResolution {
            block: i,
            kind,
            inclusion: blk.inclusion.clone(),
            complex,
            certificates,
        });
    }
    Ok(FactorizationResolution {
        parent: a.fingerprint(),
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_cokernel, Realization, DEFAULT_SIZE_CAP};
    use crate::zoo;

    fn resolve(a: &Algebra, depth: usize) -> FactorizationResolution {
        let p = SplitPolicy::default();
        let dec = a.central_idempotents(&p);
        factorization_resolution(a, &dec, depth, &p, DEFAULT_SIZE_CAP).unwrap()
    }

    #[test]
    fn triplet_block_kinds() {
        let r = resolve(&zoo::triplet_zhu(2), 4);
        let mut kinds = r.kinds();
        kinds.sort_by_key(|k| format!("{k:?}"));
        assert_eq!(
            kinds,
            vec![
                ResolutionKind::Periodic,
                ResolutionKind::Wedderburn { n: 1 },
                ResolutionKind::Wedderburn { n: 2 },
                ResolutionKind::Wedderburn { n: 2 },
            ]
        );
        for b in &r.blocks {
            assert!(b.complex.verify_exactness().all_exact());
            assert_eq!(b.certificates.len(), b.complex.terms().len());
        }
    }

    #[test]
    fn product_of_fields_has_length_zero() {
        let r = resolve(&zoo::direct_product(&[zoo::rationals(), zoo::rationals()]), 3);
        assert_eq!(r.kinds(), vec![ResolutionKind::Wedderburn { n: 1 }; 2]);
        assert_eq!(r.length(), 0);
    }

    #[test]
    fn upper_triangular_uses_bar() {
        let r = resolve(&zoo::upper_triangular(2), 3);
        assert_eq!(r.kinds(), vec![ResolutionKind::Bar]);
        let b = &r.blocks[0];
        assert_eq!(b.complex.term_dims(), vec![9, 27, 81]);
        assert!(b.complex.verify_exactness().all_exact());
        for c in &b.certificates {
            c.verify().unwrap();
        }
    }

    #[test]
    fn scrambled_dual_block_is_recognized() {
        let a = zoo::scramble(&zoo::direct_product(&[zoo::dual_numbers(), zoo::matrix_algebra(2)]), 5);
        let r = resolve(&a, 4);
        assert!(r.kinds().contains(&ResolutionKind::Periodic));
        for b in &r.blocks {
            assert!(b.complex.verify_exactness().all_exact());
        }
    }

    #[test]
    fn blockwise_cokernels_add_up() {
        for a in [zoo::triplet_zhu(2), zoo::sf_zhu(1), zoo::upper_triangular(2)] {
            let r = resolve(&a, 3);
            let total: usize = r
                .blocks
                .iter()
                .map(|b| {
                    presentation_cokernel(&b.complex, &Realization::identity(&b.complex))
                        .unwrap()
                        .quotient_dim
                })
                .sum();
            assert_eq!(total, a.dim());
        }
    }
}
