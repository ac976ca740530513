//! Central idempotents and the block decomposition.
//!
//! A central element whose minimal polynomial has a rational root `r` and is
//! not a power of `x - r` splits the algebra: with `m = F G`, `F = (x - r)^k`
//! and `G` coprime to it, Bezout `U F + V G = 1` gives the idempotent
//! `V(z) G(z)`, the projector onto the generalized `r`-eigenspace of `z`.
//! Each half is then decomposed again until no candidate splits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{vec_add, vec_sub, Algebra, AlgebraError, Element};
use crate::linalg::{Matrix, Rational, Subspace};
use crate::poly::Poly;

/// Controls the deterministic candidate scan used to find idempotents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPolicy {
    pub seed: u64,
    /// Number of seeded pseudo-random candidates tried after the basis
    /// vectors and their pairwise sums.
    pub random_attempts: usize,
}

impl SplitPolicy {
    pub const DEFAULT_SEED: u64 = 0x005e_ed0f_b10c;
}

impl Default for SplitPolicy {
    fn default() -> Self {
        Self {
            seed: Self::DEFAULT_SEED,
            random_attempts: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SplitStatus {
    /// The block's center modulo its radical is one-dimensional, so the
    /// center is local and no nontrivial central idempotent exists over any
    /// extension field either.
    ProvenIndecomposable,
    /// The scan found no split, but the center modulo its radical has the
    /// given dimension; the block may need a field extension to split.
    NoSplitFoundUnderPolicy { center_mod_radical_dim: usize },
}

#[derive(Clone, Debug)]
pub struct Block {
    pub algebra: Algebra,
    /// `dim A x dim block`, the block's basis expressed in `A`.
    pub inclusion: Matrix,
    pub status: SplitStatus,
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    parent: u64,
    pub idempotents: Vec<Element>,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("decomposition belongs to a different algebra")]
    ParentMismatch,
    #[error("idempotent {0} is not central")]
    NotCentral(usize),
    #[error("idempotent {0} does not square to itself")]
    NotIdempotent(usize),
    #[error("idempotents {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("idempotents do not sum to the unit")]
    IncompleteSum,
    #[error("block dimensions sum to {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("block {0} is not e_i A")]
    BlockMismatch(usize),
    #[error("inclusion of block {0} is not multiplicative")]
    NotMultiplicative(usize),
    #[error("{idempotents} idempotents but {blocks} blocks")]
    BlockCount { idempotents: usize, blocks: usize },
    #[error("idempotent {0} has the wrong number of coordinates")]
    BadCoordinates(usize),
}

impl BlockDecomposition {
    /// Assembles a decomposition of `a` from stored parts and runs
    /// [`BlockDecomposition::verify`] on it.
    pub fn from_parts(
        a: &Algebra,
        idempotents: Vec<Vec<Rational>>,
        blocks: Vec<Block>,
    ) -> Result<Self, DecompositionError> {
        let idempotents = idempotents
            .into_iter()
            .enumerate()
            .map(|(i, e)| a.element(e).map_err(|_| DecompositionError::BadCoordinates(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let dec = Self {
            parent: a.fingerprint(),
            idempotents,
            blocks,
        };
        dec.verify(a)?;
        Ok(dec)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    /// Block dimensions, sorted ascending.
    pub fn dimension_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.blocks.iter().map(|b| b.algebra.dim()).collect();
        d.sort_unstable();
        d
    }

    /// Re-checks every defining property against `a` from scratch.
    pub fn verify(&self, a: &Algebra) -> Result<(), DecompositionError> {
        if self.parent != a.fingerprint() {
            return Err(DecompositionError::ParentMismatch);
        }
        let es: Vec<&[Rational]> = self.idempotents.iter().map(|e| e.coeffs()).collect();
        for (i, e) in es.iter().enumerate() {
            if a.mul(e, e) != *e {
                return Err(DecompositionError::NotIdempotent(i));
            }
            for k in 0..a.dim() {
                let b = a.basis_element(k).into_coeffs();
                if a.mul(e, &b) != a.mul(&b, e) {
                    return Err(DecompositionError::NotCentral(i));
                }
            }
            for (j, f) in es.iter().enumerate() {
                if i != j && a.mul(e, f).iter().any(|x| !x.is_zero()) {
                    return Err(DecompositionError::NotOrthogonal(i, j));
                }
            }
        }
        let mut sum = vec![Rational::zero(); a.dim()];
        for e in &es {
            sum = vec_add(&sum, e);
        }
        if sum != a.unit() {
            return Err(DecompositionError::IncompleteSum);
        }
        let total: usize = self.blocks.iter().map(|b| b.algebra.dim()).sum();
        if total != a.dim() {
            return Err(DecompositionError::DimensionMismatch {
                expected: a.dim(),
                found: total,
            });
        }
        if self.blocks.len() != es.len() {
            return Err(DecompositionError::BlockCount {
                idempotents: es.len(),
                blocks: self.blocks.len(),
            });
        }
        for (i, (b, e)) in self.blocks.iter().zip(&es).enumerate() {
            if b.inclusion.rows() != a.dim() || b.inclusion.cols() != b.algebra.dim() {
                return Err(DecompositionError::BlockMismatch(i));
            }
            if a.multiplicativity_defect(&b.algebra, &b.inclusion).is_some() {
                return Err(DecompositionError::NotMultiplicative(i));
            }
            let ideal = a.left_mult(e).image();
            let cols: Vec<Vec<Rational>> = (0..b.inclusion.cols()).map(|j| b.inclusion.column(j)).collect();
            let included = Subspace::span(a.dim(), &cols);
            if ideal != included || b.inclusion.mul_vec(b.algebra.unit()) != *e {
                return Err(DecompositionError::BlockMismatch(i));
            }
        }
        Ok(())
    }
}

/// An idempotent `e ∉ {0, 1}` that is a polynomial in `x`, if the minimal
/// polynomial of `x` has a rational root and another coprime factor. The
/// largest such root is used.
pub fn find_split_idempotent(a: &Algebra, x: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.minimal_polynomial(x);
    if m.degree()? < 2 {
        return None;
    }
    let s = m.squarefree_part();
    if s.degree()? < 2 {
        return None;
    }
    let r = s.rational_roots().pop()?;
    let k = m.root_multiplicity(&r);
    let mut f = Poly::one();
    for _ in 0..k {
        f = f.mul(&Poly::linear_root(&r));
    }
    let g = m.div_rem(&f).0;
    let (gcd, _u, v) = f.ext_gcd(&g);
    debug_assert_eq!(gcd, Poly::one());
    Some(a.eval_poly(&v.mul(&g).rem(&m), x))
}

/// Deterministic candidate stream over a subspace: basis vectors, pairwise
/// sums, then seeded small-integer combinations (sparse ones first).
pub(crate) fn candidates(space: &[Vec<Rational>], policy: &SplitPolicy) -> Vec<Vec<Rational>> {
    let n = space.len();
    let mut out: Vec<Vec<Rational>> = space.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec_add(&space[i], &space[j]));
        }
    }
    if n == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let ambient = space[0].len();
    for attempt in 0..policy.random_attempts {
        let mut v = vec![Rational::zero(); ambient];
        // alternate between sparse (2-3 terms) and dense combinations
        let terms = if attempt % 2 == 0 {
            rng.gen_range(2..=3.min(n).max(2))
        } else {
            n
        };
        for _ in 0..terms {
            let i = rng.gen_range(0..n);
            let c = Rational::from(rng.gen_range(-3i64..=3));
            if !c.is_zero() {
                v = vec_add(&v, &space[i].iter().map(|x| x * &c).collect::<Vec<_>>());
            }
        }
        out.push(v);
    }
    out
}

struct RawBlock {
    idempotent: Vec<Rational>,
    algebra: Algebra,
    inclusion: Matrix,
}

fn split_central(a: &Algebra, policy: &SplitPolicy) -> Vec<RawBlock> {
    let whole = RawBlock {
        idempotent: a.unit().to_vec(),
        algebra: a.clone(),
        inclusion: Matrix::identity(a.dim()),
    };
    let z = a.center();
    if z.dim() <= 1 || a.center_mod_radical_dim() <= 1 {
        return vec![whole];
    }
    for cand in candidates(&z.basis_vectors(), policy) {
        let Some(e) = find_split_idempotent(a, &cand) else {
            continue;
        };
        let f = vec_sub(a.unit(), &e);
        let mut out = Vec::new();
        for idem in [e, f] {
            let sub = a.left_mult(&idem).image();
            let (block, incl) = a
                .restrict(&sub, &idem)
                .expect("a central idempotent cuts out a unital subalgebra");
            for inner in split_central(&block, policy) {
                out.push(RawBlock {
                    idempotent: incl.mul_vec(&inner.idempotent),
                    inclusion: incl.mul(&inner.inclusion),
                    algebra: inner.algebra,
                });
            }
        }
        return out;
    }
    vec![whole]
}

impl Algebra {
    /// Primitive central idempotents reachable over `Q` under `policy`, with
    /// the induced blocks `e_i A`. Blocks are ordered by the position of the
    /// first nonzero coordinate of their idempotent, which makes the result
    /// independent of the order in which splits were discovered.
    pub fn central_idempotents(&self, policy: &SplitPolicy) -> BlockDecomposition {
        let mut raw = split_central(self, policy);
        raw.sort_by(|x, y| {
            let key = |v: &[Rational]| v.iter().position(|c| !c.is_zero());
            key(&x.idempotent)
                .cmp(&key(&y.idempotent))
                .then_with(|| x.idempotent.cmp(&y.idempotent))
        });
        let mut idempotents = Vec::with_capacity(raw.len());
        let mut blocks = Vec::with_capacity(raw.len());
        for r in raw {
            let status = match r.algebra.center_mod_radical_dim() {
                1 => SplitStatus::ProvenIndecomposable,
                k => SplitStatus::NoSplitFoundUnderPolicy {
                    center_mod_radical_dim: k,
                },
            };
            idempotents.push(
                self.element(r.idempotent)
                    .expect("idempotent has the algebra's dimension"),
            );
            blocks.push(Block {
                algebra: r.algebra,
                inclusion: r.inclusion,
                status,
            });
        }
        BlockDecomposition {
            parent: self.fingerprint(),
            idempotents,
            blocks,
        }
    }

    /// `e A e` for an idempotent `e`, as an algebra with unit `e`.
    pub fn corner(&self, e: &[Rational]) -> Result<(Algebra, Matrix), AlgebraError> {
        let d = self.dim();
        let vectors: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let b = self.basis_element(i).into_coeffs();
                self.mul(&self.mul(e, &b), e)
            })
            .collect();
        let sub = Subspace::span(d, &vectors);
        self.restrict(&sub, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn product_of_fields_splits() {
        let a = zoo::direct_product(&[zoo::rationals(), zoo::rationals()]);
        let dec = a.central_idempotents(&SplitPolicy::default());
        dec.verify(&a).unwrap();
        let ids: Vec<Vec<Rational>> = dec.idempotents.iter().map(|e| e.coeffs().to_vec()).collect();
        assert_eq!(
            ids,
            vec![
                vec![Rational::one(), Rational::zero()],
                vec![Rational::zero(), Rational::one()]
            ]
        );
    }

    #[test]
    fn named_block_lists() {
        let t = zoo::triplet_zhu(2);
        let dec = t.central_idempotents(&SplitPolicy::default());
        dec.verify(&t).unwrap();
        assert_eq!(dec.dimension_multiset(), vec![1, 2, 4, 4]);
        assert!(dec.blocks.iter().all(|b| b.status == SplitStatus::ProvenIndecomposable));

        let s = zoo::sf_zhu(1);
        let dec = s.central_idempotents(&SplitPolicy::default());
        dec.verify(&s).unwrap();
        assert_eq!(dec.dimension_multiset(), vec![1, 2, 4, 4]);
    }

    #[test]
    fn field_extension_block_is_reported_not_split() {
        let gauss = zoo::polynomial_quotient(&Poly::from_i64(&[1, 0, 1]));
        let dec = gauss.central_idempotents(&SplitPolicy::default());
        assert_eq!(dec.len(), 1);
        assert_eq!(
            dec.blocks[0].status,
            SplitStatus::NoSplitFoundUnderPolicy {
                center_mod_radical_dim: 2
            }
        );
    }

    #[test]
    fn split_idempotent_of_matrix_unit() {
        let m2 = zoo::matrix_algebra(2);
        let e = find_split_idempotent(&m2, &m2.basis_element(0).into_coeffs()).unwrap();
        assert_eq!(e, m2.basis_element(0).into_coeffs());
        assert!(find_split_idempotent(&m2, &m2.basis_element(1).into_coeffs()).is_none());
    }

    #[test]
    fn semisimple_algebras_split_into_semisimple_blocks() {
        let a = zoo::direct_product(&[zoo::matrix_algebra(2), zoo::rationals(), zoo::matrix_algebra(3)]);
        assert!(a.is_semisimple());
        let dec = a.central_idempotents(&SplitPolicy::default());
        assert_eq!(dec.dimension_multiset(), vec![1, 4, 9]);
        assert!(dec.blocks.iter().all(|b| b.algebra.is_semisimple()));
    }
}
