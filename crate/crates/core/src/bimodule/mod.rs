//! One-sided modules and bimodules over an [`Algebra`], given by action
//! matrices for every basis element.
//!
//! Right actions are written as matrices acting on column vectors, so
//! `R_{ab} = R_b R_a`.

mod endo;
mod factorize;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{Rational, SparseMatrix};

pub use endo::{endomorphism_algebra, Endomorphisms, Indecomposability};
pub use factorize::{Factorization, FactorizationCertificate, Refusal, RefusalReason};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("modules are over different algebras")]
    ParentMismatch,
    #[error("expected {expected} {what}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{side} action is not multiplicative on basis pair ({i}, {j})")]
    NotMultiplicative { side: Side, i: usize, j: usize },
    #[error("{side} action of the unit is not the identity")]
    UnitNotIdentity { side: Side },
    #[error("left action of b{i} does not commute with right action of b{j}")]
    NotCommuting { i: usize, j: usize },
    #[error("map does not intertwine the {side} action of b{basis}")]
    NotIntertwining { side: Side, basis: usize },
    #[error("decomposition does not belong to this algebra")]
    DecompositionMismatch,
}

fn check_actions(a: &Algebra, dim: usize, action: &[SparseMatrix], side: Side) -> Result<(), BimoduleError> {
    let d = a.dim();
    if action.len() != d {
        return Err(BimoduleError::Shape {
            what: "action matrices",
            expected: d,
            found: action.len(),
        });
    }
    if let Some(m) = action.iter().find(|m| m.rows() != dim || m.cols() != dim) {
        return Err(BimoduleError::Shape {
            what: "rows and columns in each action matrix",
            expected: dim,
            found: m.rows().max(m.cols()),
        });
    }
    if combine(action, a.unit(), dim) != SparseMatrix::identity(dim) {
        return Err(BimoduleError::UnitNotIdentity { side });
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = combine_sparse(action, a.product(i, j), dim);
            let rhs = match side {
                Side::Left => action[i].mul(&action[j]),
                Side::Right => action[j].mul(&action[i]),
            };
            if lhs != rhs {
                return Err(BimoduleError::NotMultiplicative { side, i, j });
            }
        }
    }
    Ok(())
}

/// `sum_k x_k M_k`.
fn combine(mats: &[SparseMatrix], x: &[Rational], dim: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zeros(dim, dim);
    for (m, c) in mats.iter().zip(x) {
        if !c.is_zero() {
            acc = acc.add_scaled(c, m);
        }
    }
    acc
}

fn combine_sparse(mats: &[SparseMatrix], x: &[(usize, Rational)], dim: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zeros(dim, dim);
    for (k, c) in x {
        acc = acc.add_scaled(c, &mats[*k]);
    }
    acc
}

macro_rules! one_sided {
    ($name:ident, $side:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            parent: Arc<Algebra>,
            dim: usize,
            action: Vec<SparseMatrix>,
        }

        impl $name {
            pub fn new(parent: Arc<Algebra>, dim: usize, action: Vec<SparseMatrix>) -> Result<Self, BimoduleError> {
                check_actions(&parent, dim, &action, $side)?;
                Ok(Self { parent, dim, action })
            }

            pub fn parent(&self) -> &Arc<Algebra> {
                &self.parent
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            /// Action matrix of basis element `i`.
            pub fn action(&self, i: usize) -> &SparseMatrix {
                &self.action[i]
            }

            pub fn actions(&self) -> &[SparseMatrix] {
                &self.action
            }

            /// Action matrix of an arbitrary element.
            pub fn act(&self, x: &[Rational]) -> SparseMatrix {
                combine(&self.action, x, self.dim)
            }
        }
    };
}

one_sided!(LeftModule, Side::Left, "A left module: `action[i]` is `L_{b_i}`.");
one_sided!(RightModule, Side::Right, "A right module: `action[i]` is `R_{b_i}`.");

impl LeftModule {
    /// `A` acting on itself by left multiplication.
    pub fn regular(a: Arc<Algebra>) -> Self {
        let action = (0..a.dim())
            .map(|i| SparseMatrix::from_dense(&a.left_mult(a.basis_element(i).coeffs())))
            .collect();
        Self {
            dim: a.dim(),
            parent: a,
            action,
        }
    }

    /// `X ⊗ Q^k` with `A` acting on the first factor.
    pub fn with_multiplicity(&self, k: usize) -> Self {
        let id = SparseMatrix::identity(k);
        Self {
            parent: self.parent.clone(),
            dim: self.dim * k,
            action: self.action.iter().map(|m| m.kron(&id)).collect(),
        }
    }
}

impl RightModule {
    /// `A` acting on itself by right multiplication.
    pub fn regular(a: Arc<Algebra>) -> Self {
        let action = (0..a.dim())
            .map(|i| SparseMatrix::from_dense(&a.right_mult(a.basis_element(i).coeffs())))
            .collect();
        Self {
            dim: a.dim(),
            parent: a,
            action,
        }
    }
}

/// An `A`-bimodule: commuting left and right actions on the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    parent: Arc<Algebra>,
    dim: usize,
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
}

impl Bimodule {
    pub fn new(
        parent: Arc<Algebra>,
        dim: usize,
        left: Vec<SparseMatrix>,
        right: Vec<SparseMatrix>,
    ) -> Result<Self, BimoduleError> {
        check_actions(&parent, dim, &left, Side::Left)?;
        check_actions(&parent, dim, &right, Side::Right)?;
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(BimoduleError::NotCommuting { i, j });
                }
            }
        }
        Ok(Self {
            parent,
            dim,
            left,
            right,
        })
    }

    /// The zero bimodule.
    pub fn zero(parent: Arc<Algebra>) -> Self {
        let d = parent.dim();
        Self {
            parent,
            dim: 0,
            left: vec![SparseMatrix::zeros(0, 0); d],
            right: vec![SparseMatrix::zeros(0, 0); d],
        }
    }

    /// `A` over itself by left and right multiplication.
    pub fn regular(a: Arc<Algebra>) -> Self {
        let left = LeftModule::regular(a.clone()).action;
        let right = RightModule::regular(a.clone()).action;
        Self {
            dim: a.dim(),
            parent: a,
            left,
            right,
        }
    }

    /// `X ⊗ Y` with `A` acting on `X` from the left and on `Y` from the
    /// right. Basis vector `x_i ⊗ y_j` has index `i * dim Y + j`.
    pub fn tensor(x: &LeftModule, y: &RightModule) -> Result<Self, BimoduleError> {
        if x.parent.fingerprint() != y.parent.fingerprint() {
            return Err(BimoduleError::ParentMismatch);
        }
        let (ix, iy) = (SparseMatrix::identity(x.dim), SparseMatrix::identity(y.dim));
        let out = Self {
            parent: x.parent.clone(),
            dim: x.dim * y.dim,
            left: x.action.iter().map(|l| l.kron(&iy)).collect(),
            right: y.action.iter().map(|r| ix.kron(r)).collect(),
        };
        // (L ⊗ 1)(1 ⊗ R) = L ⊗ R = (1 ⊗ R)(L ⊗ 1), but keep the invariant checked
        debug_assert!(Self::new(out.parent.clone(), out.dim, out.left.clone(), out.right.clone()).is_ok());
        Ok(out)
    }

    pub fn direct_sum(parts: &[&Bimodule]) -> Result<Self, BimoduleError> {
        let Some(first) = parts.first() else {
            return Err(BimoduleError::Shape {
                what: "summands",
                expected: 1,
                found: 0,
            });
        };
        if parts
            .iter()
            .any(|p| p.parent.fingerprint() != first.parent.fingerprint())
        {
            return Err(BimoduleError::ParentMismatch);
        }
        let d = first.parent.dim();
        let stack = |side: fn(&Bimodule) -> &[SparseMatrix]| -> Vec<SparseMatrix> {
            (0..d)
                .map(|i| SparseMatrix::block_diag(&parts.iter().map(|p| &side(p)[i]).collect::<Vec<_>>()))
                .collect()
        };
        Ok(Self {
            parent: first.parent.clone(),
            dim: parts.iter().map(|p| p.dim).sum(),
            left: stack(|b| &b.left),
            right: stack(|b| &b.right),
        })
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &SparseMatrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &SparseMatrix {
        &self.right[i]
    }

    pub fn left_actions(&self) -> &[SparseMatrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[SparseMatrix] {
        &self.right
    }

    pub fn act_left(&self, x: &[Rational]) -> SparseMatrix {
        combine(&self.left, x, self.dim)
    }

    pub fn act_right(&self, x: &[Rational]) -> SparseMatrix {
        combine(&self.right, x, self.dim)
    }

    /// Serializable action data.
    pub fn to_data(&self) -> BimoduleData {
        BimoduleData {
            dim: self.dim,
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }

    pub fn from_data(parent: Arc<Algebra>, data: BimoduleData) -> Result<Self, BimoduleError> {
        Self::new(parent, data.dim, data.left, data.right)
    }
}

/// Action matrices of a bimodule, without the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleData {
    pub dim: usize,
    pub left: Vec<SparseMatrix>,
    pub right: Vec<SparseMatrix>,
}

/// Action matrices of a one-sided module, without the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub dim: usize,
    pub action: Vec<SparseMatrix>,
}

impl LeftModule {
    pub fn to_data(&self) -> ModuleData {
        ModuleData {
            dim: self.dim,
            action: self.action.clone(),
        }
    }
}

impl RightModule {
    pub fn to_data(&self) -> ModuleData {
        ModuleData {
            dim: self.dim,
            action: self.action.clone(),
        }
    }
}

/// A linear map `source -> target` commuting with both actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMorphism {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    map: SparseMatrix,
}

impl BimoduleMorphism {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, map: SparseMatrix) -> Result<Self, BimoduleError> {
        if source.parent.fingerprint() != target.parent.fingerprint() {
            return Err(BimoduleError::ParentMismatch);
        }
        if map.rows() != target.dim || map.cols() != source.dim {
            return Err(BimoduleError::Shape {
                what: "map entries",
                expected: target.dim * source.dim,
                found: map.rows() * map.cols(),
            });
        }
        for i in 0..source.parent.dim() {
            if map.mul(&source.left[i]) != target.left[i].mul(&map) {
                return Err(BimoduleError::NotIntertwining {
                    side: Side::Left,
                    basis: i,
                });
            }
            if map.mul(&source.right[i]) != target.right[i].mul(&map) {
                return Err(BimoduleError::NotIntertwining {
                    side: Side::Right,
                    basis: i,
                });
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(b: Arc<Bimodule>) -> Self {
        Self {
            map: SparseMatrix::identity(b.dim),
            source: b.clone(),
            target: b,
        }
    }

    /// The map `A ⊗ A -> target`, `a ⊗ b -> a w b`, determined by the image
    /// `w` of `1 ⊗ 1`. The source must be `tensor(regular, regular)`.
    pub fn from_generator(source: Arc<Bimodule>, target: Arc<Bimodule>, w: &[Rational]) -> Result<Self, BimoduleError> {
        let a = source.parent.clone();
        let d = a.dim();
        if source.dim != d * d {
            return Err(BimoduleError::Shape {
                what: "source dimension",
                expected: d * d,
                found: source.dim,
            });
        }
        let mut trips = Vec::new();
        for i in 0..d {
            let li = &target.left[i];
            for j in 0..d {
                let col = target.right[j].mul_vec(&li.mul_vec(w));
                for (r, v) in col.into_iter().enumerate() {
                    if !v.is_zero() {
                        trips.push((r, i * d + j, v));
                    }
                }
            }
        }
        let map = SparseMatrix::from_triplets(target.dim, source.dim, trips);
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim == self.target.dim && self.map.rank() == self.source.dim
    }

    pub fn compose(&self, first: &BimoduleMorphism) -> Result<Self, BimoduleError> {
        if first.target != self.source {
            return Err(BimoduleError::Shape {
                what: "intermediate dimension",
                expected: self.source.dim,
                found: first.target.dim,
            });
        }
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.mul(&first.map),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn regular_bimodules() {
        let q = Bimodule::regular(arc(zoo::rationals()));
        assert_eq!(q.dim(), 1);
        assert!(q.left(0).is_identity() && q.right(0).is_identity());
        let dual = Bimodule::regular(arc(zoo::dual_numbers()));
        assert_eq!(dual.dim(), 2);
        // eps acting on 1 gives eps from both sides
        assert_eq!(dual.left(1).get(1, 0), Rational::one());
        assert_eq!(dual.right(1).get(1, 0), Rational::one());
        assert_eq!(Bimodule::regular(arc(zoo::matrix_algebra(2))).dim(), 4);
    }

    #[test]
    fn regular_bimodule_passes_checks() {
        for a in [zoo::upper_triangular(2), zoo::quaternions(-1, -3), zoo::triplet_zhu(2)] {
            let b = Bimodule::regular(arc(a));
            Bimodule::new(b.parent().clone(), b.dim(), b.left.clone(), b.right.clone()).unwrap();
        }
    }

    #[test]
    fn dual_tensor_square() {
        let a = arc(zoo::dual_numbers());
        let t = Bimodule::tensor(&LeftModule::regular(a.clone()), &RightModule::regular(a)).unwrap();
        assert_eq!(t.dim(), 4);
        // basis 1⊗1, 1⊗eps, eps⊗1, eps⊗eps: eps·(1⊗1) = eps⊗1, (1⊗1)·eps = 1⊗eps
        assert_eq!(t.left(1).get(2, 0), Rational::one());
        assert_eq!(t.right(1).get(1, 0), Rational::one());
        Bimodule::new(t.parent().clone(), 4, t.left.clone(), t.right.clone()).unwrap();
    }

    #[test]
    fn tensor_parent_mismatch() {
        let x = LeftModule::regular(arc(zoo::rationals()));
        let y = RightModule::regular(arc(zoo::dual_numbers()));
        assert_eq!(Bimodule::tensor(&x, &y), Err(BimoduleError::ParentMismatch));
    }

    #[test]
    fn bad_actions_are_rejected() {
        let a = arc(zoo::dual_numbers());
        let reg = Bimodule::regular(a.clone());
        // eps acting by the identity is not multiplicative (eps^2 = 0)
        let bad = vec![SparseMatrix::identity(2), SparseMatrix::identity(2)];
        assert!(matches!(
            LeftModule::new(a.clone(), 2, bad),
            Err(BimoduleError::NotMultiplicative {
                side: Side::Left,
                i: 1,
                j: 1
            })
        ));
        // left regular with right action transposed breaks commutation on M_2
        let m2 = arc(zoo::matrix_algebra(2));
        let r = Bimodule::regular(m2.clone());
        let wrong: Vec<SparseMatrix> = r.left_actions().to_vec();
        assert!(Bimodule::new(m2, 4, r.left_actions().to_vec(), wrong).is_err());
        let _ = reg;
    }

    #[test]
    fn morphisms_must_intertwine() {
        let a = arc(zoo::dual_numbers());
        let reg = Arc::new(Bimodule::regular(a));
        // projection onto the 1-coordinate is not a bimodule map
        let p = SparseMatrix::from_triplets(2, 2, [(0, 0, Rational::one())]);
        assert!(matches!(
            BimoduleMorphism::new(reg.clone(), reg.clone(), p),
            Err(BimoduleError::NotIntertwining { .. })
        ));
        // left multiplication by eps is (the algebra is commutative)
        let e = reg.left(1).clone();
        assert!(BimoduleMorphism::new(reg.clone(), reg, e).is_ok());
    }

    #[test]
    fn multiplication_is_generated_by_one() {
        let a = arc(zoo::upper_triangular(2));
        let src =
            Arc::new(Bimodule::tensor(&LeftModule::regular(a.clone()), &RightModule::regular(a.clone())).unwrap());
        let tgt = Arc::new(Bimodule::regular(a.clone()));
        let m = BimoduleMorphism::from_generator(src, tgt, a.unit()).unwrap();
        assert_eq!(m.matrix().to_dense(), a.multiplication_matrix().to_dense());
    }
}
