//! Chain complexes of bimodules resolving a target bimodule, exactness
//! certificates, the bar complex, the periodic resolution of the dual
//! numbers, blockwise factorization resolutions and cokernel
//! presentations.
//!
//! Positions are counted from the resolved bimodule: position 0 is the
//! target, position `k >= 1` is `terms[k - 1]`. `differentials[k]` maps
//! `terms[k + 1]` to `terms[k]` and the augmentation maps `terms[0]` to the
//! target.

mod bar;
mod periodic;
mod presentation;
mod resolution;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleData, BimoduleError, BimoduleMorphism};
use crate::linalg::{SparseMatrix, Subspace};

pub use bar::{bar_complex, DEFAULT_SIZE_CAP};
pub use periodic::{dual_numbers_resolution, eps_operators, periodic_dual_resolution, ORIENTATION_NOTE};
pub use presentation::{presentation_cokernel, Realization};
pub(crate) use resolution::dual_number_generator;
pub use resolution::{factorization_resolution, BlockResolution, FactorizationResolution, ResolutionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error("a complex needs at least one term")]
    Empty,
    #[error("maps do not compose at position {0}")]
    NotComposable(usize),
    #[error("composite of the two maps at position {0} is nonzero")]
    NotAComplex(usize),
    #[error("size cap exceeded: {required} basis tensors needed, cap is {cap}")]
    SizeCap { required: usize, cap: usize },
    #[error("depth must be at least {min}, got {found}")]
    Depth { min: usize, found: usize },
    #[error("realization incompatible at position {position}: {reason}")]
    Realization { position: usize, reason: String },
    #[error("block {0} is not a dual-number block")]
    NotDualNumbers(usize),
}

/// A complex `... -> P_2 -> P_1 -> E -> 0` of bimodules over one algebra.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    algebra: Arc<Algebra>,
    target: Arc<Bimodule>,
    terms: Vec<Arc<Bimodule>>,
    differentials: Vec<BimoduleMorphism>,
    augmentation: BimoduleMorphism,
    truncated: bool,
    notes: Vec<String>,
}

fn same(a: &Arc<Bimodule>, b: &Arc<Bimodule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ChainComplex {
    /// Checks composability, `d d = 0` and `augmentation d = 0`.
    ///
    /// `truncated` marks the last term as a cut-off of a longer resolution;
    /// exactness is then not claimed there.
    pub fn new(
        augmentation: BimoduleMorphism,
        differentials: Vec<BimoduleMorphism>,
        truncated: bool,
        notes: Vec<String>,
    ) -> Result<Self, ComplexError> {
        let algebra = augmentation.source().parent().clone();
        let target = augmentation.target().clone();
        let mut terms = vec![augmentation.source().clone()];
        for (k, d) in differentials.iter().enumerate() {
            if d.source().parent().fingerprint() != algebra.fingerprint() {
                return Err(BimoduleError::ParentMismatch.into());
            }
            if !same(d.target(), &terms[k]) {
                return Err(ComplexError::NotComposable(k + 1));
            }
            let previous = if k == 0 { &augmentation } else { &differentials[k - 1] };
            if !previous.matrix().mul(d.matrix()).is_zero() {
                return Err(ComplexError::NotAComplex(k + 1));
            }
            terms.push(d.source().clone());
        }
        Ok(Self {
            algebra,
            target,
            terms,
            differentials,
            augmentation,
            truncated,
            notes,
        })
    }

    /// `0 -> ... -> 0 -> 0` with `len` zero terms, resolving zero.
    pub fn zero(algebra: Arc<Algebra>, len: usize) -> Result<Self, ComplexError> {
        if len == 0 {
            return Err(ComplexError::Empty);
        }
        let z = Arc::new(Bimodule::zero(algebra));
        let map = || BimoduleMorphism::identity(z.clone());
        Self::new(map(), (1..len).map(|_| map()).collect(), false, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn terms(&self) -> &[Arc<Bimodule>] {
        &self.terms
    }

    pub fn differentials(&self) -> &[BimoduleMorphism] {
        &self.differentials
    }

    pub fn augmentation(&self) -> &BimoduleMorphism {
        &self.augmentation
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Number of differentials; a single term resolving its target has
    /// length 0.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    /// Whether `differentials[k] == differentials[k + 2]` for every `k`.
    pub fn is_two_periodic(&self) -> bool {
        self.differentials.windows(3).all(|w| w[0].matrix() == w[2].matrix())
    }

    /// Map out of position `k >= 1`.
    fn outgoing(&self, k: usize) -> &SparseMatrix {
        if k == 1 {
            self.augmentation.matrix()
        } else {
            self.differentials[k - 2].matrix()
        }
    }

    /// Per-position kernel and image comparison. Never fails: inexact
    /// positions are reported, not raised.
    pub fn verify_exactness(&self) -> ExactnessCertificate {
        let mut records = Vec::new();
        let aug = self.augmentation.matrix();
        let rank = aug.rank();
        records.push(ExactnessRecord {
            position: 0,
            incoming_rank: rank,
            outgoing_kernel_dim: self.target.dim(),
            exact: rank == self.target.dim(),
        });
        let last = if self.truncated {
            self.terms.len() - 1
        } else {
            self.terms.len()
        };
        for k in 1..=last {
            let kernel = self.outgoing(k).kernel();
            let image = match self.differentials.get(k - 1) {
                Some(d) => d.matrix().image(),
                None => Subspace::zero(self.terms[k - 1].dim()),
            };
            records.push(ExactnessRecord {
                position: k,
                incoming_rank: image.dim(),
                outgoing_kernel_dim: kernel.dim(),
                exact: kernel == image,
            });
        }
        ExactnessCertificate {
            records,
            truncated: self.truncated,
            notes: self.notes.clone(),
        }
    }

    pub fn to_data(&self) -> ComplexData {
        ComplexData {
            target: self.target.to_data(),
            terms: self.terms.iter().map(|t| t.to_data()).collect(),
            augmentation: self.augmentation.matrix().clone(),
            differentials: self.differentials.iter().map(|d| d.matrix().clone()).collect(),
            truncated: self.truncated,
            notes: self.notes.clone(),
        }
    }

    /// Rebuilds and re-checks a complex over `algebra`.
    pub fn from_data(algebra: Arc<Algebra>, data: ComplexData) -> Result<Self, ComplexError> {
        if data.terms.len() != data.differentials.len() + 1 {
            return Err(ComplexError::NotComposable(
                data.terms.len().min(data.differentials.len() + 1),
            ));
        }
        let target = Arc::new(Bimodule::from_data(algebra.clone(), data.target)?);
        let mut terms: Vec<Arc<Bimodule>> = Vec::with_capacity(data.terms.len());
        for t in data.terms {
            // share identical terms so periodic complexes stay small in memory
            let b = Bimodule::from_data(algebra.clone(), t)?;
            let shared = terms.iter().find(|x| x.as_ref() == &b).cloned();
            terms.push(shared.unwrap_or_else(|| Arc::new(b)));
        }
        let augmentation = BimoduleMorphism::new(terms[0].clone(), target, data.augmentation)?;
        let differentials = data
            .differentials
            .into_iter()
            .enumerate()
            .map(|(k, m)| BimoduleMorphism::new(terms[k + 1].clone(), terms[k].clone(), m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(augmentation, differentials, data.truncated, data.notes)
    }
}

/// Serializable form of a complex; the algebra is stored alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexData {
    pub target: BimoduleData,
    pub terms: Vec<BimoduleData>,
    pub augmentation: SparseMatrix,
    pub differentials: Vec<SparseMatrix>,
    pub truncated: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessRecord {
    pub position: usize,
    /// Rank of the map into this position.
    pub incoming_rank: usize,
    /// Dimension of the kernel of the map out of this position.
    pub outgoing_kernel_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    pub records: Vec<ExactnessRecord>,
    /// When set, the last term was cut off and has no record.
    pub truncated: bool,
    pub notes: Vec<String>,
}

impl ExactnessCertificate {
    pub fn all_exact(&self) -> bool {
        self.records.iter().all(|r| r.exact)
    }

    pub fn inexact_positions(&self) -> Vec<usize> {
        self.records.iter().filter(|r| !r.exact).map(|r| r.position).collect()
    }
}

/// Free-standing form of [`ChainComplex::verify_exactness`].
pub fn verify_exactness(c: &ChainComplex) -> ExactnessCertificate {
    c.verify_exactness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn zero_complex_is_exact() {
        let c = ChainComplex::zero(Arc::new(zoo::upper_triangular(2)), 3).unwrap();
        let cert = c.verify_exactness();
        assert_eq!(cert.records.len(), 4);
        assert!(cert.all_exact());
    }

    #[test]
    fn non_complex_is_rejected() {
        // the identity followed by the identity composes to a nonzero map
        let a = Arc::new(zoo::dual_numbers());
        let r = Arc::new(Bimodule::regular(a));
        let id = BimoduleMorphism::identity(r.clone());
        assert_eq!(
            ChainComplex::new(id.clone(), vec![id], false, vec![]).unwrap_err(),
            ComplexError::NotAComplex(1)
        );
    }

    #[test]
    fn inexact_position_is_reported() {
        // 0 -> E --0--> E -> 0 is a complex but neither surjective nor exact
        let a = Arc::new(zoo::rationals());
        let r = Arc::new(Bimodule::regular(a));
        let zero = BimoduleMorphism::new(r.clone(), r.clone(), SparseMatrix::zeros(1, 1)).unwrap();
        let c = ChainComplex::new(zero, vec![], false, vec![]).unwrap();
        let cert = c.verify_exactness();
        assert_eq!(cert.inexact_positions(), vec![0, 1]);
    }
}
