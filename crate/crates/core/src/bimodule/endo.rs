//! Endomorphism algebras of bimodules and the indecomposability verdict.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Bimodule;
use crate::algebra::{find_split_idempotent, Algebra, SplitPolicy};
use crate::linalg::{sparse_from_dense, sparse_normalize, Echelon, Matrix, Rational, SparseMatrix, Subspace};

/// `End(E)` realized as an algebra, with the matrices of its basis.
#[derive(Clone, Debug)]
pub struct Endomorphisms {
    pub algebra: Algebra,
    /// `basis[k]` is the `dim E x dim E` matrix of the `k`-th basis element.
    pub basis: Vec<Matrix>,
}

impl Endomorphisms {
    /// The endomorphism with the given coordinates.
    pub fn matrix_of(&self, coords: &[Rational]) -> Matrix {
        let n = self.basis.first().map_or(0, Matrix::rows);
        let mut acc = Matrix::zeros(n, n);
        for (m, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Indecomposability {
    /// `End(E)` modulo its radical is `Q`, so `End(E)` is local.
    ProvenYes,
    /// A nontrivial idempotent endomorphism, projecting onto a summand.
    ProvenNo { idempotent: Matrix },
    /// The scan found no idempotent but `End(E)/rad` is not `Q`; also
    /// returned for the zero bimodule.
    Unknown { end_mod_radical_dim: usize },
}

/// Adds the equations `phi X - X phi = 0` in the row-major unknowns of `phi`.
fn add_commutation(e: &mut Echelon, x: &SparseMatrix) {
    let n = x.rows();
    // (phi X)_ij = sum_k phi_ik X_kj, (X phi)_ij = sum_k X_ik phi_kj
    for i in 0..n {
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for k in 0..n {
            for (j, v) in x.row(k) {
                rows.entry(*j).or_default().push((i * n + k, v.clone()));
            }
        }
        for (k, v) in x.row(i) {
            for j in 0..n {
                rows.entry(j).or_default().push((k * n + j, -v));
            }
        }
        for (_, r) in rows {
            let r = sparse_normalize(r);
            if !r.is_empty() && !e.is_full() {
                e.insert(&r);
            }
        }
    }
}

/// Solves the intertwining system for `End(E)` and builds its algebra
/// structure. Returns `None` for the zero bimodule.
pub fn endomorphism_algebra(b: &Bimodule) -> Option<Endomorphisms> {
    let n = b.dim();
    if n == 0 {
        return None;
    }
    let mut e = Echelon::new(n * n);
    let mut seen: Vec<&SparseMatrix> = Vec::new();
    for x in b.left_actions().iter().chain(b.right_actions()) {
        if x.is_identity() || x.is_zero() || seen.contains(&x) {
            continue;
        }
        seen.push(x);
        add_commutation(&mut e, x);
    }
    let space = Subspace::from_sparse_rows(n * n, e.null_space());
    let basis: Vec<Matrix> = space
        .basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(n, n, v))
        .collect();
    let r = basis.len();
    let mut products = Vec::with_capacity(r * r);
    for x in &basis {
        for y in &basis {
            let c = space
                .coordinates(&x.mul(y).vectorize())
                .expect("endomorphisms are closed under composition");
            products.push(sparse_from_dense(&c));
        }
    }
    let unit = space
        .coordinates(&Matrix::identity(n).vectorize())
        .expect("the identity is an endomorphism");
    let labels = (0..r).map(|k| format!("phi{k}")).collect();
    let algebra = Algebra::from_products(labels, unit, products).expect("composition is associative");
    Some(Endomorphisms { algebra, basis })
}

impl Bimodule {
    /// Decides indecomposability through `End(E)`.
    pub fn is_indecomposable(&self, policy: &SplitPolicy) -> Indecomposability {
        let Some(end) = endomorphism_algebra(self) else {
            return Indecomposability::Unknown { end_mod_radical_dim: 0 };
        };
        let a = &end.algebra;
        let semisimple_dim = a.dim() - a.radical().dim();
        if semisimple_dim == 1 {
            return Indecomposability::ProvenYes;
        }
        let basis: Vec<Vec<Rational>> = (0..a.dim()).map(|k| a.basis_element(k).into_coeffs()).collect();
        for x in crate::algebra::candidates(&basis, policy) {
            if let Some(idem) = find_split_idempotent(a, &x) {
                return Indecomposability::ProvenNo {
                    idempotent: end.matrix_of(&idem),
                };
            }
        }
        Indecomposability::Unknown {
            end_mod_radical_dim: semisimple_dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::zoo;

    #[test]
    fn dual_numbers_regular_is_indecomposable() {
        let b = Bimodule::regular(Arc::new(zoo::dual_numbers()));
        let end = endomorphism_algebra(&b).unwrap();
        assert_eq!(end.algebra.dim(), 2);
        assert!(!end.algebra.is_semisimple());
        assert_eq!(
            b.is_indecomposable(&SplitPolicy::default()),
            Indecomposability::ProvenYes
        );
    }

    #[test]
    fn two_copies_of_q_split() {
        let q = Arc::new(zoo::rationals());
        let r = Bimodule::regular(q);
        let b = Bimodule::direct_sum(&[&r, &r]).unwrap();
        assert_eq!(endomorphism_algebra(&b).unwrap().algebra.dim(), 4);
        let expected = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            b.is_indecomposable(&SplitPolicy::default()),
            Indecomposability::ProvenNo { idempotent: expected }
        );
    }

    #[test]
    fn even_exterior_block_is_indecomposable() {
        let s = zoo::sf_zhu(1);
        let dec = s.central_idempotents(&SplitPolicy::default());
        let ext = dec.blocks.iter().find(|b| !b.algebra.is_semisimple()).unwrap();
        let b = Bimodule::regular(Arc::new(ext.algebra.clone()));
        assert_eq!(
            b.is_indecomposable(&SplitPolicy::default()),
            Indecomposability::ProvenYes
        );
        let b = Bimodule::regular(Arc::new(zoo::even_exterior(4)));
        assert_eq!(
            b.is_indecomposable(&SplitPolicy::default()),
            Indecomposability::ProvenYes
        );
    }

    #[test]
    fn product_algebra_regular_bimodule_decomposes() {
        let a = Arc::new(zoo::direct_product(&[zoo::dual_numbers(), zoo::matrix_algebra(2)]));
        let b = Bimodule::regular(a);
        match b.is_indecomposable(&SplitPolicy::default()) {
            Indecomposability::ProvenNo { idempotent } => {
                assert_eq!(idempotent.mul(&idempotent), idempotent);
                let r = idempotent.rank();
                assert!(r == 2 || r == 4, "rank {r}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_bimodule_is_unknown() {
        let b = Bimodule::zero(Arc::new(zoo::rationals()));
        assert_eq!(
            b.is_indecomposable(&SplitPolicy::default()),
            Indecomposability::Unknown { end_mod_radical_dim: 0 }
        );
    }
}
