//! Finite-dimensional unital associative algebras given by structure
//! constants.

mod idempotents;
mod quaternion;
mod structure;
mod wedderburn;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::linalg::{
    axpy, cokernel_of_image, sparse_from_dense, sparse_normalize, sparse_to_dense, Matrix, Rational, SparseVec,
    Subspace,
};

pub(crate) use idempotents::candidates;
pub use idempotents::{find_split_idempotent, Block, BlockDecomposition, DecompositionError, SplitPolicy, SplitStatus};
pub use wedderburn::{MatrixAlgebraIso, NotSplitReport, WedderburnError, WedderburnOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({0}, {1}, {2}): (b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    Associativity(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    UnitLaw(usize),
    #[error("expected {expected} {what}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("structure constant ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("element belongs to a different algebra")]
    ParentMismatch,
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
}

/// A finite-dimensional unital associative algebra over `Q`.
///
/// Associativity and the unit law are verified on construction, so every
/// value of this type is a genuine algebra.
#[derive(Clone, Debug)]
pub struct Algebra {
    labels: Vec<String>,
    unit: Vec<Rational>,
    /// `products[i * dim + j]` is `b_i b_j`.
    products: Vec<SparseVec>,
    fingerprint: u64,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.labels == other.labels
            && self.unit == other.unit
            && self.products == other.products
    }
}

impl Eq for Algebra {}

/// An element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    parent: u64,
    coeffs: Vec<Rational>,
}

impl Element {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }
}

pub(crate) fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vec_scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

impl Algebra {
    /// Builds an algebra from sparse `(i, j, k, value)` records meaning
    /// `b_i b_j` contains `value * b_k`. Duplicate records are summed.
    pub fn from_records(
        labels: Vec<String>,
        unit: Vec<Rational>,
        records: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut raw: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, v) in records {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            raw[i * dim + j].push((k, v));
        }
        let products = raw.into_iter().map(sparse_normalize).collect();
        Self::from_products(labels, unit, products)
    }

    /// Builds an algebra from the products `b_i b_j`, indexed `i * dim + j`.
    pub fn from_products(
        labels: Vec<String>,
        unit: Vec<Rational>,
        products: Vec<SparseVec>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if unit.len() != dim {
            return Err(AlgebraError::Shape {
                what: "unit coefficients",
                expected: dim,
                found: unit.len(),
            });
        }
        if products.len() != dim * dim {
            return Err(AlgebraError::Shape {
                what: "products",
                expected: dim * dim,
                found: products.len(),
            });
        }
        if let Some((i, j, k)) = products.iter().enumerate().find_map(|(ij, p)| {
            p.iter()
                .find(|(k, _)| *k >= dim)
                .map(|(k, _)| (ij / dim.max(1), ij % dim.max(1), *k))
        }) {
            return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
        }
        let alg = Self::from_products_unchecked(labels, unit, products);
        alg.check_unit()?;
        alg.check_associativity()?;
        Ok(alg)
    }

    /// For tables derived from an already verified algebra (subalgebras,
    /// quotients, changes of basis), where the axioms hold by construction.
    pub(crate) fn from_products_unchecked(labels: Vec<String>, unit: Vec<Rational>, products: Vec<SparseVec>) -> Self {
        let mut hasher = DefaultHasher::new();
        labels.hash(&mut hasher);
        unit.hash(&mut hasher);
        products.hash(&mut hasher);
        Self {
            labels,
            unit,
            products,
            fingerprint: hasher.finish(),
        }
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let one = sparse_from_dense(&self.unit);
        for i in 0..self.dim() {
            let bi = [(i, Rational::one())];
            if self.mul_sparse(&one, &bi) != bi || self.mul_sparse(&bi, &one) != bi {
                return Err(AlgebraError::UnitLaw(i));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.products[i * d + j];
                for k in 0..d {
                    let left = self.mul_sparse(ij, &[(k, Rational::one())]);
                    let jk = &self.products[j * d + k];
                    let right = self.mul_sparse(&[(i, Rational::one())], jk);
                    if left != right {
                        return Err(AlgebraError::Associativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Identifies the algebra; equal tables give equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim() + j]
    }

    /// Nonzero structure constants as `(i, j, k, value)`, sorted.
    pub fn records(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, v) in &self.products[i * d + j] {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<Element, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::Shape {
                what: "coefficients",
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Element {
            parent: self.fingerprint,
            coeffs,
        })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut c = vec![Rational::zero(); self.dim()];
        c[i] = Rational::one();
        Element {
            parent: self.fingerprint,
            coeffs: c,
        }
    }

    pub fn one(&self) -> Element {
        Element {
            parent: self.fingerprint,
            coeffs: self.unit.clone(),
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            parent: self.fingerprint,
            coeffs: vec![Rational::zero(); self.dim()],
        }
    }

    fn check_parent(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.parent != self.fingerprint || x.coeffs.len() != self.dim() {
            return Err(AlgebraError::ParentMismatch);
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(Element {
            parent: self.fingerprint,
            coeffs: self.mul(&x.coeffs, &y.coeffs),
        })
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(Element {
            parent: self.fingerprint,
            coeffs: vec_add(&x.coeffs, &y.coeffs),
        })
    }

    pub(crate) fn mul_sparse(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec {
        let d = self.dim();
        let mut acc: SparseVec = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = &self.products[i * d + j];
                if !p.is_empty() {
                    acc = axpy(&acc, &(a * b), p);
                }
            }
        }
        acc
    }

    /// Product of raw coefficient vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.products[i * d + j] {
                    out[k.to_owned()] += &(&ab * c);
                }
            }
        }
        out
    }

    /// `x^n`, with `x^0 = 1`.
    pub fn pow(&self, x: &[Rational], n: usize) -> Vec<Rational> {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `y -> x y`; column `j` is `x b_j`.
    pub fn left_mult(&self, x: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                let mut bj = vec![Rational::zero(); d];
                bj[j] = Rational::one();
                self.mul(x, &bj)
            })
            .collect();
        Matrix::from_columns(d, &cols)
    }

    /// Matrix of `y -> y x`; column `j` is `b_j x`.
    pub fn right_mult(&self, x: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                let mut bj = vec![Rational::zero(); d];
                bj[j] = Rational::one();
                self.mul(&bj, x)
            })
            .collect();
        Matrix::from_columns(d, &cols)
    }

    /// Matrix of multiplication `A ⊗ A -> A`; column `i * dim + j` is `b_i b_j`.
    pub fn multiplication_matrix(&self) -> crate::linalg::SparseMatrix {
        let d = self.dim();
        crate::linalg::SparseMatrix::from_triplets(
            d,
            d * d,
            (0..d * d).flat_map(|ij| self.products[ij].iter().map(move |(k, v)| (*k, ij, v.clone()))),
        )
    }

    /// First basis pair `(i, j)` of `sub` on which `inclusion` fails to be
    /// multiplicative. The columns of `inclusion` are the images of the
    /// basis of `sub` and its shape must be `dim x sub.dim()`.
    pub fn multiplicativity_defect(&self, sub: &Algebra, inclusion: &Matrix) -> Option<(usize, usize)> {
        debug_assert_eq!((inclusion.rows(), inclusion.cols()), (self.dim(), sub.dim()));
        let images: Vec<Vec<Rational>> = (0..sub.dim()).map(|j| inclusion.column(j)).collect();
        for i in 0..sub.dim() {
            for j in 0..sub.dim() {
                let mut lhs = vec![Rational::zero(); self.dim()];
                for (k, v) in sub.product(i, j) {
                    lhs = vec_add(&lhs, &vec_scale(&images[*k], v));
                }
                if lhs != self.mul(&images[i], &images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.products[i * d + j] == self.products[j * d + i]))
    }

    /// Evaluates a polynomial at `x` by Horner's rule.
    pub fn eval_poly(&self, p: &crate::poly::Poly, x: &[Rational]) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.dim()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = vec_add(&acc, &vec_scale(&self.unit, c));
        }
        acc
    }

    /// The algebra structure on a multiplicatively closed subspace `S` that
    /// has `unit` as a two-sided identity (for instance a corner `eAe` or a
    /// block `eA`). Returns the subalgebra and its inclusion map
    /// (`dim x dim S`, basis vectors as columns).
    pub fn restrict(&self, sub: &Subspace, unit: &[Rational]) -> Result<(Algebra, Matrix), AlgebraError> {
        let basis = sub.basis_vectors();
        let n = basis.len();
        let unit_coords = sub.coordinates(unit).ok_or(AlgebraError::NotClosed)?;
        let mut products = Vec::with_capacity(n * n);
        for x in &basis {
            for y in &basis {
                let c = sub.coordinates(&self.mul(x, y)).ok_or(AlgebraError::NotClosed)?;
                products.push(sparse_from_dense(&c));
            }
        }
        let labels = basis.iter().enumerate().map(|(i, v)| self.vector_label(v, i)).collect();
        let alg = Algebra::from_products_unchecked(labels, unit_coords, products);
        // closure is verified above; associativity is inherited, the unit law is not
        alg.check_unit()?;
        Ok((alg, sub.inclusion()))
    }

    /// Quotient `A / I` by a two-sided ideal, with the projection map. The
    /// quotient basis is the standard complement of the ideal's canonical
    /// basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, Matrix), AlgebraError> {
        let d = self.dim();
        for v in ideal.basis_vectors() {
            for i in 0..d {
                let b = self.basis_element(i).coeffs;
                if !ideal.contains(&self.mul(&b, &v)) || !ideal.contains(&self.mul(&v, &b)) {
                    return Err(AlgebraError::NotIdeal);
                }
            }
        }
        let coker = cokernel_of_image(ideal);
        let proj = coker.projection;
        let mut is_pivot = vec![false; d];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let reps: Vec<usize> = (0..d).filter(|&c| !is_pivot[c]).collect();
        let mut products = Vec::with_capacity(reps.len() * reps.len());
        for &i in &reps {
            for &j in &reps {
                let p = sparse_to_dense(self.product(i, j), d);
                products.push(sparse_from_dense(&proj.mul_vec(&p)));
            }
        }
        let labels = reps.iter().map(|&i| self.labels[i].clone()).collect();
        let unit = proj.mul_vec(&self.unit);
        // the ideal property makes the quotient table well defined
        Ok((Algebra::from_products_unchecked(labels, unit, products), proj))
    }

    /// Label for a vector: the basis label when it is a basis vector.
    fn vector_label(&self, v: &[Rational], fallback: usize) -> String {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        match nz.as_slice() {
            [i] if v[*i].is_one() => self.labels[*i].clone(),
            _ => format!("v{fallback}"),
        }
    }

    /// Same algebra with relabeled basis.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Algebra, AlgebraError> {
        Algebra::from_products(labels, self.unit.clone(), self.products.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn multiply_examples() {
        let dual = zoo::dual_numbers();
        let eps = dual.basis_element(1);
        let one = dual.one();
        assert_eq!(dual.multiply(&one, &eps).unwrap(), eps);
        assert!(dual.multiply(&eps, &eps).unwrap().is_zero());

        let m2 = zoo::matrix_algebra(2);
        // basis E11, E12, E21, E22
        let e11 = m2.basis_element(0);
        let e12 = m2.basis_element(1);
        assert_eq!(m2.multiply(&e11, &e12).unwrap(), e12);
    }

    #[test]
    fn parent_mismatch_is_rejected() {
        let a = zoo::dual_numbers();
        let b = zoo::matrix_algebra(2);
        assert_eq!(a.multiply(&a.one(), &b.one()), Err(AlgebraError::ParentMismatch));
    }

    #[test]
    fn construction_rejects_non_associative_table() {
        // b1 b1 = b1 but b1 (b1 b1) vs (b1 b1) b1 fine; break associativity with
        // b1 b1 = 1 and b1 b2 = 0, b2 b1 = b2, b2 b2 = b1.
        let q = |n| Rational::from(n as i64);
        let labels = vec!["1".into(), "x".into(), "y".into()];
        let unit = vec![q(1), q(0), q(0)];
        let mut recs = vec![];
        for i in 0..3 {
            recs.push((0, i, i, q(1)));
            if i > 0 {
                recs.push((i, 0, i, q(1)));
            }
        }
        recs.push((1, 1, 0, q(1)));
        recs.push((2, 1, 2, q(1)));
        recs.push((2, 2, 1, q(1)));
        let err = Algebra::from_records(labels, unit, recs).unwrap_err();
        assert!(matches!(err, AlgebraError::Associativity(..)), "{err}");
    }

    #[test]
    fn construction_rejects_bad_unit() {
        let q = |n| Rational::from(n as i64);
        let err = Algebra::from_records(vec!["a".into()], vec![q(2)], vec![(0, 0, 0, q(1))]).unwrap_err();
        assert_eq!(err, AlgebraError::UnitLaw(0));
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let ut = zoo::upper_triangular(3);
        let rad = ut.radical();
        let (q, proj) = ut.quotient(&rad).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(proj.rows(), 3);
        assert!(q.radical().is_zero());
    }
}
