use std::collections::BTreeMap;

use super::Algebra;
use crate::linalg::{sparse_from_dense, Echelon, Matrix, Rational, SparseVec, Subspace};
use crate::poly::Poly;

impl Algebra {
    /// `{ z : z b_i = b_i z for all i }`.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let mut e = Echelon::new(d);
        for i in 0..d {
            // equation k: sum_m z_m (c[m][i][k] - c[i][m][k]) = 0
            let mut eqs: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            for m in 0..d {
                for (k, v) in self.product(m, i) {
                    eqs.entry(*k).or_default().push((m, v.clone()));
                }
                for (k, v) in self.product(i, m) {
                    eqs.entry(*k).or_default().push((m, -v));
                }
            }
            for (_, row) in eqs {
                let row = crate::linalg::sparse_normalize(row);
                if !row.is_empty() {
                    e.insert(&row);
                }
            }
        }
        Subspace::from_sparse_rows(d, e.null_space())
    }

    /// `tr(L_{b_k})` for each basis element.
    fn left_traces(&self) -> Vec<Rational> {
        let d = self.dim();
        (0..d)
            .map(|k| {
                (0..d)
                    .filter_map(|m| crate::linalg::sparse_get(self.product(k, m), m).cloned())
                    .sum()
            })
            .collect()
    }

    /// Gram matrix of the trace form `(x, y) -> tr(L_{xy})`.
    pub fn trace_form(&self) -> Matrix {
        let d = self.dim();
        let t = self.left_traces();
        Matrix::from_fn(d, d, |i, j| self.product(i, j).iter().map(|(k, v)| v * &t[*k]).sum())
    }

    /// Jacobson radical: in characteristic zero this is the kernel of the
    /// trace form (Dickson's criterion).
    pub fn radical(&self) -> Subspace {
        self.trace_form().kernel()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    /// `dim Z(A) - dim(Z(A) ∩ J(A))`; the center is local exactly when this
    /// is 1.
    pub fn center_mod_radical_dim(&self) -> usize {
        let z = self.center();
        let j = self.radical();
        z.dim() - z.intersection_dim(&j)
    }

    /// Monic minimal polynomial of `x`, found by adjoining powers of `x`
    /// until the first linear dependence.
    pub fn minimal_polynomial(&self, x: &[Rational]) -> Poly {
        let d = self.dim();
        // columns 0..d hold the power, d..=2d record which powers were used
        let mut e = Echelon::new(2 * d + 1);
        let mut power = self.unit.clone();
        for k in 0..=d {
            let mut row: SparseVec = sparse_from_dense(&power);
            row.push((d + k, Rational::one()));
            let reduced = e.reduce(&row);
            if reduced.first().is_some_and(|(c, _)| *c >= d) {
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (c, v) in reduced {
                    coeffs[c - d] = v;
                }
                return Poly::new(coeffs).monic();
            }
            e.insert(&row);
            power = self.mul(&power, x);
        }
        unreachable!("minimal polynomial degree exceeds the dimension")
    }
}

#[cfg(test)]
mod tests {
    use crate::linalg::Rational;
    use crate::poly::Poly;
    use crate::zoo;

    #[test]
    fn center_examples() {
        assert_eq!(zoo::dual_numbers().center().dim(), 2);
        let m2 = zoo::matrix_algebra(2);
        let z = m2.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(m2.unit()));
        let qm2 = zoo::direct_product(&[zoo::rationals(), zoo::matrix_algebra(2)]);
        assert_eq!(qm2.center().dim(), 2);
        assert_eq!(zoo::matrix_algebra(3).center().dim(), 1);
    }

    #[test]
    fn radical_examples() {
        assert!(zoo::matrix_algebra(3).radical().is_zero());
        let dual = zoo::dual_numbers();
        assert_eq!(dual.trace_form(), crate::linalg::Matrix::from_i64(&[&[2, 0], &[0, 0]]));
        let r = dual.radical();
        assert_eq!(r.basis_vectors(), vec![vec![Rational::zero(), Rational::one()]]);
        // upper triangular 2x2, basis E11, E12, E22
        let ut = zoo::upper_triangular(2);
        let r = ut.radical();
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&ut.basis_element(1).into_coeffs()));
    }

    #[test]
    fn semisimplicity_examples() {
        assert!(zoo::direct_product(&[zoo::rationals(), zoo::rationals()]).is_semisimple());
        assert!(!zoo::dual_numbers().is_semisimple());
        assert!(!zoo::sf_zhu(1).is_semisimple());
    }

    #[test]
    fn minimal_polynomials() {
        let dual = zoo::dual_numbers();
        assert_eq!(dual.minimal_polynomial(dual.unit()), Poly::from_i64(&[-1, 1]));
        let eps = dual.basis_element(1).into_coeffs();
        assert_eq!(dual.minimal_polynomial(&eps), Poly::from_i64(&[0, 0, 1]));
        let m2 = zoo::matrix_algebra(2);
        let e11 = m2.basis_element(0).into_coeffs();
        assert_eq!(m2.minimal_polynomial(&e11), Poly::from_i64(&[0, -1, 1]));
        // x in Q[x]/(x^2 + 1)
        let gauss = zoo::polynomial_quotient(&Poly::from_i64(&[1, 0, 1]));
        let x = gauss.basis_element(1).into_coeffs();
        assert_eq!(gauss.minimal_polynomial(&x), Poly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn radical_is_an_ideal_for_fixtures() {
        for a in [
            zoo::upper_triangular(3),
            zoo::triplet_zhu(2),
            zoo::sf_zhu(1),
            zoo::even_exterior(4),
        ] {
            let r = a.radical();
            for v in r.basis_vectors() {
                for i in 0..a.dim() {
                    let b = a.basis_element(i).into_coeffs();
                    assert!(r.contains(&a.mul(&b, &v)));
                    assert!(r.contains(&a.mul(&v, &b)));
                }
            }
            let (q, _) = a.quotient(&r).unwrap();
            assert!(q.is_semisimple());
        }
    }
}
