//! Constructors for concrete algebras: matrix and exterior algebras, the
//! block models of the triplet and symplectic fermion Zhu algebras, and
//! test fixtures.
//!
//! The Zhu algebra models are assembled from their known block
//! decompositions; the even exterior block carries the wedge product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{sparse_from_dense, Matrix, Rational};
use crate::poly::Poly;

/// Largest number of generators accepted by [`even_exterior`].
pub const MAX_EXTERIOR_GENERATORS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` needs parameter --{param}")]
    MissingParameter { family: &'static str, param: &'static str },
    #[error("parameter {param} = {value} out of range for `{family}` (expected {expected})")]
    OutOfRange {
        family: &'static str,
        param: &'static str,
        value: usize,
        expected: &'static str,
    },
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn build(labels: Vec<String>, unit: Vec<Rational>, records: Vec<(usize, usize, usize, Rational)>) -> Algebra {
    Algebra::from_records(labels, unit, records).expect("zoo tables are associative and unital")
}

/// `Q` itself.
pub fn rationals() -> Algebra {
    build(vec!["1".into()], vec![q(1)], vec![(0, 0, 0, q(1))])
}

/// `Q[eps]/(eps^2)`, basis `{1, eps}`.
pub fn dual_numbers() -> Algebra {
    build(
        vec!["1".into(), "eps".into()],
        vec![q(1), q(0)],
        vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
    )
}

fn unit_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// `M_n(Q)` with the matrix units `E_ij` in row-major order.
///
/// # Panics
/// If `n == 0`.
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n >= 1, "matrix_algebra needs n >= 1");
    let idx = |i: usize, j: usize| i * n + j;
    let labels = (0..n * n).map(|k| unit_label(k / n, k % n, n)).collect();
    let mut unit = vec![q(0); n * n];
    for i in 0..n {
        unit[idx(i, i)] = q(1);
    }
    let mut recs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                recs.push((idx(i, j), idx(j, l), idx(i, l), q(1)));
            }
        }
    }
    build(labels, unit, recs)
}

/// Upper triangular `n x n` matrices, basis `E_ij` (`i <= j`) in row-major
/// order.
///
/// # Panics
/// If `n == 0`.
pub fn upper_triangular(n: usize) -> Algebra {
    assert!(n >= 1, "upper_triangular needs n >= 1");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let labels = pairs.iter().map(|&(i, j)| unit_label(i, j, n)).collect();
    let mut unit = vec![q(0); pairs.len()];
    for i in 0..n {
        unit[idx(i, i)] = q(1);
    }
    let mut recs = Vec::new();
    for &(i, j) in &pairs {
        for l in j..n {
            recs.push((idx(i, j), idx(j, l), idx(i, l), q(1)));
        }
    }
    build(labels, unit, recs)
}

fn monomial_label(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("e{}", b + 1))
        .collect::<Vec<_>>()
        .join("^")
}

/// The even part of the exterior algebra on `two_d` generators, with the
/// wedge product. Basis: even-degree monomials ordered by bitmask.
///
/// # Panics
/// If `two_d` is odd, zero, or above [`MAX_EXTERIOR_GENERATORS`].
pub fn even_exterior(two_d: usize) -> Algebra {
    assert!(
        two_d >= 2 && two_d.is_multiple_of(2) && two_d <= MAX_EXTERIOR_GENERATORS,
        "even_exterior needs an even generator count in 2..={MAX_EXTERIOR_GENERATORS}"
    );
    let masks: Vec<usize> = (0..1usize << two_d).filter(|m| m.count_ones() % 2 == 0).collect();
    let mut pos = vec![usize::MAX; 1 << two_d];
    for (k, &m) in masks.iter().enumerate() {
        pos[m] = k;
    }
    let mut recs = Vec::new();
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // one transposition for every pair (a in s, b in t) with a > b
            let inversions: u32 = (0..two_d)
                .filter(|a| s >> a & 1 == 1)
                .map(|a| (t & ((1 << a) - 1)).count_ones())
                .sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            recs.push((i, j, pos[s | t], q(sign)));
        }
    }
    let mut unit = vec![q(0); masks.len()];
    unit[0] = q(1);
    build(masks.iter().map(|&m| monomial_label(m)).collect(), unit, recs)
}

/// Block-diagonal product. Labels are prefixed `B<k>.` with `k` 1-based.
pub fn direct_product(factors: &[Algebra]) -> Algebra {
    let mut labels = Vec::new();
    let mut unit = Vec::new();
    let mut recs = Vec::new();
    let mut offset = 0;
    for (b, f) in factors.iter().enumerate() {
        labels.extend(f.labels().iter().map(|l| format!("B{}.{l}", b + 1)));
        unit.extend_from_slice(f.unit());
        recs.extend(
            f.records()
                .into_iter()
                .map(|(i, j, k, v)| (i + offset, j + offset, k + offset, v)),
        );
        offset += f.dim();
    }
    build(labels, unit, recs)
}

/// Model of the triplet Zhu algebra at `p`: `p - 1` dual-number blocks,
/// one copy of `Q` and `p` copies of `M_2(Q)`; dimension `6p - 1`.
///
/// # Panics
/// If `p < 2`.
pub fn triplet_zhu(p: usize) -> Algebra {
    assert!(p >= 2, "triplet_zhu needs p >= 2");
    let mut factors = vec![dual_numbers(); p - 1];
    factors.push(rationals());
    factors.extend(std::iter::repeat_with(|| matrix_algebra(2)).take(p));
    direct_product(&factors)
}

/// Model of the symplectic fermion Zhu algebra at `d`:
/// `Q x M_2d x M_2d x even_exterior(2d)`, dimension `2^(2d-1) + 8d^2 + 1`.
///
/// # Panics
/// If `d == 0` or `2d` exceeds [`MAX_EXTERIOR_GENERATORS`].
pub fn sf_zhu(d: usize) -> Algebra {
    assert!(d >= 1, "sf_zhu needs d >= 1");
    direct_product(&[
        rationals(),
        matrix_algebra(2 * d),
        matrix_algebra(2 * d),
        even_exterior(2 * d),
    ])
}

/// `Q[x]/(p)` with basis `1, x, ..., x^(deg p - 1)`.
///
/// # Panics
/// If `p` is constant.
pub fn polynomial_quotient(p: &Poly) -> Algebra {
    let n = p
        .degree()
        .filter(|&n| n >= 1)
        .expect("polynomial_quotient needs degree >= 1");
    let p = p.monic();
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    let mut products = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut c = vec![q(0); a + b + 1];
            c[a + b] = q(1);
            let r = Poly::new(c).rem(&p);
            let mut dense = r.coeffs().to_vec();
            dense.resize(n, q(0));
            products.push(sparse_from_dense(&dense));
        }
    }
    let mut unit = vec![q(0); n];
    unit[0] = q(1);
    Algebra::from_products(labels, unit, products).expect("polynomial quotients are commutative algebras")
}

/// The quaternion algebra `(a, b)_Q`: `i^2 = a`, `j^2 = b`, `ij = -ji = k`.
pub fn quaternions(a: i64, b: i64) -> Algebra {
    let (a, b) = (q(a), q(b));
    let recs = vec![
        (0, 0, 0, q(1)),
        (0, 1, 1, q(1)),
        (0, 2, 2, q(1)),
        (0, 3, 3, q(1)),
        (1, 0, 1, q(1)),
        (2, 0, 2, q(1)),
        (3, 0, 3, q(1)),
        (1, 1, 0, a.clone()),
        (2, 2, 0, b.clone()),
        (3, 3, 0, -(&a * &b)),
        (1, 2, 3, q(1)),
        (2, 1, 3, q(-1)),
        (1, 3, 2, a.clone()),
        (3, 1, 2, -a),
        (2, 3, 1, -b.clone()),
        (3, 2, 1, b),
    ];
    build(
        vec!["1".into(), "i".into(), "j".into(), "k".into()],
        vec![q(1), q(0), q(0), q(0)],
        recs,
    )
}

/// Seeded invertible change of basis `T = P L U D` with sparse small-integer
/// unitriangular `L`, `U`, a diagonal `D` drawn from `{±1, ±2, 1/2, 3}` and
/// a permutation `P`. Column `k` of `T` is the `k`-th new basis vector.
pub fn change_of_basis(dim: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triangular = |upper: bool, rng: &mut ChaCha8Rng| {
        let mut m = Matrix::identity(dim);
        for k in 0..dim {
            let others: Vec<usize> = if upper {
                (0..k).collect()
            } else {
                (k + 1..dim).collect()
            };
            if others.is_empty() {
                continue;
            }
            for _ in 0..rng.gen_range(0..=2usize) {
                let r = others[rng.gen_range(0..others.len())];
                let v = [-2, -1, 1, 2][rng.gen_range(0..4)];
                m.set(r, k, q(v));
            }
        }
        m
    };
    let l = triangular(false, &mut rng);
    let u = triangular(true, &mut rng);
    let diag = [q(1), q(-1), q(2), Rational::new(1, 2), q(-2), q(3)];
    let mut d = Matrix::zeros(dim, dim);
    for k in 0..dim {
        d.set(k, k, diag[rng.gen_range(0..diag.len())].clone());
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    for k in (1..dim).rev() {
        perm.swap(k, rng.gen_range(0..=k));
    }
    let mut p = Matrix::zeros(dim, dim);
    for (k, &pk) in perm.iter().enumerate() {
        p.set(pk, k, q(1));
    }
    p.mul(&l).mul(&u).mul(&d)
}

/// Transports the multiplication of `a` along the matrix `t` whose columns
/// are the new basis in old coordinates.
///
/// # Panics
/// If `t` is not invertible of size `dim a`.
pub fn transport(a: &Algebra, t: &Matrix, labels: Vec<String>) -> Algebra {
    let d = a.dim();
    let tinv = t.inverse().expect("change of basis must be invertible");
    let cols: Vec<Vec<Rational>> = (0..d).map(|k| t.column(k)).collect();
    let mut products = Vec::with_capacity(d * d);
    for x in &cols {
        for y in &cols {
            products.push(sparse_from_dense(&tinv.mul_vec(&a.mul(x, y))));
        }
    }
    Algebra::from_products(labels, tinv.mul_vec(a.unit()), products).expect("a change of basis preserves associativity")
}

/// `a` in a seeded pseudo-random basis; see [`change_of_basis`].
pub fn scramble(a: &Algebra, seed: u64) -> Algebra {
    let t = change_of_basis(a.dim(), seed);
    transport(a, &t, (0..a.dim()).map(|k| format!("s{k}")).collect())
}

/// A named family with parameters, as accepted by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Rationals,
    Dual,
    Matrix(usize),
    UpperTriangular(usize),
    Exterior(usize),
    Triplet(usize),
    Sf(usize),
}

impl Family {
    pub const NAMES: &'static [&'static str] = &[
        "rationals",
        "dual",
        "matrix",
        "upper-triangular",
        "exterior",
        "triplet",
        "sf",
    ];

    /// Resolves a family name and its integer parameters (`p`, `d`, `n`).
    pub fn parse(name: &str, p: Option<usize>, d: Option<usize>, n: Option<usize>) -> Result<Self, ZooError> {
        let need = |family: &'static str, param: &'static str, v: Option<usize>| {
            v.ok_or(ZooError::MissingParameter { family, param })
        };
        let fam = match name {
            "rationals" => Family::Rationals,
            "dual" => Family::Dual,
            "matrix" => Family::Matrix(need("matrix", "n", n)?),
            "upper-triangular" => Family::UpperTriangular(need("upper-triangular", "n", n)?),
            "exterior" => Family::Exterior(need("exterior", "n", n)?),
            "triplet" => Family::Triplet(need("triplet", "p", p)?),
            "sf" => Family::Sf(need("sf", "d", d)?),
            other => return Err(ZooError::UnknownFamily(other.to_string())),
        };
        fam.check()?;
        Ok(fam)
    }

    fn check(self) -> Result<(), ZooError> {
        let bad = |family, param, value, expected| {
            Err(ZooError::OutOfRange {
                family,
                param,
                value,
                expected,
            })
        };
        match self {
            Family::Matrix(n) if !(1..=12).contains(&n) => bad("matrix", "n", n, "1..=12"),
            Family::UpperTriangular(n) if !(1..=12).contains(&n) => bad("upper-triangular", "n", n, "1..=12"),
            Family::Exterior(n) if n < 2 || n % 2 == 1 || n > MAX_EXTERIOR_GENERATORS => {
                bad("exterior", "n", n, "even, 2..=10")
            }
            Family::Triplet(p) if !(2..=64).contains(&p) => bad("triplet", "p", p, "2..=64"),
            Family::Sf(d) if !(1..=MAX_EXTERIOR_GENERATORS / 2).contains(&d) => bad("sf", "d", d, "1..=5"),
            _ => Ok(()),
        }
    }

    pub fn build(self) -> Result<Algebra, ZooError> {
        self.check()?;
        Ok(match self {
            Family::Rationals => rationals(),
            Family::Dual => dual_numbers(),
            Family::Matrix(n) => matrix_algebra(n),
            Family::UpperTriangular(n) => upper_triangular(n),
            Family::Exterior(n) => even_exterior(n),
            Family::Triplet(p) => triplet_zhu(p),
            Family::Sf(d) => sf_zhu(d),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SplitPolicy;

    #[test]
    fn dimensions() {
        assert_eq!(matrix_algebra(1).dim(), 1);
        assert_eq!(upper_triangular(2).dim(), 3);
        assert_eq!(even_exterior(2).dim(), 2);
        assert_eq!(even_exterior(4).dim(), 8);
        for p in 2..=5 {
            assert_eq!(triplet_zhu(p).dim(), 6 * p - 1);
        }
        for (d, dim) in [(1, 11), (2, 41), (3, 105)] {
            assert_eq!(sf_zhu(d).dim(), dim);
        }
    }

    #[test]
    fn exterior_two_is_dual_numbers() {
        let e = even_exterior(2);
        assert_eq!(e.records(), dual_numbers().records());
    }

    #[test]
    fn exterior_signs() {
        let e = even_exterior(4);
        let label = |m| e.labels().iter().position(|l| *l == monomial_label(m)).unwrap();
        // (e1^e3)(e2^e4) = -e1^e2^e3^e4; (e1^e2)(e3^e4) = +
        let p = e.product(label(0b0101), label(0b1010));
        assert_eq!(p, &[(label(0b1111), q(-1))]);
        let p = e.product(label(0b0011), label(0b1100));
        assert_eq!(p, &[(label(0b1111), q(1))]);
        assert!(e.is_commutative());
    }

    #[test]
    fn exterior_is_local() {
        for two_d in [2, 4, 6] {
            let e = even_exterior(two_d);
            assert_eq!(e.central_idempotents(&SplitPolicy::default()).len(), 1);
            assert_eq!(e.center_mod_radical_dim(), 1);
        }
    }

    #[test]
    fn scramble_preserves_invariants() {
        let a = triplet_zhu(2);
        let s = scramble(&a, 7);
        assert_eq!(s.dim(), a.dim());
        assert_eq!(s.radical().dim(), a.radical().dim());
        assert_eq!(s.center().dim(), a.center().dim());
        assert_ne!(s.records(), a.records());
        let r = scramble(&rationals(), 3);
        assert!(r.unit()[0].is_one() || !r.unit()[0].is_zero());
        assert_eq!(scramble(&a, 7), s);
    }

    #[test]
    fn family_parsing() {
        assert_eq!(Family::parse("triplet", Some(2), None, None), Ok(Family::Triplet(2)));
        assert!(matches!(
            Family::parse("triplet", None, None, None),
            Err(ZooError::MissingParameter { .. })
        ));
        assert!(matches!(
            Family::parse("sf", None, Some(6), None),
            Err(ZooError::OutOfRange { .. })
        ));
        assert!(matches!(
            Family::parse("nope", None, None, None),
            Err(ZooError::UnknownFamily(_))
        ));
        assert_eq!(Family::Matrix(3).build().unwrap().dim(), 9);
    }
}
