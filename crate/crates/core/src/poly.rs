//! Univariate polynomials over the rationals.
//!
//! Only what idempotent splitting needs: Euclidean arithmetic, squarefree
//! parts and exact rational-root extraction. There is no general
//! factorization over `Q`; an irreducible factor of degree two or more simply
//! stays unsplit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{common_denominator, Rational};

/// Coefficients low to high, without trailing zeros. The zero polynomial has
/// no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lead_inv;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &(&c * d);
                }
            }
            quot[k] = c;
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u*self + v*other = g = gcd(self, other)`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (Self::zero(), Self::zero(), Self::zero()),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// All distinct rational roots, ascending.
    ///
    /// With `p = Σ a_i x^i` cleared to integer coefficients, every rational
    /// root times `a_n` is an integer root of the monic integer polynomial
    /// `a_n^{n-1} p(y / a_n)`. Those integer roots are isolated with Sturm
    /// sequences evaluated at half-integers, which can never be roots.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let mut s = self.squarefree_part();
        if s.degree().unwrap_or(0) == 0 {
            return roots;
        }
        if s.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            s = s.div_rem(&Poly::from_i64(&[0, 1])).0;
        }
        if s.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let n = s.degree().unwrap();
        let den = common_denominator(&s.coeffs);
        let mut ints: Vec<BigInt> = s.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in ints.iter_mut() {
            *c /= &content;
        }
        let lead = ints[n].clone();
        // monic: b_i = a_i * lead^(n-1-i)
        let mut monic = Vec::with_capacity(n + 1);
        let mut pow = BigInt::one();
        for i in (0..n).rev() {
            monic.push((i, &ints[i] * &pow));
            pow *= &lead;
        }
        monic.sort_by_key(|(i, _)| *i);
        let mut mcoeffs: Vec<Rational> = monic.into_iter().map(|(_, c)| Rational::from(c)).collect();
        mcoeffs.push(Rational::one());
        let q = Poly::new(mcoeffs);
        let bound = q.coeffs.iter().map(Rational::abs).max().unwrap_or_else(Rational::one) + Rational::one();
        let sturm = SturmChain::new(&q);
        let half = Rational::new(1, 2);
        let mut int_roots = Vec::new();
        let lo = -bound.floor() - Rational::one();
        let hi = bound.floor();
        isolate(&sturm, &q, lo, hi, &half, &mut int_roots);
        let lead_q = Rational::from(lead);
        roots.extend(int_roots.into_iter().map(|y| &y / &lead_q));
        roots.sort();
        roots
    }
}

struct SturmChain(Vec<Poly>);

impl SturmChain {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-Rational::one()));
        }
        Self(chain)
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut last: Option<bool> = None;
        let mut changes = 0;
        for p in &self.0 {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            if last.is_some_and(|l| l != neg) {
                changes += 1;
            }
            last = Some(neg);
        }
        changes
    }
}

/// Collects integer roots of `q` in `lo+1 ..= hi`; integers only, so the
/// Sturm counts are taken at `lo + 1/2` and `hi + 1/2`.
fn isolate(sturm: &SturmChain, q: &Poly, lo: Rational, hi: Rational, half: &Rational, out: &mut Vec<Rational>) {
    let count = sturm.sign_changes(&(&lo + half)) as i64 - sturm.sign_changes(&(&hi + half)) as i64;
    if count <= 0 {
        return;
    }
    if &hi - &lo == Rational::one() {
        if q.eval(&hi).is_zero() {
            out.push(hi);
        }
        return;
    }
    let mid = (&(&lo + &hi) * half).floor();
    isolate(sturm, q, lo, mid.clone(), half, out);
    isolate(sturm, q, mid, hi, half, out);
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_i64(&[1, 1]); // x + 1
        let (quot, r) = a.div_rem(&b);
        assert_eq!(quot, Poly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly::from_i64(&[-1, 1])), Poly::from_i64(&[-1, 1]));
        let (g, u, v) = Poly::from_i64(&[0, 1]).ext_gcd(&Poly::from_i64(&[-1, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(
            u.mul(&Poly::from_i64(&[0, 1])).add(&v.mul(&Poly::from_i64(&[-1, 1]))),
            Poly::one()
        );
    }

    #[test]
    fn squarefree() {
        // x^3 (x - 1)^2
        let p = Poly::from_i64(&[0, 1])
            .mul(&Poly::from_i64(&[0, 1]))
            .mul(&Poly::from_i64(&[0, 1]))
            .mul(&Poly::from_i64(&[-1, 1]))
            .mul(&Poly::from_i64(&[-1, 1]));
        assert_eq!(p.squarefree_part(), Poly::from_i64(&[0, -1, 1]));
        assert_eq!(p.root_multiplicity(&Rational::zero()), 3);
        assert_eq!(p.root_multiplicity(&Rational::one()), 2);
    }

    #[test]
    fn rational_roots_examples() {
        assert!(Poly::from_i64(&[1, 0, 1]).rational_roots().is_empty());
        assert_eq!(Poly::from_i64(&[0, -1, 1]).rational_roots(), vec![q(0, 1), q(1, 1)]);
        // (2x - 3)(3x + 1)(x^2 + 2)
        let p = Poly::from_i64(&[-3, 2])
            .mul(&Poly::from_i64(&[1, 3]))
            .mul(&Poly::from_i64(&[2, 0, 1]));
        assert_eq!(p.rational_roots(), vec![q(-1, 3), q(3, 2)]);
        // roots far from the origin
        let p = Poly::from_i64(&[-1_000_003, 1]).mul(&Poly::from_i64(&[999_983, 1]));
        assert_eq!(p.rational_roots(), vec![q(-999_983, 1), q(1_000_003, 1)]);
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(
            roots in proptest::collection::vec((-40i64..40, 1i64..7), 1..5),
            extra in 0usize..2,
        ) {
            let mut p = Poly::one();
            let mut expect: Vec<Rational> = Vec::new();
            for (n, d) in &roots {
                let r = q(*n, *d);
                p = p.mul(&Poly::linear_root(&r));
                if !expect.contains(&r) {
                    expect.push(r);
                }
            }
            if extra == 1 {
                p = p.mul(&Poly::from_i64(&[3, 0, 1]));
            }
            expect.sort();
            prop_assert_eq!(p.rational_roots(), expect);
        }
    }
}
