//! Splitting four-dimensional central simple algebras.
//!
//! Such an algebra is a quaternion algebra. For trace-zero `v` the square
//! `v^2` is a scalar, and the algebra is `M_2(Q)` exactly when the ternary
//! form `v -> v^2` is isotropic. An isotropic vector is a nonzero nilpotent,
//! and the left ideal it generates contains a rank-one idempotent. The
//! isotropic vector comes from diagonalizing the form and solving the
//! resulting Legendre equation by descent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{find_split_idempotent, vec_add, vec_scale, vec_sub, Algebra};
use crate::linalg::{Matrix, Rational};

/// Integers handled by the descent must stay below this bound so that
/// modular products fit in `u128`.
const FACTOR_LIMIT: u128 = 1 << 64;

/// A nontrivial idempotent of a four-dimensional central simple algebra,
/// or `None` when the norm form is anisotropic or its coefficients are too
/// large to factor.
pub(crate) fn split_idempotent(b: &Algebra) -> Option<Vec<Rational>> {
    let n = nilpotent(b)?;
    (0..b.dim())
        .map(|k| b.mul(&b.basis_element(k).into_coeffs(), &n))
        .find_map(|x| find_split_idempotent(b, &x))
}

fn nilpotent(b: &Algebra) -> Option<Vec<Rational>> {
    if b.dim() != 4 {
        return None;
    }
    let traces: Vec<Rational> = (0..4)
        .map(|k| {
            let l = b.left_mult(&b.basis_element(k).into_coeffs());
            (0..4).fold(Rational::zero(), |acc, i| acc + l.get(i, i))
        })
        .collect();
    let mut ws = Matrix::from_vec(1, 4, traces).kernel().basis_vectors();
    let unit = b.unit();
    let pivot = unit.iter().position(|x| !x.is_zero())?;
    let scalar = |x: &[Rational]| -> Option<Rational> {
        let s = &x[pivot] / &unit[pivot];
        (vec_scale(unit, &s) == x).then_some(s)
    };
    let form = |u: &[Rational], v: &[Rational]| -> Option<Rational> {
        let s = scalar(&vec_add(&b.mul(u, v), &b.mul(v, u)))?;
        Some(s / Rational::from_integer(2))
    };
    let mut diag: Vec<(Vec<Rational>, Rational)> = Vec::new();
    while let Some(w) = ws.pop() {
        let q = form(&w, &w)?;
        if q.is_zero() {
            return Some(w);
        }
        ws = ws
            .into_iter()
            .map(|u| form(&u, &w).map(|c| vec_sub(&u, &vec_scale(&w, &(c / &q)))))
            .collect::<Option<_>>()?;
        diag.push((w, q));
    }
    if diag.len() != 3 {
        return None;
    }
    // c1 X^2 + c2 Y^2 + c3 Z^2 = 0  <=>  a X^2 + b Y^2 = Z^2
    let c3 = diag[2].1.clone();
    let (sa, ra) = squarefree_rational(&(-(&diag[0].1 / &c3)))?;
    let (sb, rb) = squarefree_rational(&(-(&diag[1].1 / &c3)))?;
    let (x, y, z) = legendre(&sa, &sb, 0)?;
    // a = sa * ra^2, so X = x / ra solves the unscaled equation
    let coeffs = [
        Rational::from_bigints(x, BigInt::one()) / ra,
        Rational::from_bigints(y, BigInt::one()) / rb,
        Rational::from_bigints(z, BigInt::one()),
    ];
    let mut n = vec![Rational::zero(); 4];
    for ((w, _), c) in diag.iter().zip(&coeffs) {
        n = vec_add(&n, &vec_scale(w, c));
    }
    let zero = vec![Rational::zero(); 4];
    (n != zero && b.mul(&n, &n) == zero).then_some(n)
}

/// Writes `r = s * t^2` with `s` a squarefree integer and `t` rational.
fn squarefree_rational(r: &Rational) -> Option<(BigInt, Rational)> {
    let (num, den) = (r.numer(), r.denom());
    // r = num * den / den^2
    let (s, t) = squarefree_integer(&(&num * &den))?;
    Some((s, Rational::from_bigints(t, den)))
}

/// Writes `n = s * t^2` with `s` squarefree; `n` must be nonzero.
fn squarefree_integer(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let m = n.abs().to_u128().filter(|m| *m < FACTOR_LIMIT && *m > 0)?;
    let (mut s, mut t) = (1u128, 1u128);
    for (p, e) in factor(m) {
        if e % 2 == 1 {
            s *= p;
        }
        t *= p.pow(e / 2);
    }
    let s = BigInt::from(s);
    Some((if n.is_negative() { -s } else { s }, BigInt::from(t)))
}

/// Prime factorization by trial division over small primes, then
/// Miller-Rabin and Pollard's rho.
fn factor(m: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    let mut m = m;
    for p in 2..1000u128 {
        while m.is_multiple_of(p) {
            m /= p;
            primes.push(p);
        }
    }
    split_large(m, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(m: u128, primes: &mut Vec<u128>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        primes.push(m);
        return;
    }
    let d = rho(m);
    split_large(d, primes);
    split_large(m / d, primes);
}

/// Deterministic for every `m < 2^64`.
fn is_prime(m: u128) -> bool {
    if m < 2 {
        return false;
    }
    const BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if let Some(&p) = BASES.iter().find(|&&p| m.is_multiple_of(p)) {
        return m == p;
    }
    let (mut d, mut s) = (m - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    BASES.iter().all(|&a| {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            return true;
        }
        for _ in 1..s {
            x = x * x % m;
            if x == m - 1 {
                return true;
            }
        }
        false
    })
}

/// A nontrivial factor of an odd composite `m` (Brent's variant).
fn rho(m: u128) -> u128 {
    for c in 1.. {
        let f = |x: u128| (x * x + c) % m;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&m);
        }
        if d != m {
            return d;
        }
    }
    unreachable!()
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Square root of `a` modulo an odd prime or 2 (Tonelli-Shanks).
fn sqrt_mod_prime(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let bb = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = bb * bb % p;
        t = t * c % p;
        r = r * bb % p;
    }
    Some(r)
}

/// Square root of `b` modulo a squarefree `m`, by CRT over its primes.
fn sqrt_mod(b: &BigInt, m: u128) -> Option<u128> {
    let bm = b.mod_floor(&BigInt::from(m)).to_u128()?;
    let (mut root, mut modulus) = (0u128, 1u128);
    for (p, _) in factor(m) {
        let r = sqrt_mod_prime(bm % p, p)?;
        // x = root (mod modulus), x = r (mod p)
        let inv = pow_mod(modulus % p, p - 2, p);
        let k = (r + p - root % p) % p * inv % p;
        root += modulus * k;
        modulus *= p;
    }
    Some(root)
}

/// Nonzero `(x, y, z)` with `a x^2 + b y^2 = z^2`, for squarefree nonzero
/// `a` and `b`, by Lagrange descent on `|a| + |b|`.
fn legendre(a: &BigInt, b: &BigInt, depth: usize) -> Option<(BigInt, BigInt, BigInt)> {
    let (zero, one) = (BigInt::zero(), BigInt::one());
    if a.is_one() {
        return Some((one.clone(), zero, one));
    }
    if b.is_one() {
        return Some((zero, one.clone(), one));
    }
    if (a.is_negative() && b.is_negative()) || depth > 256 {
        return None;
    }
    if a.abs() < b.abs() {
        let (x, y, z) = legendre(b, a, depth + 1)?;
        return Some((y, x, z));
    }
    let m = a.abs().to_u128().filter(|m| *m < FACTOR_LIMIT)?;
    let mut t = BigInt::from(sqrt_mod(b, m)?);
    if &t * 2 > a.abs() {
        t -= a.abs();
    }
    let k = (&t * &t - b) / a;
    if k.is_zero() {
        return None;
    }
    let (kp, s) = squarefree_integer(&k)?;
    let (x0, y0, z0) = legendre(&kp, b, depth + 1)?;
    // (t + sqrt b)(z0 + y0 sqrt b) has norm a (kp s x0)^2
    let (x, y, z) = (&kp * &s * x0, &t * &y0 + &z0, &t * &z0 + b * &y0);
    debug_assert_eq!(a * &x * &x + b * &y * &y, &z * &z);
    (!(x.is_zero() && y.is_zero() && z.is_zero())).then_some((x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SplitPolicy;
    use crate::zoo;

    fn squarefree(n: i64) -> bool {
        (2..=n.unsigned_abs())
            .take_while(|p| p * p <= n.unsigned_abs())
            .all(|p| !n.unsigned_abs().is_multiple_of(p * p))
    }

    /// Some nonzero solution with every coordinate bounded by `bound`.
    fn brute(a: i64, b: i64, bound: i64) -> bool {
        (0..=bound).any(|x| {
            (0..=bound).any(|y| {
                let v = a * x * x + b * y * y;
                (x, y) != (0, 0) && v >= 0 && (v as f64).sqrt().round().powi(2) as i64 == v
            })
        })
    }

    #[test]
    fn descent_agrees_with_search() {
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if a == 0 || b == 0 || !squarefree(a) || !squarefree(b) {
                    continue;
                }
                let got = legendre(&BigInt::from(a), &BigInt::from(b), 0);
                if let Some((x, y, z)) = &got {
                    assert_eq!(a * x * x + b * y * y, z * z, "a = {a}, b = {b}");
                }
                // a solution exists iff one exists with |x|, |y| <= sqrt(|ab|)
                assert_eq!(got.is_some(), brute(a, b, 31), "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn quaternion_algebras() {
        assert!(split_idempotent(&zoo::quaternions(-1, -1)).is_none());
        for (a, b) in [(1, 1), (2, 7), (-1, 2), (5, 11), (-3, 7), (13, -1)] {
            let q = zoo::quaternions(a, b);
            let split = brute(a, b, 40);
            let e = split_idempotent(&q);
            assert_eq!(e.is_some(), split, "({a}, {b})");
            if let Some(e) = e {
                assert_eq!(q.mul(&e, &e), e);
                assert_ne!(e, q.unit().to_vec());
            }
        }
    }

    #[test]
    fn scrambled_m2_corners() {
        let p = SplitPolicy::default();
        for seed in 0..40 {
            let a = zoo::scramble(
                &zoo::direct_product(&[zoo::matrix_algebra(2), zoo::matrix_algebra(2)]),
                seed,
            );
            for block in a.central_idempotents(&p).blocks {
                let e = split_idempotent(&block.algebra).expect("M_2 splits");
                assert_eq!(block.algebra.mul(&e, &e), e);
            }
        }
    }
}
