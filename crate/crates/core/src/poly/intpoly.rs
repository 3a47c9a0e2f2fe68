//! Dense integer polynomials (lowest degree first). These back the exact
//! kernels: sign evaluation, Taylor shifts, Descartes counts and the
//! fraction-free determinant used for resultants.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::rational::Rational;

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn is_zero(p: &[BigInt]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides out the content; keeps the sign of the leading coefficient.
pub(crate) fn make_primitive(p: &mut IntPoly) {
    let g = content(p);
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Sign of `p(n/d)` with `d > 0`, via the homogenised Horner scheme.
pub(crate) fn sign_at(p: &[BigInt], x: &Rational) -> Ordering {
    let (n, d) = (x.numer(), x.denom());
    let deg = match degree(p) {
        Some(k) => k,
        None => return Ordering::Equal,
    };
    // sum a_i n^i d^(deg-i)
    let mut acc = p[deg].clone();
    let mut dpow = BigInt::one();
    for i in (0..deg).rev() {
        dpow *= d;
        acc = acc * n + &p[i] * &dpow;
    }
    match acc.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// In-place `p(x) -> p(x + 1)`.
pub(crate) fn taylor_shift_one(p: &mut [BigInt]) {
    let n = p.len();
    if n < 2 {
        return;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = p[j + 1].clone();
            p[j] += t;
        }
    }
}

/// `x^n p(1/x)` for `n = deg p`.
pub(crate) fn reversed(p: &[BigInt]) -> IntPoly {
    let mut r: IntPoly = p.to_vec();
    trim(&mut r);
    r.reverse();
    r
}

/// `p(-x)`.
pub(crate) fn negate_var(p: &[BigInt]) -> IntPoly {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

/// `p(2^k x)`.
pub(crate) fn scale_pow2(p: &[BigInt], k: u64) -> IntPoly {
    p.iter()
        .enumerate()
        .map(|(i, c)| c << (k as usize * i))
        .collect()
}

/// `2^n p(x / 2)` with `n = deg p`.
pub(crate) fn halve_var(p: &[BigInt]) -> IntPoly {
    let n = p.len().saturating_sub(1);
    p.iter()
        .enumerate()
        .map(|(i, c)| c << (n - i))
        .collect()
}

pub(crate) fn sign_variations(p: &[BigInt]) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for c in p {
        let s = c.sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Descartes bound for the number of roots of `p` in the open interval (0, 1).
pub(crate) fn descartes_01(p: &[BigInt]) -> usize {
    let mut r = reversed(p);
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// Clears denominators of a rational coefficient list, returning a primitive
/// integer polynomial that is a positive multiple of the input.
pub(crate) fn from_rationals(c: &[Rational]) -> IntPoly {
    let l = crate::rational::lcm_of_denominators(c.iter());
    let mut p: IntPoly = c
        .iter()
        .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
        .collect();
    trim(&mut p);
    make_primitive(&mut p);
    p
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        r.push(x - y);
    }
    trim(&mut r);
    r
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

/// Exact quotient `a / b` in Z[x]; panics if the division is not exact.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem: IntPoly = a.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Vec::new();
    }
    let da = rem.len() - 1;
    if da < db {
        panic!("inexact polynomial division");
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db];
        if c.is_zero() {
            continue;
        }
        let (t, r) = c.div_rem(lb);
        assert!(r.is_zero(), "inexact polynomial division");
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[k + j] -= &t * bj;
        }
        q[k] = t;
    }
    debug_assert!(is_zero(&rem), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Pseudo-remainder `lc(b)^(da - db + 1) a mod b`.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = degree(b).expect("division by zero polynomial");
    let lb = &b[db];
    let mut r: IntPoly = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let k = r.len() - 1;
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[k - db + j] -= &top * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

const GCD_PRIMES: [u64; 4] = [2_305_843_009_213_693_951, 4_294_967_291, 1_000_000_007, 998_244_353];

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| {
            let m = c.mod_floor(&pb);
            m.try_into().expect("residue fits in u64")
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Degree of `gcd(a mod p, b mod p)`.
fn gcd_degree_mod(a: &[BigInt], b: &[BigInt], p: u64) -> usize {
    let mut x = reduce_mod(a, p);
    let mut y = reduce_mod(b, p);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = powmod(*y.last().unwrap(), p - 2, p);
        let dy = y.len() - 1;
        while x.len() > dy {
            let k = x.len() - 1;
            let t = mulmod(x[k], inv, p);
            if t != 0 {
                for (j, &yj) in y.iter().enumerate() {
                    let s = mulmod(t, yj, p);
                    x[k - dy + j] = (x[k - dy + j] + p - s) % p;
                }
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len().saturating_sub(1)
}

/// Primitive gcd with positive leading coefficient (empty if both are zero).
/// A modular degree test settles the common coprime case before falling back
/// to the primitive remainder sequence.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    if x.is_empty() && y.is_empty() {
        return Vec::new();
    }
    if x.is_empty() || y.is_empty() {
        let mut g = if x.is_empty() { y } else { x };
        make_primitive(&mut g);
        if is_negative_lc(&g) {
            g = g.iter().map(|c| -c).collect();
        }
        return g;
    }
    if x.len() == 1 || y.len() == 1 {
        return vec![BigInt::one()];
    }
    let (lx, ly) = (x.last().unwrap().clone(), y.last().unwrap().clone());
    for &p in &GCD_PRIMES {
        let pb = BigInt::from(p);
        if lx.is_multiple_of(&pb) || ly.is_multiple_of(&pb) {
            continue;
        }
        if gcd_degree_mod(&x, &y, p) == 0 {
            return vec![BigInt::one()];
        }
        break;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    make_primitive(&mut x);
    make_primitive(&mut y);
    while !y.is_empty() {
        let mut r = pseudo_rem(&x, &y);
        make_primitive(&mut r);
        x = y;
        y = r;
    }
    if is_negative_lc(&x) {
        x = x.iter().map(|c| -c).collect();
    }
    x
}

/// Magnitude bound: every real root of `p` lies in `(-2^k, 2^k)`.
pub(crate) fn root_bound_log2(p: &[BigInt]) -> u64 {
    let d = degree(p).expect("zero polynomial");
    let lc_bits = p[d].bits();
    let max_bits = p[..d].iter().map(|c| c.bits()).max().unwrap_or(0);
    // Cauchy: 1 + max|a_i| / |a_d| < 2^(max_bits - lc_bits + 1) + 1
    (max_bits + 2).saturating_sub(lc_bits).max(1)
}

/// Composes `p(lo + (hi - lo) t)` and clears denominators.
pub(crate) fn compose_affine(p: &[BigInt], lo: &Rational, hi: &Rational) -> IntPoly {
    let deg = match degree(p) {
        Some(d) => d,
        None => return Vec::new(),
    };
    // lo = n0 / den, hi - lo = n1 / den; homogenised Horner in (n0 + n1 t) and den
    let w = hi - lo;
    let den = lo.denom().lcm(w.denom());
    let n0 = lo.numer() * (&den / lo.denom());
    let n1 = w.numer() * (&den / w.denom());
    let mut acc: IntPoly = vec![p[deg].clone()];
    let mut dpow = BigInt::one();
    for i in (0..deg).rev() {
        dpow *= &den;
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k] += a * &n0;
            next[k + 1] += a * &n1;
        }
        next[0] += &p[i] * &dpow;
        acc = next;
    }
    trim(&mut acc);
    make_primitive(&mut acc);
    acc
}

/// Descartes bound for roots of `p` in the open interval `(lo, hi)`.
pub(crate) fn descartes_interval(p: &[BigInt], lo: &Rational, hi: &Rational) -> usize {
    let q = compose_affine(p, lo, hi);
    if q.is_empty() {
        return usize::MAX;
    }
    descartes_01(&q)
}

pub(crate) fn is_negative_lc(p: &[BigInt]) -> bool {
    degree(p).is_some_and(|d| p[d].is_negative())
}
