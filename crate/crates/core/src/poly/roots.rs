//! Certified real-root isolation (Descartes bisection) and refinement.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bipoly::BivariatePolynomial;
use super::intpoly::{self, IntPoly};
use super::upoly::UnivariatePolynomial as UPoly;
use crate::error::{Error, Result};
use crate::rational::{midpoint, simplest_between, Rational};

/// Closed interval `[lo, hi]` isolating one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
    pub exact: bool,
}

impl RootInterval {
    pub fn exact(r: Rational, multiplicity: u32) -> Self {
        Self { lo: r.clone(), hi: r, multiplicity, exact: true }
    }

    pub fn new(lo: Rational, hi: Rational, multiplicity: u32) -> Self {
        let exact = lo == hi;
        Self { lo, hi, multiplicity, exact }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strict order when the closed intervals are disjoint.
    pub fn cmp_disjoint(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}, {}", self.lo, self.hi)
        }
    }
}

/// Isolates every distinct real root of `u`, sorted increasingly.
pub fn isolate_real_roots(u: &UPoly) -> Result<Vec<RootInterval>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if u.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = u.squarefree_factors();
    let sf = u.squarefree_part().to_int();
    let mut roots = isolate_squarefree(&sf);
    for r in roots.iter_mut() {
        r.multiplicity = factors
            .iter()
            .position(|f| {
                let fi = f.to_int();
                if r.exact {
                    intpoly::sign_at(&fi, &r.lo) == Ordering::Equal
                } else {
                    intpoly::sign_at(&fi, &r.lo) != intpoly::sign_at(&fi, &r.hi)
                }
            })
            .map(|i| i as u32 + 1)
            .unwrap_or(1);
    }
    Ok(roots)
}

/// Narrows `r` to width at most `width`, keeping the same root.
pub fn refine_root(u: &UPoly, r: &RootInterval, width: &Rational) -> Result<RootInterval> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = u.squarefree_part().to_int();
    if r.exact || r.lo == r.hi {
        return if intpoly::sign_at(&sf, &r.lo) == Ordering::Equal {
            Ok(RootInterval::exact(r.lo.clone(), r.multiplicity))
        } else {
            Err(Error::NotIsolating)
        };
    }
    if r.lo > r.hi || !isolates(&sf, &r.lo, &r.hi) {
        return Err(Error::NotIsolating);
    }
    let mut out = r.clone();
    refine_int(&sf, &mut out, width);
    Ok(out)
}

/// Real roots of `p(x0, y)` in `y`.
pub fn fiber_roots(p: &BivariatePolynomial, x0: &Rational) -> Result<Vec<RootInterval>> {
    let u = p.eval_x(x0);
    if u.is_zero() {
        return Err(Error::VerticalLineComponent(x0.to_string()));
    }
    isolate_real_roots(&u)
}

// `[lo, hi]` with nonzero endpoints of opposite sign and a single root inside.
fn isolates(sf: &[BigInt], lo: &Rational, hi: &Rational) -> bool {
    let a = intpoly::sign_at(sf, lo);
    let b = intpoly::sign_at(sf, hi);
    a != Ordering::Equal
        && b != Ordering::Equal
        && a != b
        && intpoly::descartes_interval(sf, lo, hi) == 1
}

/// Bisects an isolating interval of a square-free integer polynomial until its
/// width is at most `width` (or the root is hit exactly).
pub(crate) fn refine_int(sf: &[BigInt], r: &mut RootInterval, width: &Rational) {
    if r.exact {
        return;
    }
    let s_lo = intpoly::sign_at(sf, &r.lo);
    while &r.width() > width {
        let m = r.mid();
        match intpoly::sign_at(sf, &m) {
            Ordering::Equal => {
                r.lo = m.clone();
                r.hi = m;
                r.exact = true;
                return;
            }
            s if s == s_lo => r.lo = m,
            _ => r.hi = m,
        }
    }
}

/// One bisection step; returns false if the interval is exact.
pub(crate) fn bisect_int(sf: &[BigInt], r: &mut RootInterval) -> bool {
    if r.exact {
        return false;
    }
    let w = r.width() / Rational::from_integer(2.into());
    refine_int(sf, r, &w);
    true
}

/// Isolates the real roots of a square-free integer polynomial.
pub(crate) fn isolate_squarefree(sf: &[BigInt]) -> Vec<RootInterval> {
    let mut p: IntPoly = sf.to_vec();
    intpoly::trim(&mut p);
    if intpoly::degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let zero_root = p[0].is_zero();
    if zero_root {
        p.remove(0);
    }
    let neg = positive_roots(&intpoly::negate_var(&p));
    let mut res: Vec<RootInterval> = neg
        .into_iter()
        .rev()
        .map(|(lo, hi)| RootInterval::new(-hi, -lo, 1))
        .collect();
    if zero_root {
        res.push(RootInterval::exact(Rational::zero(), 1));
    }
    for (lo, hi) in positive_roots(&p) {
        res.push(RootInterval::new(lo, hi, 1));
    }
    // shrink open intervals into closed, pairwise disjoint ones with nonzero endpoints
    for r in res.iter_mut() {
        if !r.exact {
            tighten_open(sf, r);
        }
    }
    res
}

// Roots in (0, inf) as open intervals (lo, hi), or exact points lo == hi.
fn positive_roots(p: &[BigInt]) -> Vec<(Rational, Rational)> {
    let out = Vec::new();
    if intpoly::degree(p).unwrap_or(0) == 0 {
        return out;
    }
    let k = intpoly::root_bound_log2(p);
    let scale = Rational::from_integer(BigInt::one() << k as usize);
    let q = intpoly::scale_pow2(p, k);
    // stack of (poly on (0,1), numerator c, level e): interval (c/2^e, (c+1)/2^e)
    let mut stack: Vec<(IntPoly, BigInt, u32)> = vec![(q, BigInt::zero(), 0)];
    let mut found: Vec<(Rational, Rational)> = Vec::new();
    while let Some((poly, c, e)) = stack.pop() {
        let v = intpoly::descartes_01(&poly);
        let den = Rational::from_integer(BigInt::one() << e as usize);
        let lo = Rational::from_integer(c.clone()) / &den;
        let hi = Rational::from_integer(&c + 1) / &den;
        if v == 0 {
            continue;
        }
        if v == 1 {
            found.push((lo * &scale, hi * &scale));
            continue;
        }
        let mut left = intpoly::halve_var(&poly);
        intpoly::make_primitive(&mut left);
        if intpoly::sign_at(&left, &Rational::one()) == Ordering::Equal {
            let m = midpoint(&lo, &hi) * &scale;
            found.push((m.clone(), m));
        }
        let mut right = left.clone();
        intpoly::taylor_shift_one(&mut right);
        stack.push((right, &c * 2 + 1, e + 1));
        stack.push((left, &c * 2, e + 1));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    found
}

// For an open interval holding exactly one simple root, finds a closed
// sub-interval with nonzero endpoints of opposite signs, strictly inside.
fn tighten_open(sf: &[BigInt], r: &mut RootInterval) {
    let (a, b) = (r.lo.clone(), r.hi.clone());
    let c = midpoint(&a, &b);
    let sc = intpoly::sign_at(sf, &c);
    if sc == Ordering::Equal {
        *r = RootInterval::exact(c, r.multiplicity);
        return;
    }
    // pick the half holding the root
    let (sa, sb) = (intpoly::sign_at(sf, &a), intpoly::sign_at(sf, &b));
    let in_left = if sa != Ordering::Equal {
        sa != sc
    } else if sb != Ordering::Equal {
        sb == sc
    } else {
        intpoly::descartes_interval(sf, &a, &c) % 2 == 1
    };
    let (mut inner, outer) = if in_left {
        (c, a)
    } else {
        (c, b)
    };
    let s_inner = sc;
    loop {
        let m = midpoint(&inner, &outer);
        let sm = intpoly::sign_at(sf, &m);
        if sm == Ordering::Equal {
            *r = RootInterval::exact(m, r.multiplicity);
            return;
        }
        if sm != s_inner {
            let (lo, hi) = if inner < m { (inner, m) } else { (m, inner) };
            *r = RootInterval::new(lo, hi, r.multiplicity);
            break;
        }
        inner = m;
    }
    // prefer exact roots at simple rationals
    let s = simplest_between(&r.lo, Some(&r.hi));
    if intpoly::sign_at(sf, &s) == Ordering::Equal {
        *r = RootInterval::exact(s, r.multiplicity);
    }
}

/// A real algebraic number: a root of a square-free integer polynomial plus an
/// isolating interval.
#[derive(Clone, Debug)]
pub(crate) struct RealRoot {
    pub poly: IntPoly,
    pub iv: RootInterval,
}

impl RealRoot {
    pub fn refine_to(&mut self, width: &Rational) {
        refine_int(&self.poly, &mut self.iv, width);
    }

    pub fn bisect(&mut self) -> bool {
        bisect_int(&self.poly, &mut self.iv)
    }

    /// Sign of `self - q`.
    pub fn cmp_rational(&mut self, q: &Rational) -> Ordering {
        loop {
            if self.iv.exact {
                return self.iv.lo.cmp(q);
            }
            if &self.iv.hi < q {
                return Ordering::Less;
            }
            if &self.iv.lo > q {
                return Ordering::Greater;
            }
            if intpoly::sign_at(&self.poly, q) == Ordering::Equal {
                return Ordering::Equal;
            }
            self.bisect();
        }
    }

    /// Decides equality exactly via the gcd of the defining polynomials and
    /// otherwise refines both intervals until they separate.
    pub fn cmp_root(&mut self, other: &mut RealRoot) -> Ordering {
        if self.iv.exact {
            let q = self.iv.lo.clone();
            return other.cmp_rational(&q).reverse();
        }
        if other.iv.exact {
            let q = other.iv.lo.clone();
            return self.cmp_rational(&q);
        }
        if let Some(o) = self.iv.cmp_disjoint(&other.iv) {
            return o;
        }
        let g = UPoly::from_int(&self.poly).gcd(&UPoly::from_int(&other.poly));
        if g.degree().unwrap_or(0) > 0 {
            let gi = g.to_int();
            // each interval holds at most one root of g; equal iff one lies in the overlap
            let lo = std::cmp::max(self.iv.lo.clone(), other.iv.lo.clone());
            let hi = std::cmp::min(self.iv.hi.clone(), other.iv.hi.clone());
            let (sl, sh) = (intpoly::sign_at(&gi, &lo), intpoly::sign_at(&gi, &hi));
            if sl == Ordering::Equal || sh == Ordering::Equal || sl != sh {
                return Ordering::Equal;
            }
        }
        loop {
            if let Some(o) = self.iv.cmp_disjoint(&other.iv) {
                return o;
            }
            if self.iv.exact || other.iv.exact {
                return self.cmp_root(other);
            }
            self.bisect();
            other.bisect();
        }
    }

}

/// Real roots of `u` with their square-free defining polynomial.
pub(crate) fn real_roots(u: &UPoly) -> Vec<RealRoot> {
    if u.is_zero() || u.degree() == Some(0) {
        return Vec::new();
    }
    let sf = u.squarefree_part().to_int();
    isolate_squarefree(&sf)
        .into_iter()
        .map(|iv| RealRoot { poly: sf.clone(), iv })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    fn sq(q: &Rational) -> Rational {
        q * q
    }

    #[test]
    fn spec_examples() {
        let r = isolate_real_roots(&up(&[-4, 0, 1])).unwrap();
        assert_eq!(r, vec![RootInterval::exact(int(-2), 1), RootInterval::exact(int(2), 1)]);
        let r = isolate_real_roots(&up(&[0, -1, 0, 1])).unwrap();
        let pts: Vec<_> = r.iter().map(|x| x.lo.clone()).collect();
        assert!(r.iter().all(|x| x.exact));
        assert_eq!(pts, vec![int(-1), int(0), int(1)]);
        let r = isolate_real_roots(&up(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo >= int(1) && r[0].hi <= int(2));
        assert!(r[0].lo < r[0].hi);
    }

    #[test]
    fn multiplicities() {
        // (x-1)^2 (x+3)
        let p = &(&up(&[-1, 1]) * &up(&[-1, 1])) * &up(&[3, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].multiplicity, r[1].multiplicity), (1, 2));
        // (x^2 - 2)^3
        let q = &(&up(&[-2, 0, 1]) * &up(&[-2, 0, 1])) * &up(&[-2, 0, 1]);
        let r = isolate_real_roots(&q).unwrap();
        assert!(r.iter().all(|x| x.multiplicity == 3 && !x.exact));
    }

    #[test]
    fn refine_examples() {
        let u = up(&[-2, 0, 1]);
        let r = RootInterval::new(int(1), int(2), 1);
        let t = refine_root(&u, &r, &rat(1, 100)).unwrap();
        assert!(t.width() <= rat(1, 100));
        assert!(sq(&t.lo) < int(2) && sq(&t.hi) > int(2));
        let e = RootInterval::exact(int(2), 1);
        assert_eq!(refine_root(&up(&[-4, 0, 1]), &e, &rat(1, 10)).unwrap(), e);
        assert_eq!(refine_root(&u, &r, &int(5)).unwrap(), r);
        assert_eq!(
            refine_root(&u, &RootInterval::new(int(2), int(3), 1), &rat(1, 10)),
            Err(Error::NotIsolating)
        );
    }

    #[test]
    fn fiber_examples() {
        let circle = BivariatePolynomial::from_i64(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
        let r = fiber_roots(&circle, &int(0)).unwrap();
        assert_eq!(r, vec![RootInterval::exact(int(-1), 1), RootInterval::exact(int(1), 1)]);
        assert!(fiber_roots(&circle, &int(2)).unwrap().is_empty());
        // y^2 - (x-1)(x-2)(x-3) at x = 3/2: y^2 = 3/8
        let f = BivariatePolynomial::from_i64(&[(1, 0, 2), (-1, 3, 0), (6, 2, 0), (-11, 1, 0), (6, 0, 0)]);
        let r = fiber_roots(&f, &rat(3, 2)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].hi < int(0) && sq(&r[0].lo) > rat(3, 8) && sq(&r[0].hi) < rat(3, 8));
        assert!(r[1].lo > int(0) && sq(&r[1].lo) < rat(3, 8) && sq(&r[1].hi) > rat(3, 8));
        let vl = BivariatePolynomial::from_i64(&[(1, 1, 0), (-1, 0, 0)]);
        assert!(matches!(fiber_roots(&vl, &int(1)), Err(Error::VerticalLineComponent(_))));
    }

    #[test]
    fn algebraic_comparison() {
        let mut a = real_roots(&up(&[-2, 0, 1])).pop().unwrap();
        let mut b = real_roots(&(&up(&[-2, 0, 1]) * &up(&[-3, 1]))).remove(1);
        assert_eq!(a.cmp_root(&mut b), Ordering::Equal);
        let mut c = real_roots(&up(&[-3, 0, 1])).pop().unwrap();
        assert_eq!(a.cmp_root(&mut c), Ordering::Less);
        assert_eq!(c.cmp_rational(&rat(7, 4)), Ordering::Less);
    }
}
