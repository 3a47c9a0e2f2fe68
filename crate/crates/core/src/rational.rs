//! Small helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Builds `n / d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The rational with the smallest denominator (then smallest magnitude)
/// strictly inside the open interval `(lo, hi)`. `hi = None` means `+∞`.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        debug_assert!(lo < h, "empty interval");
        if lo.is_negative() && h.is_positive() {
            return Rational::zero();
        }
        if !h.is_positive() {
            // (lo, h) with h <= 0: mirror onto the positive axis.
            return -simplest_between(&-h, Some(&-lo));
        }
    }
    simplest_nonneg(lo, hi)
}

// 0 <= lo < hi
fn simplest_nonneg(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => return next,
        Some(h) if &next < h => return next,
        _ => {}
    }
    let h = hi.unwrap();
    // no integer strictly inside: continue with the reciprocal of the fractional parts
    let lo_frac = lo - &fl;
    let hi_frac = h - &fl;
    let inv_lo = hi_frac.recip();
    let inv_hi = if lo_frac.is_zero() {
        None
    } else {
        Some(lo_frac.recip())
    };
    fl + simplest_nonneg(&inv_lo, inv_hi.as_ref()).recip()
}

pub(crate) fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Lossy conversion used only for drawing.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: scale by bit lengths first
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
        let n = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_picks_small_denominators() {
        assert_eq!(simplest_between(&rat(0, 1), Some(&rat(1, 1))), rat(1, 2));
        assert_eq!(simplest_between(&rat(1, 1), Some(&rat(2, 1))), rat(3, 2));
        assert_eq!(simplest_between(&rat(2, 1), Some(&rat(4, 1))), rat(3, 1));
        assert_eq!(simplest_between(&rat(-3, 1), Some(&rat(-1, 1))), rat(-2, 1));
        assert_eq!(simplest_between(&rat(-1, 3), Some(&rat(5, 1))), rat(0, 1));
        assert_eq!(simplest_between(&rat(7, 2), None), rat(4, 1));
        assert_eq!(simplest_between(&rat(31, 100), Some(&rat(34, 100))), rat(1, 3));
    }

    #[test]
    fn simplest_is_strictly_inside() {
        for (a, b) in [(1, 1000), (-7, -6), (333, 334), (0, 1)] {
            let lo = rat(a, 997);
            let hi = rat(b, 997);
            let s = simplest_between(&lo, Some(&hi));
            assert!(lo < s && s < hi);
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
