//! Sign certificates on rational boxes via Taylor expansion at the centre.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::bipoly::BivariatePolynomial;
use super::upoly::UnivariatePolynomial as UPoly;
use crate::rational::{midpoint, Rational};

/// `f(x + cx, y + cy)`.
pub(crate) fn shift_xy(f: &BivariatePolynomial, cx: &Rational, cy: &Rational) -> BivariatePolynomial {
    let rows: Vec<UPoly> = f.coeffs_in_y().iter().map(|c| c.shift(cx)).collect();
    if rows.is_empty() {
        return BivariatePolynomial::zero();
    }
    // Taylor shift in y with polynomial coefficients
    let mut a = rows;
    let n = a.len();
    if !cy.is_zero() {
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = a[j + 1].scale(cy);
                a[j] = &a[j] + &t;
            }
        }
    }
    BivariatePolynomial::from_coeffs_in_y(&a)
}

/// Sign of `f` on the whole box `[xlo, xhi] x [ylo, yhi]`, if the centred
/// Taylor expansion proves it constant and nonzero.
pub(crate) fn box_sign(
    f: &BivariatePolynomial,
    xlo: &Rational,
    xhi: &Rational,
    ylo: &Rational,
    yhi: &Rational,
) -> Option<Ordering> {
    let cx = midpoint(xlo, xhi);
    let cy = midpoint(ylo, yhi);
    let rx = (xhi - xlo) / Rational::from_integer(2.into());
    let ry = (yhi - ylo) / Rational::from_integer(2.into());
    let g = shift_xy(f, &cx, &cy);
    let c0 = g.coeff(0, 0);
    if c0.is_zero() {
        return None;
    }
    let mut bound = Rational::zero();
    let rxp = powers(&rx, g.deg_x());
    let ryp = powers(&ry, g.deg_y());
    for (&(i, j), c) in g.terms() {
        if (i, j) != (0, 0) {
            bound += c.abs() * &rxp[i as usize] * &ryp[j as usize];
        }
    }
    if c0.abs() > bound {
        Some(if c0.is_positive() { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}

/// True when `f` has no zero on the box.
pub(crate) fn box_excludes(
    f: &BivariatePolynomial,
    xlo: &Rational,
    xhi: &Rational,
    ylo: &Rational,
    yhi: &Rational,
) -> bool {
    box_sign(f, xlo, xhi, ylo, yhi).is_some()
}

/// Sign of `u` on `[lo, hi]` when certified nonzero.
pub(crate) fn interval_sign(u: &UPoly, lo: &Rational, hi: &Rational) -> Option<Ordering> {
    let c = midpoint(lo, hi);
    let r = (hi - lo) / Rational::from_integer(2.into());
    let g = u.shift(&c);
    let c0 = g.coeffs().first().cloned().unwrap_or_else(Rational::zero);
    if c0.is_zero() {
        return None;
    }
    let mut bound = Rational::zero();
    let mut rp = r.clone();
    for c in g.coeffs().iter().skip(1) {
        bound += c.abs() * &rp;
        rp *= &r;
    }
    if c0.abs() > bound {
        Some(if c0.is_positive() { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}

fn powers(r: &Rational, n: u32) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..=n {
        v.push(acc.clone());
        acc *= r;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn shift_matches_substitution() {
        let f = BivariatePolynomial::from_i64(&[(1, 2, 0), (3, 1, 2), (-1, 0, 0), (2, 0, 3)]);
        let (cx, cy) = (rat(1, 3), rat(-2, 5));
        let xs = &BivariatePolynomial::x() + &BivariatePolynomial::constant(cx.clone());
        let ys = &BivariatePolynomial::y() + &BivariatePolynomial::constant(cy.clone());
        assert_eq!(shift_xy(&f, &cx, &cy), f.substitute(&xs, &ys));
    }

    #[test]
    fn circle_box_signs() {
        let f = BivariatePolynomial::from_i64(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
        let s = box_sign(&f, &rat(-1, 10), &rat(1, 10), &rat(-1, 10), &rat(1, 10));
        assert_eq!(s, Some(Ordering::Less));
        let s = box_sign(&f, &int(2), &int(3), &int(2), &int(3));
        assert_eq!(s, Some(Ordering::Greater));
        assert_eq!(box_sign(&f, &rat(9, 10), &rat(11, 10), &rat(-1, 10), &rat(1, 10)), None);
    }

    #[test]
    fn univariate_interval_sign() {
        let u = UPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(interval_sign(&u, &int(2), &int(3)), Some(Ordering::Greater));
        assert_eq!(interval_sign(&u, &int(1), &int(2)), None);
    }
}
