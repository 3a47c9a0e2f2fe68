//! Sylvester resultants with a fraction-free (Bareiss) determinant over `Z[x]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bipoly::BivariatePolynomial;
use super::intpoly::{self, IntPoly};
use super::upoly::UnivariatePolynomial as UPoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `Res_y(p, q)` as a polynomial in `x`.
pub fn resultant_y(p: &BivariatePolynomial, q: &BivariatePolynomial) -> Result<UPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg_y() == 0 || q.deg_y() == 0 {
        return Err(Error::DegenerateInput("resultant of a polynomial without y".into()));
    }
    Ok(resultant_y_general(p, q))
}

/// `Res_x(p, q)` as a polynomial in `y`.
pub fn resultant_x(p: &BivariatePolynomial, q: &BivariatePolynomial) -> Result<UPoly> {
    resultant_y(&p.swap_xy(), &q.swap_xy())
}

/// As [`resultant_y`], but with the usual conventions when a `y`-degree is 0:
/// `Res(p, c) = c^deg p`.
pub(crate) fn resultant_y_general(p: &BivariatePolynomial, q: &BivariatePolynomial) -> UPoly {
    if p.is_zero() || q.is_zero() {
        return UPoly::zero();
    }
    let kp = p.integer_scale();
    let kq = q.integer_scale();
    let pc = int_coeffs_in_y(&p.scale(&kp));
    let qc = int_coeffs_in_y(&q.scale(&kq));
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let det = sylvester_det(&pc, &qc);
    // Res(kp p, kq q) = kp^n kq^m Res(p, q)
    let denom = pow(&kp, n) * pow(&kq, m);
    UPoly::from_int(&det).scale(&denom.recip())
}

fn pow(r: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn int_coeffs_in_y(p: &BivariatePolynomial) -> Vec<IntPoly> {
    p.coeffs_in_y()
        .iter()
        .map(|c| {
            let mut v: IntPoly = c.coeffs().iter().map(|q| q.to_integer()).collect();
            intpoly::trim(&mut v);
            v
        })
        .collect()
}

/// Determinant of the Sylvester matrix of two coefficient lists (lowest first).
pub(crate) fn sylvester_det(a: &[IntPoly], b: &[IntPoly]) -> IntPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return vec![BigInt::one()];
    }
    let mut mat: Vec<Vec<IntPoly>> = vec![vec![Vec::new(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

pub(crate) fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev: IntPoly = vec![BigInt::one()];
    for k in 0..n.saturating_sub(1) {
        if intpoly::is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !intpoly::is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = intpoly::sub(
                    &intpoly::mul(&m[k][k], &m[i][j]),
                    &intpoly::mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = intpoly::div_exact(&t, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let mut d = m[n - 1][n - 1].clone();
    intpoly::trim(&mut d);
    if negate {
        for c in d.iter_mut() {
            *c = -&*c;
        }
    }
    if d.iter().all(|c| c.is_zero()) {
        Vec::new()
    } else {
        d
    }
}
