use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intpoly::{self, IntPoly};
use crate::rational::Rational;

/// Polynomial in one variable with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub(crate) fn from_int(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| Rational::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let ld = d.leading();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &ld;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &t * dj;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let g = intpoly::gcd(&self.to_int(), &other.to_int());
        Self::from_int(&g).monic()
    }

    /// Exact quotient `self / d` when `d` divides `self`, computed over `Z`.
    pub(crate) fn exact_quo(&self, d: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (a, b) = (self.to_int(), d.to_int());
        let q = Self::from_int(&intpoly::div_exact(&a, &b));
        // self = a * (lc self / lc a), d = b * (lc d / lc b)
        let ka = self.leading() / Rational::from_integer(a.last().unwrap().clone());
        let kb = d.leading() / Rational::from_integer(b.last().unwrap().clone());
        q.scale(&(ka / kb))
    }

    /// Primitive integer polynomial with the same roots, positive multiple of `self`.
    pub(crate) fn to_int(&self) -> IntPoly {
        intpoly::from_rationals(&self.coeffs)
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_quo(&g)
    }

    /// Yun's square-free factorisation: `self = c * prod f_i^(i+1)`, returned as
    /// `[f_0, f_1, ...]` with each `f_i` monic and square-free.
    pub fn squarefree_factors(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_quo(&a0);
        let c = d.exact_quo(&a0);
        let mut dd = &c - &b.derivative();
        loop {
            let a = b.gcd(&dd);
            b = b.exact_quo(&a);
            out.push(a.monic());
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let cc = dd.exact_quo(&a);
            dd = &cc - &b.derivative();
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Substitutes `x -> x + t`.
    pub fn shift(&self, t: &Rational) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![t.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "x")
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, o: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        UnivariatePolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, o: &UnivariatePolynomial) -> UnivariatePolynomial {
        self + &(-o)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, o: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || o.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut r = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = &up(&[-1, 1]) * &up(&[2, 0, 1]);
        let b = &up(&[-1, 1]) * &up(&[3, 1]);
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
    }

    #[test]
    fn yun_factors() {
        // (x-1)^3 (x+2) (x^2+1)^2
        let p = &(&(&(&up(&[-1, 1]) * &up(&[-1, 1])) * &up(&[-1, 1])) * &up(&[2, 1]))
            * &(&up(&[1, 0, 1]) * &up(&[1, 0, 1]));
        let f = p.squarefree_factors();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], up(&[2, 1]));
        assert_eq!(f[1], up(&[1, 0, 1]));
        assert_eq!(f[2], up(&[-1, 1]));
        assert_eq!(p.squarefree_part().monic(), (&(&up(&[2, 1]) * &up(&[1, 0, 1])) * &up(&[-1, 1])));
    }

    #[test]
    fn shift_and_display() {
        assert_eq!(up(&[0, 0, 1]).shift(&Rational::one()), up(&[1, 2, 1]));
        assert_eq!(up(&[-4, 0, 4]).to_string(), "4*x^2 - 4");
    }
}
