use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::upoly::UnivariatePolynomial as UPoly;
use crate::error::{Error, Result};
use crate::rational::{lcm_of_denominators, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Polynomial in `x, y` with rational coefficients, keyed by `(i, j)` for `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
    deg_x: u32,
    deg_y: u32,
}

impl BivariatePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in it {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let deg_x = terms.keys().map(|k| k.0).max().unwrap_or(0);
        let deg_y = terms.keys().map(|k| k.1).max().unwrap_or(0);
        Self { terms, deg_x, deg_y }
    }

    /// Convenience constructor from `(coefficient, i, j)` triples.
    pub fn from_i64(t: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(t.iter().map(|&(c, i, j)| ((i, j), Rational::from_integer(c.into()))))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), Rational::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * Rational::from_integer(i.into()))),
            Var::Y if j > 0 => Some(((i, j - 1), c * Rational::from_integer(j.into()))),
            _ => None,
        }))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.eval_x(x).eval(y)
    }

    /// `p(x0, y)` as a polynomial in `y`.
    pub fn eval_x(&self, x0: &Rational) -> UPoly {
        let cs = self.coeffs_in_y();
        UPoly::new(cs.iter().map(|c| c.eval(x0)).collect())
    }

    /// `p(x, y0)` as a polynomial in `x`.
    pub fn eval_y(&self, y0: &Rational) -> UPoly {
        self.swap_xy().eval_x(y0)
    }

    /// Coefficients of `y^0, y^1, ...` as polynomials in `x`.
    pub fn coeffs_in_y(&self) -> Vec<UPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut rows = vec![vec![Rational::zero(); self.deg_x as usize + 1]; self.deg_y as usize + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_coeffs_in_y(cs: &[UPoly]) -> Self {
        Self::from_terms(cs.iter().enumerate().flat_map(|(j, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, a)| ((i as u32, j as u32), a.clone()))
        }))
    }

    /// Leading coefficient in `y`, a polynomial in `x`.
    pub fn leading_coeff_y(&self) -> UPoly {
        self.coeffs_in_y().pop().unwrap_or_default()
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// `p(X, Y)` for polynomials `X, Y`.
    pub fn substitute(&self, xs: &Self, ys: &Self) -> Self {
        let mut xp = vec![Self::one()];
        for k in 1..=self.deg_x as usize {
            let n = &xp[k - 1] * xs;
            xp.push(n);
        }
        let mut yp = vec![Self::one()];
        for k in 1..=self.deg_y as usize {
            let n = &yp[k - 1] * ys;
            yp.push(n);
        }
        let mut acc = Self::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        acc
    }

    /// `p(x + t y, y)`.
    pub fn shear(&self, t: &Rational) -> Self {
        let xs = &Self::x() + &Self::y().scale(t);
        self.substitute(&xs, &Self::y())
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.integer_scale())
    }

    /// The positive factor `k` such that `k * self` has coprime integer coefficients.
    pub(crate) fn integer_scale(&self) -> Rational {
        let l = lcm_of_denominators(self.terms.values());
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, &(c * Rational::from_integer(l.clone())).to_integer());
        }
        Rational::new(l, g)
    }

    /// Coefficient of the largest exponent in the order (`y` degree, then `x` degree).
    pub fn lex_leading(&self) -> Rational {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Scales so the lex-leading coefficient is positive and integer content is 1.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_integer();
        if p.lex_leading().is_negative() {
            -&p
        } else {
            p
        }
    }

    /// Monic gcd in `Q[x]` of the `y`-coefficients.
    pub fn content_y(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in self.coeffs_in_y() {
            g = g.gcd(&c);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rem = self.coeffs_in_y();
        let dc = d.coeffs_in_y();
        let dy = dc.len() - 1;
        let lcd = &dc[dy];
        if rem.len() < dc.len() {
            return if rem.iter().all(|c| c.is_zero()) {
                Ok(Self::zero())
            } else {
                Err(Error::DegenerateInput("inexact division".into()))
            };
        }
        let mut q = vec![UPoly::zero(); rem.len() - dy];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dy];
            if top.is_zero() {
                continue;
            }
            let (t, r) = top.div_rem(lcd);
            if !r.is_zero() {
                return Err(Error::DegenerateInput("inexact division".into()));
            }
            for (j, dj) in dc.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&t * dj);
            }
            q[k] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::DegenerateInput("inexact division".into()));
        }
        Ok(Self::from_coeffs_in_y(&q))
    }

    fn divide_by_x_poly(&self, c: &UPoly) -> Self {
        let cs: Vec<UPoly> = self.coeffs_in_y().iter().map(|a| a.exact_quo(c)).collect();
        Self::from_coeffs_in_y(&cs)
    }

    /// Primitive part with respect to `y` (content removed).
    pub fn primitive_part_y(&self) -> Self {
        let c = self.content_y();
        if c.is_zero() {
            return Self::zero();
        }
        self.divide_by_x_poly(&c)
    }

    /// Gcd in `Q[x, y]`, normalised by [`Self::normalized`].
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content_y().gcd(&other.content_y());
        let (mut a, mut b) = (self.primitive_part_y(), other.primitive_part_y());
        if a.deg_y < b.deg_y {
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg_y > 0 && coprime_by_specialization(&a, &b) {
            b = Self::one();
        }
        while b.deg_y > 0 {
            let r = a.pseudo_rem_y(&b);
            a = b;
            if r.is_zero() {
                b = Self::zero();
                break;
            }
            b = r.primitive_part_y();
        }
        let g = if b.is_zero() { a } else { Self::one() };
        let g = if g.deg_y == 0 { Self::one() } else { g.primitive_part_y() };
        (&g * &Self::from_coeffs_in_y(&[c])).normalized()
    }

    /// Pseudo-remainder in `y`: `lc(b)^(da - db + 1) a mod b`.
    fn pseudo_rem_y(&self, b: &Self) -> Self {
        let bc = b.coeffs_in_y();
        let db = bc.len() - 1;
        let lb = &bc[db];
        let mut r = self.coeffs_in_y();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let top = r[k].clone();
            for c in r.iter_mut() {
                *c = &*c * lb;
            }
            for (j, bj) in bc.iter().enumerate() {
                let idx = k - db + j;
                r[idx] = &r[idx] - &(&top * bj);
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::from_coeffs_in_y(&r)
    }

    /// Product of the distinct irreducible factors, normalised.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let cont = self.content_y();
        let pp = self.divide_by_x_poly(&cont);
        let cpart = Self::from_coeffs_in_y(&[cont.squarefree_part().monic()]);
        let ppart = if pp.deg_y == 0 {
            Self::one()
        } else {
            let g = pp.gcd(&pp.derivative(Var::Y));
            if g.deg_y == 0 {
                pp
            } else {
                pp.div_exact(&g)?
            }
        };
        // positive rescaling only, so square-free inputs keep their sign
        let out = &cpart * &ppart;
        Ok(out.scale(&out.integer_scale()))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.squarefree_part() {
            Ok(s) => s.total_degree() == self.total_degree() && s.deg_x == self.deg_x && s.deg_y == self.deg_y,
            Err(_) => false,
        }
    }

    /// Writes the polynomial with explicit `*` and `^`, highest total degree first.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = Vec::new();
            for (v, e) in [("x", k.0), ("y", k.1)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            if parts.is_empty() || !a.is_one() {
                parts.insert(0, a.to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// True when some integer specialisation `x = x0` that keeps both leading
/// `y`-coefficients nonzero gives coprime polynomials in `y`; then the
/// `y`-primitive inputs have no common factor of positive `y`-degree.
fn coprime_by_specialization(a: &BivariatePolynomial, b: &BivariatePolynomial) -> bool {
    let (la, lb) = (a.leading_coeff_y(), b.leading_coeff_y());
    let mut tried = 0;
    for k in 0i64..64 {
        let x0 = Rational::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }));
        if la.eval(&x0).is_zero() || lb.eval(&x0).is_zero() {
            continue;
        }
        let g = intpoly::gcd(&a.eval_x(&x0).to_int(), &b.eval_x(&x0).to_int());
        if g.len() <= 1 {
            return true;
        }
        tried += 1;
        if tried == 3 {
            break;
        }
    }
    false
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(
            self.terms
                .iter()
                .chain(o.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-o)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                *acc.entry((i + k, j + l)).or_insert_with(Rational::zero) += a * b;
            }
        }
        BivariatePolynomial::from_terms(acc)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $m(self, o: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(t: &[(i64, u32, u32)]) -> BivariatePolynomial {
        BivariatePolynomial::from_i64(t)
    }

    fn circle() -> BivariatePolynomial {
        p(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)])
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[(1, 0, 2), (-1, 1, 0)]).derivative(Var::Y), p(&[(2, 0, 1)]));
        assert_eq!(circle().derivative(Var::X), p(&[(2, 1, 0)]));
        assert_eq!(p(&[(1, 1, 2), (-1, 0, 0)]).derivative(Var::Y), p(&[(2, 1, 1)]));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = &circle() - &circle();
        assert!(a.is_zero());
        assert_eq!(a.deg_x(), 0);
        let b = &circle() - &p(&[(1, 2, 0)]);
        assert_eq!(b.deg_x(), 0);
        assert_eq!(b.deg_y(), 2);
    }

    #[test]
    fn squarefree_examples() {
        let l = p(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!((&l * &l).squarefree_part().unwrap(), l);
        let par = p(&[(1, 0, 2), (-1, 1, 0)]);
        assert_eq!(par.squarefree_part().unwrap(), par);
        let y2 = p(&[(1, 0, 1), (-2, 0, 0)]);
        let f = &(&circle() * &circle()) * &y2;
        assert_eq!(f.squarefree_part().unwrap(), &circle() * &y2);
        // content factor in x
        let g = &(&p(&[(1, 1, 0), (-1, 0, 0)]) * &p(&[(1, 1, 0), (-1, 0, 0)])) * &circle();
        assert_eq!(
            g.squarefree_part().unwrap(),
            &p(&[(1, 1, 0), (-1, 0, 0)]) * &circle()
        );
        assert_eq!(BivariatePolynomial::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_keeps_sign() {
        let f = p(&[(-1, 0, 2), (1, 1, 0)]);
        assert_eq!(f.squarefree_part().unwrap(), f);
        let h = f.scale(&Rational::new(3.into(), 7.into()));
        assert_eq!(h.squarefree_part().unwrap(), f);
    }

    #[test]
    fn gcd_and_division() {
        let a = &circle() * &p(&[(1, 0, 1), (-1, 1, 0)]);
        let b = &circle() * &p(&[(1, 0, 1), (3, 0, 0)]);
        assert_eq!(a.gcd(&b), circle());
        assert_eq!(a.div_exact(&circle()).unwrap(), p(&[(1, 0, 1), (-1, 1, 0)]));
        assert!(circle().div_exact(&p(&[(1, 0, 1)])).is_err());
    }

    #[test]
    fn shear_examples() {
        let par = p(&[(1, 0, 2), (-1, 1, 0)]);
        assert_eq!(par.shear(&int(0)), par);
        assert_eq!(p(&[(1, 1, 0)]).shear(&int(1)), p(&[(1, 1, 0), (1, 0, 1)]));
        assert_eq!(
            circle().shear(&int(1)),
            p(&[(1, 2, 0), (2, 1, 1), (2, 0, 2), (-1, 0, 0)])
        );
    }

    #[test]
    fn display() {
        assert_eq!(circle().to_string(), "x^2 + y^2 - 1");
        let q = BivariatePolynomial::from_terms([((1, 1), Rational::new((-1).into(), 2.into()))]);
        assert_eq!(q.to_string(), "-1/2*x*y");
    }

    #[test]
    fn evaluation() {
        let f = circle();
        assert_eq!(f.eval(&int(1), &int(1)), int(1));
        assert_eq!(f.eval_x(&int(0)), UPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(f.eval_y(&int(2)), UPoly::from_i64(&[3, 0, 1]));
    }
}
