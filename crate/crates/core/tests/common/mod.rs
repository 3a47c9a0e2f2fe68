//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use reeb_core::curve::analyze_curve;
use reeb_core::domain::{Domain, DomainSpec};
use reeb_core::rational::{int, rat};
use reeb_core::{parse_polynomial, BivariatePolynomial, Rational, UnivariatePolynomial, XBound};

pub fn poly(s: &str) -> BivariatePolynomial {
    parse_polynomial(s).unwrap()
}

/// Index of the only bounded component of `f`.
pub fn oval_of(f: &BivariatePolynomial) -> usize {
    let a = analyze_curve(f, 0).unwrap();
    let ovals: Vec<usize> = (0..a.components).filter(|&c| a.component_bounded[c]).collect();
    assert_eq!(ovals.len(), 1, "expected one oval");
    ovals[0]
}

/// The two ovals `y^2 = (x-1)(x-2)(x-3)` and `y^2 = x(x-4)(x-5)` with the region between them.
pub fn concentric_annulus() -> DomainSpec {
    let f1 = poly("y^2 - (x-1)*(x-2)*(x-3)");
    let f2 = poly("y^2 - x*(x-4)*(x-5)");
    let (o1, o2) = (oval_of(&f1), oval_of(&f2));
    DomainSpec::new(vec![f1, f2], vec![(0, o1), (1, o2)], (rat(5, 2), int(0)))
}

pub fn unit_disk() -> DomainSpec {
    DomainSpec::new(vec![poly("x^2 + y^2 - 1")], vec![(0, 0)], (int(0), int(0)))
}

pub fn vertex_x(x: &XBound) -> Option<reeb_core::RootInterval> {
    match x {
        XBound::At(r) => Some(r.clone()),
        _ => None,
    }
}

/// Ovals and lines among the selected components that bound the domain, read off the curves.
pub fn direct_census(spec: &DomainSpec) -> (usize, usize) {
    let d = Domain::new(spec).unwrap();
    let mut ovals = 0;
    let mut lines = 0;
    for (c, k) in d.boundary_components() {
        if d.curve(c).component_bounded[k] {
            ovals += 1;
        } else {
            lines += 1;
        }
    }
    (ovals, lines)
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<UnivariatePolynomial>]) -> UnivariatePolynomial {
    let n = m.len();
    if n == 0 {
        return UnivariatePolynomial::constant(int(1));
    }
    let mut acc = UnivariatePolynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UnivariatePolynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
        let t = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `Res_y(p, q)` from the Sylvester matrix written out entry by entry.
pub fn sylvester_resultant_y(p: &BivariatePolynomial, q: &BivariatePolynomial) -> UnivariatePolynomial {
    let (a, b) = (p.coeffs_in_y(), q.coeffs_in_y());
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![UnivariatePolynomial::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![UnivariatePolynomial::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    cofactor_det(&rows)
}

/// Points where `u` changes sign on a uniform grid of step `h` over `[-bound, bound]`,
/// each as the grid cell `(lo, hi)`; exact zeros on the grid are returned as `(z, z)`.
pub fn sign_change_cells(u: &UnivariatePolynomial, bound: i64, h: &Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    let mut x = int(-bound);
    let mut prev = u.eval(&x);
    if prev.is_zero() {
        out.push((x.clone(), x.clone()));
    }
    while x < int(bound) {
        let nx = &x + h;
        let v = u.eval(&nx);
        if v.is_zero() {
            out.push((nx.clone(), nx.clone()));
        } else if !prev.is_zero() && prev.is_positive() != v.is_positive() {
            out.push((x.clone(), nx.clone()));
        }
        prev = v;
        x = nx;
    }
    out
}
