//! Small domains shared by unit tests.

use crate::domain::DomainSpec;
use crate::poly::BivariatePolynomial;
use crate::rational::{int, rat};

pub(crate) fn p(t: &[(i64, u32, u32)]) -> BivariatePolynomial {
    BivariatePolynomial::from_i64(t)
}

/// `(x - cx)^2 + (y - cy)^2 - r2`.
pub(crate) fn circle(cx: i64, cy: i64, r2: i64) -> BivariatePolynomial {
    p(&[(1, 2, 0), (-2 * cx, 1, 0), (1, 0, 2), (-2 * cy, 0, 1), (cx * cx + cy * cy - r2, 0, 0)])
}

pub(crate) fn disk() -> DomainSpec {
    DomainSpec::new(vec![circle(0, 0, 1)], vec![(0, 0)], (int(0), int(0)))
}

/// Region between the ovals of `y^2 = (x-1)(x-2)(x-3)` and `y^2 = x(x-4)(x-5)`.
pub(crate) fn annulus() -> DomainSpec {
    let f1 = p(&[(1, 0, 2), (-1, 3, 0), (6, 2, 0), (-11, 1, 0), (6, 0, 0)]);
    let f2 = p(&[(1, 0, 2), (-1, 3, 0), (9, 2, 0), (-20, 1, 0)]);
    DomainSpec::new(vec![f1, f2], vec![(0, 0), (1, 0)], (rat(5, 2), int(0)))
}
