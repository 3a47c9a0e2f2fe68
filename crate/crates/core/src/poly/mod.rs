//! Exact polynomial arithmetic, resultants and real-root isolation.

mod bipoly;
pub(crate) mod interval;
pub(crate) mod intpoly;
mod resultant;
mod roots;
mod upoly;

pub use bipoly::{BivariatePolynomial, Var};
pub use resultant::{resultant_x, resultant_y};
pub use roots::{fiber_roots, isolate_real_roots, refine_root, RootInterval};
pub use upoly::UnivariatePolynomial;

pub(crate) use resultant::resultant_y_general;
pub(crate) use roots::{bisect_int, isolate_squarefree, real_roots, refine_int, RealRoot};

/// Formal partial derivative.
pub fn derivative(p: &BivariatePolynomial, var: Var) -> BivariatePolynomial {
    p.derivative(var)
}

/// Product of the distinct irreducible factors of `p`, up to a positive constant.
pub fn squarefree_part(p: &BivariatePolynomial) -> crate::Result<BivariatePolynomial> {
    p.squarefree_part()
}
