//! Benchmark fixtures.

use reeb_core::curve::analyze_curve;
use reeb_core::rational::{int, rat};
use reeb_core::realize::random_domain;
use reeb_core::{parse_polynomial, BivariatePolynomial, DomainSpec};

/// The region between the ovals of `y^2 = (x-1)(x-2)(x-3)` and `y^2 = x(x-4)(x-5)`.
pub fn annulus() -> DomainSpec {
    let f1 = parse_polynomial("y^2 - (x-1)*(x-2)*(x-3)").unwrap();
    let f2 = parse_polynomial("y^2 - x*(x-4)*(x-5)").unwrap();
    let oval = |f: &BivariatePolynomial| {
        let a = analyze_curve(f, 0).unwrap();
        (0..a.components).find(|&c| a.component_bounded[c]).unwrap()
    };
    let sel = vec![(0, oval(&f1)), (1, oval(&f2))];
    DomainSpec::new(vec![f1, f2], sel, (rat(5, 2), int(0)))
}

/// Product of `n` ellipses minus `1/1024`, degree `2n`.
pub fn ellipse_chain(n: usize) -> BivariatePolynomial {
    const ELLIPSES: [(i64, i64, i64, i64); 6] = [(0, 0, 3, 2), (5, 1, 2, 3), (-4, 2, 3, 1), (1, -5, 2, 2), (7, -3, 1, 2), (-6, -4, 2, 1)];
    let mut f = BivariatePolynomial::one();
    for &(cx, cy, a, b) in ELLIPSES.iter().take(n) {
        // b^2 (x - cx)^2 + a^2 (y - cy)^2 - a^2 b^2
        let e = BivariatePolynomial::from_i64(&[
            (b * b, 2, 0),
            (-2 * cx * b * b, 1, 0),
            (a * a, 0, 2),
            (-2 * cy * a * a, 0, 1),
            (b * b * cx * cx + a * a * cy * cy - a * a * b * b, 0, 0),
        ]);
        f = &f * &e;
    }
    &f - &BivariatePolynomial::constant(rat(1, 1024))
}

/// Deterministic random specs of the given complexity.
pub fn random_specs(complexity: usize, count: u64) -> Vec<DomainSpec> {
    (0..count).map(|s| random_domain(s, complexity).unwrap()).collect()
}
