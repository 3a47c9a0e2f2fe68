//! Property tests for the polynomial and curve kernels.

mod common;

use proptest::prelude::*;
use reeb_core::curve::{analyze_curve, shear, vertical_tangencies};
use reeb_core::poly::{isolate_real_roots, refine_root, resultant_y, squarefree_part};
use reeb_core::rational::{int, rat};
use reeb_core::{BivariatePolynomial, Rational, TangencyKind, UnivariatePolynomial};

use common::sylvester_resultant_y;

fn from_roots(roots: &[Rational]) -> UnivariatePolynomial {
    roots.iter().fold(UnivariatePolynomial::constant(int(1)), |acc, r| {
        &acc * &UnivariatePolynomial::new(vec![-r.clone(), int(1)])
    })
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
}

fn arb_bipoly(max_deg: u32) -> impl Strategy<Value = BivariatePolynomial> {
    prop::collection::vec((-9i64..10, 0..=max_deg, 0..=max_deg), 1..7)
        .prop_map(|ts| BivariatePolynomial::from_i64(&ts.into_iter().map(|(c, i, j)| (c, i, j)).collect::<Vec<_>>()))
        .prop_filter("nonzero in y", |p| p.deg_y() > 0)
}

/// `y` coefficients of `p(x0, y)` as a bivariate polynomial in `y` alone.
fn specialize(p: &BivariatePolynomial, x0: &Rational) -> BivariatePolynomial {
    let u = p.eval_x(x0);
    BivariatePolynomial::from_terms(u.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
}

/// Disjoint circles of radius 1 centred on a row, `gap` apart.
fn circles(n: usize, gap: i64) -> BivariatePolynomial {
    (0..n).fold(BivariatePolynomial::one(), |acc, i| {
        let cx = i as i64 * gap;
        let c = BivariatePolynomial::from_i64(&[(1, 2, 0), (-2 * cx, 1, 0), (1, 0, 2), (cx * cx - 1, 0, 0)]);
        &acc * &c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isolation_finds_planted_roots(mut roots in prop::collection::btree_set((-40i64..40, 1i64..6), 1..6)
        .prop_map(|s| s.into_iter().map(|(n, d)| rat(n, d)).collect::<Vec<_>>())) {
        roots.sort();
        roots.dedup();
        let found = isolate_real_roots(&from_roots(&roots)).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (iv, r) in found.iter().zip(&roots) {
            prop_assert!(iv.contains(r), "[{}] misses {}", iv, r);
        }
    }

    #[test]
    fn intervals_sorted_disjoint_and_stable(roots in prop::collection::vec(arb_rational(), 1..5), q in 2i64..7) {
        // add an irrational pair so some intervals stay open
        let u = &from_roots(&roots) * &UnivariatePolynomial::from_i64(&[-q, 0, 1]);
        let ivs = isolate_real_roots(&u).unwrap();
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi < w[1].lo || (w[0].hi == w[1].lo && (w[0].exact || w[1].exact) && w[0].lo < w[1].hi));
        }
        let fine = rat(1, 1 << 20);
        for iv in &ivs {
            let r = refine_root(&u, iv, &fine).unwrap();
            prop_assert!(r.lo >= iv.lo && r.hi <= iv.hi);
            prop_assert!(r.exact || r.width() <= fine);
        }
    }

    #[test]
    fn resultant_commutes_with_specialization(p in arb_bipoly(3), q in arb_bipoly(3), x0 in arb_rational()) {
        let res = resultant_y(&p, &q).unwrap();
        let lp = p.leading_coeff_y().eval(&x0);
        let lq = q.leading_coeff_y().eval(&x0);
        prop_assume!(lp != int(0) && lq != int(0));
        let direct = sylvester_resultant_y(&specialize(&p, &x0), &specialize(&q, &x0));
        prop_assert_eq!(res.eval(&x0), direct.eval(&int(0)));
    }

    #[test]
    fn squarefree_part_ignores_squares(p in arb_bipoly(3)) {
        let once = squarefree_part(&p).unwrap().normalized();
        let twice = squarefree_part(&(&p * &p)).unwrap().normalized();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn components_survive_shear(n in 1usize..4, t in (-3i64..=3, 1i64..4).prop_map(|(n, d)| rat(n, d))) {
        let f = circles(n, 3);
        let a = analyze_curve(&f, 0).unwrap();
        prop_assert_eq!(a.components, n);
        // shears keep the curve generic unless two extrema land on one vertical line
        if let Ok(b) = analyze_curve(&shear(&f, &t), 0) {
            prop_assert_eq!(b.components, n);
        }
    }
}

#[test]
fn product_of_circles_has_one_component_per_circle() {
    for n in 1..=4 {
        let a = analyze_curve(&circles(n, 3), 0).unwrap();
        assert_eq!(a.components, n);
        assert!(a.component_bounded.iter().all(|&b| b));
    }
}

#[test]
fn extrema_pair_up_on_ovals() {
    let curves = [
        "x^2 + y^2 - 1",
        "y^2 - (x-1)*(x-2)*(x-3)",
        "x^4 + y^4 - 3*x*y - 1",
        "(x^2 + y^2 - 1)*((x-3)^2 + 4*y^2 - 1) - 1/64",
        "(x^2 + 4*y^2 - 4)*(4*x^2 + y^2 - 4) + 1/16",
    ];
    for text in curves {
        let f = common::poly(text);
        let a = analyze_curve(&f, 0).unwrap();
        let ts = vertical_tangencies(&f).unwrap();
        for c in (0..a.components).filter(|&c| a.component_bounded[c]) {
            let on_c = ts.iter().filter(|t| t.component == c && t.kind != TangencyKind::InflectionNoncritical);
            assert_eq!(on_c.count() % 2, 0, "{text}: component {c}");
        }
        for t in &ts {
            let expected = match t.kind {
                TangencyKind::LeftExtremum => 2,
                TangencyKind::RightExtremum => -2,
                TangencyKind::InflectionNoncritical => 0,
            };
            assert_eq!(t.local_fiber_delta, expected, "{text}");
        }
    }
}
