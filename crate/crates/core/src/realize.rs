//! Adding unbounded branches to compact domains, and random generic domains.
//!
//! A compact base with boundary `f = 0` is combined with an auxiliary curve
//! `g = 0` and the boundary is replaced by a neighbouring level `f g = ε`.
//! Every construction is checked by sweeping the result and comparing codes
//! with the requested graph; `ε` comes from a fixed schedule.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{analyze_curve, CurveAnalysis, XBound};
use crate::domain::{Bound, Domain, DomainSpec, FiberType};
use crate::error::{Error, Result};
use crate::graphops::{canonical_code, graph_from_code, invariants, trident_dual, CanonicalCode, EventKind};
use crate::poly::{isolate_real_roots, refine_root, BivariatePolynomial, RootInterval, UnivariatePolynomial, Var};
use crate::rational::{int, midpoint, rat, Rational};
use crate::reeb::{sweep_domain, PRGraph};

type P = BivariatePolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// Two branches escaping to the right with the domain between them.
    A,
    /// Two branches escaping in opposite directions below the domain.
    B,
    /// The closure of the complement of a case A domain.
    C,
}

impl Case {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "A" | "a" => Some(Case::A),
            "B" | "b" => Some(Case::B),
            "C" | "c" => Some(Case::C),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealizationRequest {
    /// Compact, connected and generic; every component of its curves must be selected and bound it.
    pub base: DomainSpec,
    pub case: Case,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub spec: DomainSpec,
    pub epsilon: Rational,
    /// The auxiliary curve `g`.
    pub auxiliary: P,
    /// Code of the graph the result was verified against.
    pub target: CanonicalCode,
}

/// Exponents `k` of the schedule `ε = ±2^-k`.
const SCHEDULE: std::ops::RangeInclusive<u32> = 4..=64;
/// Width to which the tangency used by case A is pinned down.
const TANGENCY_BITS: u32 = 96;
/// Abscissae at which a case B curve is checked against the lowest segment.
const LINE_SAMPLES: i64 = 16;
/// Extra interpolation points allowed when a straight case B line escapes.
const MAX_BENDS: usize = 3;

/// Which components of `f g - ε` bound the new domain.
#[derive(Clone, Copy)]
enum Keep<'a> {
    All,
    /// Drop ovals lying where the auxiliary curve is negative.
    AboveAuxiliary(&'a P),
}

/// A point just inside oval `c`: above its lowest root on some slab sample.
fn point_inside(a: &CurveAnalysis, c: usize) -> Option<(Rational, Rational)> {
    for (j, comps) in a.component.iter().enumerate() {
        if let Some(r) = comps.iter().position(|&k| k == c) {
            let roots = &a.slab_roots[j];
            let next = roots.get(r + 1)?;
            return Some((a.samples[j].clone(), midpoint(&roots[r].hi, &next.lo)));
        }
    }
    None
}

/// Spec over the single curve `h`.
fn spec_over(h: &P, a: &CurveAnalysis, seed: &(Rational, Rational), complement: bool, keep: Keep) -> DomainSpec {
    let selected = (0..a.components)
        .filter(|&c| match keep {
            Keep::All => true,
            Keep::AboveAuxiliary(g) => {
                !a.component_bounded[c]
                    || point_inside(a, c).is_some_and(|(x, y)| g.eval(&x, &y).is_positive())
            }
        })
        .map(|c| (0, c))
        .collect();
    let mut s = DomainSpec::new(vec![h.clone()], selected, seed.clone());
    s.complement = complement;
    s
}

/// Code of a spec's graph, or `None` when the spec is not generic.
fn verified_code(spec: &DomainSpec, analysis: CurveAnalysis) -> Option<(CanonicalCode, PRGraph)> {
    let d = Domain::with_analyses(spec, vec![analysis]).ok()?;
    let g = sweep_domain(&d).ok()?;
    Some((canonical_code(&g).ok()?, g))
}

fn candidate(
    f: &P,
    g: &P,
    eps: &Rational,
    seed: &(Rational, Rational),
    complement: bool,
    keep: Keep,
) -> Option<(DomainSpec, CanonicalCode)> {
    let h = &(f * g) - &P::constant(eps.clone());
    if h.eval(&seed.0, &seed.1).is_zero() {
        return None;
    }
    let a = analyze_curve(&h, 0).ok()?;
    let spec = spec_over(&h, &a, seed, complement, keep);
    let (code, _) = verified_code(&spec, a)?;
    Some((spec, code))
}

/// First `ε = ±2^-k` in schedule order for which the domain of `f g - ε`
/// containing `seed` (or its complement) has the target code.
pub fn select_epsilon(
    f: &P,
    g: &P,
    target: &CanonicalCode,
    seed: &(Rational, Rational),
    complement: bool,
) -> Result<Rational> {
    search(f, g, target, seed, complement, Keep::All).map(|(e, _)| e)
}

fn search(
    f: &P,
    g: &P,
    target: &CanonicalCode,
    seed: &(Rational, Rational),
    complement: bool,
    keep: Keep,
) -> Result<(Rational, DomainSpec)> {
    for k in SCHEDULE.step_by(2) {
        let e = Rational::new(One::one(), num_bigint::BigInt::from(2u8).pow(k));
        for eps in [e.clone(), -e] {
            if let Some((spec, code)) = candidate(f, g, &eps, seed, complement, keep) {
                if &code == target {
                    return Ok((eps, spec));
                }
            }
        }
    }
    Err(Error::EpsilonSearchFailed)
}

struct Base {
    domain: Domain,
    graph: PRGraph,
    code: CanonicalCode,
    /// Product of the base curves.
    f: P,
}

fn check_base(spec: &DomainSpec) -> Result<Base> {
    let not = |m: &str| Error::BaseNotGeneric(m.to_string());
    let domain = Domain::new(spec).map_err(|e| Error::BaseNotGeneric(e.to_string()))?;
    for (c, _) in spec.curves.iter().enumerate() {
        let n = domain.curve(c).components;
        if (0..n).any(|k| !domain.selection().contains(&(c, k))) {
            return Err(not("every component of the base curves must be selected"));
        }
    }
    // the auxiliary curve may reach any stray oval, so the zero set must be the boundary
    if domain.boundary_components().len() != domain.selection().len() {
        return Err(not("a base curve component does not bound the domain"));
    }
    if spec.complement {
        return Err(not("base must not be a complement"));
    }
    let graph = sweep_domain(&domain).map_err(|e| Error::BaseNotGeneric(e.to_string()))?;
    if graph.vertices.iter().any(|v| v.kind.is_arrowhead()) {
        return Err(not("base is not compact"));
    }
    if invariants(&graph).b0 != 1 {
        return Err(not("base is not connected"));
    }
    let code = canonical_code(&graph)?;
    let f = spec.curves.iter().fold(P::one(), |acc, c| &acc * c);
    Ok(Base { domain, graph, code, f })
}

/// Enriched code for case A: the rightmost death becomes a right arrowhead.
pub fn target_case_a(base: &CanonicalCode) -> Result<CanonicalCode> {
    let slabs = base.replay()?;
    let mut events = base.events.clone();
    match events.pop() {
        Some(e) if e.kind == EventKind::Death => {}
        _ => return Err(Error::BaseNotGeneric("rightmost vertex is not a death".into())),
    }
    Ok(CanonicalCode { initial: base.initial.clone(), events, terminal: slabs[slabs.len() - 2].clone() })
}

/// Enriched code for case B: the extreme vertices become arrowheads and the
/// lowest edge of every slab carries a downward ray.
pub fn target_case_b(base: &CanonicalCode) -> Result<CanonicalCode> {
    let not = |m: &str| Error::BaseNotGeneric(m.to_string());
    base.replay()?;
    let n = base.events.len();
    if n < 2 || base.events[0].kind != EventKind::Birth || base.events[n - 1].kind != EventKind::Death {
        return Err(not("base is not a compact connected graph"));
    }
    let mut cur = vec![FiberType::RayDown];
    let mut events = Vec::new();
    for e in &base.events[1..n - 1] {
        if e.position == 0 && matches!(e.kind, EventKind::Birth | EventKind::Death) {
            return Err(not("lower boundary is not a single arc from the leftmost to the rightmost vertex"));
        }
        let mut e = e.clone();
        if e.position == 0 {
            e.decorations[0] = FiberType::RayDown;
        }
        e.apply(&mut cur)?;
        events.push(e);
    }
    if cur.len() != 1 {
        return Err(not("base is not a compact connected graph"));
    }
    Ok(CanonicalCode { initial: vec![FiberType::RayDown], events, terminal: cur })
}

/// Enriched code for case C.
pub fn target_case_c(base: &CanonicalCode) -> Result<CanonicalCode> {
    canonical_code(&trident_dual(&graph_from_code(&target_case_a(base)?)?)?)
}

fn vertex_abscissa(g: &PRGraph, v: usize) -> &RootInterval {
    match &g.vertices[v].x {
        XBound::At(r) => r,
        _ => unreachable!("finite vertex"),
    }
}

/// Abscissa of a finite vertex to within `width`.
fn refined_abscissa(b: &Base, v: usize, width: &Rational) -> Result<Rational> {
    let xv = vertex_abscissa(&b.graph, v);
    let k = (0..b.domain.crit.len())
        .find(|&k| &b.domain.crit[k].root.iv == xv)
        .ok_or_else(|| Error::BaseNotGeneric("vertex abscissa not found".into()))?;
    let mut root = b.domain.crit[k].root.clone();
    root.refine_to(width);
    Ok(root.iv.mid())
}

/// The rightmost tangency of the base, pinned to high precision.
fn rightmost_tangency(b: &Base) -> Result<(Rational, Rational)> {
    let v = *b
        .graph
        .finite_vertices()
        .iter()
        .max_by(|&&u, &&w| {
            vertex_abscissa(&b.graph, u).cmp_disjoint(vertex_abscissa(&b.graph, w)).unwrap_or(std::cmp::Ordering::Equal)
        })
        .ok_or_else(|| Error::BaseNotGeneric("empty base".into()))?;
    let wit = b.graph.vertices[v].witness.clone().ok_or_else(|| Error::BaseNotGeneric("no witness".into()))?;
    let width = Rational::new(One::one(), num_bigint::BigInt::from(2u8).pow(TANGENCY_BITS));
    let x = refined_abscissa(b, v, &width)?;
    // the tangency is a simple root of f_y on the critical line
    let fy = b.domain.curve(wit.curve).f.derivative(Var::Y).eval_x(&x);
    let ys = isolate_real_roots(&fy)?;
    let wm = midpoint(&wit.y_lo, &wit.y_hi);
    let near = ys
        .iter()
        .min_by_key(|r| (r.mid() - &wm).abs())
        .ok_or_else(|| Error::BaseNotGeneric("tangency not found".into()))?;
    let y = refine_root(&fy, near, &width)?.mid();
    Ok((x, y))
}

fn parabola(x0: &Rational, y0: &Rational, c: &Rational) -> P {
    // (x - x0) - c (y - y0)^2, positive inside the right-opening parabola
    let dy = &P::y() - &P::constant(y0.clone());
    &(&P::x() - &P::constant(x0.clone())) - &(&dy * &dy).scale(c)
}

fn case_a(b: &Base, target: &CanonicalCode, complement: bool) -> Result<Realization> {
    let (x0, y0) = rightmost_tangency(b)?;
    for c in [int(1), int(16), rat(1, 16)] {
        let g = parabola(&x0, &y0, &c);
        if let Ok((epsilon, spec)) = search(&b.f, &g, target, &b.domain.spec().seed, complement, Keep::All) {
            return Ok(Realization { spec, epsilon, auxiliary: g, target: target.clone() });
        }
    }
    Err(Error::EpsilonSearchFailed)
}

/// Lowest fiber segment over `x` as `(lo, hi)`.
fn lowest_segment(d: &Domain, x: &Rational) -> Option<(Rational, Rational)> {
    let fb = d.fiber(x).ok()?;
    let s = fb.segments.first()?;
    let (Bound::Root(a), Bound::Root(b)) = (&s.lo, &s.hi) else { return None };
    // isolating intervals can be wide; shrink them well inside the segment
    let (mut a_iv, mut b_iv) = (a.y.clone(), b.y.clone());
    loop {
        let gap = &b_iv.lo - &a_iv.hi;
        let w = a_iv.width().max(b_iv.width());
        if gap.is_positive() && w * int(16) <= gap {
            return Some((a_iv.hi, b_iv.lo));
        }
        let target = (&b_iv.hi - &a_iv.lo) / int(64);
        let na = refine_root(&d.spec().curves[a.curve].eval_x(x), &a_iv, &target).ok()?;
        let nb = refine_root(&d.spec().curves[b.curve].eval_x(x), &b_iv, &target).ok()?;
        if na == a_iv && nb == b_iv {
            return Some((a_iv.hi, b_iv.lo)).filter(|(l, h)| l < h);
        }
        (a_iv, b_iv) = (na, nb);
    }
}

/// Interpolating polynomial in `x` through `pts`, as a bivariate polynomial.
fn interpolate(pts: &[(Rational, Rational)]) -> P {
    let mut acc = UnivariatePolynomial::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = UnivariatePolynomial::constant(yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                let lin = UnivariatePolynomial::new(vec![-xj.clone(), int(1)]);
                term = (&term * &lin).scale(&(int(1) / (xi - xj)));
            }
        }
        acc = &acc + &term;
    }
    P::from_terms(acc.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
}

/// A graph `y = p(x)` through `(xa, ya)` and `(xb, yb)` that stays inside the lowest segment
/// on a grid over `[xa, xb]`, starting from the straight line and bending through the
/// middle of the segment where it escapes.
fn lowest_graph(d: &Domain, a: (Rational, Rational), b: (Rational, Rational)) -> Option<P> {
    let grid: Vec<Rational> = (1..LINE_SAMPLES).map(|i| &a.0 + (&b.0 - &a.0) * rat(i, LINE_SAMPLES)).collect();
    let mut pts = vec![a, b];
    for _ in 0..=MAX_BENDS {
        let p = interpolate(&pts);
        let escape = grid.iter().find(|x| {
            let y = p.eval(x, &int(0));
            !lowest_segment(d, x).is_some_and(|(l, h)| l < y && y < h)
        });
        let Some(x) = escape else { return Some(&P::y() - &p) };
        let (l, h) = lowest_segment(d, x)?;
        pts.push((x.clone(), midpoint(&l, &h)));
    }
    None
}

fn case_b(b: &Base, target: &CanonicalCode) -> Result<Realization> {
    let vs = b.graph.finite_vertices();
    let width = rat(1, 1 << 20);
    let mut xs = vs.iter().map(|&v| refined_abscissa(b, v, &width)).collect::<Result<Vec<_>>>()?;
    xs.sort();
    let (xl, xr) = (xs[0].clone(), xs[xs.len() - 1].clone());
    let (nl, nr) = (xs[1].clone(), xs[xs.len() - 2].clone());
    let mut tried = Vec::new();
    for s in [rat(1, 8), rat(1, 32)] {
        for t in [rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16)] {
            let xa = &xl + (&nl - &xl) * &s;
            let xb = &xr - (&xr - &nr) * &s;
            let (Some((la, ha)), Some((lb, hb))) = (lowest_segment(&b.domain, &xa), lowest_segment(&b.domain, &xb))
            else {
                continue;
            };
            let ya = &la + (&ha - &la) * &t;
            let yb = &lb + (&hb - &lb) * &t;
            // positive above the graph
            let Some(g) = lowest_graph(&b.domain, (xa.clone(), ya), (xb.clone(), yb)) else { continue };
            if tried.contains(&g) {
                continue;
            }
            let xm = midpoint(&xa, &xb);
            let ym = -g.eval(&xm, &int(0));
            let Some((_, hm)) = lowest_segment(&b.domain, &xm) else { continue };
            let seed = (xm, midpoint(&ym, &hm));
            if let Ok((epsilon, spec)) = search(&b.f, &g, target, &seed, false, Keep::AboveAuxiliary(&g)) {
                return Ok(Realization { spec, epsilon, auxiliary: g, target: target.clone() });
            }
            tried.push(g);
        }
    }
    Err(Error::EpsilonSearchFailed)
}

/// Adds two unbounded branches to a compact base and verifies the result.
pub fn add_branches(req: &RealizationRequest) -> Result<Realization> {
    let b = check_base(&req.base)?;
    match req.case {
        Case::A => case_a(&b, &target_case_a(&b.code)?, false),
        Case::B => case_b(&b, &target_case_b(&b.code)?),
        Case::C => case_a(&b, &target_case_c(&b.code)?, true),
    }
}

/// Axis-parallel ellipse `((x-cx)/a)^2 + ((y-cy)/b)^2 - 1`.
fn ellipse(cx: &Rational, cy: &Rational, a: &Rational, b: &Rational) -> P {
    let u = (&P::x() - &P::constant(cx.clone())).scale(&a.recip());
    let v = (&P::y() - &P::constant(cy.clone())).scale(&b.recip());
    &(&(&u * &u) + &(&v * &v)) - &P::one()
}

/// Attempts allowed before [`random_domain`] gives up.
pub const GENERATION_ATTEMPTS: usize = 64;

/// A compact generic domain bounded by a perturbed product of `complexity`
/// random ellipses. Deterministic in `seed`.
pub fn random_domain(seed: u64, complexity: usize) -> Result<DomainSpec> {
    if !(1..=6).contains(&complexity) {
        return Err(Error::DegenerateInput(format!("complexity {complexity} not in 1..=6")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let mut f = P::one();
        let mut centers = Vec::new();
        for _ in 0..complexity {
            let cx = rat(rng.gen_range(-48..=48), 16);
            let cy = rat(rng.gen_range(-48..=48), 16);
            let a = rat(rng.gen_range(8..=32), 16);
            let b = rat(rng.gen_range(8..=32), 16);
            f = &f * &ellipse(&cx, &cy, &a, &b);
            centers.push((cx, cy));
        }
        let k = 2 * rng.gen_range(3..=5);
        let h = &f - &P::constant(Rational::new(One::one(), num_bigint::BigInt::from(2u8).pow(k)));
        let Ok(a) = analyze_curve(&h, 0) else { continue };
        let pick = rng.gen_range(0..centers.len());
        let (cx, cy) = &centers[pick];
        let seed_pt = (cx + rat(rng.gen_range(-4..=4), 64), cy + rat(rng.gen_range(-4..=4), 64));
        if h.eval(&seed_pt.0, &seed_pt.1).is_zero() {
            continue;
        }
        let spec = spec_over(&h, &a, &seed_pt, false, Keep::All);
        let Some((_, g)) = verified_code(&spec, a) else { continue };
        if g.vertices.iter().any(|v| v.kind.is_arrowhead()) || g.vertices.is_empty() {
            continue;
        }
        return Ok(spec);
    }
    Err(Error::GenerationFailed(GENERATION_ATTEMPTS))
}

/// `f(a x + b, c y + d x + e)`.
pub fn fibered_affine(f: &P, coeffs: [&Rational; 5]) -> P {
    let [a, b, c, d, e] = coeffs;
    let xs = &P::x().scale(a) + &P::constant(b.clone());
    let ys = &(&P::y().scale(c) + &P::x().scale(d)) + &P::constant(e.clone());
    f.substitute(&xs, &ys)
}

/// Pulls a spec back along `(x, y) -> (a x + b, c y + d x + e)` with `a, c > 0`.
/// This map preserves the vertical fibration and both orientations, so the
/// graph keeps its code.
pub fn transform_spec(spec: &DomainSpec, coeffs: [&Rational; 5]) -> Result<DomainSpec> {
    let [a, b, c, d, e] = coeffs;
    if !a.is_positive() || !c.is_positive() {
        return Err(Error::DegenerateInput("substitution must preserve orientation".into()));
    }
    let curves = spec.curves.iter().map(|f| fibered_affine(f, coeffs)).collect();
    let (px, py) = &spec.seed;
    let nx = (px - b) / a;
    let ny = (py - d * &nx - e) / c;
    let mut out = DomainSpec::new(curves, spec.selected.clone(), (nx, ny));
    out.complement = spec.complement;
    Ok(out)
}

/// Unit disk spec used by examples and tests.
pub fn unit_disk() -> DomainSpec {
    let f = P::from_i64(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
    DomainSpec::new(vec![f], vec![(0, 0)], (Rational::zero(), Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reeb::sweep;

    fn code(s: &str) -> CanonicalCode {
        s.parse().unwrap()
    }

    #[test]
    fn enriched_targets_for_the_disk() {
        let disk = code("initial [] events [Birth@0(bounded) Death@0()] final []");
        assert_eq!(target_case_a(&disk).unwrap(), code("initial [] events [Birth@0(bounded)] final [bounded]"));
        assert_eq!(target_case_b(&disk).unwrap(), code("initial [ray_down] events [] final [ray_down]"));
        assert_eq!(
            target_case_c(&disk).unwrap(),
            code("initial [whole_line] events [Split@0(ray_down,ray_up)] final [ray_down, ray_up]")
        );
    }

    #[test]
    fn disk_case_a() {
        let r = add_branches(&RealizationRequest { base: unit_disk(), case: Case::A }).unwrap();
        assert_eq!(canonical_code(&sweep(&r.spec).unwrap()).unwrap(), r.target);
    }

    #[test]
    fn disk_case_b() {
        let r = add_branches(&RealizationRequest { base: unit_disk(), case: Case::B }).unwrap();
        let g = sweep(&r.spec).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), r.target);
        assert_eq!(invariants(&g).arrows.simple, 2);
    }

    #[test]
    fn disk_case_c() {
        let r = add_branches(&RealizationRequest { base: unit_disk(), case: Case::C }).unwrap();
        let g = sweep(&r.spec).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), r.target);
        assert_eq!(invariants(&g).arrows.double, 1);
    }

    #[test]
    fn unreachable_target_fails() {
        let f = unit_disk().curves[0].clone();
        let g = parabola(&int(1), &int(0), &int(1));
        let wrong = code("initial [] events [Birth@0(bounded) Split@0(bounded,bounded)] final [bounded, bounded]");
        assert_eq!(
            select_epsilon(&f, &g, &wrong, &(int(0), int(0)), false),
            Err(Error::EpsilonSearchFailed)
        );
    }

    #[test]
    fn random_domains_are_deterministic_and_generic() {
        let a = random_domain(1, 1).unwrap();
        assert_eq!(a.curves, random_domain(1, 1).unwrap().curves);
        let g = sweep(&a).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), code("initial [] events [Birth@0(bounded) Death@0()] final []"));
        let b = random_domain(2, 3).unwrap();
        assert!(crate::domain::genericity_report(&b).unwrap().is_empty());
    }

    #[test]
    fn affine_pullback_keeps_the_code() {
        let spec = crate::testutil::annulus();
        let t = transform_spec(&spec, [&rat(2, 3), &int(1), &rat(3, 2), &rat(1, 2), &int(-1)]).unwrap();
        let c0 = canonical_code(&sweep(&spec).unwrap()).unwrap();
        assert_eq!(canonical_code(&sweep(&t).unwrap()).unwrap(), c0);
    }
}
