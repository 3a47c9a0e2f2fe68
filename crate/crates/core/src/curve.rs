//! Topology of a single plane curve `f = 0` relative to vertical lines.
//!
//! The curve is cut into x-monotone arcs over the slabs between consecutive
//! critical abscissas. Arcs are glued across each critical line by looking at a
//! thin strip `[a, b]` around it: horizontal walls that the curve provably does
//! not cross split the strip into bands, and each band is certified by sign
//! conditions on partial derivatives over the band box.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::interval::{box_excludes, interval_sign};
use crate::poly::intpoly;
use crate::poly::{resultant_y, resultant_y_general};
use crate::poly::{isolate_squarefree, real_roots, refine_int, RealRoot, RootInterval};
use crate::poly::{BivariatePolynomial, UnivariatePolynomial, Var};
use crate::rational::{int, midpoint, simplest_between, Rational};

type Bipoly = BivariatePolynomial;
type UPoly = UnivariatePolynomial;

/// Halvings of a critical strip before giving up on a band.
const MAX_DEPTH: usize = 64;
/// Halvings spent deciding whether a pass-through band hides a vertical inflection.
const INFLECTION_DEPTH: usize = 40;
/// Boxes narrower than `2^-SINGULAR_BITS` that no partial derivative excludes count as singular.
const SINGULAR_BITS: usize = 48;

/// A slab boundary or one of the two infinite ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XBound {
    NegInf,
    At(RootInterval),
    PosInf,
}

impl fmt::Display for XBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XBound::NegInf => write!(f, "-inf"),
            XBound::PosInf => write!(f, "+inf"),
            XBound::At(r) => write!(f, "[{r}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveArc {
    pub curve: usize,
    pub slab: usize,
    pub left: XBound,
    pub right: XBound,
    /// Position among the curve's y-roots in the slab, 0 = lowest.
    pub rank: usize,
    pub component: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TangencyKind {
    LeftExtremum,
    RightExtremum,
    InflectionNoncritical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyPoint {
    pub x: RootInterval,
    pub y: RootInterval,
    pub curve: usize,
    pub component: usize,
    pub kind: TangencyKind,
    /// Change of the local root count from left to right.
    pub local_fiber_delta: i32,
    /// Contact order with the vertical line exceeds 2.
    pub high_multiplicity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandKind {
    Pass,
    Inflection,
    LeftExtremum,
    RightExtremum,
}

/// The part of the curve inside one band of a critical strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    pub kind: BandKind,
    /// Ranks in the slab to the left of the critical line.
    pub left: Vec<usize>,
    /// Ranks in the slab to the right.
    pub right: Vec<usize>,
    pub y_lo: Rational,
    pub y_hi: Rational,
    pub high_multiplicity: bool,
}

#[derive(Clone, Debug)]
pub struct CriticalFiber {
    /// The critical abscissa.
    pub x: RootInterval,
    /// Strip `[a, b]` around it used for gluing.
    pub a: Rational,
    pub b: Rational,
    pub bands: Vec<Band>,
}

/// Everything the later stages need to know about one curve.
#[derive(Clone, Debug)]
pub struct CurveAnalysis {
    pub curve: usize,
    /// Square-free, content-free defining polynomial.
    pub f: Bipoly,
    pub(crate) crit: Vec<RealRoot>,
    pub fibers: Vec<CriticalFiber>,
    /// One sample abscissa per slab (`crit.len() + 1` slabs).
    pub samples: Vec<Rational>,
    pub slab_roots: Vec<Vec<RootInterval>>,
    /// `component[slab][rank]`.
    pub component: Vec<Vec<usize>>,
    pub components: usize,
    pub component_bounded: Vec<bool>,
}

/// Where an abscissa sits relative to a curve's critical set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XPosition {
    Slab(usize),
    Critical(usize),
}

impl CurveAnalysis {
    pub fn critical_abscissas(&self) -> Vec<RootInterval> {
        self.crit.iter().map(|r| r.iv.clone()).collect()
    }

    pub fn slab_count(&self) -> usize {
        self.samples.len()
    }

    pub fn position_of(&self, x: &Rational) -> XPosition {
        for (j, r) in self.crit.iter().enumerate() {
            let mut r = r.clone();
            match r.cmp_rational(x) {
                Ordering::Greater => return XPosition::Slab(j),
                Ordering::Equal => return XPosition::Critical(j),
                Ordering::Less => {}
            }
        }
        XPosition::Slab(self.crit.len())
    }

    pub fn arcs(&self) -> Vec<CurveArc> {
        let mut out = Vec::new();
        for (s, comps) in self.component.iter().enumerate() {
            let left = if s == 0 { XBound::NegInf } else { XBound::At(self.crit[s - 1].iv.clone()) };
            let right = if s == self.crit.len() {
                XBound::PosInf
            } else {
                XBound::At(self.crit[s].iv.clone())
            };
            for (rank, &component) in comps.iter().enumerate() {
                out.push(CurveArc {
                    curve: self.curve,
                    slab: s,
                    left: left.clone(),
                    right: right.clone(),
                    rank,
                    component,
                });
            }
        }
        out
    }

    pub fn slab_boundaries(&self) -> Vec<XBound> {
        let mut v = vec![XBound::NegInf];
        v.extend(self.crit.iter().map(|r| XBound::At(r.iv.clone())));
        v.push(XBound::PosInf);
        v
    }

    pub fn tangencies(&self) -> Vec<TangencyPoint> {
        let mut out = Vec::new();
        for (j, fib) in self.fibers.iter().enumerate() {
            for band in &fib.bands {
                let (kind, delta, comp) = match band.kind {
                    BandKind::Pass => continue,
                    BandKind::Inflection => {
                        (TangencyKind::InflectionNoncritical, 0, self.component[j][band.left[0]])
                    }
                    BandKind::LeftExtremum => {
                        (TangencyKind::LeftExtremum, 2, self.component[j + 1][band.right[0]])
                    }
                    BandKind::RightExtremum => {
                        (TangencyKind::RightExtremum, -2, self.component[j][band.left[0]])
                    }
                };
                out.push(TangencyPoint {
                    x: fib.x.clone(),
                    y: RootInterval::new(band.y_lo.clone(), band.y_hi.clone(), 1),
                    curve: self.curve,
                    component: comp,
                    kind,
                    local_fiber_delta: delta,
                    high_multiplicity: band.high_multiplicity,
                });
            }
        }
        out
    }

    /// Component of the arc through the root `rank` of the fiber at a
    /// non-critical abscissa in slab `slab`.
    pub fn component_at(&self, slab: usize, rank: usize) -> usize {
        self.component[slab][rank]
    }

    /// Component owning a band of critical fiber `j`.
    pub fn band_component(&self, j: usize, band: &Band) -> usize {
        if let Some(&l) = band.left.first() {
            self.component[j][l]
        } else {
            self.component[j + 1][band.right[0]]
        }
    }
}

/// Full analysis of a single curve with the given id.
pub fn analyze_curve(f: &Bipoly, id: usize) -> Result<CurveAnalysis> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = f.squarefree_part()?;
    if sf.deg_x() != f.deg_x() || sf.deg_y() != f.deg_y() {
        return Err(Error::NotSquareFree(id));
    }
    let content = f.content_y();
    if let Some(r) = real_roots(&content).first() {
        return Err(Error::VerticalLineComponent(r.iv.to_string()));
    }
    let f = f.primitive_part_y().normalized();
    if f.deg_y() == 0 {
        // no real points at all
        return Ok(empty_analysis(id, f));
    }
    check_singular(&f)?;
    let fy = f.derivative(Var::Y);
    let lc = f.leading_coeff_y();
    let d = if f.deg_y() == 1 {
        lc.clone()
    } else {
        let r = resultant_y(&f, &fy)?;
        &r * &lc
    };
    let crit_poly = if d.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        d.squarefree_part().to_int()
    };
    let mut crit: Vec<RealRoot> = if crit_poly.is_empty() {
        Vec::new()
    } else {
        isolate_squarefree(&crit_poly)
            .into_iter()
            .map(|iv| RealRoot { poly: crit_poly.clone(), iv })
            .collect()
    };
    for j in 0..crit.len() {
        if is_root_of(&lc, &crit[j]) {
            if let Some((x, _, _)) = asymptote_at(&f, &crit, j) {
                return Err(Error::AsymptoteDetected(x.to_string()));
            }
        }
    }
    let samples = slab_samples(&crit);
    let mut slab_roots = Vec::with_capacity(samples.len());
    for s in &samples {
        slab_roots.push(roots_at(&f, s));
    }
    let fx = f.derivative(Var::X);
    let fyy = fy.derivative(Var::Y);
    let derivs = Derivs { f: &f, fx: &fx, fy: &fy, fyy: &fyy };
    let mut fibers = Vec::with_capacity(crit.len());
    for j in 0..crit.len() {
        let fib = glue_critical(&derivs, &mut crit, j, slab_roots[j].len(), slab_roots[j + 1].len())?;
        fibers.push(fib);
    }
    // union-find over arcs (slab, rank)
    let offsets: Vec<usize> = slab_roots
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    let total: usize = slab_roots.iter().map(|r| r.len()).sum();
    let mut uf = UnionFind::new(total);
    for (j, fib) in fibers.iter().enumerate() {
        for band in &fib.bands {
            let ids: Vec<usize> = band
                .left
                .iter()
                .map(|&r| offsets[j] + r)
                .chain(band.right.iter().map(|&r| offsets[j + 1] + r))
                .collect();
            for w in ids.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut next = 0;
    let mut component = Vec::with_capacity(slab_roots.len());
    for (s, roots) in slab_roots.iter().enumerate() {
        let mut row = Vec::with_capacity(roots.len());
        for r in 0..roots.len() {
            let root = uf.find(offsets[s] + r);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            row.push(label[root]);
        }
        component.push(row);
    }
    let mut component_bounded = vec![true; next];
    let last = component.len() - 1;
    for &c in component[0].iter().chain(component[last].iter()) {
        component_bounded[c] = false;
    }
    Ok(CurveAnalysis {
        curve: id,
        f,
        crit,
        fibers,
        samples,
        slab_roots,
        component,
        components: next,
        component_bounded,
    })
}

fn empty_analysis(id: usize, f: Bipoly) -> CurveAnalysis {
    CurveAnalysis {
        curve: id,
        f,
        crit: Vec::new(),
        fibers: Vec::new(),
        samples: vec![Rational::zero()],
        slab_roots: vec![Vec::new()],
        component: vec![Vec::new()],
        components: 0,
        component_bounded: Vec::new(),
    }
}

/// Slab boundaries and x-monotone arcs with component labels.
pub fn curve_arcs(f: &Bipoly) -> Result<(Vec<XBound>, Vec<CurveArc>)> {
    let a = analyze_curve(f, 0)?;
    Ok((a.slab_boundaries(), a.arcs()))
}

/// Solutions of `f = f_y = 0`, classified topologically.
pub fn vertical_tangencies(f: &Bipoly) -> Result<Vec<TangencyPoint>> {
    Ok(analyze_curve(f, 0)?.tangencies())
}

/// Sides of a vertical asymptote on which a branch escapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoteSides {
    pub left: bool,
    pub right: bool,
}

/// Real roots of the leading `y`-coefficient through which a branch escapes to
/// `y = ±∞`.
pub fn detect_asymptotes(f: &Bipoly) -> Result<Vec<(RootInterval, AsymptoteSides)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.primitive_part_y();
    if f.deg_y() == 0 {
        return Ok(Vec::new());
    }
    let lc = f.leading_coeff_y();
    if lc.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let fy = f.derivative(Var::Y);
    let d = if f.deg_y() == 1 { lc.clone() } else { &resultant_y(&f, &fy)? * &lc };
    let poly = d.squarefree_part().to_int();
    let crit: Vec<RealRoot> = isolate_squarefree(&poly)
        .into_iter()
        .map(|iv| RealRoot { poly: poly.clone(), iv })
        .collect();
    let mut out = Vec::new();
    for j in 0..crit.len() {
        if is_root_of(&lc, &crit[j]) {
            if let Some((x, left, right)) = asymptote_at(&f, &crit, j) {
                out.push((x, AsymptoteSides { left, right }));
            }
        }
    }
    Ok(out)
}

/// `f(x + t y, y)`.
pub fn shear(f: &Bipoly, t: &Rational) -> Bipoly {
    f.shear(t)
}

// ---------------------------------------------------------------------------

struct Derivs<'a> {
    f: &'a Bipoly,
    fx: &'a Bipoly,
    fy: &'a Bipoly,
    fyy: &'a Bipoly,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// True when `u` vanishes at the algebraic number `r`.
pub(crate) fn is_root_of(u: &UPoly, r: &RealRoot) -> bool {
    if u.is_zero() {
        return true;
    }
    if r.iv.exact {
        return u.eval(&r.iv.lo).is_zero();
    }
    let g = u.gcd(&UPoly::from_int(&r.poly));
    if g.degree().unwrap_or(0) == 0 {
        return false;
    }
    let gi = g.to_int();
    intpoly::sign_at(&gi, &r.iv.lo) != intpoly::sign_at(&gi, &r.iv.hi)
}

/// Roots in `y` of `f(x0, y)` for an abscissa where the fiber is square-free.
pub(crate) fn roots_at(f: &Bipoly, x0: &Rational) -> Vec<RootInterval> {
    let u = f.eval_x(x0);
    if u.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    isolate_squarefree(&u.squarefree_part().to_int())
}

/// Rational strictly below `hi`, preferring small denominators near zero.
pub(crate) fn simplest_below(hi: &Rational) -> Rational {
    if hi.is_positive() {
        Rational::zero()
    } else {
        -simplest_between(&-hi, None)
    }
}

pub(crate) fn simplest_above(lo: &Rational) -> Rational {
    if lo.is_negative() {
        Rational::zero()
    } else {
        simplest_between(lo, None)
    }
}

pub(crate) fn slab_samples(crit: &[RealRoot]) -> Vec<Rational> {
    if crit.is_empty() {
        return vec![Rational::zero()];
    }
    let mut v = vec![simplest_below(&crit[0].iv.lo)];
    for w in crit.windows(2) {
        v.push(simplest_between(&w[0].iv.hi, Some(&w[1].iv.lo)));
    }
    v.push(simplest_above(&crit[crit.len() - 1].iv.hi));
    v
}

/// Initial strip around critical root `j`, containing no other critical root.
fn initial_strip(crit: &[RealRoot], j: usize) -> (Rational, Rational) {
    let r = &crit[j];
    if !r.iv.exact {
        return (r.iv.lo.clone(), r.iv.hi.clone());
    }
    let x = r.iv.lo.clone();
    let mut h = Rational::one();
    if j > 0 {
        h = h.min((&x - &crit[j - 1].iv.hi) / int(2));
    }
    if j + 1 < crit.len() {
        h = h.min((&crit[j + 1].iv.lo - &x) / int(2));
    }
    (&x - &h, &x + &h)
}

fn shrink_strip(r: &mut RealRoot, a: &Rational, b: &Rational) -> (Rational, Rational) {
    if r.iv.exact {
        let x = r.iv.lo.clone();
        return (midpoint(a, &x), midpoint(&x, b));
    }
    r.bisect();
    if r.iv.exact {
        let x = r.iv.lo.clone();
        (midpoint(a, &x), midpoint(&x, b))
    } else {
        (r.iv.lo.clone(), r.iv.hi.clone())
    }
}

/// True when the horizontal line `y = c` misses the curve over `[a, b]`.
fn wall_clear(f: &Bipoly, c: &Rational, a: &Rational, b: &Rational) -> bool {
    let u = f.eval_y(c);
    if u.is_zero() {
        return false;
    }
    let p = u.to_int();
    if intpoly::degree(&p).unwrap_or(0) == 0 {
        return true;
    }
    intpoly::sign_at(&p, a) != Ordering::Equal
        && intpoly::sign_at(&p, b) != Ordering::Equal
        && intpoly::descartes_interval(&p, a, b) == 0
}

enum BandOutcome {
    Done(Band),
    Maybe(Band),
    Unresolved,
}

fn glue_critical(
    d: &Derivs<'_>,
    crit: &mut [RealRoot],
    j: usize,
    n_left: usize,
    n_right: usize,
) -> Result<CriticalFiber> {
    let (mut a, mut b) = initial_strip(crit, j);
    let mut last_maybe: Option<Vec<Band>> = None;
    for depth in 0..MAX_DEPTH {
        if depth > 0 {
            let (na, nb) = shrink_strip(&mut crit[j], &a, &b);
            a = na;
            b = nb;
        }
        let mut left = roots_at(d.f, &a);
        let mut right = roots_at(d.f, &b);
        if left.len() != n_left || right.len() != n_right {
            return Err(Error::DegenerateInput("root count changed inside a slab".into()));
        }
        let w = &b - &a;
        let pl = intpoly::from_rationals(d.f.eval_x(&a).coeffs());
        let pr = intpoly::from_rationals(d.f.eval_x(&b).coeffs());
        for r in left.iter_mut() {
            refine_int(&pl, r, &w);
        }
        for r in right.iter_mut() {
            refine_int(&pr, r, &w);
        }
        match bands_in_strip(d, &a, &b, &left, &right) {
            Some(bands) => {
                let mut resolved = Vec::new();
                let mut pending = false;
                let mut failed = false;
                for o in bands {
                    match o {
                        BandOutcome::Done(bd) => resolved.push(bd),
                        BandOutcome::Maybe(bd) => {
                            pending = true;
                            resolved.push(bd);
                        }
                        BandOutcome::Unresolved => failed = true,
                    }
                }
                if !failed {
                    if !pending || depth >= INFLECTION_DEPTH {
                        let bands = resolved
                            .into_iter()
                            .map(|mut bd| {
                                if pending && bd.kind == BandKind::Pass && bd.high_multiplicity {
                                    bd.kind = BandKind::Inflection;
                                    bd.high_multiplicity = false;
                                }
                                bd
                            })
                            .collect();
                        return Ok(CriticalFiber { x: crit[j].iv.clone(), a, b, bands });
                    }
                    last_maybe = Some(resolved);
                }
            }
            None => {}
        }
    }
    if let Some(bands) = last_maybe {
        let bands = bands
            .into_iter()
            .map(|mut bd| {
                if bd.kind == BandKind::Pass && bd.high_multiplicity {
                    bd.kind = BandKind::Inflection;
                    bd.high_multiplicity = false;
                }
                bd
            })
            .collect();
        return Ok(CriticalFiber { x: crit[j].iv.clone(), a, b, bands });
    }
    Err(Error::SingularCurve(format!("x in [{}]", crit[j].iv)))
}

/// Splits the strip into bands; `None` if the outer walls are not clear yet.
fn bands_in_strip(
    d: &Derivs<'_>,
    a: &Rational,
    b: &Rational,
    left: &[RootInterval],
    right: &[RootInterval],
) -> Option<Vec<BandOutcome>> {
    if left.is_empty() && right.is_empty() {
        return Some(Vec::new());
    }
    let w = b - a;
    let mut all: Vec<&RootInterval> = left.iter().chain(right.iter()).collect();
    all.sort_by(|p, q| p.lo.cmp(&q.lo));
    let min_lo = all[0].lo.clone();
    let mut walls = vec![&min_lo - &w];
    let mut max_hi = all[0].hi.clone();
    for iv in all.iter().skip(1) {
        if max_hi < iv.lo {
            let gap = &iv.lo - &max_hi;
            let dd = (gap / int(4)).min(w.clone());
            walls.push(&max_hi + &dd);
            walls.push(&iv.lo - &dd);
        }
        if iv.hi > max_hi {
            max_hi = iv.hi.clone();
        }
    }
    walls.push(&max_hi + &w);
    let n = walls.len();
    if !wall_clear(d.f, &walls[0], a, b) || !wall_clear(d.f, &walls[n - 1], a, b) {
        return None;
    }
    let clear: Vec<Rational> = walls
        .into_iter()
        .enumerate()
        .filter(|(i, c)| *i == 0 || *i == n - 1 || wall_clear(d.f, c, a, b))
        .map(|(_, c)| c)
        .collect();
    let mut out = Vec::new();
    for win in clear.windows(2) {
        let (lo, hi) = (&win[0], &win[1]);
        let l: Vec<usize> = (0..left.len()).filter(|&i| &left[i].lo > lo && &left[i].hi < hi).collect();
        let r: Vec<usize> = (0..right.len()).filter(|&i| &right[i].lo > lo && &right[i].hi < hi).collect();
        out.push(classify_band(d, a, b, lo, hi, l, r));
    }
    Some(out)
}

fn classify_band(
    d: &Derivs<'_>,
    a: &Rational,
    b: &Rational,
    lo: &Rational,
    hi: &Rational,
    left: Vec<usize>,
    right: Vec<usize>,
) -> BandOutcome {
    let mk = |kind, left: Vec<usize>, right: Vec<usize>, hm| Band {
        kind,
        left,
        right,
        y_lo: lo.clone(),
        y_hi: hi.clone(),
        high_multiplicity: hm,
    };
    match (left.len(), right.len()) {
        (0, 0) => BandOutcome::Done(mk(BandKind::Pass, left, right, false)),
        (1, 1) => {
            if box_excludes(d.fy, a, b, lo, hi) {
                BandOutcome::Done(mk(BandKind::Pass, left, right, false))
            } else if box_excludes(d.fx, a, b, lo, hi) {
                // a graph over y joining the two sides; flag it until f_y is excluded
                BandOutcome::Maybe(mk(BandKind::Pass, left, right, true))
            } else {
                BandOutcome::Unresolved
            }
        }
        (0, 2) | (2, 0) => {
            if box_excludes(d.fx, a, b, lo, hi) {
                let kind = if left.is_empty() { BandKind::LeftExtremum } else { BandKind::RightExtremum };
                if box_excludes(d.fyy, a, b, lo, hi) {
                    BandOutcome::Done(mk(kind, left, right, false))
                } else {
                    // keep shrinking; a box that never clears f_yy marks a flat tangency
                    BandOutcome::Maybe(mk(kind, left, right, true))
                }
            } else {
                BandOutcome::Unresolved
            }
        }
        _ => BandOutcome::Unresolved,
    }
}

/// Rejects curves with a real point where `f = f_x = f_y = 0`.
fn check_singular(f: &Bipoly) -> Result<()> {
    if f.deg_x() == 0 || f.deg_y() == 0 {
        return Ok(());
    }
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    let xs = candidate_roots(&[resultant_y_general(f, &fy), resultant_y_general(f, &fx)]);
    if xs.is_empty() {
        return Ok(());
    }
    let (sf, sfx, sfy) = (f.swap_xy(), fx.swap_xy(), fy.swap_xy());
    let ys = candidate_roots(&[resultant_y_general(&sf, &sfy), resultant_y_general(&sf, &sfx)]);
    let eps = Rational::new(1.into(), num_bigint::BigInt::one() << SINGULAR_BITS);
    for x in &xs {
        for y in &ys {
            let (mut x, mut y) = (x.clone(), y.clone());
            loop {
                let (xl, xh, yl, yh) = (&x.iv.lo, &x.iv.hi, &y.iv.lo, &y.iv.hi);
                if box_excludes(f, xl, xh, yl, yh)
                    || box_excludes(&fx, xl, xh, yl, yh)
                    || box_excludes(&fy, xl, xh, yl, yh)
                {
                    break;
                }
                if x.iv.width() < eps && y.iv.width() < eps {
                    return Err(Error::SingularCurve(format!("[{}] x [{}]", x.iv, y.iv)));
                }
                let bx = x.bisect();
                let by = y.bisect();
                if !bx && !by {
                    // both exact: decide directly
                    let (px, py) = (x.iv.lo.clone(), y.iv.lo.clone());
                    if f.eval(&px, &py).is_zero() && fx.eval(&px, &py).is_zero() && fy.eval(&px, &py).is_zero() {
                        return Err(Error::SingularCurve(format!("({px}, {py})")));
                    }
                    break;
                }
            }
        }
    }
    Ok(())
}

// Real roots of the gcd of the nonzero polynomials among `ps`.
fn candidate_roots(ps: &[UPoly]) -> Vec<RealRoot> {
    let mut g: Option<UPoly> = None;
    for p in ps.iter().filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => p.clone(),
            Some(h) => h.gcd(p),
        });
    }
    match g {
        Some(g) => real_roots(&g),
        None => Vec::new(),
    }
}

/// Lower and upper bounds of `|u|` on `[lo, hi]`.
fn abs_bounds(u: &UPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let c = midpoint(lo, hi);
    let r = (hi - lo) / int(2);
    let g = u.shift(&c);
    let c0 = g.coeffs().first().map(|v| v.abs()).unwrap_or_else(Rational::zero);
    let mut s = Rational::zero();
    let mut rp = r.clone();
    for a in g.coeffs().iter().skip(1) {
        s += a.abs() * &rp;
        rp *= &r;
    }
    let lower = if c0 > s { &c0 - &s } else { Rational::zero() };
    (lower, c0 + s)
}

/// Decides whether a branch of `f` escapes vertically at critical root `j`
/// (a root of the leading coefficient); returns the side flags if so.
fn asymptote_at(f: &Bipoly, crit: &[RealRoot], j: usize) -> Option<(RootInterval, bool, bool)> {
    let coeffs = f.coeffs_in_y();
    let mut root = crit[j].clone();
    let e = (0..coeffs.len()).rev().find(|&k| !is_root_of(&coeffs[k], &root))?;
    let (mut a, mut b) = initial_strip(crit, j);
    for _ in 0..MAX_DEPTH {
        let (lmin, _) = abs_bounds(&coeffs[e], &a, &b);
        let certified = lmin.is_positive() && interval_sign(&coeffs[e], &a, &b).is_some();
        if certified {
            let mut big = Rational::zero();
            for c in coeffs.iter().take(e) {
                let (_, up) = abs_bounds(c, &a, &b);
                if up > big {
                    big = up;
                }
            }
            // all roots at x* satisfy |y| <= 1 + big / lmin < ybound
            let ybound = (Rational::one() + &big / &lmin) * int(2);
            if wall_clear(f, &ybound, &a, &b) && wall_clear(f, &-&ybound, &a, &b) {
                let esc = |x: &Rational| -> bool {
                    let u = f.eval_x(x);
                    let p = u.squarefree_part().to_int();
                    let mut rs = isolate_squarefree(&p);
                    rs.iter_mut().any(|r| {
                        while r.contains(&ybound) || r.contains(&-&ybound) {
                            refine_int(&p, r, &(r.width() / int(2)));
                        }
                        r.lo > ybound || r.hi < -&ybound
                    })
                };
                let (l, r) = (esc(&a), esc(&b));
                if l || r {
                    return Some((root.iv.clone(), l, r));
                }
                return None;
            }
        }
        let (na, nb) = shrink_strip(&mut root, &a, &b);
        a = na;
        b = nb;
    }
    // could not certify either way; report as an asymptote to stay on the safe side
    Some((root.iv.clone(), true, true))
}
