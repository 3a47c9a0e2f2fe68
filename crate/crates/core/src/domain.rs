//! Algebraic domains: a set of selected boundary components plus a seed point.
//!
//! Membership is decided by parity signatures. Every selected component is a
//! Jordan separator, so the number of times the upward vertical ray from a
//! point crosses it (with multiplicity) tells which side the point is on. The
//! domain is the closure of the region whose signature equals the seed's, or
//! of its complement when the spec asks for the complementary domain.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::curve::{analyze_curve, slab_samples, BandKind, CurveAnalysis, XPosition};
use crate::error::{Error, Result};
use crate::poly::intpoly::IntPoly;
use crate::poly::{
    isolate_real_roots, isolate_squarefree, real_roots, resultant_y_general, BivariatePolynomial,
    RealRoot, RootInterval,
};
use crate::rational::Rational;

/// Input description of a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    pub curves: Vec<BivariatePolynomial>,
    /// `(curve id, component id)` pairs; component ids are the labels of
    /// [`crate::curve::curve_arcs`].
    pub selected: Vec<(usize, usize)>,
    pub seed: (Rational, Rational),
    /// Use the closure of everything outside the seed's region instead.
    pub complement: bool,
}

impl DomainSpec {
    pub fn new(curves: Vec<BivariatePolynomial>, selected: Vec<(usize, usize)>, seed: (Rational, Rational)) -> Self {
        Self { curves, selected, seed, complement: false }
    }

    /// Same boundary, other side.
    pub fn complementary(&self) -> Self {
        Self { complement: !self.complement, ..self.clone() }
    }

    /// Selected components in signature order, duplicates removed.
    pub fn selection(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for s in &self.selected {
            if !out.contains(s) {
                out.push(*s);
            }
        }
        out
    }
}

/// Shape of a maximal vertical segment of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberType {
    Bounded,
    RayUp,
    RayDown,
    WholeLine,
}

impl FiberType {
    pub fn as_str(self) -> &'static str {
        match self {
            FiberType::Bounded => "bounded",
            FiberType::RayUp => "ray_up",
            FiberType::RayDown => "ray_down",
            FiberType::WholeLine => "whole_line",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bounded" => Some(FiberType::Bounded),
            "ray_up" => Some(FiberType::RayUp),
            "ray_down" => Some(FiberType::RayDown),
            "whole_line" => Some(FiberType::WholeLine),
            _ => None,
        }
    }

    fn of(lo_inf: bool, hi_inf: bool) -> Self {
        match (lo_inf, hi_inf) {
            (true, true) => FiberType::WholeLine,
            (true, false) => FiberType::RayDown,
            (false, true) => FiberType::RayUp,
            (false, false) => FiberType::Bounded,
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A boundary point on a vertical line together with where it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRoot {
    pub y: RootInterval,
    pub curve: usize,
    pub component: usize,
    /// Position among the curve's real roots on this line.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Root(BoundRoot),
    PosInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: Bound,
    pub hi: Bound,
    pub kind: FiberType,
}

/// `D ∩ {x = x0}` as sorted disjoint segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub x: Rational,
    pub segments: Vec<Segment>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteTypeClass {
    FiniteType,
    WeaklyFiniteType,
    NotAdmissible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub class: FiniteTypeClass,
    pub reasons: Vec<String>,
}

/// A violation of the genericity assumptions, with an exact witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// Several topological critical points on one vertical line.
    SharedVerticalLine { x: RootInterval, points: Vec<(usize, usize)> },
    SingularPoint { curve: usize, at: String },
    Asymptote { curve: usize, at: String },
    VerticalLineComponent { curve: usize, at: String },
    /// A vertical tangency of contact order above 2.
    HighMultiplicityTangency { curve: usize, component: usize, x: RootInterval },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::SharedVerticalLine { x, points } => {
                write!(f, "critical points share the vertical line x in [{x}]:")?;
                for (c, k) in points {
                    write!(f, " curve {c} component {k};")?;
                }
                Ok(())
            }
            Defect::SingularPoint { curve, at } => write!(f, "curve {curve} is singular near ({at})"),
            Defect::Asymptote { curve, at } => write!(f, "curve {curve} has a vertical asymptote at x in [{at}]"),
            Defect::VerticalLineComponent { curve, at } => {
                write!(f, "curve {curve} contains the vertical line x in [{at}]")
            }
            Defect::HighMultiplicityTangency { curve, component, x } => {
                write!(f, "curve {curve} component {component} has a flat vertical tangency at x in [{x}]")
            }
        }
    }
}

/// Maps curve-level analysis failures to defects; other errors pass through.
fn analysis_defect(curve: usize, e: Error) -> Result<Defect> {
    match e {
        Error::SingularCurve(at) => Ok(Defect::SingularPoint { curve, at }),
        Error::AsymptoteDetected(at) => Ok(Defect::Asymptote { curve, at }),
        Error::VerticalLineComponent(at) => Ok(Defect::VerticalLineComponent { curve, at }),
        e => Err(e),
    }
}

/// A critical abscissa of the union of curves.
#[derive(Clone, Debug)]
pub(crate) struct GlobalCritical {
    pub root: RealRoot,
    /// Index of this abscissa among each curve's own critical roots.
    pub local: Vec<Option<usize>>,
}

/// A selected-component root on a vertical line.
#[derive(Clone, Debug)]
pub(crate) struct LineRoot {
    pub root: RealRoot,
    pub multiplicity: u32,
    pub curve: usize,
    pub component: usize,
    pub rank: usize,
    /// Index into the signature.
    pub bit: usize,
}

impl LineRoot {
    fn bound(&self) -> Bound {
        let mut y = self.root.iv.clone();
        y.multiplicity = self.multiplicity;
        Bound::Root(BoundRoot { y, curve: self.curve, component: self.component, rank: self.rank })
    }
}

/// A vertical tangency of a selected component.
#[derive(Clone, Debug)]
pub(crate) struct TangencyRef {
    pub curve: usize,
    pub component: usize,
    pub kind: BandKind,
    pub y_lo: Rational,
    pub y_hi: Rational,
    pub high_multiplicity: bool,
}

/// How selected roots continue across one critical abscissa.
#[derive(Clone, Debug)]
pub(crate) struct Transition {
    /// Right-hand index of each left root, `None` where it ends here.
    pub image: Vec<Option<usize>>,
    pub tangencies: Vec<TangencyRef>,
}

/// An analysed [`DomainSpec`].
#[derive(Clone, Debug)]
pub struct Domain {
    spec: DomainSpec,
    curves: Vec<CurveAnalysis>,
    selection: Vec<(usize, usize)>,
    pub(crate) crit: Vec<GlobalCritical>,
    pub(crate) samples: Vec<Rational>,
    /// Selected roots at each slab sample, sorted upwards.
    pub(crate) slabs: Vec<Vec<LineRoot>>,
    pub(crate) transitions: Vec<Transition>,
    seed_sig: Vec<bool>,
}

impl Domain {
    pub fn new(spec: &DomainSpec) -> Result<Self> {
        let curves = spec
            .curves
            .iter()
            .enumerate()
            .map(|(i, f)| analyze_curve(f, i))
            .collect::<Result<Vec<_>>>()?;
        Self::with_analyses(spec, curves)
    }

    pub(crate) fn with_analyses(spec: &DomainSpec, curves: Vec<CurveAnalysis>) -> Result<Self> {
        let selection = spec.selection();
        for &(c, k) in &selection {
            if c >= curves.len() || k >= curves[c].components {
                return Err(Error::DegenerateInput(format!("no component {k} on curve {c}")));
            }
        }
        let (sx, sy) = &spec.seed;
        if spec.curves.iter().any(|f| f.eval(sx, sy).is_zero()) {
            return Err(Error::PointOnCurve);
        }
        let crit = global_critical(&curves, &selection)?;
        let roots: Vec<RealRoot> = crit.iter().map(|g| g.root.clone()).collect();
        let samples = slab_samples(&roots);
        let mut d = Domain {
            spec: spec.clone(),
            curves,
            selection,
            crit,
            samples,
            slabs: Vec::new(),
            transitions: Vec::new(),
            seed_sig: Vec::new(),
        };
        d.slabs = d.samples.iter().map(|x| d.line_roots(x)).collect::<Result<Vec<_>>>()?;
        d.transitions = (0..d.crit.len()).map(|k| d.transition(k)).collect::<Result<Vec<_>>>()?;
        d.seed_sig = d.signature(sx, sy)?;
        Ok(d)
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn curve(&self, i: usize) -> &CurveAnalysis {
        &self.curves[i]
    }

    pub fn selection(&self) -> &[(usize, usize)] {
        &self.selection
    }

    pub fn seed_signature(&self) -> &[bool] {
        &self.seed_sig
    }

    /// Critical abscissas of the union of curves, increasing and pairwise disjoint.
    pub fn critical_abscissas(&self) -> Vec<RootInterval> {
        self.crit.iter().map(|g| g.root.iv.clone()).collect()
    }

    /// One rational sample per open slab between critical abscissas.
    pub fn slab_samples(&self) -> &[Rational] {
        &self.samples
    }

    fn bit_of(&self, curve: usize, component: usize) -> Option<usize> {
        self.selection.iter().position(|&s| s == (curve, component))
    }

    /// Roots of selected components on the line `x = x0`, sorted upwards.
    pub(crate) fn line_roots(&self, x0: &Rational) -> Result<Vec<LineRoot>> {
        let mut out: Vec<LineRoot> = Vec::new();
        for (i, ca) in self.curves.iter().enumerate() {
            if !self.selection.iter().any(|&(c, _)| c == i) {
                continue;
            }
            let u = ca.f.eval_x(x0);
            if u.degree().unwrap_or(0) == 0 {
                continue;
            }
            let sf: IntPoly = u.squarefree_part().to_int();
            let found: Vec<(RootInterval, usize)> = match ca.position_of(x0) {
                XPosition::Slab(s) => isolate_squarefree(&sf)
                    .into_iter()
                    .enumerate()
                    .map(|(rank, iv)| {
                        let comp = ca.component_at(s, rank);
                        (iv, comp)
                    })
                    .collect(),
                XPosition::Critical(j) => {
                    let mut v = Vec::new();
                    for iv in isolate_real_roots(&u)? {
                        let (iv, comp) = band_of(ca, j, &sf, iv)?;
                        v.push((iv, comp));
                    }
                    v
                }
            };
            for (rank, (iv, comp)) in found.into_iter().enumerate() {
                if let Some(bit) = self.bit_of(i, comp) {
                    let multiplicity = iv.multiplicity;
                    let root = RealRoot { poly: sf.clone(), iv: RootInterval { multiplicity: 1, ..iv } };
                    out.push(LineRoot { root, multiplicity, curve: i, component: comp, rank, bit });
                }
            }
        }
        sort_line_roots(out)
    }

    fn gap_signatures(&self, roots: &[LineRoot]) -> Vec<Vec<bool>> {
        let m = roots.len();
        let mut sigs = vec![vec![false; self.selection.len()]; m + 1];
        for g in (0..m).rev() {
            let mut s = sigs[g + 1].clone();
            if roots[g].multiplicity % 2 == 1 {
                s[roots[g].bit] = !s[roots[g].bit];
            }
            sigs[g] = s;
        }
        sigs
    }

    fn is_in(&self, sig: &[bool]) -> bool {
        (sig == self.seed_sig.as_slice()) != self.spec.complement
    }

    /// Parity signature of a point off the selected curves.
    pub fn signature(&self, px: &Rational, py: &Rational) -> Result<Vec<bool>> {
        let mut roots = self.line_roots(px)?;
        let mut sig = vec![false; self.selection.len()];
        for r in roots.iter_mut() {
            match r.root.cmp_rational(py) {
                Ordering::Equal => return Err(Error::PointOnCurve),
                Ordering::Greater if r.multiplicity % 2 == 1 => sig[r.bit] = !sig[r.bit],
                _ => {}
            }
        }
        Ok(sig)
    }

    /// Whether a point off the selected curves lies in the domain.
    pub fn contains(&self, px: &Rational, py: &Rational) -> Result<bool> {
        let sig = self.signature(px, py)?;
        Ok(self.is_in(&sig))
    }

    /// In/out flag of each gap between consecutive roots (bottom gap first).
    pub(crate) fn gaps_in(&self, roots: &[LineRoot]) -> Vec<bool> {
        self.gap_signatures(roots).iter().map(|s| self.is_in(s)).collect()
    }

    /// The fiber over an arbitrary rational abscissa, critical or not.
    pub fn fiber(&self, x0: &Rational) -> Result<Fiber> {
        let roots = self.line_roots(x0)?;
        let sigs = self.gap_signatures(&roots);
        let inside: Vec<bool> = sigs.iter().map(|s| self.is_in(s)).collect();
        let mut segments = Vec::new();
        let mut start: Option<Bound> = None;
        for g in 0..=roots.len() {
            if inside[g] {
                if start.is_none() {
                    start = Some(if g == 0 { Bound::NegInf } else { roots[g - 1].bound() });
                }
                if g == roots.len() {
                    let lo = start.take().unwrap();
                    let kind = FiberType::of(lo == Bound::NegInf, true);
                    segments.push(Segment { lo, hi: Bound::PosInf, kind });
                }
                continue;
            }
            if let Some(lo) = start.take() {
                let kind = FiberType::of(lo == Bound::NegInf, false);
                segments.push(Segment { lo, hi: roots[g - 1].bound(), kind });
            }
            // a tangency touching the line from the domain side is a one-point segment
            if g < roots.len() && !inside[g + 1] && roots[g].multiplicity % 2 == 0 {
                let mut other = sigs[g + 1].clone();
                other[roots[g].bit] = !other[roots[g].bit];
                if self.is_in(&other) {
                    let b = roots[g].bound();
                    segments.push(Segment { lo: b.clone(), hi: b, kind: FiberType::Bounded });
                }
            }
        }
        Ok(Fiber { x: x0.clone(), segments })
    }

    /// Segment types over each open slab.
    pub(crate) fn slab_segment_types(&self, k: usize) -> Vec<FiberType> {
        let roots = &self.slabs[k];
        let inside = self.gaps_in(roots);
        let mut out = Vec::new();
        let mut g = 0;
        while g < inside.len() {
            if !inside[g] {
                g += 1;
                continue;
            }
            let lo_inf = g == 0;
            while g + 1 < inside.len() && inside[g + 1] {
                g += 1;
            }
            out.push(FiberType::of(lo_inf, g == roots.len()));
            g += 1;
        }
        out
    }

    pub fn finite_type_class(&self) -> FiniteTypeReport {
        let mut reasons = Vec::new();
        for (k, x) in self.samples.iter().enumerate() {
            let types = self.slab_segment_types(k);
            if types.iter().any(|t| *t != FiberType::Bounded) {
                reasons.push(format!("unbounded fiber over x = {x}"));
            }
        }
        let class = if reasons.is_empty() { FiniteTypeClass::FiniteType } else { FiniteTypeClass::WeaklyFiniteType };
        FiniteTypeReport { class, reasons }
    }

    /// Selected components that actually bound the domain.
    pub fn boundary_components(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for roots in &self.slabs {
            let inside = self.gaps_in(roots);
            for (g, r) in roots.iter().enumerate() {
                if inside[g] != inside[g + 1] && !out.contains(&(r.curve, r.component)) {
                    out.push((r.curve, r.component));
                }
            }
        }
        out.sort();
        out
    }

    /// Genericity defects among the topological critical points of selected components.
    pub fn defects(&self) -> Vec<Defect> {
        let mut out = Vec::new();
        for (k, t) in self.transitions.iter().enumerate() {
            let extrema: Vec<&TangencyRef> = t
                .tangencies
                .iter()
                .filter(|r| matches!(r.kind, BandKind::LeftExtremum | BandKind::RightExtremum))
                .collect();
            if extrema.len() > 1 {
                out.push(Defect::SharedVerticalLine {
                    x: self.crit[k].root.iv.clone(),
                    points: extrema.iter().map(|r| (r.curve, r.component)).collect(),
                });
            }
            for r in extrema.iter().filter(|r| r.high_multiplicity) {
                out.push(Defect::HighMultiplicityTangency {
                    curve: r.curve,
                    component: r.component,
                    x: self.crit[k].root.iv.clone(),
                });
            }
        }
        out
    }

    /// Continuation of selected roots across critical abscissa `k`; rejects
    /// configurations only possible when selected components meet.
    fn transition(&self, k: usize) -> Result<Transition> {
        let (left, right) = (&self.slabs[k], &self.slabs[k + 1]);
        let clash = || Error::ComponentsIntersect(format!("near x in [{}]", self.crit[k].root.iv));
        let mut tangencies = Vec::new();
        for (i, ca) in self.curves.iter().enumerate() {
            if let Some(j) = self.crit[k].local[i] {
                for band in &ca.fibers[j].bands {
                    if band.left.is_empty() && band.right.is_empty() {
                        continue;
                    }
                    let comp = ca.band_component(j, band);
                    if band.kind != BandKind::Pass && self.bit_of(i, comp).is_some() {
                        tangencies.push(TangencyRef {
                            curve: i,
                            component: comp,
                            kind: band.kind,
                            y_lo: band.y_lo.clone(),
                            y_hi: band.y_hi.clone(),
                            high_multiplicity: band.high_multiplicity,
                        });
                    }
                }
            }
        }
        let mut image = Vec::with_capacity(left.len());
        for r in left {
            let next_rank = match self.crit[k].local[r.curve] {
                None => Some(r.rank),
                Some(j) => {
                    let band = self.curves[r.curve].fibers[j]
                        .bands
                        .iter()
                        .find(|b| b.left.contains(&r.rank))
                        .ok_or_else(|| Error::DegenerateInput("root lost at a critical line".into()))?;
                    match band.kind {
                        BandKind::RightExtremum => None,
                        _ => band.right.first().copied(),
                    }
                }
            };
            let idx = match next_rank {
                None => None,
                Some(nr) => Some(
                    right
                        .iter()
                        .position(|q| q.curve == r.curve && q.rank == nr)
                        .ok_or_else(|| Error::DegenerateInput("root continuation missing".into()))?,
                ),
            };
            image.push(idx);
        }
        // survivors keep their order; vanishing and appearing roots come in adjacent pairs
        let survivors: Vec<usize> = image.iter().flatten().copied().collect();
        if survivors.windows(2).any(|w| w[0] >= w[1]) {
            return Err(clash());
        }
        let paired = |gone: Vec<usize>, roots: &[LineRoot]| -> bool {
            gone.chunks(2).all(|c| {
                c.len() == 2 && c[1] == c[0] + 1 && roots[c[0]].curve == roots[c[1]].curve && roots[c[0]].component == roots[c[1]].component
            })
        };
        let dying: Vec<usize> = (0..left.len()).filter(|&i| image[i].is_none()).collect();
        let born: Vec<usize> = (0..right.len()).filter(|i| !survivors.contains(i)).collect();
        if !paired(dying, left) || !paired(born, right) {
            return Err(clash());
        }
        Ok(Transition { image, tangencies })
    }
}

/// Assigns a root of a critical fiber to the band containing it.
fn band_of(ca: &CurveAnalysis, j: usize, sf: &IntPoly, mut iv: RootInterval) -> Result<(RootInterval, usize)> {
    let fib = &ca.fibers[j];
    for _ in 0..256 {
        for band in &fib.bands {
            if band.left.is_empty() && band.right.is_empty() {
                continue;
            }
            if iv.lo > band.y_lo && iv.hi < band.y_hi {
                return Ok((iv, ca.band_component(j, band)));
            }
        }
        if !crate::poly::bisect_int(sf, &mut iv) {
            break;
        }
    }
    Err(Error::DegenerateInput("critical root outside every band".into()))
}

fn sort_line_roots(v: Vec<LineRoot>) -> Result<Vec<LineRoot>> {
    let mut out: Vec<LineRoot> = Vec::with_capacity(v.len());
    for mut r in v {
        let mut pos = out.len();
        for (i, q) in out.iter_mut().enumerate() {
            match r.root.cmp_root(&mut q.root) {
                Ordering::Less => {
                    pos = i;
                    break;
                }
                Ordering::Equal => {
                    return Err(Error::ComponentsIntersect(format!(
                        "curves {} and {} meet at y in [{}]",
                        q.curve, r.curve, q.root.iv
                    )))
                }
                Ordering::Greater => {}
            }
        }
        out.insert(pos, r);
    }
    Ok(out)
}

/// Union of every curve's critical abscissas and of the abscissas where two
/// curves carrying selected components may meet.
fn global_critical(curves: &[CurveAnalysis], selection: &[(usize, usize)]) -> Result<Vec<GlobalCritical>> {
    let n = curves.len();
    let mut cands: Vec<(RealRoot, Option<(usize, usize)>)> = Vec::new();
    for (i, ca) in curves.iter().enumerate() {
        for (j, r) in ca.crit.iter().enumerate() {
            cands.push((r.clone(), Some((i, j))));
        }
    }
    let used: Vec<usize> = (0..n).filter(|i| selection.iter().any(|&(c, _)| c == *i)).collect();
    for (a, &i) in used.iter().enumerate() {
        for &j in &used[a + 1..] {
            let r = resultant_y_general(&curves[i].f, &curves[j].f);
            if r.is_zero() {
                return Err(Error::ComponentsIntersect(format!("curves {i} and {j} share a factor")));
            }
            for root in real_roots(&r) {
                cands.push((root, None));
            }
        }
    }
    let mut out: Vec<GlobalCritical> = Vec::new();
    for (mut r, tag) in cands {
        let mut pos = out.len();
        let mut merged = false;
        for (idx, g) in out.iter_mut().enumerate() {
            match r.cmp_root(&mut g.root) {
                Ordering::Less => {
                    pos = idx;
                    break;
                }
                Ordering::Equal => {
                    if let Some((i, j)) = tag {
                        g.local[i] = Some(j);
                    }
                    merged = true;
                    break;
                }
                Ordering::Greater => {}
            }
        }
        if !merged {
            let mut local = vec![None; n];
            if let Some((i, j)) = tag {
                local[i] = Some(j);
            }
            out.insert(pos, GlobalCritical { root: r, local });
        }
    }
    // pairwise disjoint closed intervals
    for k in 0..out.len().saturating_sub(1) {
        loop {
            let (a, b) = out.split_at_mut(k + 1);
            if a[k].root.iv.hi < b[0].root.iv.lo {
                break;
            }
            let x = a[k].root.bisect();
            let y = b[0].root.bisect();
            if !x && !y {
                break;
            }
        }
    }
    Ok(out)
}

/// Convenience wrapper: analyse `spec` and return the signature of `p`.
pub fn parity_signature(spec: &DomainSpec, p: (&Rational, &Rational)) -> Result<Vec<bool>> {
    Domain::new(spec)?.signature(p.0, p.1)
}

pub fn fiber(spec: &DomainSpec, x0: &Rational) -> Result<Fiber> {
    Domain::new(spec)?.fiber(x0)
}

/// Per-curve analysis with failures turned into defects.
fn analyse_all(spec: &DomainSpec) -> Result<(Vec<CurveAnalysis>, Vec<Defect>)> {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (i, f) in spec.curves.iter().enumerate() {
        match analyze_curve(f, i) {
            Ok(a) => ok.push(a),
            Err(e) => bad.push(analysis_defect(i, e)?),
        }
    }
    Ok((ok, bad))
}

pub fn finite_type_class(spec: &DomainSpec) -> Result<FiniteTypeReport> {
    let (curves, bad) = analyse_all(spec)?;
    if !bad.is_empty() {
        return Ok(FiniteTypeReport {
            class: FiniteTypeClass::NotAdmissible,
            reasons: bad.iter().map(|d| d.to_string()).collect(),
        });
    }
    Ok(Domain::with_analyses(spec, curves)?.finite_type_class())
}

/// Every genericity defect of the spec; empty means generic.
pub fn genericity_report(spec: &DomainSpec) -> Result<Vec<Defect>> {
    let (curves, bad) = analyse_all(spec)?;
    if !bad.is_empty() {
        return Ok(bad);
    }
    Ok(Domain::with_analyses(spec, curves)?.defects())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{annulus, circle, disk, p};
    use crate::rational::{int, rat};

    fn root_value(b: &Bound) -> Rational {
        match b {
            Bound::Root(r) => r.y.mid(),
            _ => panic!("infinite bound"),
        }
    }

    #[test]
    fn unit_circle_signatures() {
        let d = Domain::new(&disk()).unwrap();
        assert_eq!(d.signature(&int(0), &int(0)).unwrap(), vec![true]);
        assert_eq!(d.signature(&int(2), &int(0)).unwrap(), vec![false]);
        assert_eq!(d.signature(&int(1), &int(5)).unwrap(), vec![false]);
        assert_eq!(d.signature(&int(1), &int(0)), Err(Error::PointOnCurve));
    }

    #[test]
    fn annulus_seed_signature() {
        let d = Domain::new(&annulus()).unwrap();
        assert_eq!(d.seed_signature(), &[false, true]);
        assert!(!d.contains(&rat(3, 2), &int(0)).unwrap());
        assert!(d.contains(&rat(3, 2), &int(2)).unwrap());
    }

    #[test]
    fn disk_fiber() {
        let fb = fiber(&disk(), &int(0)).unwrap();
        assert_eq!(fb.segments.len(), 1);
        assert_eq!(fb.segments[0].kind, FiberType::Bounded);
        assert_eq!(root_value(&fb.segments[0].lo), int(-1));
        assert_eq!(root_value(&fb.segments[0].hi), int(1));
    }

    #[test]
    fn annulus_fiber_has_two_segments() {
        let fb = fiber(&annulus(), &rat(3, 2)).unwrap();
        assert_eq!(fb.segments.len(), 2);
        assert!(fb.segments.iter().all(|s| s.kind == FiberType::Bounded));
        // lower segment below the inner oval, upper above it
        assert!(root_value(&fb.segments[0].hi) < int(0));
        assert!(root_value(&fb.segments[1].lo) > int(0));
    }

    #[test]
    fn complement_fiber_has_two_rays() {
        let spec = DomainSpec::new(vec![circle(0, 0, 1)], vec![(0, 0)], (int(3), int(0)));
        let fb = fiber(&spec, &int(0)).unwrap();
        let kinds: Vec<_> = fb.segments.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, vec![FiberType::RayDown, FiberType::RayUp]);
        assert_eq!(root_value(&fb.segments[0].hi), int(-1));
        // the complement flag gives the same domain from the inside seed
        assert_eq!(fiber(&disk().complementary(), &int(0)).unwrap(), fb);
    }

    #[test]
    fn critical_fibers() {
        // tangency point of the disk is a one-point segment; of its complement, part of a whole line
        let fb = fiber(&disk(), &int(1)).unwrap();
        assert_eq!(fb.segments.len(), 1);
        assert_eq!(fb.segments[0].lo, fb.segments[0].hi);
        let fb = fiber(&disk().complementary(), &int(1)).unwrap();
        assert_eq!(fb.segments.len(), 1);
        assert_eq!(fb.segments[0].kind, FiberType::WholeLine);
        assert!(fiber(&disk(), &int(2)).unwrap().segments.is_empty());
    }

    #[test]
    fn finite_type_classes() {
        assert_eq!(finite_type_class(&disk()).unwrap().class, FiniteTypeClass::FiniteType);
        assert_eq!(
            finite_type_class(&disk().complementary()).unwrap().class,
            FiniteTypeClass::WeaklyFiniteType
        );
        // between the hyperbola branches xy = 1 and xy = 2 in the first quadrant
        let spec = DomainSpec::new(
            vec![p(&[(1, 1, 1), (-1, 0, 0)]), p(&[(1, 1, 1), (-2, 0, 0)])],
            vec![(0, 1), (1, 1)],
            (int(1), rat(3, 2)),
        );
        assert_eq!(finite_type_class(&spec).unwrap().class, FiniteTypeClass::NotAdmissible);
        assert_eq!(finite_type_class(&annulus()).unwrap().class, FiniteTypeClass::FiniteType);
    }

    #[test]
    fn genericity_defects() {
        assert!(genericity_report(&disk()).unwrap().is_empty());
        assert!(genericity_report(&annulus()).unwrap().is_empty());
        let two = DomainSpec::new(vec![circle(0, 0, 1), circle(0, 3, 1)], vec![(0, 0), (1, 0)], (int(0), int(0)));
        let defects = genericity_report(&two).unwrap();
        let xs: Vec<Rational> = defects
            .iter()
            .map(|d| match d {
                Defect::SharedVerticalLine { x, points } => {
                    assert_eq!(points.len(), 2);
                    x.mid()
                }
                other => panic!("unexpected {other}"),
            })
            .collect();
        assert_eq!(xs, vec![int(-1), int(1)]);
        let cusp = DomainSpec::new(vec![p(&[(1, 0, 2), (-1, 3, 0)])], vec![(0, 0)], (int(1), int(0)));
        assert!(matches!(genericity_report(&cusp).unwrap()[..], [Defect::SingularPoint { curve: 0, .. }]));
    }

    #[test]
    fn intersecting_components_rejected() {
        let spec = DomainSpec::new(vec![circle(0, 0, 4), circle(2, 0, 4)], vec![(0, 0), (1, 0)], (int(1), int(0)));
        assert!(matches!(Domain::new(&spec), Err(Error::ComponentsIntersect(_))));
        // same curves, disjoint selection is fine
        let spec = DomainSpec::new(vec![circle(0, 0, 1), circle(5, 0, 1)], vec![(0, 0), (1, 0)], (int(0), int(0)));
        assert!(Domain::new(&spec).is_ok());
    }

    #[test]
    fn boundary_components_of_annulus() {
        let d = Domain::new(&annulus()).unwrap();
        assert_eq!(d.boundary_components(), vec![(0, 0), (1, 0)]);
        let far = DomainSpec::new(vec![circle(0, 0, 1), circle(5, 0, 1)], vec![(0, 0), (1, 0)], (int(0), int(0)));
        assert_eq!(Domain::new(&far).unwrap().boundary_components(), vec![(0, 0)]);
    }
}
