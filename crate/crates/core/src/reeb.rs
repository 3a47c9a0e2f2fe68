//! Sweep-line construction of the Poincaré–Reeb graph.
//!
//! Each open slab contributes its fiber segments as the active edges. Across a
//! critical abscissa the segments on both sides are related through the gaps
//! they contain: roots that continue through the critical line split both
//! fibers into matching super-gaps, and segments meeting a common super-gap
//! belong to the same piece of the domain near the line.

use std::fmt;

use crate::curve::{BandKind, TangencyKind, TangencyPoint, UnionFind, XBound};
use crate::domain::{Bound, Domain, DomainSpec, FiberType};
use crate::error::{Error, Result};
use crate::graphops::{Event, EventKind};
use crate::poly::RootInterval;
use crate::rational::{int, midpoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// Left end of a newly born edge.
    Valency1Left,
    /// Right end of a dying edge.
    Valency1Right,
    Valency3Split,
    Valency3Merge,
    ArrowheadLeft,
    ArrowheadRight,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Valency1Left => "valency1_left",
            VertexKind::Valency1Right => "valency1_right",
            VertexKind::Valency3Split => "valency3_split",
            VertexKind::Valency3Merge => "valency3_merge",
            VertexKind::ArrowheadLeft => "arrowhead_left",
            VertexKind::ArrowheadRight => "arrowhead_right",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            VertexKind::Valency1Left,
            VertexKind::Valency1Right,
            VertexKind::Valency3Split,
            VertexKind::Valency3Merge,
            VertexKind::ArrowheadLeft,
            VertexKind::ArrowheadRight,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }

    pub fn is_arrowhead(self) -> bool {
        matches!(self, VertexKind::ArrowheadLeft | VertexKind::ArrowheadRight)
    }

    fn of_event(kind: EventKind) -> Self {
        match kind {
            EventKind::Birth => VertexKind::Valency1Left,
            EventKind::Death => VertexKind::Valency1Right,
            EventKind::Split => VertexKind::Valency3Split,
            EventKind::Merge => VertexKind::Valency3Merge,
        }
    }
}

/// The boundary tangency a vertex collapses, as a box in y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub curve: usize,
    pub component: usize,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: XBound,
    pub kind: VertexKind,
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feather {
    None,
    Up,
    Down,
    Both,
}

impl Feather {
    pub fn as_str(self) -> &'static str {
        match self {
            Feather::None => "none",
            Feather::Up => "up",
            Feather::Down => "down",
            Feather::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Feather::None, Feather::Up, Feather::Down, Feather::Both].into_iter().find(|f| f.as_str() == s)
    }

    /// Decoration of an arrowhead edge carrying fibers of type `t`.
    pub fn for_fiber(t: FiberType) -> Self {
        match t {
            FiberType::Bounded => Feather::None,
            FiberType::RayUp => Feather::Up,
            FiberType::RayDown => Feather::Down,
            FiberType::WholeLine => Feather::Both,
        }
    }
}

/// Edges run from their left endpoint `src` to their right endpoint `dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub fiber_type: FiberType,
    pub feather: Feather,
}

/// The open interval between consecutive vertex abscissas and its edges, bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSlab {
    pub x_lo: XBound,
    pub x_hi: XBound,
    pub order: Vec<usize>,
}

/// A Poincaré–Reeb graph with arrowheads and feathers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub slabs: Vec<GraphSlab>,
}

impl PRGraph {
    pub fn valency(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.src == v) as usize + (e.dst == v) as usize).sum()
    }

    /// Non-arrowhead vertices in increasing abscissa order.
    pub fn finite_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| !self.vertices[v].kind.is_arrowhead()).collect()
    }
}

impl fmt::Display for PRGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(f, "v{i} {} at {}", v.kind.as_str(), v.x)?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            writeln!(f, "e{i} v{} -> v{} {} feather {}", e.src, e.dst, e.fiber_type, e.feather.as_str())?;
        }
        Ok(())
    }
}

/// One vertex of a graph under construction.
#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub x: RootInterval,
    pub witness: Option<Witness>,
    pub event: Event,
}

/// Builds a graph from the segment types left of everything and a sequence
/// of events in increasing abscissa order.
pub(crate) fn build_graph(initial: &[FiberType], steps: &[Step]) -> Result<PRGraph> {
    let bad = |m: &str| Error::InvalidGraph(m.to_string());
    let mut vertices = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut slabs = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let new_edge = |edges: &mut Vec<Edge>, src: usize, t: FiberType| {
        edges.push(Edge { src, dst: usize::MAX, fiber_type: t, feather: Feather::None });
        edges.len() - 1
    };
    for &t in initial {
        vertices.push(Vertex { x: XBound::NegInf, kind: VertexKind::ArrowheadLeft, witness: None });
        let e = new_edge(&mut edges, vertices.len() - 1, t);
        edges[e].feather = Feather::for_fiber(t);
        active.push(e);
    }
    let mut x_lo = if initial.is_empty() { None } else { Some(XBound::NegInf) };
    for st in steps {
        let here = XBound::At(st.x.clone());
        if let Some(lo) = x_lo.take() {
            slabs.push(GraphSlab { x_lo: lo, x_hi: here.clone(), order: active.clone() });
        }
        vertices.push(Vertex { x: here.clone(), kind: VertexKind::of_event(st.event.kind), witness: st.witness.clone() });
        let v = vertices.len() - 1;
        let p = st.event.position;
        let dec = &st.event.decorations;
        if dec.len() != st.event.kind.created() {
            return Err(bad("wrong number of decorations"));
        }
        match st.event.kind {
            EventKind::Birth => {
                if p > active.len() {
                    return Err(bad("birth position out of range"));
                }
                let e = new_edge(&mut edges, v, dec[0]);
                active.insert(p, e);
            }
            EventKind::Death => {
                if p >= active.len() {
                    return Err(bad("death position out of range"));
                }
                edges[active[p]].dst = v;
                active.remove(p);
            }
            EventKind::Split => {
                if p >= active.len() {
                    return Err(bad("split position out of range"));
                }
                edges[active[p]].dst = v;
                let lo = new_edge(&mut edges, v, dec[0]);
                let hi = new_edge(&mut edges, v, dec[1]);
                active.splice(p..=p, [lo, hi]);
            }
            EventKind::Merge => {
                if p + 1 >= active.len() {
                    return Err(bad("merge position out of range"));
                }
                edges[active[p]].dst = v;
                edges[active[p + 1]].dst = v;
                let e = new_edge(&mut edges, v, dec[0]);
                active.splice(p..=p + 1, [e]);
            }
        }
        x_lo = Some(here);
    }
    if let Some(lo) = x_lo {
        if !active.is_empty() {
            slabs.push(GraphSlab { x_lo: lo, x_hi: XBound::PosInf, order: active.clone() });
        }
    }
    for &e in &active {
        vertices.push(Vertex { x: XBound::PosInf, kind: VertexKind::ArrowheadRight, witness: None });
        edges[e].dst = vertices.len() - 1;
        edges[e].feather = Feather::for_fiber(edges[e].fiber_type);
    }
    Ok(PRGraph { vertices, edges, slabs })
}

/// Topological critical abscissas of the selected components with their tangencies.
pub fn critical_abscissas(spec: &DomainSpec) -> Result<Vec<(RootInterval, Vec<TangencyPoint>)>> {
    let d = Domain::new(spec)?;
    let defects = d.defects();
    if !defects.is_empty() {
        return Err(Error::BlockedByDefect(defects));
    }
    let mut out = Vec::new();
    for (k, t) in d.transitions.iter().enumerate() {
        let x = d.crit[k].root.iv.clone();
        let pts: Vec<TangencyPoint> = t
            .tangencies
            .iter()
            .filter_map(|r| {
                let (kind, delta) = match r.kind {
                    BandKind::LeftExtremum => (TangencyKind::LeftExtremum, 2),
                    BandKind::RightExtremum => (TangencyKind::RightExtremum, -2),
                    _ => return None,
                };
                Some(TangencyPoint {
                    x: x.clone(),
                    y: RootInterval::new(r.y_lo.clone(), r.y_hi.clone(), 1),
                    curve: r.curve,
                    component: r.component,
                    kind,
                    local_fiber_delta: delta,
                    high_multiplicity: r.high_multiplicity,
                })
            })
            .collect();
        if !pts.is_empty() {
            out.push((x, pts));
        }
    }
    Ok(out)
}

/// Sweeps the domain of `spec`.
pub fn sweep(spec: &DomainSpec) -> Result<PRGraph> {
    let d = Domain::new(spec)?;
    sweep_domain(&d)
}

/// Per-slab segments: type and the range of gaps they cover.
fn slab_segments(d: &Domain, k: usize) -> (Vec<bool>, Vec<Option<usize>>, Vec<FiberType>) {
    let roots = &d.slabs[k];
    let inside = d.gaps_in(roots);
    let mut seg_of = vec![None; inside.len()];
    let mut types = Vec::new();
    let mut g = 0;
    while g < inside.len() {
        if !inside[g] {
            g += 1;
            continue;
        }
        let lo_inf = g == 0;
        seg_of[g] = Some(types.len());
        while g + 1 < inside.len() && inside[g + 1] {
            g += 1;
            seg_of[g] = Some(types.len());
        }
        let hi_inf = g == roots.len();
        types.push(match (lo_inf, hi_inf) {
            (true, true) => FiberType::WholeLine,
            (true, false) => FiberType::RayDown,
            (false, true) => FiberType::RayUp,
            (false, false) => FiberType::Bounded,
        });
        g += 1;
    }
    (inside, seg_of, types)
}

pub(crate) fn sweep_domain(d: &Domain) -> Result<PRGraph> {
    let defects = d.defects();
    if !defects.is_empty() {
        return Err(Error::BlockedByDefect(defects));
    }
    let segs: Vec<_> = (0..d.slabs.len()).map(|k| slab_segments(d, k)).collect();
    let mut steps = Vec::new();
    for (k, t) in d.transitions.iter().enumerate() {
        let (_, lseg, ltypes) = &segs[k];
        let (_, rseg, rtypes) = &segs[k + 1];
        let (nl, nr) = (ltypes.len(), rtypes.len());
        // super-gap index of every gap on each side
        let mut lq = Vec::with_capacity(lseg.len());
        let mut q = 0;
        for g in 0..lseg.len() {
            lq.push(q);
            if g < t.image.len() && t.image[g].is_some() {
                q += 1;
            }
        }
        let is_image: Vec<bool> = (0..rseg.len().saturating_sub(1)).map(|i| t.image.contains(&Some(i))).collect();
        let mut rq = Vec::with_capacity(rseg.len());
        let mut q = 0;
        for h in 0..rseg.len() {
            rq.push(q);
            if h < is_image.len() && is_image[h] {
                q += 1;
            }
        }
        let mut uf = UnionFind::new(nl + nr);
        for (g, s) in lseg.iter().enumerate() {
            let Some(s) = s else { continue };
            for (h, r) in rseg.iter().enumerate() {
                if let Some(r) = r {
                    if rq[h] == lq[g] {
                        uf.union(*s, nl + r);
                    }
                }
            }
        }
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut root_of: Vec<usize> = Vec::new();
        for i in 0..nl + nr {
            let r = uf.find(i);
            let gi = match root_of.iter().position(|&x| x == r) {
                Some(p) => p,
                None => {
                    root_of.push(r);
                    groups.push((Vec::new(), Vec::new()));
                    root_of.len() - 1
                }
            };
            if i < nl {
                groups[gi].0.push(i);
            } else {
                groups[gi].1.push(i - nl);
            }
        }
        let mut events = Vec::new();
        for (l, r) in &groups {
            let ev = match (l.len(), r.len()) {
                (1, 1) => continue,
                (0, 1) => Event::new(EventKind::Birth, r[0], vec![rtypes[r[0]]]),
                (1, 0) => Event::new(EventKind::Death, l[0], vec![]),
                (1, 2) => Event::new(EventKind::Split, l[0], vec![rtypes[r[0]], rtypes[r[1]]]),
                (2, 1) => Event::new(EventKind::Merge, l[0], vec![rtypes[r[0]]]),
                (a, b) => {
                    return Err(Error::NonGenericGraph(format!(
                        "{a} segments meet {b} segments at x in [{}]",
                        d.crit[k].root.iv
                    )))
                }
            };
            events.push(ev);
        }
        if events.len() > 1 {
            return Err(Error::NonGenericGraph(format!("several events at x in [{}]", d.crit[k].root.iv)));
        }
        if let Some(event) = events.pop() {
            let witness = t
                .tangencies
                .iter()
                .find(|r| matches!(r.kind, BandKind::LeftExtremum | BandKind::RightExtremum))
                .map(|r| Witness { curve: r.curve, component: r.component, y_lo: r.y_lo.clone(), y_hi: r.y_hi.clone() });
            steps.push(Step { x: d.crit[k].root.iv.clone(), witness, event });
        }
    }
    build_graph(&segs[0].2, &steps)
}

/// The graph drawn inside the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceEmbedding {
    /// Points near the witness tangencies; `None` for arrowheads.
    pub vertices: Vec<Option<(Rational, Rational)>>,
    /// x-monotone polylines, one per edge.
    pub edges: Vec<Vec<(Rational, Rational)>>,
}

pub fn source_embedding(spec: &DomainSpec, g: &PRGraph) -> Result<SourceEmbedding> {
    let d = Domain::new(spec)?;
    embed(&d, g)
}

fn graph_slab_of(g: &PRGraph, x: &Rational) -> Option<usize> {
    g.slabs.iter().position(|s| {
        let above_lo = match &s.x_lo {
            XBound::NegInf => true,
            XBound::At(r) => &r.hi < x,
            XBound::PosInf => false,
        };
        let below_hi = match &s.x_hi {
            XBound::PosInf => true,
            XBound::At(r) => x < &r.lo,
            XBound::NegInf => false,
        };
        above_lo && below_hi
    })
}

pub(crate) fn embed(d: &Domain, g: &PRGraph) -> Result<SourceEmbedding> {
    let finite = g.finite_vertices();
    for &v in &finite {
        let val = g.valency(v);
        if val != 1 && val != 3 {
            return Err(Error::NonGenericGraph(format!("vertex {v} has valency {val}")));
        }
    }
    let xs: Vec<&RootInterval> = finite
        .iter()
        .filter_map(|&v| match &g.vertices[v].x {
            XBound::At(r) => Some(r),
            _ => None,
        })
        .collect();
    for w in xs.windows(2) {
        if w[0].cmp_disjoint(w[1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::NonGenericGraph("vertex abscissas are not distinct".into()));
        }
    }
    let vertices: Vec<Option<(Rational, Rational)>> = g
        .vertices
        .iter()
        .map(|v| match &v.x {
            XBound::At(r) => {
                let y = v.witness.as_ref().map(|w| midpoint(&w.y_lo, &w.y_hi)).unwrap_or_else(|| int(0));
                Some((r.mid(), y))
            }
            _ => None,
        })
        .collect();
    let mut samples: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); g.edges.len()];
    for (k, x) in d.samples.iter().enumerate() {
        let roots = &d.slabs[k];
        let (_, seg_of, types) = slab_segments(d, k);
        let order: &[usize] = match graph_slab_of(g, x) {
            Some(s) => &g.slabs[s].order,
            None => &[],
        };
        if order.len() != types.len() {
            return Err(Error::InvalidGraph(format!("graph has {} edges over x = {x}, domain has {}", order.len(), types.len())));
        }
        for (s, &e) in order.iter().enumerate() {
            let first = seg_of.iter().position(|q| *q == Some(s)).unwrap();
            let last = seg_of.iter().rposition(|q| *q == Some(s)).unwrap();
            let lo = (first > 0).then(|| roots[first - 1].root.iv.hi.clone());
            let hi = (last < roots.len()).then(|| roots[last].root.iv.lo.clone());
            let y = match (lo, hi) {
                (Some(a), Some(b)) => midpoint(&a, &b),
                (Some(a), None) => a + int(1),
                (None, Some(b)) => b - int(1),
                (None, None) => int(0),
            };
            samples[e].push((x.clone(), y));
        }
    }
    let edges = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut line = Vec::new();
            if let Some(p) = &vertices[e.src] {
                line.push(p.clone());
            }
            line.extend(samples[i].iter().cloned());
            if let Some(p) = &vertices[e.dst] {
                line.push(p.clone());
            }
            line
        })
        .collect();
    Ok(SourceEmbedding { vertices, edges })
}

/// Bounds of a fiber segment as plain numbers, for drawing.
pub fn segment_span(lo: &Bound, hi: &Bound) -> (Option<Rational>, Option<Rational>) {
    let v = |b: &Bound| match b {
        Bound::Root(r) => Some(r.y.mid()),
        _ => None,
    };
    (v(lo), v(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphops::{canonical_code, invariants, trident_dual, CanonicalCode};
    use crate::rational::rat;
    use crate::testutil::{annulus, circle, disk, p};

    fn code(s: &str) -> CanonicalCode {
        s.parse().unwrap()
    }

    fn abscissas(g: &PRGraph) -> Vec<Rational> {
        g.finite_vertices()
            .into_iter()
            .map(|v| match &g.vertices[v].x {
                XBound::At(r) => r.mid(),
                _ => unreachable!(),
            })
            .collect()
    }

    fn close(a: &[Rational], b: &[i64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, &y)| (x - int(y)) * (x - int(y)) < rat(1, 1_000_000))
    }

    #[test]
    fn disk_is_a_segment() {
        let g = sweep(&disk()).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert!(close(&abscissas(&g), &[-1, 1]));
        assert_eq!(canonical_code(&g).unwrap(), code("initial [] events [Birth@0(bounded) Death@0()] final []"));
        assert!(g.vertices.iter().all(|v| v.witness.is_some()));
    }

    #[test]
    fn annulus_is_a_cycle() {
        let g = sweep(&annulus()).unwrap();
        assert!(close(&abscissas(&g), &[0, 1, 2, 4]));
        assert_eq!(g.edges.len(), 4);
        let inv = invariants(&g);
        assert_eq!((inv.b0, inv.b1), (1, 1));
        assert_eq!(
            canonical_code(&g).unwrap(),
            code("initial [] events [Birth@0(bounded) Split@0(bounded,bounded) Merge@0(bounded) Death@0()] final []")
        );
    }

    #[test]
    fn disk_complement_matches_dual() {
        let spec = disk().complementary();
        let g = sweep(&spec).unwrap();
        let c = canonical_code(&g).unwrap();
        assert_eq!(
            c,
            code("initial [whole_line] events [Split@0(ray_down,ray_up) Merge@0(whole_line)] final [whole_line]")
        );
        assert!(g.edges.iter().filter(|e| e.fiber_type == FiberType::WholeLine).all(|e| e.feather == Feather::Both));
        let d = trident_dual(&sweep(&disk()).unwrap()).unwrap();
        assert_eq!(canonical_code(&d).unwrap(), c);
    }

    #[test]
    fn parabola_has_one_critical_abscissa() {
        // inside of x = y^2
        let spec = DomainSpec::new(vec![p(&[(1, 0, 2), (-1, 1, 0)])], vec![(0, 0)], (int(1), int(0)));
        let crit = critical_abscissas(&spec).unwrap();
        assert_eq!(crit.len(), 1);
        assert_eq!(crit[0].0.mid(), int(0));
        assert_eq!(crit[0].1[0].kind, TangencyKind::LeftExtremum);
        let g = sweep(&spec).unwrap();
        assert_eq!(g.finite_vertices().len(), 1);
        assert_eq!(canonical_code(&g).unwrap(), code("initial [] events [Birth@0(bounded)] final [bounded]"));
    }

    #[test]
    fn inflection_is_not_a_vertex() {
        // right of x = y^3
        let spec = DomainSpec::new(vec![p(&[(1, 1, 0), (-1, 0, 3)])], vec![(0, 0)], (int(1), int(0)));
        let g = sweep(&spec).unwrap();
        assert!(g.finite_vertices().is_empty());
        assert_eq!(canonical_code(&g).unwrap(), code("initial [ray_down] events [] final [ray_down]"));
        assert!(critical_abscissas(&spec).unwrap().is_empty());
    }

    #[test]
    fn embedding_follows_the_fibers() {
        let spec = annulus();
        let g = sweep(&spec).unwrap();
        let emb = source_embedding(&spec, &g).unwrap();
        let d = Domain::new(&spec).unwrap();
        for line in &emb.edges {
            assert!(line.len() >= 3);
            for (x, y) in &line[1..line.len() - 1] {
                assert!(d.contains(x, y).unwrap());
            }
        }
    }

    #[test]
    fn two_disjoint_disks() {
        // every point whose signature differs from an outside seed
        let spec = DomainSpec::new(vec![circle(0, 0, 1), circle(4, 0, 1)], vec![(0, 0), (1, 0)], (int(10), int(0)))
            .complementary();
        let g = sweep(&spec).unwrap();
        assert!(close(&abscissas(&g), &[-1, 1, 3, 5]));
        assert_eq!(invariants(&g).b0, 2);
        assert!(g.slabs.iter().any(|s| s.order.is_empty()));
        assert_eq!(
            canonical_code(&g).unwrap(),
            code("initial [] events [Birth@0(bounded) Death@0() Birth@0(bounded) Death@0()] final []")
        );
    }
}
