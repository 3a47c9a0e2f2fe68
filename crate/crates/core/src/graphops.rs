//! Combinatorics of Poincaré–Reeb graphs: canonical codes, invariants, the
//! trident dual and boundary permutations of trees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::curve::{UnionFind, XBound};
use crate::domain::FiberType;
use crate::error::{Error, Result};
use crate::poly::RootInterval;
use crate::rational::int;
use crate::reeb::{build_graph, Feather, PRGraph, Step, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Birth,
    Death,
    Split,
    Merge,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Birth => "Birth",
            EventKind::Death => "Death",
            EventKind::Split => "Split",
            EventKind::Merge => "Merge",
        }
    }

    /// Number of edges the event starts.
    pub fn created(self) -> usize {
        match self {
            EventKind::Birth | EventKind::Merge => 1,
            EventKind::Death => 0,
            EventKind::Split => 2,
        }
    }

    /// Number of edges the event ends.
    pub fn consumed(self) -> usize {
        match self {
            EventKind::Birth => 0,
            EventKind::Death | EventKind::Split => 1,
            EventKind::Merge => 2,
        }
    }
}

/// One vertex of a sweep: `position` indexes the active edges bottom to top
/// (the new edge for a birth, the lower of the pair for a merge), and
/// `decorations` are the fiber types of the edges it starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub position: usize,
    pub decorations: Vec<FiberType>,
}

impl Event {
    pub fn new(kind: EventKind, position: usize, decorations: Vec<FiberType>) -> Self {
        Self { kind, position, decorations }
    }

    /// Applies the event to a bottom-to-top list of edge types.
    pub fn apply(&self, active: &mut Vec<FiberType>) -> Result<()> {
        let p = self.position;
        let bad = |m: &str| Error::InvalidGraph(format!("{self}: {m}"));
        if self.decorations.len() != self.kind.created() {
            return Err(bad("wrong number of decorations"));
        }
        let end = p + self.kind.consumed();
        if end > active.len() || (self.kind == EventKind::Birth && p > active.len()) {
            return Err(bad("position out of range"));
        }
        active.splice(p..end, self.decorations.iter().copied());
        Ok(())
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<&str> = self.decorations.iter().map(|t| t.as_str()).collect();
        write!(f, "{}@{}({})", self.kind.as_str(), self.position, d.join(","))
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGraph(format!("cannot parse event `{s}`"));
        let (kind, rest) = s.split_once('@').ok_or_else(bad)?;
        let kind = [EventKind::Birth, EventKind::Death, EventKind::Split, EventKind::Merge]
            .into_iter()
            .find(|k| k.as_str() == kind.trim())
            .ok_or_else(bad)?;
        let (pos, rest) = rest.split_once('(').ok_or_else(bad)?;
        let position = pos.trim().parse().map_err(|_| bad())?;
        let inner = rest.trim().strip_suffix(')').ok_or_else(bad)?;
        let decorations = parse_types(inner).ok_or_else(bad)?;
        Ok(Event { kind, position, decorations })
    }
}

fn parse_types(s: &str) -> Option<Vec<FiberType>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(FiberType::parse).collect()
}

/// Complete invariant of a generic graph up to vertical equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub initial: Vec<FiberType>,
    pub events: Vec<Event>,
    /// Edge types right of every vertex.
    pub terminal: Vec<FiberType>,
}

impl CanonicalCode {
    /// Checks that the events can be applied in order and end at `terminal`.
    /// Returns the edge types of every slab, leftmost first.
    pub fn replay(&self) -> Result<Vec<Vec<FiberType>>> {
        let mut cur = self.initial.clone();
        let mut out = vec![cur.clone()];
        for e in &self.events {
            e.apply(&mut cur)?;
            out.push(cur.clone());
        }
        if cur != self.terminal {
            return Err(Error::InvalidGraph("events do not end at the final edge types".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types = |v: &[FiberType]| v.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(", ");
        let events: Vec<String> = self.events.iter().map(|e| e.to_string()).collect();
        write!(
            f,
            "initial [{}] events [{}] final [{}]",
            types(&self.initial),
            events.join(" "),
            types(&self.terminal)
        )
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGraph(format!("cannot parse code `{s}`"));
        let bracket = |s: &str, key: &str| -> Option<(String, usize)> {
            let start = s.find(key)? + key.len();
            let rest = s[start..].trim_start();
            let skip = s.len() - rest.len();
            let rest = rest.strip_prefix('[')?;
            let close = rest.find(']')?;
            Some((rest[..close].to_string(), skip + 1 + close + 1))
        };
        let (init, a) = bracket(s, "initial").ok_or_else(bad)?;
        let s2 = &s[a..];
        let (evs, b) = bracket(s2, "events").ok_or_else(bad)?;
        let (fin, _) = bracket(&s2[b..], "final").ok_or_else(bad)?;
        let events = evs
            .split_whitespace()
            .map(Event::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(CanonicalCode {
            initial: parse_types(&init).ok_or_else(bad)?,
            events,
            terminal: parse_types(&fin).ok_or_else(bad)?,
        })
    }
}

/// A vertex read back from a graph together with the slab orders around it.
struct GraphStep {
    vertex: usize,
    event: Event,
    left: Vec<usize>,
    right: Vec<usize>,
}

struct Reading {
    initial: Vec<usize>,
    steps: Vec<GraphStep>,
    terminal: Vec<usize>,
}

fn x_of(g: &PRGraph, v: usize) -> Option<&RootInterval> {
    match &g.vertices[v].x {
        XBound::At(r) => Some(r),
        _ => None,
    }
}

/// Finite vertices in increasing abscissa order, or an error when two share an abscissa.
fn sorted_finite(g: &PRGraph) -> Result<Vec<usize>> {
    let mut vs = g.finite_vertices();
    for &v in &vs {
        if x_of(g, v).is_none() {
            return Err(Error::InvalidGraph(format!("vertex {v} has no abscissa")));
        }
    }
    vs.sort_by(|&a, &b| x_of(g, a).unwrap().cmp_disjoint(x_of(g, b).unwrap()).unwrap_or(Ordering::Equal));
    let clash = vs.windows(2).any(|w| x_of(g, w[0]).unwrap().cmp_disjoint(x_of(g, w[1]).unwrap()) != Some(Ordering::Less));
    if clash {
        return Err(Error::NonGenericGraph("two vertices share an abscissa".into()));
    }
    Ok(vs)
}

fn read_graph(g: &PRGraph) -> Result<Reading> {
    let bad = |m: String| Error::InvalidGraph(m);
    for e in &g.edges {
        if e.src >= g.vertices.len() || e.dst >= g.vertices.len() {
            return Err(bad("edge endpoint out of range".into()));
        }
    }
    let order_between = |lo: &XBound, hi: &XBound| -> Vec<usize> {
        g.slabs
            .iter()
            .find(|s| (&s.x_lo == lo) && (&s.x_hi == hi))
            .map(|s| s.order.clone())
            .unwrap_or_default()
    };
    let vs = sorted_finite(g)?;
    let mut bounds = vec![XBound::NegInf];
    bounds.extend(vs.iter().map(|&v| g.vertices[v].x.clone()));
    bounds.push(XBound::PosInf);
    let orders: Vec<Vec<usize>> = bounds.windows(2).map(|w| order_between(&w[0], &w[1])).collect();
    let covered: usize = g.slabs.len();
    let nonempty = orders.iter().filter(|o| !o.is_empty()).count();
    if g.slabs.iter().filter(|s| !s.order.is_empty()).count() != nonempty || covered > orders.len() {
        return Err(bad("slabs do not match the vertex abscissas".into()));
    }
    let mut steps = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        let (left, right) = (&orders[i], &orders[i + 1]);
        let ins: Vec<usize> = left.iter().enumerate().filter(|(_, &e)| g.edges[e].dst == v).map(|(p, _)| p).collect();
        let outs: Vec<usize> = right.iter().enumerate().filter(|(_, &e)| g.edges[e].src == v).map(|(p, _)| p).collect();
        let kind = match (ins.len(), outs.len()) {
            (0, 1) => EventKind::Birth,
            (1, 0) => EventKind::Death,
            (1, 2) => EventKind::Split,
            (2, 1) => EventKind::Merge,
            (a, b) => return Err(Error::NonGenericGraph(format!("vertex {v} has {a} left and {b} right edges"))),
        };
        let contiguous = |p: &[usize]| p.windows(2).all(|w| w[1] == w[0] + 1);
        if !contiguous(&ins) || !contiguous(&outs) {
            return Err(bad(format!("edges at vertex {v} are not adjacent")));
        }
        let position = if kind == EventKind::Birth { outs[0] } else { ins[0] };
        let event = Event::new(kind, position, outs.iter().map(|&p| g.edges[right[p]].fiber_type).collect());
        // the right order must be the left order with the event applied
        let mut expect = left.clone();
        let end = position + kind.consumed();
        expect.splice(position..end, outs.iter().map(|&p| right[p]));
        if &expect != right {
            return Err(bad(format!("slab orders around vertex {v} are inconsistent")));
        }
        steps.push(GraphStep { vertex: v, event, left: left.clone(), right: right.clone() });
    }
    Ok(Reading { initial: orders[0].clone(), steps, terminal: orders.last().unwrap().clone() })
}

fn types_of(g: &PRGraph, order: &[usize]) -> Vec<FiberType> {
    order.iter().map(|&e| g.edges[e].fiber_type).collect()
}

/// Reads the canonical code off a generic graph.
pub fn canonical_code(g: &PRGraph) -> Result<CanonicalCode> {
    let r = read_graph(g)?;
    let code = CanonicalCode {
        initial: types_of(g, &r.initial),
        events: r.steps.iter().map(|s| s.event.clone()).collect(),
        terminal: types_of(g, &r.terminal),
    };
    code.replay()?;
    Ok(code)
}

/// Builds a graph with the given code, placing its vertices at x = 1, 2, ...
pub fn graph_from_code(code: &CanonicalCode) -> Result<PRGraph> {
    code.replay()?;
    let steps: Vec<Step> = code
        .events
        .iter()
        .enumerate()
        .map(|(i, e)| Step { x: RootInterval::exact(int(i as i64 + 1), 1), witness: None, event: e.clone() })
        .collect();
    build_graph(&code.initial, &steps)
}

/// True when the two graphs have the same canonical code.
pub fn vertically_equivalent(g: &PRGraph, h: &PRGraph) -> Result<bool> {
    Ok(canonical_code(g)? == canonical_code(h)?)
}

/// Arrowhead counts by decoration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowCensus {
    pub plain: usize,
    pub simple: usize,
    pub double: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// Vertices other than arrowheads.
    pub vertices: usize,
    pub edges: usize,
    pub b0: usize,
    pub b1: usize,
    pub euler: i64,
    /// Valency to number of non-arrowhead vertices.
    pub valencies: BTreeMap<usize, usize>,
    pub arrows: ArrowCensus,
    /// Components that contain an arrowhead.
    pub unbounded_components: usize,
}

pub fn invariants(g: &PRGraph) -> Invariants {
    let n = g.vertices.len();
    let mut uf = UnionFind::new(n);
    for e in &g.edges {
        uf.union(e.src, e.dst);
    }
    let mut roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let arrow_roots: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| g.vertices[v].kind.is_arrowhead()).map(|v| roots[v]).collect();
    roots.sort_unstable();
    roots.dedup();
    let b0 = roots.len();
    let b1 = g.edges.len() + b0 - n;
    let mut valencies = BTreeMap::new();
    for v in g.finite_vertices() {
        *valencies.entry(g.valency(v)).or_insert(0) += 1;
    }
    let mut arrows = ArrowCensus::default();
    for e in &g.edges {
        let ends = g.vertices[e.src].kind.is_arrowhead() as usize + g.vertices[e.dst].kind.is_arrowhead() as usize;
        for _ in 0..ends {
            match e.feather {
                Feather::None => arrows.plain += 1,
                Feather::Up | Feather::Down => arrows.simple += 1,
                Feather::Both => arrows.double += 1,
            }
        }
    }
    Invariants {
        vertices: g.finite_vertices().len(),
        edges: g.edges.len(),
        b0,
        b1,
        euler: b0 as i64 - b1 as i64,
        valencies,
        arrows,
        unbounded_components: arrow_roots.len(),
    }
}

/// Number of bounded boundary components (ovals) and unbounded ones (lines).
pub fn ovals_and_lines(g: &PRGraph) -> Result<(usize, usize)> {
    let inv = invariants(g);
    if inv.arrows.simple % 2 == 1 {
        return Err(Error::InconsistentFeathers);
    }
    let lines = inv.arrows.plain + inv.arrows.simple / 2;
    let ovals = inv.b0 + inv.b1 - inv.unbounded_components;
    Ok((ovals, lines))
}

/// Edge types of the complement fiber over a slab whose domain fiber has types `s`.
fn complement_types(s: &[FiberType]) -> Vec<FiberType> {
    if s.is_empty() {
        return vec![FiberType::WholeLine];
    }
    let mut out = Vec::new();
    if matches!(s[0], FiberType::Bounded | FiberType::RayUp) {
        out.push(FiberType::RayDown);
    }
    out.extend(std::iter::repeat(FiberType::Bounded).take(s.len() - 1));
    if matches!(s[s.len() - 1], FiberType::Bounded | FiberType::RayDown) {
        out.push(FiberType::RayUp);
    }
    out
}

/// Complement index of the gap below the `j`-th segment.
fn gap_index(s: &[FiberType], j: usize) -> Option<usize> {
    let off = matches!(s.first(), Some(FiberType::RayDown | FiberType::WholeLine)) as usize;
    j.checked_sub(off)
}

/// The graph of the closure of the complement, computed from the graph alone.
pub fn trident_dual(g: &PRGraph) -> Result<PRGraph> {
    let r = read_graph(g)?;
    let all_whole = g.edges.iter().all(|e| e.fiber_type == FiberType::WholeLine);
    if r.steps.is_empty() && all_whole {
        return Err(Error::EmptyBoundary);
    }
    let bad = || Error::InvalidGraph("graph has no complement".into());
    let mut steps = Vec::new();
    for st in &r.steps {
        let (l, rt) = (types_of(g, &st.left), types_of(g, &st.right));
        let rc = complement_types(&rt);
        let at = |j: usize| -> Result<FiberType> { gap_index(&rt, j).and_then(|i| rc.get(i).copied()).ok_or_else(bad) };
        let p = st.event.position;
        let event = match st.event.kind {
            EventKind::Birth => Event::new(EventKind::Split, gap_index(&l, p).ok_or_else(bad)?, vec![at(p)?, at(p + 1)?]),
            EventKind::Death => Event::new(EventKind::Merge, gap_index(&l, p).ok_or_else(bad)?, vec![at(p)?]),
            EventKind::Split => Event::new(EventKind::Birth, gap_index(&rt, p + 1).ok_or_else(bad)?, vec![at(p + 1)?]),
            EventKind::Merge => Event::new(EventKind::Death, gap_index(&l, p + 1).ok_or_else(bad)?, vec![]),
        };
        steps.push(Step {
            x: x_of(g, st.vertex).unwrap().clone(),
            witness: g.vertices[st.vertex].witness.clone(),
            event,
        });
    }
    let initial = complement_types(&types_of(g, &r.initial));
    let dual = build_graph(&initial, &steps)?;
    canonical_code(&dual)?;
    Ok(dual)
}

/// Order in which a counterclockwise walk along the boundary of a disk meets
/// the vertices of its tree, as abscissa ranks starting from 1.
pub fn boundary_permutation(g: &PRGraph) -> Result<Vec<usize>> {
    let inv = invariants(g);
    if inv.b0 != 1 || inv.b1 != 0 || g.vertices.iter().any(|v| v.kind.is_arrowhead()) {
        return Err(Error::NotADisk);
    }
    let r = read_graph(g).map_err(|_| Error::NotADisk)?;
    let n = g.vertices.len();
    // counterclockwise edge order: right edges upward, then left edges downward
    let mut ccw: Vec<Vec<usize>> = vec![Vec::new(); n];
    for st in &r.steps {
        let v = st.vertex;
        for &e in st.right.iter().filter(|&&e| g.edges[e].src == v) {
            ccw[v].push(e);
        }
        for &e in st.left.iter().rev().filter(|&&e| g.edges[e].dst == v) {
            ccw[v].push(e);
        }
    }
    let rank: BTreeMap<usize, usize> = r.steps.iter().enumerate().map(|(i, s)| (s.vertex, i + 1)).collect();
    let start = r.steps[0].vertex;
    let first = ccw[start][0];
    let mut out = vec![rank[&start]];
    let (mut v, mut e) = (start, first);
    loop {
        let w = if g.edges[e].src == v { g.edges[e].dst } else { g.edges[e].src };
        let k = ccw[w].iter().position(|&x| x == e).unwrap();
        let next = ccw[w][(k + 1) % ccw[w].len()];
        if w == start && next == first {
            break;
        }
        let leaf = ccw[w].len() == 1;
        if leaf || (g.edges[e].src == w) == (g.edges[next].src == w) {
            out.push(rank[&w]);
        }
        v = w;
        e = next;
    }
    if out.len() != n {
        return Err(Error::NotADisk);
    }
    Ok(out)
}

/// A violation of the structural rules of a transversal graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDefect {
    Valency { vertex: usize, kind: VertexKind, valency: usize },
    SharedAbscissa { a: usize, b: usize },
    EdgeNotIncreasing { edge: usize },
    SlabOrder { slab: usize },
    Feather { edge: usize },
}

impl fmt::Display for GraphDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphDefect::Valency { vertex, kind, valency } => {
                write!(f, "vertex {vertex} ({}) has valency {valency}", kind.as_str())
            }
            GraphDefect::SharedAbscissa { a, b } => write!(f, "vertices {a} and {b} share an abscissa"),
            GraphDefect::EdgeNotIncreasing { edge } => write!(f, "edge {edge} does not run left to right"),
            GraphDefect::SlabOrder { slab } => write!(f, "slab {slab} lists the wrong edges"),
            GraphDefect::Feather { edge } => write!(f, "edge {edge} has an impossible feather"),
        }
    }
}

fn cmp_bound(a: &XBound, b: &XBound) -> Option<Ordering> {
    match (a, b) {
        (XBound::NegInf, XBound::NegInf) | (XBound::PosInf, XBound::PosInf) => Some(Ordering::Equal),
        (XBound::NegInf, _) | (_, XBound::PosInf) => Some(Ordering::Less),
        (_, XBound::NegInf) | (XBound::PosInf, _) => Some(Ordering::Greater),
        (XBound::At(x), XBound::At(y)) if x == y => Some(Ordering::Equal),
        (XBound::At(x), XBound::At(y)) => x.cmp_disjoint(y),
    }
}

/// Lists every structural defect; an empty list means the graph is transversal and generic.
pub fn validate_transversal(g: &PRGraph) -> Vec<GraphDefect> {
    let mut out = Vec::new();
    for (v, vx) in g.vertices.iter().enumerate() {
        let want = match vx.kind {
            VertexKind::Valency3Split | VertexKind::Valency3Merge => 3,
            _ => 1,
        };
        let valency = g.valency(v);
        if valency != want {
            out.push(GraphDefect::Valency { vertex: v, kind: vx.kind, valency });
        }
    }
    let fin = g.finite_vertices();
    for (i, &a) in fin.iter().enumerate() {
        for &b in &fin[i + 1..] {
            if cmp_bound(&g.vertices[a].x, &g.vertices[b].x) != Some(Ordering::Less)
                && cmp_bound(&g.vertices[a].x, &g.vertices[b].x) != Some(Ordering::Greater)
            {
                out.push(GraphDefect::SharedAbscissa { a, b });
            }
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        if e.src >= g.vertices.len() || e.dst >= g.vertices.len() {
            out.push(GraphDefect::EdgeNotIncreasing { edge: i });
            continue;
        }
        if cmp_bound(&g.vertices[e.src].x, &g.vertices[e.dst].x) != Some(Ordering::Less) {
            out.push(GraphDefect::EdgeNotIncreasing { edge: i });
        }
        let arrow = g.vertices[e.src].kind.is_arrowhead() || g.vertices[e.dst].kind.is_arrowhead();
        let ok = if arrow { e.feather == Feather::for_fiber(e.fiber_type) } else { e.feather == Feather::None };
        if !ok {
            out.push(GraphDefect::Feather { edge: i });
        }
    }
    for (k, s) in g.slabs.iter().enumerate() {
        let mut spanning: Vec<usize> = (0..g.edges.len())
            .filter(|&i| {
                let e = &g.edges[i];
                e.src < g.vertices.len()
                    && e.dst < g.vertices.len()
                    && matches!(cmp_bound(&g.vertices[e.src].x, &s.x_lo), Some(Ordering::Less | Ordering::Equal))
                    && matches!(cmp_bound(&s.x_hi, &g.vertices[e.dst].x), Some(Ordering::Less | Ordering::Equal))
            })
            .collect();
        let mut listed = s.order.clone();
        spanning.sort_unstable();
        listed.sort_unstable();
        if spanning != listed {
            out.push(GraphDefect::SlabOrder { slab: k });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    fn code(s: &str) -> CanonicalCode {
        s.parse().unwrap()
    }

    #[test]
    fn code_round_trips_through_text() {
        let c = code("initial [whole_line] events [Split@0(ray_down,ray_up) Birth@1(bounded)] final [ray_down, bounded, ray_up]");
        assert_eq!(c.to_string().parse::<CanonicalCode>().unwrap(), c);
        assert_eq!(c.replay().unwrap().len(), 3);
    }

    #[test]
    fn replay_rejects_bad_positions() {
        let c = code("initial [] events [Death@0()] final []");
        assert!(c.replay().is_err());
    }

    #[test]
    fn disk_graph_from_code() {
        let c = code("initial [] events [Birth@0(bounded) Death@0()] final []");
        let g = graph_from_code(&c).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(canonical_code(&g).unwrap(), c);
        assert_eq!(boundary_permutation(&g).unwrap(), vec![1, 2]);
        assert!(validate_transversal(&g).is_empty());
        assert_eq!(ovals_and_lines(&g).unwrap(), (1, 0));
    }

    #[test]
    fn dual_of_disk_is_punctured_plane() {
        let g = graph_from_code(&code("initial [] events [Birth@0(bounded) Death@0()] final []")).unwrap();
        let d = trident_dual(&g).unwrap();
        let c = canonical_code(&d).unwrap();
        assert_eq!(
            c,
            code("initial [whole_line] events [Split@0(ray_down,ray_up) Merge@0(whole_line)] final [whole_line]")
        );
        let inv = invariants(&d);
        assert_eq!((inv.b0, inv.b1), (1, 1));
        assert_eq!(inv.arrows.double, 2);
        assert_eq!(ovals_and_lines(&d).unwrap(), (1, 0));
        // and back again
        assert_eq!(canonical_code(&trident_dual(&d).unwrap()).unwrap(), canonical_code(&g).unwrap());
    }

    #[test]
    fn whole_plane_has_no_dual() {
        let g = graph_from_code(&code("initial [whole_line] events [] final [whole_line]")).unwrap();
        assert_eq!(trident_dual(&g), Err(Error::EmptyBoundary));
    }

    #[test]
    fn half_plane_counts_one_line() {
        let g = graph_from_code(&code("initial [ray_up] events [] final [ray_up]")).unwrap();
        assert_eq!(ovals_and_lines(&g).unwrap(), (0, 1));
        let d = trident_dual(&g).unwrap();
        assert_eq!(canonical_code(&d).unwrap(), code("initial [ray_down] events [] final [ray_down]"));
    }

    #[test]
    fn tree_permutation() {
        // one lobe splitting in two
        let g = graph_from_code(&code(
            "initial [] events [Birth@0(bounded) Split@0(bounded,bounded) Death@0() Death@0()] final []",
        ))
        .unwrap();
        assert_eq!(boundary_permutation(&g).unwrap(), vec![1, 3, 2, 4]);
        let inv = invariants(&g);
        assert_eq!(inv.euler, 1);
        assert_eq!(inv.valencies.get(&3), Some(&1));
    }

    #[test]
    fn annulus_is_not_a_disk() {
        let g = graph_from_code(&code(
            "initial [] events [Birth@0(bounded) Split@0(bounded,bounded) Merge@0(bounded) Death@0()] final []",
        ))
        .unwrap();
        assert_eq!(boundary_permutation(&g), Err(Error::NotADisk));
        assert_eq!(ovals_and_lines(&g).unwrap(), (2, 0));
        assert_eq!(invariants(&g).euler, 0);
    }

    #[test]
    fn validation_flags_bad_feathers() {
        let mut g = graph_from_code(&code("initial [ray_up] events [] final [ray_up]")).unwrap();
        assert!(validate_transversal(&g).is_empty());
        g.edges[0].feather = Feather::Both;
        assert_eq!(validate_transversal(&g), vec![GraphDefect::Feather { edge: 0 }]);
    }

    #[test]
    fn simple_feathers_pair_into_lines() {
        let h = graph_from_code(&code("initial [ray_up] events [Split@0(bounded,ray_up)] final [bounded, ray_up]"))
            .unwrap();
        assert_eq!(invariants(&h).arrows.simple, 2);
        assert_eq!(invariants(&h).arrows.plain, 1);
        assert_eq!(ovals_and_lines(&h).unwrap(), (0, 2));
        let odd = graph_from_code(&code("initial [ray_up] events [Death@0()] final []")).unwrap();
        assert_eq!(ovals_and_lines(&odd), Err(Error::InconsistentFeathers));
    }

    #[test]
    fn three_components_two_cycles() {
        // a holed half-plane below a line, a disk, and a holed region inside a parabola
        let g = graph_from_code(&code(
            "initial [ray_down] events [Birth@1(bounded) Birth@2(bounded) Death@1() \
             Split@0(ray_down,bounded) Split@2(bounded,bounded) Merge@0(ray_down) Merge@1(bounded)] \
             final [ray_down, bounded]",
        ))
        .unwrap();
        let inv = invariants(&g);
        assert_eq!((inv.b0, inv.b1, inv.unbounded_components), (3, 2, 2));
        assert_eq!((inv.arrows.plain, inv.arrows.simple), (1, 2));
        assert_eq!(ovals_and_lines(&g).unwrap(), (3, 2));
    }
}
