//! Graph output as JSON and DOT, and JSON input back to a graph.

use std::fmt::Write as _;

use reeb_core::graphops::canonical_code;
use reeb_core::rational::parse_rational;
use reeb_core::reeb::{Edge, GraphSlab, Vertex};
use reeb_core::{CanonicalCode, Feather, FiberType, PRGraph, RootInterval, VertexKind, XBound};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexJson {
    pub id: usize,
    pub x_lo: String,
    pub x_hi: String,
    pub kind: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeJson {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
    pub fiber_type: String,
    pub feather: String,
}

/// `x_lo` and `x_hi` are the inner ends of the bounding vertex intervals, so the open
/// interval between them lies inside the slab.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SlabJson {
    pub x_lo: String,
    pub x_hi: String,
    /// Edge ids bottom to top.
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeJson {
    pub initial: Vec<String>,
    pub events: Vec<String>,
    #[serde(rename = "final")]
    pub terminal: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub slabs: Vec<SlabJson>,
    pub code: CodeJson,
}

fn ends(x: &XBound) -> (String, String) {
    match x {
        XBound::NegInf => ("-inf".into(), "-inf".into()),
        XBound::PosInf => ("+inf".into(), "+inf".into()),
        XBound::At(r) => (r.lo.to_string(), r.hi.to_string()),
    }
}

pub fn code_json(code: &CanonicalCode) -> CodeJson {
    let names = |ts: &[FiberType]| ts.iter().map(|t| t.as_str().to_string()).collect();
    CodeJson {
        initial: names(&code.initial),
        events: code.events.iter().map(|e| e.to_string()).collect(),
        terminal: names(&code.terminal),
    }
}

pub fn code_from_json(c: &CodeJson) -> Result<CanonicalCode, CliError> {
    let text = format!("initial [{}] events [{}] final [{}]", c.initial.join(" "), c.events.join(" "), c.terminal.join(" "));
    text.parse().map_err(|e| CliError::Input(format!("code: {e}")))
}

pub fn graph_json(g: &PRGraph) -> Result<GraphJson, CliError> {
    let vertices = g
        .vertices
        .iter()
        .enumerate()
        .map(|(id, v)| {
            let (x_lo, x_hi) = ends(&v.x);
            VertexJson { id, x_lo, x_hi, kind: v.kind.as_str().into() }
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .enumerate()
        .map(|(id, e)| EdgeJson {
            id,
            src: e.src,
            dst: e.dst,
            fiber_type: e.fiber_type.as_str().into(),
            feather: e.feather.as_str().into(),
        })
        .collect();
    let slabs = g
        .slabs
        .iter()
        .map(|s| SlabJson { x_lo: ends(&s.x_lo).1, x_hi: ends(&s.x_hi).0, order: s.order.clone() })
        .collect();
    Ok(GraphJson { vertices, edges, slabs, code: code_json(&canonical_code(g)?) })
}

fn bound(lo: &str, hi: &str) -> Result<XBound, CliError> {
    match (lo, hi) {
        ("-inf", _) => Ok(XBound::NegInf),
        ("+inf", _) => Ok(XBound::PosInf),
        _ => {
            let bad = |s: &str| CliError::Input(format!("`{s}` is not a rational"));
            let l = parse_rational(lo).ok_or_else(|| bad(lo))?;
            let h = parse_rational(hi).ok_or_else(|| bad(hi))?;
            if l > h {
                return Err(CliError::Input(format!("empty interval [{lo}, {hi}]")));
            }
            Ok(XBound::At(if l == h { RootInterval::exact(l, 1) } else { RootInterval::new(l, h, 1) }))
        }
    }
}

/// Rebuilds the graph. Slab bounds are matched to vertices by their interval ends.
pub fn graph_from_json(j: &GraphJson) -> Result<PRGraph, CliError> {
    let bad = |m: String| CliError::Input(m);
    let mut vertices = Vec::with_capacity(j.vertices.len());
    for (i, v) in j.vertices.iter().enumerate() {
        if v.id != i {
            return Err(bad(format!("vertex ids must be 0, 1, ... in order; found {} at {i}", v.id)));
        }
        let kind = VertexKind::parse(&v.kind).ok_or_else(|| bad(format!("unknown vertex kind `{}`", v.kind)))?;
        vertices.push(Vertex { x: bound(&v.x_lo, &v.x_hi)?, kind, witness: None });
    }
    let mut edges = Vec::with_capacity(j.edges.len());
    for (i, e) in j.edges.iter().enumerate() {
        if e.id != i {
            return Err(bad(format!("edge ids must be 0, 1, ... in order; found {} at {i}", e.id)));
        }
        if e.src >= vertices.len() || e.dst >= vertices.len() {
            return Err(bad(format!("edge {i} names a missing vertex")));
        }
        let fiber_type =
            FiberType::parse(&e.fiber_type).ok_or_else(|| bad(format!("unknown fiber type `{}`", e.fiber_type)))?;
        let feather = Feather::parse(&e.feather).ok_or_else(|| bad(format!("unknown feather `{}`", e.feather)))?;
        edges.push(Edge { src: e.src, dst: e.dst, fiber_type, feather });
    }
    let find = |s: &str, left: bool| -> Result<XBound, CliError> {
        match s {
            "-inf" => Ok(XBound::NegInf),
            "+inf" => Ok(XBound::PosInf),
            _ => j
                .vertices
                .iter()
                .zip(&vertices)
                .find(|(v, _)| if left { v.x_hi == s } else { v.x_lo == s })
                .map(|(_, w)| w.x.clone())
                .ok_or_else(|| bad(format!("slab bound {s} matches no vertex"))),
        }
    };
    let mut slabs = Vec::with_capacity(j.slabs.len());
    for s in &j.slabs {
        if s.order.iter().any(|&e| e >= edges.len()) {
            return Err(bad("slab order names a missing edge".into()));
        }
        slabs.push(GraphSlab { x_lo: find(&s.x_lo, true)?, x_hi: find(&s.x_hi, false)?, order: s.order.clone() });
    }
    Ok(PRGraph { vertices, edges, slabs })
}

/// DOT with vertices ranked left to right by abscissa and arrowheads drawn as diamonds.
pub fn graph_dot(g: &PRGraph) -> String {
    let mut out = String::from("digraph reeb {\n  rankdir=LR;\n  node [shape=circle, label=\"\"];\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let shape = if v.kind.is_arrowhead() { "diamond" } else { "circle" };
        let _ = writeln!(out, "  v{i} [shape={shape}, tooltip=\"{} at {}\"];", v.kind.as_str(), v.x);
    }
    for (i, e) in g.edges.iter().enumerate() {
        let mut label = format!("e{i} {}", e.fiber_type);
        if e.feather != Feather::None {
            let _ = write!(label, " feather {}", e.feather.as_str());
        }
        let _ = writeln!(out, "  v{} -> v{} [label=\"{label}\"];", e.src, e.dst);
    }
    // slab order fixes the ranks: every vertex sits right of the slabs before it
    let mut order: Vec<usize> = (0..g.vertices.len()).collect();
    order.sort_by(|&a, &b| cmp_bound(&g.vertices[a].x, &g.vertices[b].x));
    for w in order.windows(2) {
        if cmp_bound(&g.vertices[w[0]].x, &g.vertices[w[1]].x) == std::cmp::Ordering::Less {
            let _ = writeln!(out, "  v{} -> v{} [style=invis];", w[0], w[1]);
        } else {
            let _ = writeln!(out, "  {{ rank=same; v{}; v{}; }}", w[0], w[1]);
        }
    }
    out.push_str("}\n");
    out
}

fn cmp_bound(a: &XBound, b: &XBound) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a, b) {
        (XBound::NegInf, XBound::NegInf) | (XBound::PosInf, XBound::PosInf) => Equal,
        (XBound::NegInf, _) | (_, XBound::PosInf) => Less,
        (_, XBound::NegInf) | (XBound::PosInf, _) => Greater,
        (XBound::At(r), XBound::At(s)) => r.cmp_disjoint(s).unwrap_or(Equal),
    }
}
