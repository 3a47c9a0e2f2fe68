//! Command implementations behind the `reeb` binary.

pub mod emit;
pub mod render;
pub mod specfile;

use std::io::Read;

use reeb_core::domain::{finite_type_class, genericity_report, Domain};
use reeb_core::graphops::{
    boundary_permutation, canonical_code, invariants, ovals_and_lines, trident_dual, vertically_equivalent,
};
use reeb_core::realize::{add_branches, random_domain, Case, RealizationRequest};
use reeb_core::reeb::sweep;
use reeb_core::{DomainSpec, Error, FiniteTypeClass, PRGraph};
use serde::Serialize;
use serde_json::json;
use thiserror::Error as ThisError;

use emit::{graph_dot, graph_from_json, graph_json, GraphJson};
use render::{render_svg, Window};
use specfile::{pair_of, SpecFile};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 input defect, 3 blocked by genericity, 4 search failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BlockedByDefect(_) | Error::NonGenericGraph(_) | Error::BaseNotGeneric(_)) => 3,
            CliError::Core(Error::EpsilonSearchFailed | Error::GenerationFailed(_)) => 4,
            _ => 2,
        }
    }
}

/// Text for stdout and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// A spec file or a graph JSON file.
pub enum Input {
    Spec(DomainSpec),
    Graph(PRGraph),
}

impl Input {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        if v.get("vertices").is_some() {
            let j: GraphJson = serde_json::from_value(v)?;
            Ok(Input::Graph(graph_from_json(&j)?))
        } else {
            let f: SpecFile = serde_json::from_value(v)?;
            Ok(Input::Spec(f.to_spec()?))
        }
    }

    /// Reads a file, or stdin for `-`.
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
        };
        Self::parse(&text)
    }

    pub fn graph(&self) -> Result<PRGraph, CliError> {
        match self {
            Input::Spec(s) => Ok(sweep(s)?),
            Input::Graph(g) => Ok(g.clone()),
        }
    }

    pub fn spec(&self) -> Result<&DomainSpec, CliError> {
        match self {
            Input::Spec(s) => Ok(s),
            Input::Graph(_) => Err(CliError::Input("this command needs a domain spec, not a graph".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

fn pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn class_name(c: FiniteTypeClass) -> &'static str {
    match c {
        FiniteTypeClass::FiniteType => "finite_type",
        FiniteTypeClass::WeaklyFiniteType => "weakly_finite_type",
        FiniteTypeClass::NotAdmissible => "not_admissible",
    }
}

/// Genericity and finite-type report. Exits 2 when not admissible, 3 on defects.
pub fn analyze(spec: &DomainSpec) -> Result<Output, CliError> {
    let d = Domain::new(spec)?;
    let class = finite_type_class(spec)?;
    let defects = genericity_report(spec)?;
    let curves: Vec<_> = (0..spec.curves.len())
        .map(|c| {
            let a = d.curve(c);
            json!({"curve": c, "components": a.components, "bounded": a.component_bounded})
        })
        .collect();
    let report = json!({
        "class": class_name(class.class),
        "reasons": class.reasons,
        "defects": defects.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "curves": curves,
        "boundary": d.boundary_components(),
    });
    let code = match (class.class, defects.is_empty()) {
        (FiniteTypeClass::NotAdmissible, _) => 2,
        (_, false) => 3,
        _ => 0,
    };
    Ok(Output { text: pretty(&report)?, code })
}

pub fn emit_graph(g: &PRGraph, format: GraphFormat) -> Result<String, CliError> {
    match format {
        GraphFormat::Json => pretty(&graph_json(g)?),
        GraphFormat::Dot => Ok(graph_dot(g)),
    }
}

pub fn dual(input: &Input, format: GraphFormat) -> Result<String, CliError> {
    emit_graph(&trident_dual(&input.graph()?)?, format)
}

pub fn code(input: &Input) -> Result<String, CliError> {
    Ok(format!("{}\n", canonical_code(&input.graph()?)?))
}

pub fn equiv(a: &Input, b: &Input) -> Result<String, CliError> {
    Ok(format!("{}\n", vertically_equivalent(&a.graph()?, &b.graph()?)?))
}

pub fn permutation(input: &Input) -> Result<String, CliError> {
    let s = boundary_permutation(&input.graph()?)?;
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    Ok(format!("({})\n", parts.join(" ")))
}

/// Ovals and lines from the graph, and read off the curves when a spec is given.
pub fn census(input: &Input) -> Result<String, CliError> {
    let g = input.graph()?;
    let (ovals, lines) = ovals_and_lines(&g)?;
    let inv = invariants(&g);
    let mut out = json!({
        "graph": {"ovals": ovals, "lines": lines},
        "b0": inv.b0,
        "b1": inv.b1,
        "euler": inv.euler,
    });
    if let Input::Spec(spec) = input {
        let d = Domain::new(spec)?;
        let bounded = d.boundary_components().iter().filter(|&&(c, k)| d.curve(c).component_bounded[k]).count();
        let total = d.boundary_components().len();
        out["curves"] = json!({"ovals": bounded, "lines": total - bounded});
    }
    pretty(&out)
}

#[derive(Serialize)]
struct RealizeOut {
    #[serde(flatten)]
    spec: SpecFile,
    epsilon: specfile::RationalPair,
    auxiliary: String,
    target: String,
}

/// The realized spec, readable as an input spec; extra fields are ignored on input.
pub fn realize(spec: &DomainSpec, case: Case) -> Result<String, CliError> {
    let r = add_branches(&RealizationRequest { base: spec.clone(), case })?;
    pretty(&RealizeOut {
        spec: SpecFile::from_spec(&r.spec),
        epsilon: pair_of(&r.epsilon),
        auxiliary: r.auxiliary.to_string(),
        target: r.target.to_string(),
    })
}

pub fn random(seed: u64, complexity: usize) -> Result<String, CliError> {
    pretty(&SpecFile::from_spec(&random_domain(seed, complexity)?))
}

pub fn render(spec: &DomainSpec, window: Option<&str>) -> Result<String, CliError> {
    let w = window.map(Window::parse).transpose()?;
    render_svg(spec, &sweep(spec)?, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(Error::PointOnCurve).exit_code(), 2);
        assert_eq!(CliError::Core(Error::BlockedByDefect(Vec::new())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::EpsilonSearchFailed).exit_code(), 4);
        assert_eq!(CliError::Core(Error::GenerationFailed(64)).exit_code(), 4);
    }

    #[test]
    fn input_kind_is_detected() {
        let spec = r#"{"curves": ["x^2 + y^2 - 1"], "selected": [[0, 0]], "seed": [[0, 1], [0, 1]]}"#;
        let g = emit_graph(&Input::parse(spec).unwrap().graph().unwrap(), GraphFormat::Json).unwrap();
        assert!(matches!(Input::parse(&g).unwrap(), Input::Graph(_)));
        assert!(Input::parse(&g).unwrap().spec().is_err());
    }
}
