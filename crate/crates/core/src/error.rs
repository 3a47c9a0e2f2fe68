use thiserror::Error;

use crate::domain::Defect;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("interval does not isolate a root")]
    NotIsolating,
    #[error("vertical line component at x in [{0}]")]
    VerticalLineComponent(String),
    #[error("vertical asymptote at x in [{0}]")]
    AsymptoteDetected(String),
    #[error("singular point near ({0})")]
    SingularCurve(String),
    #[error("point lies on a boundary curve")]
    PointOnCurve,
    #[error("blocked by genericity defects: {0:?}")]
    BlockedByDefect(Vec<Defect>),
    #[error("domain is not of weakly finite type: {0}")]
    NotWeaklyFinite(String),
    #[error("selected components intersect: {0}")]
    ComponentsIntersect(String),
    #[error("curve {0} is not square-free")]
    NotSquareFree(usize),
    #[error("graph is not generic: {0}")]
    NonGenericGraph(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not the tree of a disk domain")]
    NotADisk,
    #[error("odd number of simple-feather arrowheads")]
    InconsistentFeathers,
    #[error("empty boundary: nothing to dualize")]
    EmptyBoundary,
    #[error("no epsilon in the schedule verifies the target graph")]
    EpsilonSearchFailed,
    #[error("base domain is not a compact connected generic domain: {0}")]
    BaseNotGeneric(String),
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
