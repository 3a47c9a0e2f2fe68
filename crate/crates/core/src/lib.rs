//! Poincaré–Reeb graphs of plane algebraic domains with exact arithmetic.
//!
//! The pipeline runs from polynomials ([`poly`]) through curve topology
//! ([`curve`]) and domain fibers ([`domain`]) to the sweep that builds the graph
//! ([`reeb`]), combinatorial invariants ([`graphops`]) and the branch-adding
//! constructions ([`realize`]).

pub mod curve;
pub mod domain;
pub mod error;
pub mod expr;
pub mod graphops;
pub mod poly;
pub mod rational;
pub mod realize;
pub mod reeb;

#[cfg(test)]
pub(crate) mod testutil;

pub use curve::{CurveArc, TangencyKind, TangencyPoint, XBound};
pub use domain::{Defect, DomainSpec, Fiber, FiberType, FiniteTypeClass};
pub use error::{Error, Result};
pub use expr::{parse_polynomial, ParseError};
pub use graphops::{CanonicalCode, Event, EventKind};
pub use poly::{BivariatePolynomial, RootInterval, UnivariatePolynomial, Var};
pub use rational::Rational;
pub use reeb::{Feather, PRGraph, SourceEmbedding, VertexKind};
