//! Finite self-similar graph actions: validation, the orbit quotient, and decision procedures
//! for effectivity, minimality, simplicity, pure infiniteness and stable finiteness of the
//! associated algebras.

pub mod analysis;
pub mod catalog;
pub mod check;
pub mod classify;
pub mod document;
pub mod error;
pub mod lp;
pub mod model;
pub mod monoid;
pub mod orbit;
pub mod quotient;
pub mod render;
pub mod trace;
pub mod witness;

pub use error::{
    AnalysisError, LoadError, ModelError, MonoidError, ParseError, ValidationError, Violation,
};
pub use model::{
    Cocycle, Edge, EdgeId, Elem, FinGroup, Graph, GraphAction, Path, SelfSimilarGraph, VertexId,
};
pub use quotient::{build_quotient, QuotientGraph};
