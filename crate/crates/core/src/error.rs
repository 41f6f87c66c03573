use std::fmt;

use thiserror::Error;

/// Which group law a multiplication table breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupLaw {
    Closure,
    LeftIdentity,
    RightIdentity,
    Associativity,
    Inverse,
}

/// Which action law a pair of permutation tables breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionLaw {
    NotBijective,
    IdentityNotTrivial,
    Homomorphism,
    RangeMismatch,
    DomainMismatch,
}

/// One violated axiom, naming the offending tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex {
        vertex: String,
    },
    DuplicateEdge {
        edge: String,
    },
    DanglingEdge {
        edge: String,
        endpoint: String,
    },
    UnknownName {
        context: String,
        name: String,
    },
    MissingEntry {
        context: String,
    },
    NotAGroup {
        law: GroupLaw,
        elements: Vec<String>,
    },
    NotAnAction {
        law: ActionLaw,
        g: String,
        h: Option<String>,
        item: String,
    },
    CocycleLawViolated {
        g: String,
        h: String,
        e: String,
    },
    VertexCompatViolated {
        g: String,
        e: String,
        v: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex { vertex } => write!(f, "DuplicateVertex: {vertex}"),
            Violation::DuplicateEdge { edge } => write!(f, "DuplicateEdge: {edge}"),
            Violation::DanglingEdge { edge, endpoint } => {
                write!(
                    f,
                    "DanglingEdge: edge {edge} names undeclared vertex {endpoint}"
                )
            }
            Violation::UnknownName { context, name } => {
                write!(f, "UnknownName: {name} in {context}")
            }
            Violation::MissingEntry { context } => write!(f, "MissingEntry: {context}"),
            Violation::NotAGroup { law, elements } => {
                write!(f, "NotAGroup({law:?}): ({})", elements.join(", "))
            }
            Violation::NotAnAction { law, g, h, item } => match h {
                Some(h) => write!(f, "NotAnAction({law:?}): g={g}, h={h}, item={item}"),
                None => write!(f, "NotAnAction({law:?}): g={g}, item={item}"),
            },
            Violation::CocycleLawViolated { g, h, e } => {
                write!(f, "CocycleLawViolated: g={g}, h={h}, e={e}")
            }
            Violation::VertexCompatViolated { g, e, v } => {
                write!(f, "VertexCompatViolated: g={g}, e={e}, v={v}")
            }
        }
    }
}

/// Every axiom violation found while validating a description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl From<Vec<Violation>> for ValidationError {
    fn from(violations: Vec<Violation>) -> Self {
        ValidationError { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown group element {0}")]
    UnknownElement(String),
    #[error("edges at positions {position} and {} are not composable", position + 1)]
    NotComposable { position: usize },
    #[error("a path built from edges needs at least one edge")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("graph has sources (vertices receiving no edges): {}", vertices.join(", "))]
    SourcePresent { vertices: Vec<String> },
    #[error("circuit enumeration exceeded {limit} circuits")]
    ResourceExceeded { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("search bound {bound} is below the element degree {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("element has {got} coordinates, presentation has {expected} generators")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

/// Failure to turn document text into a validated model.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid description: {0}")]
    Invalid(#[from] ValidationError),
}
