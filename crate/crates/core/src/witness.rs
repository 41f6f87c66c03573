//! Verdict values and the evidence attached to them.

use std::fmt;

use crate::analysis::GCircuitWitness;
use crate::model::{EdgeId, Elem, Path, VertexId};
use crate::trace::{FarkasCertificate, TraceSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "Yes",
            Tri::No => "No",
            Tri::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which graph a witness lives on: the input `E` or the quotient `Ẽ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphSide {
    Input,
    Quotient,
}

impl GraphSide {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphSide::Input => "E",
            GraphSide::Quotient => "quotient",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankScope {
    AllVertices,
    /// Only vertices receiving exactly one edge.
    SingleReceivers,
}

/// Everything `vertex` (or its orbit) receives paths from, with one path each, plus a ranking
/// of the remaining vertices proving no infinite path avoids the reached set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachCertificate {
    pub vertex: VertexId,
    pub paths: Vec<Path>,
    pub outside_ranks: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// No `g ≠ 1` fixes an edge with trivial restriction; replayed by rescanning `G × E¹`.
    PseudoFreeScan,
    FixedEdge {
        g: Elem,
        edge: EdgeId,
    },
    GCircuit(GCircuitWitness),
    EntrylessGCircuit(GCircuitWitness),
    CircuitWithoutEntry {
        side: GraphSide,
        path: Path,
    },
    /// Ranks constant on orbits (input side) that drop along every edge inside the scope.
    OrbitRanking {
        side: GraphSide,
        scope: RankScope,
        ranks: Vec<Option<usize>>,
    },
    /// `(g, vertex)` together with a set of states closed under restriction, each fixing its
    /// vertex and every edge it receives.
    TrivialCylinder {
        g: Elem,
        vertex: VertexId,
        closed: Vec<(Elem, VertexId)>,
    },
    /// For every `g ≠ 1` and vertex `v`, a path received at `v` that `g` moves.
    MovedPaths(Vec<(Elem, VertexId, Path)>),
    /// Cofinality; on the input side reachability starts from whole orbits.
    Reachability {
        side: GraphSide,
        per_vertex: Vec<ReachCertificate>,
    },
    NotCofinal {
        side: GraphSide,
        vertex: VertexId,
        cycle: Path,
    },
    /// Each vertex with a path to the start of a G-circuit.
    ReceivesFromGCircuits(Vec<(VertexId, Path, GCircuitWitness)>),
    /// No circuit without entry (ranking on single receivers) and each vertex with a path to
    /// a vertex carrying a circuit.
    PiSufficient {
        side: GraphSide,
        ranks: Vec<Option<usize>>,
        per_vertex: Vec<(VertexId, Path, Path)>,
    },
    Trace {
        side: GraphSide,
        solution: TraceSolution,
    },
    Farkas {
        side: GraphSide,
        certificate: FarkasCertificate,
    },
    All(Vec<Witness>),
    Gap(String),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::PseudoFreeScan => "pseudo_free_scan",
            Witness::FixedEdge { .. } => "fixed_edge",
            Witness::GCircuit(_) => "g_circuit",
            Witness::EntrylessGCircuit(_) => "entryless_g_circuit",
            Witness::CircuitWithoutEntry { .. } => "circuit_without_entry",
            Witness::OrbitRanking { .. } => "orbit_ranking",
            Witness::TrivialCylinder { .. } => "trivial_cylinder",
            Witness::MovedPaths(_) => "moved_paths",
            Witness::Reachability { .. } => "reachability",
            Witness::NotCofinal { .. } => "not_cofinal",
            Witness::ReceivesFromGCircuits(_) => "receives_from_g_circuits",
            Witness::PiSufficient { .. } => "pi_sufficient",
            Witness::Trace { .. } => "trace",
            Witness::Farkas { .. } => "farkas",
            Witness::All(_) => "all",
            Witness::Gap(_) => "gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: Tri,
    /// The rule that produced the value.
    pub rule: String,
    pub witness: Witness,
}

impl Verdict {
    pub fn yes(rule: &str, witness: Witness) -> Self {
        Verdict {
            value: Tri::Yes,
            rule: rule.to_string(),
            witness,
        }
    }

    pub fn no(rule: &str, witness: Witness) -> Self {
        Verdict {
            value: Tri::No,
            rule: rule.to_string(),
            witness,
        }
    }

    pub fn unknown(rule: &str, gap: impl Into<String>) -> Self {
        Verdict {
            value: Tri::Unknown,
            rule: rule.to_string(),
            witness: Witness::Gap(gap.into()),
        }
    }
}
