//! Graph traces and graph G-traces as exact rational feasibility problems.
//!
//! A trace is a vertex weighting `T ≥ 0` with `ΣT = 1`, `T(r(e)) ≥ T(d(e))` for every edge,
//! and `T(v) = Σ_{r(e)=v} T(d(e))` at every vertex receiving at least one edge. Vertices that
//! receive nothing are exempt from balance: the empty sum would force them to zero. A G-trace is
//! additionally constant on orbits.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lp::{self, Feasibility, Row, RowKind};
use crate::model::{EdgeId, Graph, SelfSimilarGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TraceConstraint {
    /// `T(v) - Σ_{r(e)=v} T(d(e)) = 0`
    Balance(VertexId),
    /// `T(r(e)) - T(d(e)) ≥ 0`
    Monotone(EdgeId),
    /// `T(v) - T(w) = 0` for `w` in the orbit of `v`
    SameOrbit(VertexId, VertexId),
    /// `ΣT = 1`
    Normalization,
}

impl TraceConstraint {
    pub fn row(&self, graph: &Graph) -> Row {
        let n = graph.vertex_count();
        let mut coeffs = vec![BigRational::zero(); n];
        let (kind, rhs) = match *self {
            TraceConstraint::Balance(v) => {
                coeffs[v.0] += lp::int(1);
                for &e in graph.in_edges(v) {
                    coeffs[graph.d(e).0] -= lp::int(1);
                }
                (RowKind::Eq, 0)
            }
            TraceConstraint::Monotone(e) => {
                coeffs[graph.r(e).0] += lp::int(1);
                coeffs[graph.d(e).0] -= lp::int(1);
                (RowKind::Ge, 0)
            }
            TraceConstraint::SameOrbit(v, w) => {
                coeffs[v.0] += lp::int(1);
                coeffs[w.0] -= lp::int(1);
                (RowKind::Eq, 0)
            }
            TraceConstraint::Normalization => {
                coeffs.iter_mut().for_each(|c| *c = lp::int(1));
                (RowKind::Eq, 1)
            }
        };
        Row {
            coeffs,
            kind,
            rhs: lp::int(rhs),
        }
    }

    /// Whether the constraint genuinely belongs to the trace system of `graph`, with orbits
    /// given by `labels` when present.
    pub fn applies(&self, graph: &Graph, labels: Option<&[usize]>) -> bool {
        let n = graph.vertex_count();
        match *self {
            TraceConstraint::Balance(v) => v.0 < n && graph.in_degree(v) > 0,
            TraceConstraint::Monotone(e) => e.0 < graph.edge_count(),
            TraceConstraint::SameOrbit(v, w) => {
                v.0 < n && w.0 < n && labels.is_some_and(|l| l[v.0] == l[w.0])
            }
            TraceConstraint::Normalization => true,
        }
    }
}

/// The constraint list: balance at receiving vertices, optional monotonicity, orbit
/// equalities when `labels` is given, and normalization.
pub fn trace_constraints(
    graph: &Graph,
    labels: Option<&[usize]>,
    monotone: bool,
) -> Vec<TraceConstraint> {
    let mut out: Vec<TraceConstraint> = graph
        .vertices()
        .filter(|&v| graph.in_degree(v) > 0)
        .map(TraceConstraint::Balance)
        .collect();
    if monotone {
        out.extend(
            graph
                .edge_ids()
                .filter(|&e| graph.r(e) != graph.d(e))
                .map(TraceConstraint::Monotone),
        );
    }
    if let Some(labels) = labels {
        out.extend(
            graph
                .vertices()
                .filter(|v| labels[v.0] != v.0)
                .map(|v| TraceConstraint::SameOrbit(VertexId(labels[v.0]), v)),
        );
    }
    out.push(TraceConstraint::Normalization);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSolution {
    pub weights: Vec<BigRational>,
}

impl TraceSolution {
    pub fn weight(&self, v: VertexId) -> &BigRational {
        &self.weights[v.0]
    }

    /// Checks every defining condition directly from the graph.
    pub fn is_trace(&self, graph: &Graph, labels: Option<&[usize]>, monotone: bool) -> bool {
        let w = &self.weights;
        if w.len() != graph.vertex_count() || w.iter().any(|x| x.is_negative()) {
            return false;
        }
        if w.iter().sum::<BigRational>() != lp::int(1) {
            return false;
        }
        for v in graph.vertices().filter(|&v| graph.in_degree(v) > 0) {
            let incoming: BigRational = graph.in_edges(v).iter().map(|&e| &w[graph.d(e).0]).sum();
            if w[v.0] != incoming {
                return false;
            }
        }
        if monotone && graph.edge_ids().any(|e| w[graph.r(e).0] < w[graph.d(e).0]) {
            return false;
        }
        match labels {
            Some(l) => graph.vertices().all(|v| w[v.0] == w[l[v.0]]),
            None => true,
        }
    }
}

/// Nonnegative multipliers on inequalities, free on equalities, combining the trace
/// constraints into `0 ≥ (positive number)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<(TraceConstraint, BigRational)>,
}

impl FarkasCertificate {
    pub fn is_valid(&self, graph: &Graph, labels: Option<&[usize]>) -> bool {
        if !self
            .multipliers
            .iter()
            .all(|(c, _)| c.applies(graph, labels))
        {
            return false;
        }
        let rows: Vec<Row> = self.multipliers.iter().map(|(c, _)| c.row(graph)).collect();
        let y: Vec<BigRational> = self.multipliers.iter().map(|(_, y)| y.clone()).collect();
        lp::refutes(&rows, graph.vertex_count(), &y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceResult {
    Found(TraceSolution),
    Infeasible(FarkasCertificate),
}

impl TraceResult {
    pub fn solution(&self) -> Option<&TraceSolution> {
        match self {
            TraceResult::Found(s) => Some(s),
            TraceResult::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, TraceResult::Found(_))
    }
}

pub fn solve_trace_system(graph: &Graph, constraints: &[TraceConstraint]) -> TraceResult {
    let rows: Vec<Row> = constraints.iter().map(|c| c.row(graph)).collect();
    match lp::solve(&rows, graph.vertex_count()) {
        Feasibility::Feasible(weights) => TraceResult::Found(TraceSolution { weights }),
        Feasibility::Infeasible(y) => TraceResult::Infeasible(FarkasCertificate {
            multipliers: constraints
                .iter()
                .copied()
                .zip(y)
                .filter(|(_, y)| !y.is_zero())
                .collect(),
        }),
    }
}

pub fn graph_trace_exists(graph: &Graph) -> TraceResult {
    solve_trace_system(graph, &trace_constraints(graph, None, true))
}

pub fn graph_g_trace_exists(ssg: &SelfSimilarGraph) -> TraceResult {
    let labels = ssg.orbit_labels();
    solve_trace_system(
        ssg.graph(),
        &trace_constraints(ssg.graph(), Some(&labels), true),
    )
}
