//! The quotient graph `Ẽ`: one vertex per orbit, and for the chosen representative `v` of
//! each orbit one edge `ẽ : [d(e)] → [v]` per `e ∈ r⁻¹(v)`.

use std::collections::HashMap;

use crate::model::{Edge, EdgeId, Elem, Graph, Path, SelfSimilarGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    graph: Graph,
    orbit_of: Vec<VertexId>,
    rep: Vec<VertexId>,
    edge_origin: Vec<EdgeId>,
    tilde: HashMap<EdgeId, EdgeId>,
}

/// Builds `Ẽ`. Each orbit is represented by its first vertex in declaration order; classes are
/// named `[rep]` and edges `~e`.
pub fn build_quotient(ssg: &SelfSimilarGraph) -> QuotientGraph {
    let graph = ssg.graph();
    let labels = ssg.orbit_labels();

    let mut rep = Vec::new();
    let mut class_of_label = HashMap::new();
    for v in graph.vertices() {
        if labels[v.0] == v.0 {
            class_of_label.insert(v.0, VertexId(rep.len()));
            rep.push(v);
        }
    }
    let orbit_of: Vec<VertexId> = graph
        .vertices()
        .map(|v| class_of_label[&labels[v.0]])
        .collect();

    let names = rep
        .iter()
        .map(|&v| format!("[{}]", graph.vertex_name(v)))
        .collect();
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    let mut tilde = HashMap::new();
    for (class, &v) in rep.iter().enumerate() {
        for &e in graph.in_edges(v) {
            tilde.insert(e, EdgeId(edges.len()));
            edges.push(Edge {
                name: format!("~{}", graph.edge_name(e)),
                d: orbit_of[graph.d(e).0],
                r: VertexId(class),
            });
            edge_origin.push(e);
        }
    }

    QuotientGraph {
        graph: Graph::from_parts(names, edges),
        orbit_of,
        rep,
        edge_origin,
        tilde,
    }
}

impl QuotientGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `[v]` for a vertex of `E`.
    pub fn orbit_of(&self, v: VertexId) -> VertexId {
        self.orbit_of[v.0]
    }

    /// The chosen representative of a class of `Ẽ`.
    pub fn representative(&self, class: VertexId) -> VertexId {
        self.rep[class.0]
    }

    /// The edge of `E` an edge of `Ẽ` was copied from.
    pub fn edge_origin(&self, e: EdgeId) -> EdgeId {
        self.edge_origin[e.0]
    }

    /// `ẽ` for an edge received at a representative, `None` otherwise.
    pub fn tilde(&self, e: EdgeId) -> Option<EdgeId> {
        self.tilde.get(&e).copied()
    }

    /// Lifts a path of `Ẽ` to `E`: `γ₁ = α₁` and `γᵢ = g₁⋯gᵢ₋₁·αᵢ`, where `αᵢ` are the origin
    /// edges and `gᵢ` satisfies `d(αᵢ) = gᵢ·r(αᵢ₊₁)`.
    pub fn lift_path(&self, ssg: &SelfSimilarGraph, path: &Path) -> Path {
        let origins: Vec<EdgeId> = path.edges().iter().map(|&e| self.edge_origin(e)).collect();
        if origins.is_empty() {
            return Path::empty(self.representative(path.range()));
        }
        let graph = ssg.graph();
        let group = ssg.group();
        let mut acc = group.identity();
        let mut lifted = vec![origins[0]];
        for pair in origins.windows(2) {
            let g: Elem = ssg
                .twist_between(graph.r(pair[1]), graph.d(pair[0]))
                .expect("consecutive quotient edges meet in one orbit");
            acc = group.mul(acc, g);
            lifted.push(ssg.act_edge(acc, pair[1]));
        }
        graph.path(lifted).expect("lifted edges compose")
    }

    /// Pushes a path of `E` down to `Ẽ`, inverting [`QuotientGraph::lift_path`]: the first edge is
    /// moved to its representative, and each later edge is pulled back by the same accumulated
    /// element the lift would apply to it.
    pub fn push_path(&self, ssg: &SelfSimilarGraph, path: &Path) -> Path {
        if path.is_empty() {
            return Path::empty(self.orbit_of(path.range()));
        }
        let graph = ssg.graph();
        let group = ssg.group();
        let to_rep = |v| {
            let rep = self.representative(self.orbit_of(v));
            if v == rep {
                group.identity()
            } else {
                ssg.twist_between(v, rep)
                    .expect("representative lies in the orbit")
            }
        };
        let edges = path.edges();
        // acc maps origin edges of Ẽ onto the edges of the path
        let mut acc = group.inv(to_rep(graph.r(edges[0])));
        let mut pushed = Vec::with_capacity(edges.len());
        let mut prev_origin: Option<EdgeId> = None;
        for &e in edges {
            if let Some(prev) = prev_origin {
                let rep = self.representative(self.orbit_of(graph.r(e)));
                let g = ssg
                    .twist_between(rep, graph.d(prev))
                    .expect("consecutive edges meet in one orbit");
                acc = group.mul(acc, g);
            }
            let origin = ssg.act_edge(group.inv(acc), e);
            pushed.push(
                self.tilde(origin)
                    .expect("edges received at representatives have tilde copies"),
            );
            prev_origin = Some(origin);
        }
        self.graph.path(pushed).expect("pushed edges compose")
    }
}
