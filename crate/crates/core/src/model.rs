//! Graphs, finite groups, actions and cocycles, and the validated self-similar triple.
//!
//! Orientation: an edge `e` is *received* by `r(e)` and comes from `d(e)`. The in-edges at
//! `v` are `r⁻¹(v)`, a source is a vertex receiving nothing, and a path `e₁…eₙ` satisfies
//! `d(eᵢ) = r(eᵢ₊₁)`, so paths are traversed from `r` towards `d`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{ActionLaw, GroupLaw, ModelError, ValidationError, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// A group element, as an index into [`FinGroup::elements`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub d: VertexId,
    pub r: VertexId,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    in_edges: Vec<Vec<EdgeId>>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from vertex names and `(id, d, r)` edge triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, ValidationError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut violations = Vec::new();
        let mut vertex_names = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for name in vertices {
            let name = name.into();
            if vertex_lookup.contains_key(&name) {
                violations.push(Violation::DuplicateVertex { vertex: name });
                continue;
            }
            vertex_lookup.insert(name.clone(), VertexId(vertex_names.len()));
            vertex_names.push(name);
        }

        let mut seen_edges = HashMap::new();
        let mut built = Vec::new();
        for (id, d, r) in edges {
            if seen_edges.insert(id.clone(), ()).is_some() {
                violations.push(Violation::DuplicateEdge { edge: id });
                continue;
            }
            let dv = vertex_lookup.get(&d).copied();
            let rv = vertex_lookup.get(&r).copied();
            for (endpoint, resolved) in [(&d, dv), (&r, rv)] {
                if resolved.is_none() {
                    violations.push(Violation::DanglingEdge {
                        edge: id.clone(),
                        endpoint: endpoint.clone(),
                    });
                }
            }
            if let (Some(d), Some(r)) = (dv, rv) {
                built.push(Edge { name: id, d, r });
            }
        }

        if violations.is_empty() {
            Ok(Graph::from_parts(vertex_names, built))
        } else {
            Err(violations.into())
        }
    }

    /// Builds a graph from already-resolved parts. Names must be unique and endpoints in range.
    pub(crate) fn from_parts(vertex_names: Vec<String>, edges: Vec<Edge>) -> Graph {
        let vertex_lookup = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i)))
            .collect();
        let edge_lookup = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), EdgeId(i)))
            .collect();
        let mut in_edges = vec![Vec::new(); vertex_names.len()];
        for (i, e) in edges.iter().enumerate() {
            in_edges[e.r.0].push(EdgeId(i));
        }
        Graph {
            vertex_names,
            edges,
            in_edges,
            vertex_lookup,
            edge_lookup,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn r(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].r
    }

    pub fn d(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].d
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    /// The edges received at `v`, that is `{ e : r(e) = v }`, in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn in_edges_of(&self, name: &str) -> Result<&[EdgeId], ModelError> {
        self.vertex_id(name)
            .map(|v| self.in_edges(v))
            .ok_or_else(|| ModelError::UnknownVertex(name.to_string()))
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v.0].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.d == v).count()
    }

    /// Vertices receiving no edges.
    pub fn sources(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| self.in_degree(v) == 0)
            .collect()
    }

    pub fn is_source_free(&self) -> bool {
        self.in_edges.iter().all(|es| !es.is_empty())
    }

    /// A nonempty path from a sequence of edges, checking composability.
    pub fn path(&self, edges: Vec<EdgeId>) -> Result<Path, ModelError> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(ModelError::EmptyPath),
        };
        for (i, pair) in edges.windows(2).enumerate() {
            if self.d(pair[0]) != self.r(pair[1]) {
                return Err(ModelError::NotComposable { position: i });
            }
        }
        Ok(Path {
            range: self.r(first),
            domain: self.d(last),
            edges,
        })
    }

    pub fn path_named(&self, edges: &[&str]) -> Result<Path, ModelError> {
        let ids = edges
            .iter()
            .map(|n| {
                self.edge_id(n)
                    .ok_or_else(|| ModelError::UnknownEdge(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.path(ids)
    }
}

/// A finite path `e₁…eₙ`, or the empty path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    domain: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(v: VertexId) -> Path {
        Path {
            range: v,
            domain: v,
            edges: Vec::new(),
        }
    }

    /// `r(path)`: the range of the first edge.
    pub fn range(&self) -> VertexId {
        self.range
    }

    /// `d(path)`: the domain of the last edge.
    pub fn domain(&self) -> VertexId {
        self.domain
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `r(e₁), …, r(eₙ), d(eₙ)`; a single vertex for the empty path.
    pub fn vertex_trace(&self, graph: &Graph) -> Vec<VertexId> {
        let mut trace: Vec<VertexId> = self.edges.iter().map(|&e| graph.r(e)).collect();
        trace.push(self.domain);
        trace
    }

    /// Appends an edge received at the current domain.
    pub fn push(&mut self, graph: &Graph, e: EdgeId) -> Result<(), ModelError> {
        if graph.r(e) != self.domain {
            return Err(ModelError::NotComposable {
                position: self.edges.len().saturating_sub(1),
            });
        }
        self.edges.push(e);
        self.domain = graph.d(e);
        Ok(())
    }

    pub fn display(&self, graph: &Graph) -> String {
        if self.edges.is_empty() {
            format!("({})", graph.vertex_name(self.range))
        } else {
            self.edges
                .iter()
                .map(|&e| graph.edge_name(e))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    identity: Elem,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl FinGroup {
    /// Validates `table[g][h] = gh` exhaustively: closure, identity laws, associativity, inverses.
    pub fn from_table(
        names: Vec<String>,
        identity: Elem,
        table: Vec<Vec<Elem>>,
    ) -> Result<FinGroup, ValidationError> {
        let n = names.len();
        let name = |g: usize| names.get(g).cloned().unwrap_or_else(|| format!("#{g}"));
        let mut violations = Vec::new();
        if identity.0 >= n {
            violations.push(Violation::NotAGroup {
                law: GroupLaw::Closure,
                elements: vec![name(identity.0)],
            });
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            violations.push(Violation::MissingEntry {
                context: "group table is not square over the element list".into(),
            });
        }
        for (g, row) in table.iter().enumerate() {
            for (h, gh) in row.iter().enumerate() {
                if gh.0 >= n {
                    violations.push(Violation::NotAGroup {
                        law: GroupLaw::Closure,
                        elements: vec![name(g), name(h)],
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations.into());
        }

        let mul = |a: usize, b: usize| table[a][b].0;
        let e = identity.0;
        for g in 0..n {
            if mul(e, g) != g {
                violations.push(Violation::NotAGroup {
                    law: GroupLaw::LeftIdentity,
                    elements: vec![name(e), name(g), name(mul(e, g))],
                });
            }
            if mul(g, e) != g {
                violations.push(Violation::NotAGroup {
                    law: GroupLaw::RightIdentity,
                    elements: vec![name(g), name(e), name(mul(g, e))],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        violations.push(Violation::NotAGroup {
                            law: GroupLaw::Associativity,
                            elements: vec![name(a), name(b), name(c)],
                        });
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| mul(g, h) == e && mul(h, g) == e) {
                Some(h) => inverse.push(Elem(h)),
                None => violations.push(Violation::NotAGroup {
                    law: GroupLaw::Inverse,
                    elements: vec![name(g)],
                }),
            }
        }
        if !violations.is_empty() {
            return Err(violations.into());
        }

        Ok(FinGroup {
            table: table.into_iter().flatten().collect(),
            names,
            identity,
            inverse,
        })
    }

    /// `ℤ/n` with elements named `"0"`, …, `"n-1"`.
    pub fn cyclic(n: usize) -> FinGroup {
        assert!(n > 0, "cyclic group needs a positive order");
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| Elem((a + b) % n)).collect())
            .collect();
        FinGroup::from_table(names, Elem(0), table).expect("cyclic table is a group")
    }

    /// The one-element group, its element named `"1"`.
    pub fn trivial() -> FinGroup {
        FinGroup::from_table(vec!["1".into()], Elem(0), vec![vec![Elem(0)]])
            .expect("trivial table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.names.len()).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn is_identity(&self, g: Elem) -> bool {
        g == self.identity
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.0 * self.names.len() + b.0]
    }

    pub fn inv(&self, g: Elem) -> Elem {
        self.inverse[g.0]
    }

    pub fn name(&self, g: Elem) -> &str {
        &self.names[g.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem)
    }
}

/// Permutation tables `g ↦ (v ↦ g·v)` and `g ↦ (e ↦ g·e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAction {
    vertex_perm: Vec<Vec<VertexId>>,
    edge_perm: Vec<Vec<EdgeId>>,
}

impl GraphAction {
    /// Unchecked tables indexed `[g][item]`; checked when assembled into a [`SelfSimilarGraph`].
    pub fn from_tables(vertex_perm: Vec<Vec<VertexId>>, edge_perm: Vec<Vec<EdgeId>>) -> Self {
        GraphAction {
            vertex_perm,
            edge_perm,
        }
    }

    pub fn from_fn(
        group: &FinGroup,
        graph: &Graph,
        on_vertex: impl Fn(Elem, VertexId) -> VertexId,
        on_edge: impl Fn(Elem, EdgeId) -> EdgeId,
    ) -> Self {
        GraphAction {
            vertex_perm: group
                .elements()
                .map(|g| graph.vertices().map(|v| on_vertex(g, v)).collect())
                .collect(),
            edge_perm: group
                .elements()
                .map(|g| graph.edge_ids().map(|e| on_edge(g, e)).collect())
                .collect(),
        }
    }

    pub fn trivial(group: &FinGroup, graph: &Graph) -> Self {
        GraphAction::from_fn(group, graph, |_, v| v, |_, e| e)
    }

    pub fn vertex(&self, g: Elem, v: VertexId) -> VertexId {
        self.vertex_perm[g.0][v.0]
    }

    pub fn edge(&self, g: Elem, e: EdgeId) -> EdgeId {
        self.edge_perm[g.0][e.0]
    }
}

/// The restriction map `φ : G × E¹ → G`, indexed `[g][e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    table: Vec<Vec<Elem>>,
}

impl Cocycle {
    pub fn from_table(table: Vec<Vec<Elem>>) -> Self {
        Cocycle { table }
    }

    pub fn from_fn(group: &FinGroup, graph: &Graph, phi: impl Fn(Elem, EdgeId) -> Elem) -> Self {
        Cocycle {
            table: group
                .elements()
                .map(|g| graph.edge_ids().map(|e| phi(g, e)).collect())
                .collect(),
        }
    }

    /// `φ ≡ 1`.
    pub fn trivial(group: &FinGroup, graph: &Graph) -> Self {
        let one = group.identity();
        Cocycle::from_fn(group, graph, |_, _| one)
    }

    /// `φ(g, e) = g`.
    pub fn constant(group: &FinGroup, graph: &Graph) -> Self {
        Cocycle::from_fn(group, graph, |g, _| g)
    }

    pub fn get(&self, g: Elem, e: EdgeId) -> Elem {
        self.table[g.0][e.0]
    }
}

/// A validated `(G, E, φ)`.
#[derive(Debug, Clone)]
pub struct SelfSimilarGraph {
    graph: Graph,
    group: FinGroup,
    action: GraphAction,
    cocycle: Cocycle,
    pseudo_free: OnceLock<bool>,
}

impl SelfSimilarGraph {
    /// Checks every action and cocycle axiom exhaustively and reports all violations.
    pub fn new(
        graph: Graph,
        group: FinGroup,
        action: GraphAction,
        cocycle: Cocycle,
    ) -> Result<SelfSimilarGraph, ValidationError> {
        let mut violations = check_action(&graph, &group, &action);
        if violations.is_empty() {
            violations.extend(check_cocycle(&graph, &group, &action, &cocycle));
        }
        if !violations.is_empty() {
            return Err(violations.into());
        }
        Ok(SelfSimilarGraph {
            graph,
            group,
            action,
            cocycle,
            pseudo_free: OnceLock::new(),
        })
    }

    /// The trivial group acting trivially with `φ ≡ 1`.
    pub fn with_trivial_group(graph: Graph) -> SelfSimilarGraph {
        let group = FinGroup::trivial();
        let action = GraphAction::trivial(&group, &graph);
        let cocycle = Cocycle::trivial(&group, &graph);
        SelfSimilarGraph::new(graph, group, action, cocycle).expect("trivial structure is valid")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn action(&self) -> &GraphAction {
        &self.action
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn act_vertex(&self, g: Elem, v: VertexId) -> VertexId {
        self.action.vertex(g, v)
    }

    pub fn act_edge(&self, g: Elem, e: EdgeId) -> EdgeId {
        self.action.edge(g, e)
    }

    /// `φ(g, e)`.
    pub fn restrict(&self, g: Elem, e: EdgeId) -> Elem {
        self.cocycle.get(g, e)
    }

    /// `(g·α, φ(g, α))`, extending edge by edge: the element acting on `eᵢ₊₁` is the
    /// restriction of the element that acted on `eᵢ`.
    pub fn extend_action(&self, g: Elem, path: &Path) -> (Path, Elem) {
        let mut current = g;
        let mut image = Vec::with_capacity(path.len());
        for &e in path.edges() {
            image.push(self.act_edge(current, e));
            current = self.restrict(current, e);
        }
        let moved = if image.is_empty() {
            Path::empty(self.act_vertex(g, path.range()))
        } else {
            self.graph
                .path(image)
                .expect("automorphisms map paths to paths")
        };
        (moved, current)
    }

    /// The orbit of `v`, sorted by declaration order.
    pub fn orbit(&self, v: VertexId) -> Vec<VertexId> {
        let mut orbit: Vec<VertexId> = self
            .group
            .elements()
            .map(|g| self.act_vertex(g, v))
            .collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// For each vertex, the first vertex (in declaration order) of its orbit.
    pub fn orbit_labels(&self) -> Vec<usize> {
        self.graph.vertices().map(|v| self.orbit(v)[0].0).collect()
    }

    /// The first group element (in declaration order) mapping `from` to `to`.
    pub fn twist_between(&self, from: VertexId, to: VertexId) -> Option<Elem> {
        self.group
            .elements()
            .find(|&g| self.act_vertex(g, from) == to)
    }

    pub fn is_source_free(&self) -> bool {
        self.graph.is_source_free()
    }

    /// Pseudo-freeness, computed on first use.
    pub fn pseudo_free(&self) -> bool {
        *self
            .pseudo_free
            .get_or_init(|| crate::orbit::is_pseudo_free(self).holds())
    }
}

fn check_action(graph: &Graph, group: &FinGroup, action: &GraphAction) -> Vec<Violation> {
    let mut violations = Vec::new();
    let nv = graph.vertex_count();
    let ne = graph.edge_count();
    let shape_ok = action.vertex_perm.len() == group.order()
        && action.edge_perm.len() == group.order()
        && action
            .vertex_perm
            .iter()
            .all(|p| p.len() == nv && p.iter().all(|v| v.0 < nv))
        && action
            .edge_perm
            .iter()
            .all(|p| p.len() == ne && p.iter().all(|e| e.0 < ne));
    if !shape_ok {
        violations.push(Violation::MissingEntry {
            context: "action tables must map every group element and every vertex/edge".into(),
        });
        return violations;
    }

    let gname = |g: Elem| group.name(g).to_string();
    for g in group.elements() {
        let mut hit_v = vec![false; nv];
        for v in graph.vertices() {
            hit_v[action.vertex(g, v).0] = true;
        }
        for v in graph.vertices().filter(|v| !hit_v[v.0]) {
            violations.push(Violation::NotAnAction {
                law: ActionLaw::NotBijective,
                g: gname(g),
                h: None,
                item: graph.vertex_name(v).to_string(),
            });
        }
        let mut hit_e = vec![false; ne];
        for e in graph.edge_ids() {
            hit_e[action.edge(g, e).0] = true;
        }
        for e in graph.edge_ids().filter(|e| !hit_e[e.0]) {
            violations.push(Violation::NotAnAction {
                law: ActionLaw::NotBijective,
                g: gname(g),
                h: None,
                item: graph.edge_name(e).to_string(),
            });
        }
    }

    let one = group.identity();
    for v in graph.vertices().filter(|&v| action.vertex(one, v) != v) {
        violations.push(Violation::NotAnAction {
            law: ActionLaw::IdentityNotTrivial,
            g: gname(one),
            h: None,
            item: graph.vertex_name(v).to_string(),
        });
    }
    for e in graph.edge_ids().filter(|&e| action.edge(one, e) != e) {
        violations.push(Violation::NotAnAction {
            law: ActionLaw::IdentityNotTrivial,
            g: gname(one),
            h: None,
            item: graph.edge_name(e).to_string(),
        });
    }

    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for v in graph.vertices() {
                if action.vertex(gh, v) != action.vertex(g, action.vertex(h, v)) {
                    violations.push(Violation::NotAnAction {
                        law: ActionLaw::Homomorphism,
                        g: gname(g),
                        h: Some(gname(h)),
                        item: graph.vertex_name(v).to_string(),
                    });
                }
            }
            for e in graph.edge_ids() {
                if action.edge(gh, e) != action.edge(g, action.edge(h, e)) {
                    violations.push(Violation::NotAnAction {
                        law: ActionLaw::Homomorphism,
                        g: gname(g),
                        h: Some(gname(h)),
                        item: graph.edge_name(e).to_string(),
                    });
                }
            }
        }
    }

    for g in group.elements() {
        for e in graph.edge_ids() {
            let ge = action.edge(g, e);
            if action.vertex(g, graph.r(e)) != graph.r(ge) {
                violations.push(Violation::NotAnAction {
                    law: ActionLaw::RangeMismatch,
                    g: gname(g),
                    h: None,
                    item: graph.edge_name(e).to_string(),
                });
            }
            if action.vertex(g, graph.d(e)) != graph.d(ge) {
                violations.push(Violation::NotAnAction {
                    law: ActionLaw::DomainMismatch,
                    g: gname(g),
                    h: None,
                    item: graph.edge_name(e).to_string(),
                });
            }
        }
    }
    violations
}

fn check_cocycle(
    graph: &Graph,
    group: &FinGroup,
    action: &GraphAction,
    cocycle: &Cocycle,
) -> Vec<Violation> {
    let ne = graph.edge_count();
    let shape_ok = cocycle.table.len() == group.order()
        && cocycle
            .table
            .iter()
            .all(|row| row.len() == ne && row.iter().all(|g| g.0 < group.order()));
    if !shape_ok {
        return vec![Violation::MissingEntry {
            context: "cocycle table must assign an element to every (g, e)".into(),
        }];
    }

    let mut violations = Vec::new();
    let gname = |g: Elem| group.name(g).to_string();
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for e in graph.edge_ids() {
                let lhs = cocycle.get(gh, e);
                let rhs = group.mul(cocycle.get(g, action.edge(h, e)), cocycle.get(h, e));
                if lhs != rhs {
                    violations.push(Violation::CocycleLawViolated {
                        g: gname(g),
                        h: gname(h),
                        e: graph.edge_name(e).to_string(),
                    });
                }
            }
        }
    }
    for g in group.elements() {
        for e in graph.edge_ids() {
            let restricted = cocycle.get(g, e);
            for v in graph.vertices() {
                if action.vertex(restricted, v) != action.vertex(g, v) {
                    violations.push(Violation::VertexCompatViolated {
                        g: gname(g),
                        e: graph.edge_name(e).to_string(),
                        v: graph.vertex_name(v).to_string(),
                    });
                }
            }
        }
    }
    violations
}
