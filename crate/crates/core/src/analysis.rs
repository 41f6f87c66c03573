//! Decision procedures on plain graphs and on graphs with a group acting.
//!
//! Everything here walks paths from `r` towards `d`: from a vertex `v` the next steps are the
//! edges in `r⁻¹(v)`. "`v` receives a path from `w`" means a path `α` with `r(α) = v` and
//! `d(α) = w`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::AnalysisError;
use crate::model::{EdgeId, Elem, Graph, Path, SelfSimilarGraph, VertexId};

/// Guardrail on elementary-circuit enumeration.
pub const CIRCUIT_LIMIT: usize = 1_000_000;

pub(crate) fn require_source_free(graph: &Graph) -> Result<(), AnalysisError> {
    let sources = graph.sources();
    if sources.is_empty() {
        Ok(())
    } else {
        Err(AnalysisError::SourcePresent {
            vertices: sources
                .iter()
                .map(|&v| graph.vertex_name(v).to_string())
                .collect(),
        })
    }
}

/// Breadth-first search from `from` for a vertex satisfying `target`, optionally confined to
/// `allowed` vertices. With `nonempty` the empty path does not count, which turns the search
/// into a shortest-return search when `target(from)` holds.
pub(crate) fn shortest_path(
    graph: &Graph,
    from: VertexId,
    target: impl Fn(VertexId) -> bool,
    allowed: Option<&[bool]>,
    nonempty: bool,
) -> Option<Path> {
    if !nonempty && target(from) {
        return Some(Path::empty(from));
    }
    let ok = |v: VertexId| allowed.is_none_or(|a| a[v.0]);
    let mut parent: Vec<Option<EdgeId>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    let rebuild = |parent: &[Option<EdgeId>], end: VertexId, last: EdgeId| {
        let mut edges = vec![last];
        let mut at = end;
        while at != from {
            let e = parent[at.0].expect("visited vertices have parents");
            edges.push(e);
            at = graph.r(e);
        }
        edges.reverse();
        graph.path(edges).expect("search tree edges compose")
    };
    while let Some(u) = queue.pop_front() {
        for &e in graph.in_edges(u) {
            let w = graph.d(e);
            if !ok(w) {
                continue;
            }
            if target(w) {
                return Some(rebuild(&parent, u, e));
            }
            if !seen[w.0] {
                seen[w.0] = true;
                parent[w.0] = Some(e);
                queue.push_back(w);
            }
        }
    }
    None
}

/// For every vertex, a shortest path to it from one of `starts`, or `None` if unreachable.
pub fn reach_paths(graph: &Graph, starts: &[VertexId]) -> Vec<Option<Path>> {
    let mut out: Vec<Option<Path>> = vec![None; graph.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in starts {
        if out[s.0].is_none() {
            out[s.0] = Some(Path::empty(s));
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &e in graph.in_edges(u) {
            let w = graph.d(e);
            if out[w.0].is_none() {
                let mut p = out[u.0].clone().expect("queued vertices are reached");
                p.push(graph, e).expect("e is received at u");
                out[w.0] = Some(p);
                queue.push_back(w);
            }
        }
    }
    out
}

pub fn reachable_from(graph: &Graph, starts: &[VertexId]) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack = Vec::new();
    for &s in starts {
        if !seen[s.0] {
            seen[s.0] = true;
            stack.push(s);
        }
    }
    while let Some(u) = stack.pop() {
        for &e in graph.in_edges(u) {
            let w = graph.d(e);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Some closed path inside the `allowed` vertices, found by depth-first search.
pub(crate) fn find_cycle_within(graph: &Graph, allowed: &[bool]) -> Option<Path> {
    struct Dfs<'a> {
        graph: &'a Graph,
        allowed: &'a [bool],
        color: Vec<u8>,
        entered_at: Vec<usize>,
        stack: Vec<EdgeId>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: VertexId) -> Option<Path> {
            self.color[u.0] = 1;
            self.entered_at[u.0] = self.stack.len();
            for &e in self.graph.in_edges(u) {
                let w = self.graph.d(e);
                if !self.allowed[w.0] {
                    continue;
                }
                match self.color[w.0] {
                    1 => {
                        let mut edges = self.stack[self.entered_at[w.0]..].to_vec();
                        edges.push(e);
                        return Some(self.graph.path(edges).expect("DFS stack composes"));
                    }
                    0 => {
                        self.stack.push(e);
                        if let Some(c) = self.visit(w) {
                            return Some(c);
                        }
                        self.stack.pop();
                    }
                    _ => {}
                }
            }
            self.color[u.0] = 2;
            None
        }
    }
    let mut dfs = Dfs {
        graph,
        allowed,
        color: vec![0; graph.vertex_count()],
        entered_at: vec![0; graph.vertex_count()],
        stack: Vec::new(),
    };
    for v in graph.vertices() {
        if allowed[v.0] && dfs.color[v.0] == 0 {
            if let Some(c) = dfs.visit(v) {
                return Some(c);
            }
        }
    }
    None
}

/// All elementary circuits (vertex-distinct closed paths), each starting at its smallest vertex.
pub fn find_circuits(graph: &Graph) -> Result<Vec<Path>, AnalysisError> {
    find_circuits_capped(graph, CIRCUIT_LIMIT)
}

/// Johnson's algorithm on a multigraph; parallel edges yield distinct circuits.
pub fn find_circuits_capped(graph: &Graph, limit: usize) -> Result<Vec<Path>, AnalysisError> {
    struct Search<'a> {
        graph: &'a Graph,
        start: VertexId,
        component: Vec<bool>,
        blocked: Vec<bool>,
        block_map: Vec<BTreeSet<usize>>,
        stack: Vec<EdgeId>,
        out: Vec<Path>,
        limit: usize,
    }
    impl Search<'_> {
        fn unblock(&mut self, u: usize) {
            self.blocked[u] = false;
            let waiting = std::mem::take(&mut self.block_map[u]);
            for w in waiting {
                if self.blocked[w] {
                    self.unblock(w);
                }
            }
        }

        fn circuit(&mut self, v: VertexId) -> Result<bool, AnalysisError> {
            let mut found = false;
            self.blocked[v.0] = true;
            for &e in self.graph.in_edges(v) {
                let w = self.graph.d(e);
                if !self.component[w.0] {
                    continue;
                }
                if w == self.start {
                    let mut edges = self.stack.clone();
                    edges.push(e);
                    self.out
                        .push(self.graph.path(edges).expect("circuit edges compose"));
                    if self.out.len() > self.limit {
                        return Err(AnalysisError::ResourceExceeded { limit: self.limit });
                    }
                    found = true;
                } else if !self.blocked[w.0] {
                    self.stack.push(e);
                    if self.circuit(w)? {
                        found = true;
                    }
                    self.stack.pop();
                }
            }
            if found {
                self.unblock(v.0);
            } else {
                for &e in self.graph.in_edges(v) {
                    let w = self.graph.d(e);
                    if self.component[w.0] {
                        self.block_map[w.0].insert(v.0);
                    }
                }
            }
            Ok(found)
        }
    }

    let n = graph.vertex_count();
    let mut out = Vec::new();
    for s in graph.vertices() {
        // strongly connected piece of s among vertices ≥ s
        let at_least: Vec<bool> = (0..n).map(|i| i >= s.0).collect();
        let forward = reach_within(graph, s, &at_least, false);
        let backward = reach_within(graph, s, &at_least, true);
        let component: Vec<bool> = (0..n).map(|i| forward[i] && backward[i]).collect();
        let mut search = Search {
            graph,
            start: s,
            component,
            blocked: vec![false; n],
            block_map: vec![BTreeSet::new(); n],
            stack: Vec::new(),
            out,
            limit,
        };
        search.circuit(s)?;
        out = search.out;
    }
    Ok(out)
}

fn reach_within(graph: &Graph, from: VertexId, allowed: &[bool], reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    seen[from.0] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        let next: Vec<VertexId> = if reverse {
            graph
                .edge_ids()
                .filter(|&e| graph.d(e) == u)
                .map(|e| graph.r(e))
                .collect()
        } else {
            graph.in_edges(u).iter().map(|&e| graph.d(e)).collect()
        };
        for w in next {
            if allowed[w.0] && !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// A circuit has an entry when some vertex on it receives two or more edges.
pub fn has_entry(graph: &Graph, circuit: &Path) -> bool {
    circuit
        .edges()
        .iter()
        .any(|&e| graph.in_degree(graph.r(e)) >= 2)
}

fn single_receivers(graph: &Graph) -> Vec<bool> {
    graph.vertices().map(|v| graph.in_degree(v) == 1).collect()
}

/// A circuit all of whose vertices receive exactly one edge.
pub fn circuit_without_entry(graph: &Graph) -> Option<Path> {
    find_cycle_within(graph, &single_receivers(graph))
}

/// A nonempty path `α` together with `g` such that `d(α) = g·r(α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCircuitWitness {
    pub path: Path,
    pub twist: Elem,
}

impl GCircuitWitness {
    pub fn is_valid(&self, ssg: &SelfSimilarGraph) -> bool {
        !self.path.is_empty() && self.path.domain() == ssg.act_vertex(self.twist, self.path.range())
    }
}

fn g_circuit_within(ssg: &SelfSimilarGraph, allowed: &[bool]) -> Option<GCircuitWitness> {
    let graph = ssg.graph();
    let labels = ssg.orbit_labels();
    graph.vertices().filter(|s| allowed[s.0]).find_map(|s| {
        let path = shortest_path(
            graph,
            s,
            |u| labels[u.0] == labels[s.0],
            Some(allowed),
            true,
        )?;
        let twist = ssg
            .twist_between(s, path.domain())
            .expect("path ends in the orbit of its range");
        Some(GCircuitWitness { path, twist })
    })
}

/// A G-circuit, searched by breadth-first search from each vertex until the walk re-enters
/// the orbit it started from.
pub fn find_g_circuit(ssg: &SelfSimilarGraph) -> Option<GCircuitWitness> {
    g_circuit_within(ssg, &vec![true; ssg.graph().vertex_count()])
}

/// A G-circuit running only through vertices that receive exactly one edge.
pub fn entryless_g_circuit(ssg: &SelfSimilarGraph) -> Option<GCircuitWitness> {
    g_circuit_within(ssg, &single_receivers(ssg.graph()))
}

pub fn every_g_circuit_has_entry(ssg: &SelfSimilarGraph) -> bool {
    entryless_g_circuit(ssg).is_none()
}

/// Ranks, constant on each label class, that drop strictly along every edge between allowed
/// vertices. Exists exactly when the allowed part has no circuit up to the labelling.
pub fn orbit_ranking(
    graph: &Graph,
    labels: &[usize],
    allowed: &[bool],
) -> Option<Vec<Option<usize>>> {
    let n = graph.vertex_count();
    let mut out_degree = vec![0usize; n];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut present = vec![false; n];
    for v in graph.vertices().filter(|v| allowed[v.0]) {
        present[labels[v.0]] = true;
    }
    for e in graph.edge_ids() {
        let (r, d) = (graph.r(e), graph.d(e));
        if allowed[r.0] && allowed[d.0] {
            out_degree[labels[r.0]] += 1;
            incoming[labels[d.0]].push(labels[r.0]);
        }
    }
    let mut rank = vec![None; n];
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&l| present[l] && out_degree[l] == 0)
        .collect();
    let mut next = 0;
    while let Some(l) = queue.pop_front() {
        rank[l] = Some(next);
        next += 1;
        for &from in &incoming[l] {
            out_degree[from] -= 1;
            if out_degree[from] == 0 {
                queue.push_back(from);
            }
        }
    }
    if (0..n).any(|l| present[l] && rank[l].is_none()) {
        return None;
    }
    Some(
        graph
            .vertices()
            .map(|v| {
                if allowed[v.0] {
                    rank[labels[v.0]]
                } else {
                    None
                }
            })
            .collect(),
    )
}

/// The relation `v ≳ w`: `v` receives a path ending in the orbit of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityRelation {
    pairs: BTreeSet<(VertexId, VertexId)>,
}

impl ReachabilityRelation {
    pub fn contains(&self, v: VertexId, w: VertexId) -> bool {
        self.pairs.contains(&(v, w))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn g_reaches(ssg: &SelfSimilarGraph) -> ReachabilityRelation {
    let graph = ssg.graph();
    let labels = ssg.orbit_labels();
    let mut pairs = BTreeSet::new();
    for v in graph.vertices() {
        let reached = reachable_from(graph, &[v]);
        let reached_labels: BTreeSet<usize> = graph
            .vertices()
            .filter(|u| reached[u.0])
            .map(|u| labels[u.0])
            .collect();
        for w in graph.vertices() {
            if reached_labels.contains(&labels[w.0]) {
                pairs.insert((v, w));
            }
        }
    }
    ReachabilityRelation { pairs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cofinality {
    Cofinal,
    /// `cycle` avoids every vertex that `vertex` (or its orbit) receives a path from, so
    /// repeating it gives an infinite path never connecting back.
    NotCofinal {
        vertex: VertexId,
        cycle: Path,
    },
}

impl Cofinality {
    pub fn holds(&self) -> bool {
        matches!(self, Cofinality::Cofinal)
    }
}

fn cofinality_from(graph: &Graph, starts: impl Fn(VertexId) -> Vec<VertexId>) -> Cofinality {
    for v in graph.vertices() {
        let reached = reachable_from(graph, &starts(v));
        let outside: Vec<bool> = reached.iter().map(|r| !r).collect();
        if let Some(cycle) = find_cycle_within(graph, &outside) {
            return Cofinality::NotCofinal { vertex: v, cycle };
        }
    }
    Cofinality::Cofinal
}

/// Cofinality (weak transitivity) of a plain graph. With sources present the answer speaks
/// about infinite paths only; callers that need the source-free reading check
/// [`Graph::is_source_free`].
pub fn is_cofinal(graph: &Graph) -> Cofinality {
    cofinality_from(graph, |v| vec![v])
}

/// Weak G-transitivity, computed on `E` with reachability from whole orbits.
pub fn is_weakly_g_transitive(ssg: &SelfSimilarGraph) -> Result<Cofinality, AnalysisError> {
    require_source_free(ssg.graph())?;
    Ok(cofinality_from(ssg.graph(), |v| ssg.orbit(v)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityCheck {
    Simple,
    NotCofinal { vertex: VertexId, cycle: Path },
    CircuitWithoutEntry(Path),
}

impl SimplicityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SimplicityCheck::Simple)
    }
}

/// Cofinal and every circuit has an entry.
pub fn graph_algebra_simple(graph: &Graph) -> Result<SimplicityCheck, AnalysisError> {
    require_source_free(graph)?;
    if let Cofinality::NotCofinal { vertex, cycle } = is_cofinal(graph) {
        return Ok(SimplicityCheck::NotCofinal { vertex, cycle });
    }
    Ok(match circuit_without_entry(graph) {
        Some(c) => SimplicityCheck::CircuitWithoutEntry(c),
        None => SimplicityCheck::Simple,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiSufficiency {
    Holds,
    CircuitWithoutEntry(Path),
    /// A vertex receiving no path from any circuit.
    Unreached(VertexId),
}

impl PiSufficiency {
    pub fn holds(&self) -> bool {
        matches!(self, PiSufficiency::Holds)
    }
}

/// Vertices lying on some circuit.
pub fn circuit_vertices(graph: &Graph) -> Vec<bool> {
    graph
        .vertices()
        .map(|v| shortest_path(graph, v, |u| u == v, None, true).is_some())
        .collect()
}

/// Every circuit has an entry and every vertex receives a path from a circuit. Sufficient for
/// pure infiniteness; its failure alone proves nothing.
pub fn graph_algebra_pi_sufficient(graph: &Graph) -> PiSufficiency {
    if let Some(c) = circuit_without_entry(graph) {
        return PiSufficiency::CircuitWithoutEntry(c);
    }
    let on_circuit = circuit_vertices(graph);
    for v in graph.vertices() {
        let reached = reachable_from(graph, &[v]);
        if !graph.vertices().any(|u| reached[u.0] && on_circuit[u.0]) {
            return PiSufficiency::Unreached(v);
        }
    }
    PiSufficiency::Holds
}
