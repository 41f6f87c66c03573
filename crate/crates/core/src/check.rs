//! Replays the evidence in a classification report from the raw tables alone.
//!
//! Nothing here calls the decision procedures that produced the report: orbits come from
//! applying every group element, reachability from a fresh search, in-degrees from scanning
//! the edge list, and path images from iterating the action and restriction tables.

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::Signed;

use crate::analysis::GCircuitWitness;
use crate::classify::{ClassificationReport, KIRCHBERG, STABLY_FINITE};
use crate::model::{Graph, Path, SelfSimilarGraph, VertexId};
use crate::monoid::{monoid_of, GroupTestVerdict};
use crate::quotient::QuotientGraph;
use crate::trace::{FarkasCertificate, TraceResult, TraceSolution};
use crate::witness::{GraphSide, RankScope, ReachCertificate, Tri, Verdict, Witness};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub struct Checker<'a> {
    ssg: &'a SelfSimilarGraph,
    quotient: &'a QuotientGraph,
}

fn in_degree(graph: &Graph, v: VertexId) -> usize {
    graph.edge_ids().filter(|&e| graph.r(e) == v).count()
}

fn path_ok(graph: &Graph, path: &Path) -> Check {
    let n = graph.vertex_count();
    ensure(path.range().0 < n && path.domain().0 < n, || {
        "path endpoint out of range".into()
    })?;
    let edges = path.edges();
    if edges.is_empty() {
        return ensure(path.range() == path.domain(), || {
            "empty path with two endpoints".into()
        });
    }
    ensure(edges.iter().all(|e| e.0 < graph.edge_count()), || {
        "unknown edge in path".into()
    })?;
    ensure(graph.r(edges[0]) == path.range(), || {
        "path range mismatch".into()
    })?;
    ensure(graph.d(edges[edges.len() - 1]) == path.domain(), || {
        "path domain mismatch".into()
    })?;
    ensure(
        edges.windows(2).all(|w| graph.d(w[0]) == graph.r(w[1])),
        || format!("edges of {} do not compose", path.display(graph)),
    )
}

fn closed_nonempty(graph: &Graph, path: &Path) -> Check {
    path_ok(graph, path)?;
    ensure(!path.is_empty() && path.range() == path.domain(), || {
        format!("{} is not a closed path", path.display(graph))
    })
}

fn reach(graph: &Graph, starts: &[VertexId]) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack: Vec<VertexId> = starts.to_vec();
    for s in starts {
        seen[s.0] = true;
    }
    while let Some(u) = stack.pop() {
        for e in graph.edge_ids().filter(|&e| graph.r(e) == u) {
            let w = graph.d(e);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

impl<'a> Checker<'a> {
    pub fn new(ssg: &'a SelfSimilarGraph, quotient: &'a QuotientGraph) -> Self {
        Checker { ssg, quotient }
    }

    fn graph(&self, side: GraphSide) -> &Graph {
        match side {
            GraphSide::Input => self.ssg.graph(),
            GraphSide::Quotient => self.quotient.graph(),
        }
    }

    fn orbit(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.ssg
            .group()
            .elements()
            .map(|g| self.ssg.act_vertex(g, v))
            .collect()
    }

    /// Vertices a path may start from when certifying reachability "up to the action".
    fn starts(&self, side: GraphSide, v: VertexId) -> Vec<VertexId> {
        match side {
            GraphSide::Input => self.orbit(v).into_iter().collect(),
            GraphSide::Quotient => vec![v],
        }
    }

    fn ranks_ok(
        &self,
        side: GraphSide,
        scope: RankScope,
        ranks: &[Option<usize>],
        orbit_invariant: bool,
    ) -> Check {
        let graph = self.graph(side);
        ensure(ranks.len() == graph.vertex_count(), || {
            "rank vector has wrong length".into()
        })?;
        let allowed: Vec<bool> = graph
            .vertices()
            .map(|v| match scope {
                RankScope::AllVertices => true,
                RankScope::SingleReceivers => in_degree(graph, v) == 1,
            })
            .collect();
        self.ranking_ok(
            graph,
            &allowed,
            ranks,
            orbit_invariant && side == GraphSide::Input,
        )
    }

    fn ranking_ok(
        &self,
        graph: &Graph,
        allowed: &[bool],
        ranks: &[Option<usize>],
        orbit_invariant: bool,
    ) -> Check {
        for v in graph.vertices().filter(|v| allowed[v.0]) {
            ensure(ranks[v.0].is_some(), || {
                format!("vertex {} has no rank", graph.vertex_name(v))
            })?;
            if orbit_invariant {
                for g in self.ssg.group().elements() {
                    let w = self.ssg.act_vertex(g, v);
                    ensure(ranks[w.0] == ranks[v.0], || {
                        format!("rank differs on the orbit of {}", graph.vertex_name(v))
                    })?;
                }
            }
        }
        for e in graph.edge_ids() {
            let (r, d) = (graph.r(e), graph.d(e));
            if allowed[r.0] && allowed[d.0] {
                ensure(ranks[r.0] > ranks[d.0], || {
                    format!("rank does not drop along {}", graph.edge_name(e))
                })?;
            }
        }
        Ok(())
    }

    fn g_circuit_ok(&self, w: &GCircuitWitness) -> Check {
        let graph = self.ssg.graph();
        path_ok(graph, &w.path)?;
        ensure(w.twist.0 < self.ssg.group().order(), || {
            "unknown group element".into()
        })?;
        ensure(
            !w.path.is_empty() && w.path.domain() == self.ssg.act_vertex(w.twist, w.path.range()),
            || {
                format!(
                    "{} does not close up under the twist",
                    w.path.display(graph)
                )
            },
        )
    }

    fn source_free(&self, graph: &Graph) -> Check {
        ensure(graph.vertices().all(|v| in_degree(graph, v) > 0), || {
            "graph has sources".into()
        })
    }

    fn image(&self, g: crate::model::Elem, path: &Path) -> Vec<crate::model::EdgeId> {
        let mut cur = g;
        path.edges()
            .iter()
            .map(|&e| {
                let img = self.ssg.act_edge(cur, e);
                cur = self.ssg.restrict(cur, e);
                img
            })
            .collect()
    }

    fn trace_ok(&self, side: GraphSide, sol: &TraceSolution) -> Check {
        let graph = self.graph(side);
        let t = &sol.weights;
        ensure(t.len() == graph.vertex_count(), || {
            "trace has wrong length".into()
        })?;
        ensure(t.iter().all(|x| !x.is_negative()), || {
            "negative trace weight".into()
        })?;
        let total: BigRational = t.iter().sum();
        ensure(total == BigRational::from_integer(1.into()), || {
            "trace is not normalized".into()
        })?;
        for v in graph.vertices() {
            let incoming: Vec<_> = graph.edge_ids().filter(|&e| graph.r(e) == v).collect();
            if !incoming.is_empty() {
                let sum: BigRational = incoming.iter().map(|&e| t[graph.d(e).0].clone()).sum();
                ensure(t[v.0] == sum, || {
                    format!("trace unbalanced at {}", graph.vertex_name(v))
                })?;
            }
        }
        for e in graph.edge_ids() {
            ensure(t[graph.r(e).0] >= t[graph.d(e).0], || {
                format!("trace not monotone along {}", graph.edge_name(e))
            })?;
        }
        if side == GraphSide::Input {
            for g in self.ssg.group().elements() {
                for v in graph.vertices() {
                    ensure(t[self.ssg.act_vertex(g, v).0] == t[v.0], || {
                        "trace not constant on orbits".into()
                    })?;
                }
            }
        }
        Ok(())
    }

    fn farkas_ok(&self, side: GraphSide, cert: &FarkasCertificate) -> Check {
        let graph = self.graph(side);
        let labels: Option<Vec<usize>> = match side {
            GraphSide::Input => Some(
                graph
                    .vertices()
                    .map(|v| self.orbit(v).iter().next().expect("orbit contains v").0)
                    .collect(),
            ),
            GraphSide::Quotient => None,
        };
        ensure(cert.is_valid(graph, labels.as_deref()), || {
            "infeasibility certificate does not refute the trace system".into()
        })
    }

    fn reach_ok(&self, side: GraphSide, per_vertex: &[ReachCertificate]) -> Check {
        let graph = self.graph(side);
        let covered: Vec<VertexId> = per_vertex.iter().map(|c| c.vertex).collect();
        ensure(covered == graph.vertices().collect::<Vec<_>>(), || {
            "reachability certificate does not cover every vertex".into()
        })?;
        for cert in per_vertex {
            let starts: HashSet<VertexId> = self.starts(side, cert.vertex).into_iter().collect();
            let mut reached = vec![false; graph.vertex_count()];
            for p in &cert.paths {
                path_ok(graph, p)?;
                ensure(starts.contains(&p.range()), || {
                    format!(
                        "path {} does not start at the right vertex",
                        p.display(graph)
                    )
                })?;
                reached[p.domain().0] = true;
            }
            ensure(cert.outside_ranks.len() == graph.vertex_count(), || {
                "rank vector has wrong length".into()
            })?;
            let outside: Vec<bool> = reached.iter().map(|r| !r).collect();
            self.ranking_ok(graph, &outside, &cert.outside_ranks, false)?;
        }
        Ok(())
    }

    pub fn witness(&self, w: &Witness) -> Check {
        let ssg = self.ssg;
        let group = ssg.group();
        match w {
            Witness::PseudoFreeScan => {
                for g in group.elements().filter(|&g| !group.is_identity(g)) {
                    for e in ssg.graph().edge_ids() {
                        ensure(
                            !(ssg.act_edge(g, e) == e && group.is_identity(ssg.restrict(g, e))),
                            || {
                                format!(
                                    "{} fixes {} with trivial restriction",
                                    group.name(g),
                                    ssg.graph().edge_name(e)
                                )
                            },
                        )?;
                    }
                }
                Ok(())
            }
            Witness::FixedEdge { g, edge } => ensure(
                !group.is_identity(*g)
                    && ssg.act_edge(*g, *edge) == *edge
                    && group.is_identity(ssg.restrict(*g, *edge)),
                || "fixed-edge counterexample does not hold".into(),
            ),
            Witness::GCircuit(c) => self.g_circuit_ok(c),
            Witness::EntrylessGCircuit(c) => {
                self.g_circuit_ok(c)?;
                let graph = ssg.graph();
                ensure(
                    c.path
                        .edges()
                        .iter()
                        .all(|&e| in_degree(graph, graph.r(e)) == 1),
                    || "the G-circuit has an entry".into(),
                )
            }
            Witness::CircuitWithoutEntry { side, path } => {
                let graph = self.graph(*side);
                closed_nonempty(graph, path)?;
                ensure(
                    path.edges()
                        .iter()
                        .all(|&e| in_degree(graph, graph.r(e)) == 1),
                    || "the circuit has an entry".into(),
                )
            }
            Witness::OrbitRanking { side, scope, ranks } => {
                self.ranks_ok(*side, *scope, ranks, true)
            }
            Witness::TrivialCylinder { g, vertex, closed } => {
                let set: HashSet<_> = closed.iter().copied().collect();
                ensure(
                    !group.is_identity(*g) && set.contains(&(*g, *vertex)),
                    || "trivial-cylinder witness does not contain its pair".into(),
                )?;
                let graph = ssg.graph();
                for &(h, u) in closed {
                    ensure(ssg.act_vertex(h, u) == u, || {
                        "state moves its vertex".into()
                    })?;
                    for e in graph.edge_ids().filter(|&e| graph.r(e) == u) {
                        ensure(ssg.act_edge(h, e) == e, || "state moves an edge".into())?;
                        ensure(set.contains(&(ssg.restrict(h, e), graph.d(e))), || {
                            "state set is not closed under restriction".into()
                        })?;
                    }
                }
                Ok(())
            }
            Witness::MovedPaths(list) => {
                let graph = ssg.graph();
                self.source_free(graph)?;
                let expected: BTreeSet<_> = group
                    .elements()
                    .filter(|&g| !group.is_identity(g))
                    .flat_map(|g| graph.vertices().map(move |v| (g, v)))
                    .collect();
                let got: BTreeSet<_> = list.iter().map(|(g, v, _)| (*g, *v)).collect();
                ensure(expected == got, || {
                    "moved paths do not cover every pair".into()
                })?;
                for (g, v, p) in list {
                    path_ok(graph, p)?;
                    ensure(p.range() == *v, || "moved path starts elsewhere".into())?;
                    let moved = if p.is_empty() {
                        ssg.act_vertex(*g, *v) != *v
                    } else {
                        self.image(*g, p) != p.edges()
                    };
                    ensure(moved, || {
                        format!("{} fixes {}", group.name(*g), p.display(graph))
                    })?;
                }
                Ok(())
            }
            Witness::Reachability { side, per_vertex } => self.reach_ok(*side, per_vertex),
            Witness::NotCofinal {
                side,
                vertex,
                cycle,
            } => {
                let graph = self.graph(*side);
                closed_nonempty(graph, cycle)?;
                let reached = reach(graph, &self.starts(*side, *vertex));
                ensure(
                    cycle.vertex_trace(graph).iter().all(|u| !reached[u.0]),
                    || "the cycle is reachable".into(),
                )
            }
            Witness::ReceivesFromGCircuits(list) => {
                let graph = ssg.graph();
                let covered: Vec<VertexId> = list.iter().map(|(v, _, _)| *v).collect();
                ensure(covered == graph.vertices().collect::<Vec<_>>(), || {
                    "G-path certificate does not cover every vertex".into()
                })?;
                for (v, p, c) in list {
                    path_ok(graph, p)?;
                    self.g_circuit_ok(c)?;
                    ensure(p.range() == *v && p.domain() == c.path.range(), || {
                        "G-path does not connect the vertex to its G-circuit".into()
                    })?;
                }
                Ok(())
            }
            Witness::PiSufficient {
                side,
                ranks,
                per_vertex,
            } => {
                self.ranks_ok(*side, RankScope::SingleReceivers, ranks, false)?;
                let graph = self.graph(*side);
                let covered: Vec<VertexId> = per_vertex.iter().map(|(v, _, _)| *v).collect();
                ensure(covered == graph.vertices().collect::<Vec<_>>(), || {
                    "circuit certificate does not cover every vertex".into()
                })?;
                for (v, p, c) in per_vertex {
                    path_ok(graph, p)?;
                    closed_nonempty(graph, c)?;
                    ensure(p.range() == *v && p.domain() == c.range(), || {
                        "path does not connect the vertex to its circuit".into()
                    })?;
                }
                Ok(())
            }
            Witness::Trace { side, solution } => self.trace_ok(*side, solution),
            Witness::Farkas { side, certificate } => self.farkas_ok(*side, certificate),
            Witness::All(parts) => parts.iter().try_for_each(|p| self.witness(p)),
            Witness::Gap(_) => Ok(()),
        }
    }
}

fn kinds(w: &Witness) -> Vec<&'static str> {
    match w {
        Witness::All(parts) => parts.iter().map(|p| p.kind()).collect(),
        other => vec![other.kind()],
    }
}

fn effective_shape(w: &Witness) -> bool {
    matches!(w, Witness::All(parts) if matches!(
        parts.as_slice(),
        [Witness::OrbitRanking { side: GraphSide::Input, scope: RankScope::SingleReceivers, .. }, Witness::MovedPaths(_)]
    ))
}

fn pi_yes_shape(w: &Witness, simple: bool) -> bool {
    match w {
        Witness::GCircuit(_) => simple,
        Witness::All(parts) => match parts.as_slice() {
            [eff, Witness::ReceivesFromGCircuits(_)] => effective_shape(eff),
            [eff, Witness::PiSufficient {
                side: GraphSide::Input,
                ..
            }] => effective_shape(eff),
            [Witness::MovedPaths(_), Witness::PiSufficient {
                side: GraphSide::Quotient,
                ..
            }] => true,
            _ => false,
        },
        _ => false,
    }
}

fn no_circuit_shape(w: &Witness) -> bool {
    matches!(w, Witness::All(parts) if matches!(
        parts.first(),
        Some(Witness::OrbitRanking { side: GraphSide::Input, scope: RankScope::AllVertices, .. })
    ))
}

/// Verifies that each verdict carries evidence of the kind its value needs and that the
/// evidence replays. Returns one message per failure.
pub fn check_report(ssg: &SelfSimilarGraph, report: &ClassificationReport) -> Vec<String> {
    let checker = Checker::new(ssg, &report.quotient);
    let mut failures = Vec::new();
    let simple = report.simple.value == Tri::Yes;
    let pseudo_free = report.pseudo_free.value == Tri::Yes;

    let mut verdict = |name: &str, v: &Verdict, shape_ok: bool| {
        let shape_ok = match v.value {
            Tri::Unknown => matches!(v.witness, Witness::Gap(_)),
            _ => shape_ok,
        };
        if !shape_ok {
            failures.push(format!(
                "{name}: {} is not backed by {:?}",
                v.value,
                kinds(&v.witness)
            ));
        } else if let Err(e) = checker.witness(&v.witness) {
            failures.push(format!("{name}: {e}"));
        }
    };

    let pf = &report.pseudo_free;
    verdict(
        "pseudo_free",
        pf,
        match pf.value {
            Tri::Yes => matches!(pf.witness, Witness::PseudoFreeScan),
            _ => matches!(pf.witness, Witness::FixedEdge { .. }),
        },
    );
    let eff = &report.effectivity;
    verdict(
        "effectivity",
        eff,
        match eff.value {
            Tri::Yes => effective_shape(&eff.witness),
            _ => matches!(
                eff.witness,
                Witness::EntrylessGCircuit(_) | Witness::TrivialCylinder { .. }
            ),
        },
    );
    let min = &report.minimal;
    verdict(
        "minimal",
        min,
        match min.value {
            Tri::Yes => matches!(
                min.witness,
                Witness::Reachability {
                    side: GraphSide::Input,
                    ..
                }
            ),
            _ => matches!(
                min.witness,
                Witness::NotCofinal {
                    side: GraphSide::Input,
                    ..
                }
            ),
        },
    );
    let s = &report.simple;
    verdict(
        "simple",
        s,
        match s.value {
            Tri::Yes => matches!(&s.witness, Witness::All(parts) if matches!(
                parts.as_slice(),
                [Witness::PseudoFreeScan, eff, Witness::Reachability { side: GraphSide::Input, .. }] if effective_shape(eff)
            )),
            _ => {
                pseudo_free
                    && matches!(
                        s.witness,
                        Witness::NotCofinal {
                            side: GraphSide::Quotient,
                            ..
                        } | Witness::CircuitWithoutEntry {
                            side: GraphSide::Quotient,
                            ..
                        }
                    )
            }
        },
    );
    let pi = &report.purely_infinite;
    verdict(
        "purely_infinite",
        pi,
        match pi.value {
            Tri::Yes => pseudo_free && pi_yes_shape(&pi.witness, simple),
            _ => simple && no_circuit_shape(&pi.witness),
        },
    );
    let sf = &report.stably_finite;
    verdict(
        "stably_finite",
        sf,
        match sf.value {
            Tri::Yes => simple && no_circuit_shape(&sf.witness),
            _ => {
                (simple && matches!(sf.witness, Witness::GCircuit(_)))
                    || (report.purely_infinite.value == Tri::Yes
                        && sf.witness == report.purely_infinite.witness)
            }
        },
    );

    let trace_check = |side, t: &TraceResult| match t {
        TraceResult::Found(s) => checker.trace_ok(side, s),
        TraceResult::Infeasible(c) => checker.farkas_ok(side, c),
    };
    if let Err(e) = trace_check(GraphSide::Input, &report.trace) {
        failures.push(format!("trace: {e}"));
    }
    if let Err(e) = trace_check(GraphSide::Quotient, &report.quotient_trace) {
        failures.push(format!("quotient trace: {e}"));
    }
    for (name, graph, verdict) in [
        ("monoid", ssg.graph(), &report.monoid_input),
        (
            "quotient monoid",
            report.quotient.graph(),
            &report.monoid_quotient,
        ),
    ] {
        let p = monoid_of(graph);
        let ok = match verdict {
            Some(GroupTestVerdict::Group(w)) => w.is_valid(&p),
            Some(GroupTestVerdict::NotGroup(t)) => t.is_valid(&p),
            _ => true,
        };
        if !ok {
            failures.push(format!("{name}: certificate does not replay"));
        }
    }
    failures
}

/// Consistency rules every report must satisfy, independent of evidence.
pub fn report_invariants(report: &ClassificationReport) -> Vec<String> {
    let mut out = Vec::new();
    let (s, pi, sf) = (
        report.simple.value,
        report.purely_infinite.value,
        report.stably_finite.value,
    );
    if s == Tri::Yes {
        let exclusive = matches!((pi, sf), (Tri::Yes, Tri::No) | (Tri::No, Tri::Yes));
        if !exclusive {
            out.push(format!(
                "dichotomy not exclusive: purely_infinite {pi}, stably_finite {sf}"
            ));
        }
        if pi == Tri::Yes && report.trace.is_feasible() {
            out.push("purely infinite simple report carries a G-trace".into());
        }
        if sf == Tri::Yes && !report.trace.is_feasible() {
            out.push("stably finite simple report lacks a G-trace".into());
        }
        let label = if pi == Tri::Yes {
            KIRCHBERG
        } else {
            STABLY_FINITE
        };
        if report.dichotomy != label {
            out.push(format!(
                "dichotomy label {} does not match",
                report.dichotomy
            ));
        }
    }
    if pi == Tri::Yes && sf == Tri::Yes {
        out.push("both purely infinite and stably finite".into());
    }
    if report.summary.sources.is_empty() && sf == Tri::Yes {
        out.push("source-free finite input declared stably finite".into());
    }
    out
}
