//! The decision tree producing a classification report.
//!
//! Every verdict is three-valued. `Yes` and `No` come with evidence that
//! [`crate::check::check_report`] replays; `Unknown` names the gap that blocked a decision.

use std::collections::{BTreeSet, VecDeque};

use crate::analysis::{
    self, circuit_vertices, find_g_circuit, graph_algebra_pi_sufficient, graph_algebra_simple,
    is_weakly_g_transitive, orbit_ranking, reach_paths, shortest_path, Cofinality, GCircuitWitness,
    PiSufficiency, SimplicityCheck,
};
use crate::error::AnalysisError;
use crate::model::{Elem, Graph, SelfSimilarGraph, VertexId};
use crate::monoid::{is_group_nonzero, monoid_of, GroupTestVerdict, MonoidBounds};
use crate::orbit::{self, compute_triv, moved_path, PseudoFreeness};
use crate::quotient::{build_quotient, QuotientGraph};
use crate::trace::{graph_g_trace_exists, graph_trace_exists, TraceResult};
use crate::witness::{GraphSide, RankScope, ReachCertificate, Tri, Verdict, Witness};

pub mod rules {
    pub const PSEUDO_FREE: &str = "pseudo-freeness scan";
    pub const EFFECTIVITY: &str = "G-circuit entries and cylinder actions";
    pub const MINIMAL: &str = "weak G-transitivity";
    pub const SIMPLE_SUFFICIENT: &str = "pseudo-free, effective and minimal";
    pub const SIMPLE_NECESSARY: &str = "simplicity of the quotient graph algebra is necessary";
    pub const DICHOTOMY_CIRCUIT: &str = "simple with a G-circuit";
    pub const DICHOTOMY_NO_CIRCUIT: &str = "simple without G-circuits";
    pub const PI_RECEIVES: &str = "effective and every vertex receives a G-path from a G-circuit";
    pub const PI_GRAPH: &str = "effective and the graph algebra of E is purely infinite";
    pub const PI_QUOTIENT: &str =
        "cylinder actions nontrivial and the quotient graph algebra is purely infinite";
    pub const INFINITE_PROJECTION: &str = "an infinite projection excludes stable finiteness";
    pub const SOURCE_PRESENT: &str = "source present";
    pub const PSEUDO_FREENESS_FAILS: &str = "pseudo-freeness fails";
    pub const SLACKNESS: &str = "slackness undefined";
    pub const NON_SIMPLE: &str = "no criterion in the non-simple case";
}

pub const KIRCHBERG: &str = "purely infinite (Kirchberg)";
pub const STABLY_FINITE: &str = "stably finite";
pub const NOT_SIMPLE: &str = "not simple";
pub const UNDETERMINED: &str = "undetermined";

pub const CONVENTION_NOTES: [&str; 4] = [
    "edges run from d(e) into r(e); a path e1...en satisfies d(ei) = r(ei+1), r(path) = r(e1), d(path) = d(en)",
    "trace balance T(v) = sum of T(d(e)) over r(e) = v is imposed only at vertices receiving at least one edge",
    "the monoid verdict on the quotient graph is a heuristic model of the projection monoid, not a theorem",
    "Kirchberg label: finite groups are amenable so the algebra is nuclear; the UCT is taken from the literature, not checked",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub monoid: MonoidBounds,
    pub run_monoid: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            monoid: MonoidBounds::default(),
            run_monoid: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSummary {
    pub vertices: usize,
    pub edges: usize,
    pub group_order: usize,
    pub orbits: usize,
    pub sources: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub summary: InputSummary,
    pub banner: Option<String>,
    pub pseudo_free: Verdict,
    pub effectivity: Verdict,
    pub minimal: Verdict,
    pub simple: Verdict,
    pub purely_infinite: Verdict,
    pub stably_finite: Verdict,
    pub dichotomy: &'static str,
    /// G-trace on `E`.
    pub trace: TraceResult,
    /// Plain trace on `Ẽ`.
    pub quotient_trace: TraceResult,
    pub monoid_input: Option<GroupTestVerdict>,
    pub monoid_quotient: Option<GroupTestVerdict>,
    pub quotient: QuotientGraph,
    pub quotient_circuits: usize,
}

fn identity_labels(graph: &Graph) -> Vec<usize> {
    (0..graph.vertex_count()).collect()
}

fn single_receivers(graph: &Graph) -> Vec<bool> {
    graph.vertices().map(|v| graph.in_degree(v) == 1).collect()
}

fn moved_paths(ssg: &SelfSimilarGraph) -> Witness {
    let group = ssg.group();
    let mut out = Vec::new();
    for g in group.elements().filter(|&g| !group.is_identity(g)) {
        for v in ssg.graph().vertices() {
            let p = moved_path(ssg, g, v).expect("cylinder condition holds");
            out.push((g, v, p));
        }
    }
    Witness::MovedPaths(out)
}

/// States reachable from `(g, v)` by restricting along received edges.
fn restriction_closure(ssg: &SelfSimilarGraph, g: Elem, v: VertexId) -> Vec<(Elem, VertexId)> {
    let mut seen = BTreeSet::from([(g, v)]);
    let mut queue = VecDeque::from([(g, v)]);
    while let Some((h, u)) = queue.pop_front() {
        for &e in ssg.graph().in_edges(u) {
            let next = (ssg.restrict(h, e), ssg.graph().d(e));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn reach_certificate(graph: &Graph, vertex: VertexId, starts: &[VertexId]) -> ReachCertificate {
    let paths = reach_paths(graph, starts);
    let outside: Vec<bool> = paths.iter().map(|p| p.is_none()).collect();
    let outside_ranks = orbit_ranking(graph, &identity_labels(graph), &outside)
        .expect("cofinal: no cycle avoids the reached set");
    ReachCertificate {
        vertex,
        paths: paths.into_iter().flatten().collect(),
        outside_ranks,
    }
}

fn pi_sufficient_witness(graph: &Graph, side: GraphSide) -> Witness {
    let ranks = orbit_ranking(graph, &identity_labels(graph), &single_receivers(graph))
        .expect("no circuit without entry");
    let on_circuit = circuit_vertices(graph);
    let per_vertex = graph
        .vertices()
        .map(|v| {
            let to = shortest_path(graph, v, |u| on_circuit[u.0], None, false)
                .expect("every vertex reaches a circuit");
            let u = to.domain();
            let circuit =
                shortest_path(graph, u, |w| w == u, None, true).expect("u is on a circuit");
            (v, to, circuit)
        })
        .collect();
    Witness::PiSufficient {
        side,
        ranks,
        per_vertex,
    }
}

/// A G-circuit starting at `s`, if any.
fn g_circuit_at(ssg: &SelfSimilarGraph, s: VertexId, labels: &[usize]) -> Option<GCircuitWitness> {
    let path = shortest_path(ssg.graph(), s, |u| labels[u.0] == labels[s.0], None, true)?;
    let twist = ssg.twist_between(s, path.domain())?;
    Some(GCircuitWitness { path, twist })
}

fn receives_from_g_circuits(ssg: &SelfSimilarGraph) -> Option<Witness> {
    let graph = ssg.graph();
    let labels = ssg.orbit_labels();
    let starts: Vec<bool> = graph
        .vertices()
        .map(|s| g_circuit_at(ssg, s, &labels).is_some())
        .collect();
    let mut out = Vec::new();
    for v in graph.vertices() {
        let to = shortest_path(graph, v, |u| starts[u.0], None, false)?;
        let circuit = g_circuit_at(ssg, to.domain(), &labels).expect("target starts a G-circuit");
        out.push((v, to, circuit));
    }
    Some(Witness::ReceivesFromGCircuits(out))
}

fn effectivity(ssg: &SelfSimilarGraph) -> Verdict {
    let graph = ssg.graph();
    let labels = ssg.orbit_labels();
    let allowed = single_receivers(graph);
    let ranks = match orbit_ranking(graph, &labels, &allowed) {
        Some(r) => r,
        None => {
            let w = analysis::entryless_g_circuit(ssg).expect("ranking fails only on a G-circuit");
            return Verdict::no(rules::EFFECTIVITY, Witness::EntrylessGCircuit(w));
        }
    };
    let triv = compute_triv(ssg).expect("caller checked sources");
    if let Some((g, v)) = triv.nonidentity_pair(ssg) {
        return Verdict::no(
            rules::EFFECTIVITY,
            Witness::TrivialCylinder {
                g,
                vertex: v,
                closed: restriction_closure(ssg, g, v),
            },
        );
    }
    Verdict::yes(
        rules::EFFECTIVITY,
        Witness::All(vec![
            Witness::OrbitRanking {
                side: GraphSide::Input,
                scope: RankScope::SingleReceivers,
                ranks,
            },
            moved_paths(ssg),
        ]),
    )
}

fn minimality(ssg: &SelfSimilarGraph) -> Verdict {
    match is_weakly_g_transitive(ssg).expect("caller checked sources") {
        Cofinality::Cofinal => {
            let graph = ssg.graph();
            let per_vertex = graph
                .vertices()
                .map(|v| reach_certificate(graph, v, &ssg.orbit(v)))
                .collect();
            Verdict::yes(
                rules::MINIMAL,
                Witness::Reachability {
                    side: GraphSide::Input,
                    per_vertex,
                },
            )
        }
        Cofinality::NotCofinal { vertex, cycle } => Verdict::no(
            rules::MINIMAL,
            Witness::NotCofinal {
                side: GraphSide::Input,
                vertex,
                cycle,
            },
        ),
    }
}

fn cylinder_holds(effectivity: &Verdict) -> bool {
    match &effectivity.witness {
        Witness::All(parts) => parts.iter().any(|w| matches!(w, Witness::MovedPaths(_))),
        _ => false,
    }
}

pub fn classify(
    ssg: &SelfSimilarGraph,
    options: &ClassifyOptions,
) -> Result<ClassificationReport, AnalysisError> {
    let graph = ssg.graph();
    let quotient = build_quotient(ssg);
    let quotient_circuits = analysis::find_circuits(quotient.graph())?.len();
    let sources = graph.sources();
    let summary = InputSummary {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        group_order: ssg.group().order(),
        orbits: quotient.graph().vertex_count(),
        sources: sources.clone(),
    };

    let pseudo_free = match orbit::is_pseudo_free(ssg) {
        PseudoFreeness::Free => Verdict::yes(rules::PSEUDO_FREE, Witness::PseudoFreeScan),
        PseudoFreeness::Counterexample { g, e } => {
            Verdict::no(rules::PSEUDO_FREE, Witness::FixedEdge { g, edge: e })
        }
    };

    let trace = graph_g_trace_exists(ssg);
    let quotient_trace = graph_trace_exists(quotient.graph());
    let (monoid_input, monoid_quotient) = if options.run_monoid {
        (
            Some(is_group_nonzero(&monoid_of(graph), options.monoid)),
            Some(is_group_nonzero(
                &monoid_of(quotient.graph()),
                options.monoid,
            )),
        )
    } else {
        (None, None)
    };

    let report = |banner,
                  effectivity,
                  minimal,
                  simple,
                  purely_infinite,
                  stably_finite,
                  dichotomy,
                  pseudo_free: Verdict| ClassificationReport {
        summary: summary.clone(),
        banner,
        pseudo_free,
        effectivity,
        minimal,
        simple,
        purely_infinite,
        stably_finite,
        dichotomy,
        trace: trace.clone(),
        quotient_trace: quotient_trace.clone(),
        monoid_input: monoid_input.clone(),
        monoid_quotient: monoid_quotient.clone(),
        quotient: quotient.clone(),
        quotient_circuits,
    };

    if !sources.is_empty() {
        let names: Vec<&str> = sources.iter().map(|&v| graph.vertex_name(v)).collect();
        let gap = format!("sources present: {}", names.join(", "));
        let unknown = || Verdict::unknown(rules::SOURCE_PRESENT, gap.clone());
        return Ok(report(
            Some(format!(
                "degraded report: {gap}; only structural facts are reported"
            )),
            unknown(),
            unknown(),
            unknown(),
            unknown(),
            unknown(),
            UNDETERMINED,
            pseudo_free,
        ));
    }

    let effectivity = effectivity(ssg);
    let minimal = minimality(ssg);

    if pseudo_free.value == Tri::No {
        let gap = "every criterion used assumes pseudo-freeness";
        let unknown = || Verdict::unknown(rules::PSEUDO_FREENESS_FAILS, gap);
        return Ok(report(
            None,
            effectivity,
            minimal,
            unknown(),
            unknown(),
            unknown(),
            UNDETERMINED,
            pseudo_free,
        ));
    }

    let simple = if effectivity.value == Tri::Yes && minimal.value == Tri::Yes {
        Verdict::yes(
            rules::SIMPLE_SUFFICIENT,
            Witness::All(vec![
                pseudo_free.witness.clone(),
                effectivity.witness.clone(),
                minimal.witness.clone(),
            ]),
        )
    } else {
        match graph_algebra_simple(quotient.graph()).expect("quotient of a source-free graph") {
            SimplicityCheck::NotCofinal { vertex, cycle } => Verdict::no(
                rules::SIMPLE_NECESSARY,
                Witness::NotCofinal {
                    side: GraphSide::Quotient,
                    vertex,
                    cycle,
                },
            ),
            SimplicityCheck::CircuitWithoutEntry(path) => Verdict::no(
                rules::SIMPLE_NECESSARY,
                Witness::CircuitWithoutEntry {
                    side: GraphSide::Quotient,
                    path,
                },
            ),
            SimplicityCheck::Simple => Verdict::unknown(
                rules::SLACKNESS,
                "the quotient graph algebra is simple but some g ≠ 1 fixes a whole cylinder",
            ),
        }
    };

    if simple.value == Tri::Yes {
        let (purely_infinite, stably_finite, dichotomy) = match find_g_circuit(ssg) {
            Some(c) => (
                Verdict::yes(rules::DICHOTOMY_CIRCUIT, Witness::GCircuit(c.clone())),
                Verdict::no(rules::DICHOTOMY_CIRCUIT, Witness::GCircuit(c)),
                KIRCHBERG,
            ),
            None => {
                let ranks = orbit_ranking(
                    graph,
                    &ssg.orbit_labels(),
                    &vec![true; graph.vertex_count()],
                )
                .expect("no G-circuit");
                let mut evidence = vec![Witness::OrbitRanking {
                    side: GraphSide::Input,
                    scope: RankScope::AllVertices,
                    ranks,
                }];
                if let TraceResult::Found(solution) = &trace {
                    evidence.push(Witness::Trace {
                        side: GraphSide::Input,
                        solution: solution.clone(),
                    });
                }
                (
                    Verdict::no(rules::DICHOTOMY_NO_CIRCUIT, Witness::All(evidence.clone())),
                    Verdict::yes(rules::DICHOTOMY_NO_CIRCUIT, Witness::All(evidence)),
                    STABLY_FINITE,
                )
            }
        };
        return Ok(report(
            None,
            effectivity,
            minimal,
            simple,
            purely_infinite,
            stably_finite,
            dichotomy,
            pseudo_free,
        ));
    }

    let mut purely_infinite = None;
    if effectivity.value == Tri::Yes {
        if let Some(w) = receives_from_g_circuits(ssg) {
            purely_infinite = Some(Verdict::yes(
                rules::PI_RECEIVES,
                Witness::All(vec![effectivity.witness.clone(), w]),
            ));
        } else if graph_algebra_pi_sufficient(graph) == PiSufficiency::Holds {
            purely_infinite = Some(Verdict::yes(
                rules::PI_GRAPH,
                Witness::All(vec![
                    effectivity.witness.clone(),
                    pi_sufficient_witness(graph, GraphSide::Input),
                ]),
            ));
        }
    }
    if purely_infinite.is_none()
        && cylinder_holds(&effectivity)
        && graph_algebra_pi_sufficient(quotient.graph()).holds()
    {
        purely_infinite = Some(Verdict::yes(
            rules::PI_QUOTIENT,
            Witness::All(vec![
                moved_paths(ssg),
                pi_sufficient_witness(quotient.graph(), GraphSide::Quotient),
            ]),
        ));
    }
    let (purely_infinite, stably_finite) = match purely_infinite {
        Some(pi) => {
            let sf = Verdict::no(rules::INFINITE_PROJECTION, pi.witness.clone());
            (pi, sf)
        }
        None => (
            Verdict::unknown(
                rules::NON_SIMPLE,
                "no sufficient condition for pure infiniteness applies",
            ),
            Verdict::unknown(
                rules::NON_SIMPLE,
                "stable finiteness is only decided for simple algebras",
            ),
        ),
    };
    let dichotomy = if simple.value == Tri::No {
        NOT_SIMPLE
    } else {
        UNDETERMINED
    };
    Ok(report(
        None,
        effectivity,
        minimal,
        simple,
        purely_infinite,
        stably_finite,
        dichotomy,
        pseudo_free,
    ))
}
