//! Reports as JSON values and as plain text. Both render the same verdicts.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::analysis::GCircuitWitness;
use crate::classify::{ClassificationReport, CONVENTION_NOTES};
use crate::model::{Graph, Path, SelfSimilarGraph};
use crate::monoid::{monoid_of, GroupTestVerdict, MonoidPresentation};
use crate::trace::{TraceConstraint, TraceResult};
use crate::witness::{GraphSide, RankScope, Verdict, Witness};

pub fn fraction(q: &BigRational) -> String {
    q.to_string()
}

struct Names<'a> {
    ssg: &'a SelfSimilarGraph,
    quotient: &'a Graph,
}

impl Names<'_> {
    fn graph(&self, side: GraphSide) -> &Graph {
        match side {
            GraphSide::Input => self.ssg.graph(),
            GraphSide::Quotient => self.quotient,
        }
    }

    fn elem(&self, g: crate::model::Elem) -> Value {
        json!(self.ssg.group().name(g))
    }

    fn ranks(&self, side: GraphSide, ranks: &[Option<usize>]) -> Value {
        let graph = self.graph(side);
        let mut m = Map::new();
        for v in graph.vertices() {
            if let Some(r) = ranks[v.0] {
                m.insert(graph.vertex_name(v).to_string(), json!(r));
            }
        }
        Value::Object(m)
    }

    fn g_circuit(&self, c: &GCircuitWitness) -> Value {
        json!({"path": path_json(self.ssg.graph(), &c.path), "twist": self.elem(c.twist)})
    }

    fn witness(&self, w: &Witness) -> Value {
        let kind = w.kind();
        let body = match w {
            Witness::PseudoFreeScan => json!({}),
            Witness::FixedEdge { g, edge } => json!({
                "g": self.elem(*g),
                "edge": self.ssg.graph().edge_name(*edge),
            }),
            Witness::GCircuit(c) | Witness::EntrylessGCircuit(c) => self.g_circuit(c),
            Witness::CircuitWithoutEntry { side, path } => json!({
                "graph": side.as_str(),
                "circuit": path_json(self.graph(*side), path),
            }),
            Witness::OrbitRanking { side, scope, ranks } => json!({
                "graph": side.as_str(),
                "scope": match scope {
                    RankScope::AllVertices => "all vertices",
                    RankScope::SingleReceivers => "vertices receiving exactly one edge",
                },
                "ranks": self.ranks(*side, ranks),
            }),
            Witness::TrivialCylinder { g, vertex, closed } => json!({
                "g": self.elem(*g),
                "vertex": self.ssg.graph().vertex_name(*vertex),
                "closed_states": closed
                    .iter()
                    .map(|(h, u)| json!([self.elem(*h), self.ssg.graph().vertex_name(*u)]))
                    .collect::<Vec<_>>(),
            }),
            Witness::MovedPaths(list) => json!({
                "paths": list
                    .iter()
                    .map(|(g, v, p)| json!({
                        "g": self.elem(*g),
                        "vertex": self.ssg.graph().vertex_name(*v),
                        "path": path_json(self.ssg.graph(), p),
                    }))
                    .collect::<Vec<_>>(),
            }),
            Witness::Reachability { side, per_vertex } => {
                let graph = self.graph(*side);
                json!({
                    "graph": side.as_str(),
                    "per_vertex": per_vertex
                        .iter()
                        .map(|c| json!({
                            "vertex": graph.vertex_name(c.vertex),
                            "paths": c.paths.iter().map(|p| path_json(graph, p)).collect::<Vec<_>>(),
                            "outside_ranks": self.ranks(*side, &c.outside_ranks),
                        }))
                        .collect::<Vec<_>>(),
                })
            }
            Witness::NotCofinal {
                side,
                vertex,
                cycle,
            } => {
                let graph = self.graph(*side);
                json!({
                    "graph": side.as_str(),
                    "vertex": graph.vertex_name(*vertex),
                    "avoiding_cycle": path_json(graph, cycle),
                })
            }
            Witness::ReceivesFromGCircuits(list) => json!({
                "per_vertex": list
                    .iter()
                    .map(|(v, p, c)| json!({
                        "vertex": self.ssg.graph().vertex_name(*v),
                        "path": path_json(self.ssg.graph(), p),
                        "g_circuit": self.g_circuit(c),
                    }))
                    .collect::<Vec<_>>(),
            }),
            Witness::PiSufficient {
                side,
                ranks,
                per_vertex,
            } => {
                let graph = self.graph(*side);
                json!({
                    "graph": side.as_str(),
                    "single_receiver_ranks": self.ranks(*side, ranks),
                    "per_vertex": per_vertex
                        .iter()
                        .map(|(v, p, c)| json!({
                            "vertex": graph.vertex_name(*v),
                            "path": path_json(graph, p),
                            "circuit": path_json(graph, c),
                        }))
                        .collect::<Vec<_>>(),
                })
            }
            Witness::Trace { side, solution } => json!({
                "graph": side.as_str(),
                "weights": weights_json(self.graph(*side), &solution.weights),
            }),
            Witness::Farkas { side, certificate } => json!({
                "graph": side.as_str(),
                "multipliers": farkas_json(self.graph(*side), &certificate.multipliers),
            }),
            Witness::All(parts) => json!({
                "parts": parts.iter().map(|p| self.witness(p)).collect::<Vec<_>>(),
            }),
            Witness::Gap(reason) => json!({"reason": reason}),
        };
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(kind));
        if let Value::Object(fields) = body {
            obj.extend(fields);
        }
        Value::Object(obj)
    }

    fn verdict(&self, v: &Verdict) -> Value {
        json!({
            "value": v.value.as_str(),
            "rule": v.rule,
            "witness": self.witness(&v.witness),
        })
    }
}

pub fn path_json(graph: &Graph, p: &Path) -> Value {
    json!({
        "range": graph.vertex_name(p.range()),
        "domain": graph.vertex_name(p.domain()),
        "edges": p.edges().iter().map(|&e| graph.edge_name(e)).collect::<Vec<_>>(),
    })
}

fn weights_json(graph: &Graph, weights: &[BigRational]) -> Value {
    let mut m = Map::new();
    for v in graph.vertices() {
        m.insert(
            graph.vertex_name(v).to_string(),
            json!(fraction(&weights[v.0])),
        );
    }
    Value::Object(m)
}

pub fn constraint_name(graph: &Graph, c: &TraceConstraint) -> String {
    match *c {
        TraceConstraint::Balance(v) => format!("balance({})", graph.vertex_name(v)),
        TraceConstraint::Monotone(e) => format!("monotone({})", graph.edge_name(e)),
        TraceConstraint::SameOrbit(v, w) => {
            format!(
                "same_orbit({}, {})",
                graph.vertex_name(v),
                graph.vertex_name(w)
            )
        }
        TraceConstraint::Normalization => "normalization".to_string(),
    }
}

fn farkas_json(graph: &Graph, multipliers: &[(TraceConstraint, BigRational)]) -> Value {
    Value::Array(
        multipliers
            .iter()
            .map(|(c, y)| json!({"constraint": constraint_name(graph, c), "multiplier": fraction(y)}))
            .collect(),
    )
}

pub fn trace_json(graph: &Graph, t: &TraceResult) -> Value {
    match t {
        TraceResult::Found(s) => {
            json!({"exists": true, "weights": weights_json(graph, &s.weights)})
        }
        TraceResult::Infeasible(c) => json!({
            "exists": false,
            "infeasibility_certificate": farkas_json(graph, &c.multipliers),
        }),
    }
}

pub fn monoid_json(p: &MonoidPresentation, v: &GroupTestVerdict) -> Value {
    let body = match v {
        GroupTestVerdict::Group(w) => json!({
            "identity": p.display(&w.identity),
            "inverses": w
                .inverses
                .iter()
                .map(|inv| json!({
                    "generator": p.generators()[inv.generator.0],
                    "inverse": p.display(&inv.element),
                    "chain": inv.chain.0.iter().map(|x| p.display(x)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "absorption_chains": w
                .absorbs
                .iter()
                .map(|(g, chain)| json!({
                    "generator": p.generators()[g.0],
                    "chain": chain.0.iter().map(|x| p.display(x)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        }),
        GroupTestVerdict::NotGroup(t) => {
            let mut m = Map::new();
            for (name, w) in p.generators().iter().zip(&t.weights) {
                m.insert(name.clone(), json!(fraction(w)));
            }
            json!({"functional": m})
        }
        GroupTestVerdict::Unknown { bounds, reason } => json!({
            "reason": reason,
            "identity_degree": bounds.identity_degree,
            "degree": bounds.degree,
            "max_states": bounds.max_states,
        }),
    };
    let mut obj = Map::new();
    obj.insert("verdict".into(), json!(v.label()));
    obj.insert("relations".into(), json!(p.relation_strings()));
    if let Value::Object(fields) = body {
        obj.extend(fields);
    }
    Value::Object(obj)
}

/// The six verdicts in report order.
pub fn verdicts(report: &ClassificationReport) -> [(&'static str, &Verdict); 6] {
    [
        ("pseudo_free", &report.pseudo_free),
        ("effectivity", &report.effectivity),
        ("minimal", &report.minimal),
        ("simple", &report.simple),
        ("purely_infinite", &report.purely_infinite),
        ("stably_finite", &report.stably_finite),
    ]
}

pub fn report_json(ssg: &SelfSimilarGraph, report: &ClassificationReport) -> Value {
    let qg = report.quotient.graph();
    let names = Names { ssg, quotient: qg };
    let graph = ssg.graph();
    let mut verdict_map = Map::new();
    for (key, v) in verdicts(report) {
        verdict_map.insert(key.into(), names.verdict(v));
    }
    let monoid = |g: &Graph, v: &Option<GroupTestVerdict>| match v {
        Some(v) => monoid_json(&monoid_of(g), v),
        None => Value::Null,
    };
    let mut quotient_monoid = monoid(qg, &report.monoid_quotient);
    if let Value::Object(m) = &mut quotient_monoid {
        m.insert("heuristic".into(), json!(true));
    }
    json!({
        "input": {
            "vertices": report.summary.vertices,
            "edges": report.summary.edges,
            "group_order": report.summary.group_order,
            "orbits": report.summary.orbits,
            "sources": report.summary.sources.iter().map(|&v| graph.vertex_name(v)).collect::<Vec<_>>(),
        },
        "banner": report.banner,
        "conventions": CONVENTION_NOTES,
        "verdicts": verdict_map,
        "dichotomy": report.dichotomy,
        "g_trace": trace_json(graph, &report.trace),
        "quotient_trace": trace_json(qg, &report.quotient_trace),
        "monoid": {
            "E": monoid(graph, &report.monoid_input),
            "quotient": quotient_monoid,
        },
        "quotient": {
            "vertices": qg.vertex_names(),
            "edges": qg.edge_ids().map(|e| json!({
                "id": qg.edge_name(e),
                "d": qg.vertex_name(qg.d(e)),
                "r": qg.vertex_name(qg.r(e)),
            })).collect::<Vec<_>>(),
            "circuits": report.quotient_circuits,
        },
    })
}

fn witness_line(names: &Names, w: &Witness) -> String {
    let g = names.ssg.group();
    match w {
        Witness::PseudoFreeScan => "no fixed edge with trivial restriction".into(),
        Witness::FixedEdge { g: h, edge } => format!(
            "{} fixes {} with trivial restriction",
            g.name(*h),
            names.ssg.graph().edge_name(*edge)
        ),
        Witness::GCircuit(c) => format!(
            "G-circuit {} with twist {}",
            c.path.display(names.ssg.graph()),
            g.name(c.twist)
        ),
        Witness::EntrylessGCircuit(c) => format!(
            "G-circuit without entry {} with twist {}",
            c.path.display(names.ssg.graph()),
            g.name(c.twist)
        ),
        Witness::CircuitWithoutEntry { side, path } => format!(
            "circuit without entry {} in {}",
            path.display(names.graph(*side)),
            side.as_str()
        ),
        Witness::OrbitRanking { side, .. } => format!("orbit ranking on {}", side.as_str()),
        Witness::TrivialCylinder { g: h, vertex, .. } => format!(
            "{} acts trivially on the cylinder at {}",
            g.name(*h),
            names.ssg.graph().vertex_name(*vertex)
        ),
        Witness::MovedPaths(list) => format!("{} moved paths", list.len()),
        Witness::Reachability { side, .. } => {
            format!("reachability certificate on {}", side.as_str())
        }
        Witness::NotCofinal {
            side,
            vertex,
            cycle,
        } => {
            let graph = names.graph(*side);
            format!(
                "cycle {} avoids everything {} receives paths from",
                cycle.display(graph),
                graph.vertex_name(*vertex)
            )
        }
        Witness::ReceivesFromGCircuits(list) => {
            format!("G-paths from G-circuits to all {} vertices", list.len())
        }
        Witness::PiSufficient { side, .. } => {
            format!(
                "entries on all circuits and paths from circuits in {}",
                side.as_str()
            )
        }
        Witness::Trace { side, .. } => format!("trace on {}", side.as_str()),
        Witness::Farkas { side, .. } => format!("no trace on {}", side.as_str()),
        Witness::All(parts) => parts
            .iter()
            .map(|p| witness_line(names, p))
            .collect::<Vec<_>>()
            .join("; "),
        Witness::Gap(reason) => reason.clone(),
    }
}

fn trace_line(graph: &Graph, t: &TraceResult) -> String {
    match t {
        TraceResult::Found(s) => {
            let parts: Vec<String> = graph
                .vertices()
                .map(|v| format!("{}={}", graph.vertex_name(v), fraction(&s.weights[v.0])))
                .collect();
            format!("exists ({})", parts.join(", "))
        }
        TraceResult::Infeasible(c) => format!(
            "none (infeasibility certificate with {} multipliers)",
            c.multipliers.len()
        ),
    }
}

fn monoid_line(graph: &Graph, v: &Option<GroupTestVerdict>) -> String {
    let p = monoid_of(graph);
    match v {
        None => "not run".into(),
        Some(GroupTestVerdict::Group(w)) => format!("Group (identity {})", p.display(&w.identity)),
        Some(GroupTestVerdict::NotGroup(_)) => "NotGroup (nonzero additive functional)".into(),
        Some(GroupTestVerdict::Unknown { reason, .. }) => format!("Unknown ({reason})"),
    }
}

pub fn report_text(ssg: &SelfSimilarGraph, report: &ClassificationReport) -> String {
    let qg = report.quotient.graph();
    let names = Names { ssg, quotient: qg };
    let s = &report.summary;
    let mut out = Vec::new();
    out.push(format!(
        "input: {} vertices, {} edges, group of order {}, {} orbits",
        s.vertices, s.edges, s.group_order, s.orbits
    ));
    if let Some(b) = &report.banner {
        out.push(format!("!! {b}"));
    }
    for (key, v) in verdicts(report) {
        out.push(format!("{key}: {} [{}]", v.value, v.rule));
        out.push(format!("    {}", witness_line(&names, &v.witness)));
    }
    out.push(format!("dichotomy: {}", report.dichotomy));
    out.push(format!(
        "g_trace: {}",
        trace_line(ssg.graph(), &report.trace)
    ));
    out.push(format!(
        "quotient_trace: {}",
        trace_line(qg, &report.quotient_trace)
    ));
    out.push(format!(
        "monoid E: {}",
        monoid_line(ssg.graph(), &report.monoid_input)
    ));
    out.push(format!(
        "monoid quotient (heuristic): {}",
        monoid_line(qg, &report.monoid_quotient)
    ));
    out.push(format!(
        "quotient: {} vertices, {} edges, {} circuits",
        qg.vertex_count(),
        qg.edge_count(),
        report.quotient_circuits
    ));
    out.push("conventions:".into());
    for note in CONVENTION_NOTES {
        out.push(format!("  - {note}"));
    }
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::classify::{classify, ClassifyOptions};

    #[test]
    fn json_and_text_agree_on_verdicts() {
        for (name, ssg) in catalog::entries() {
            let r = classify(&ssg, &ClassifyOptions::default()).unwrap();
            let j = report_json(&ssg, &r);
            let text = report_text(&ssg, &r);
            for (key, v) in verdicts(&r) {
                assert_eq!(
                    j["verdicts"][key]["value"],
                    json!(v.value.as_str()),
                    "{name}"
                );
                assert!(text.contains(&format!("{key}: {} [", v.value)), "{name}");
            }
            assert_eq!(j["dichotomy"], json!(r.dichotomy));
        }
    }

    #[test]
    fn fractions_are_exact_strings() {
        let ssg = SelfSimilarGraph::with_trivial_group(catalog::two_cycle());
        let r = classify(&ssg, &ClassifyOptions::default()).unwrap();
        let j = report_json(&ssg, &r);
        assert_eq!(j["g_trace"]["weights"]["u"], json!("1/2"));
    }
}
