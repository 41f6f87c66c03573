//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use selfsim_core::analysis::{
    circuit_without_entry, every_g_circuit_has_entry, find_circuits, find_g_circuit, g_reaches,
    graph_algebra_pi_sufficient, graph_algebra_simple, is_cofinal, is_weakly_g_transitive,
    reachable_from,
};
use selfsim_core::catalog;
use selfsim_core::check::{check_report, report_invariants};
use selfsim_core::classify::{classify, ClassificationReport, ClassifyOptions, KIRCHBERG};
use selfsim_core::monoid::{is_group_nonzero, monoid_of, GroupTestVerdict, MonoidBounds};
use selfsim_core::orbit::compute_triv;
use selfsim_core::render::verdicts;
use selfsim_core::trace::{graph_g_trace_exists, graph_trace_exists};
use selfsim_core::witness::Tri;
use selfsim_core::{build_quotient, AnalysisError, Graph, SelfSimilarGraph};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || {
        format!("{what} took {took:.2?}, limit {limit:?}")
    })
}

// 1: quotient shape and Kirchberg verdict on the ring example
fn golden_ring() -> Outcome {
    let mut notes = Vec::new();
    for n in [2usize, 3, 5] {
        let start = Instant::now();
        let ssg = catalog::cyclic_example(n);
        let report = classify(&ssg, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(1), &format!("n = {n}"))?;
        let q = report.quotient.graph();
        ensure(q.vertex_count() == 2, || {
            format!("n = {n}: {} quotient vertices", q.vertex_count())
        })?;
        ensure(q.edge_count() == n + 2, || {
            format!("n = {n}: {} quotient edges", q.edge_count())
        })?;
        let w1 = q.vertex_id("[w1]").ok_or("no [w1] in quotient")?;
        let loops: Vec<_> = q.edge_ids().filter(|&e| q.r(e) == q.d(e)).collect();
        ensure(
            loops.len() == 2 && loops.iter().all(|&e| q.r(e) == w1),
            || format!("n = {n}: loops {loops:?}"),
        )?;
        ensure(report.simple.value == Tri::Yes, || {
            format!("n = {n}: simple {}", report.simple.value)
        })?;
        ensure(report.purely_infinite.value == Tri::Yes, || {
            format!("n = {n}: purely infinite {}", report.purely_infinite.value)
        })?;
        ensure(report.dichotomy == KIRCHBERG, || {
            format!("n = {n}: {}", report.dichotomy)
        })?;
        notes.push(format!("n={n} {:.0?}", start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn quotient_is_identity(ssg: &SelfSimilarGraph) -> bool {
    let q = build_quotient(ssg);
    let (e, qt) = (ssg.graph(), q.graph());
    if e.vertex_count() != qt.vertex_count() || e.edge_count() != qt.edge_count() {
        return false;
    }
    let mut vhit = vec![false; e.vertex_count()];
    for v in e.vertices() {
        let c = q.orbit_of(v);
        if vhit[c.0] {
            return false;
        }
        vhit[c.0] = true;
    }
    let mut ehit = vec![false; e.edge_count()];
    for te in qt.edge_ids() {
        let origin = q.edge_origin(te);
        if ehit[origin.0] {
            return false;
        }
        ehit[origin.0] = true;
        if q.orbit_of(e.r(origin)) != qt.r(te) || q.orbit_of(e.d(origin)) != qt.d(te) {
            return false;
        }
    }
    true
}

// 2: with the trivial group every G-notion is its plain counterpart
fn trivial_group() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let mut source_free = 0;
    for i in 0..50 {
        let graph = common::random_graph(&mut rng, 6, 10, i % 2 == 0);
        let ssg = SelfSimilarGraph::with_trivial_group(graph.clone());
        let tag = |what: &str| format!("graph {i}: {what}");
        ensure(quotient_is_identity(&ssg), || {
            tag("quotient is not isomorphic")
        })?;

        let circuits = find_circuits(&graph).map_err(|e| e.to_string())?;
        ensure(
            find_g_circuit(&ssg).is_some() == !circuits.is_empty(),
            || tag("G-circuit"),
        )?;
        ensure(
            every_g_circuit_has_entry(&ssg) == circuit_without_entry(&graph).is_none(),
            || tag("entries"),
        )?;
        let rel = g_reaches(&ssg);
        for v in graph.vertices() {
            let plain = reachable_from(&graph, &[v]);
            for w in graph.vertices() {
                ensure(rel.contains(v, w) == plain[w.0], || tag("reachability"))?;
            }
        }
        match is_weakly_g_transitive(&ssg) {
            Ok(c) => {
                source_free += 1;
                ensure(c.holds() == is_cofinal(&graph).holds(), || {
                    tag("cofinality")
                })?;
            }
            Err(AnalysisError::SourcePresent { .. }) => {
                ensure(!graph.is_source_free(), || tag("spurious source"))?
            }
            Err(e) => return Err(tag(&e.to_string())),
        }
        ensure(
            graph_g_trace_exists(&ssg).is_feasible() == graph_trace_exists(&graph).is_feasible(),
            || tag("trace"),
        )?;
    }
    within(start, Duration::from_secs(10), "50 graphs")?;
    Ok(format!(
        "50 graphs ({source_free} source-free) in {:.0?}",
        start.elapsed()
    ))
}

fn constant_corpus() -> Vec<SelfSimilarGraph> {
    common::constant_corpus(250, 3)
}

// 3: G-notions on E against plain notions on the quotient
fn quotient_equivalences(corpus: &[SelfSimilarGraph]) -> Outcome {
    let start = Instant::now();
    let mut with_circuit = 0;
    let mut all_entries = 0;
    let mut transitive = 0;
    for (i, ssg) in corpus.iter().enumerate() {
        let tag = |what: &str| format!("instance {i}: {what}");
        let q = build_quotient(ssg);
        let qg = q.graph();
        let g_circuit = find_g_circuit(ssg).is_some();
        let q_circuit = !find_circuits(qg).map_err(|e| e.to_string())?.is_empty();
        ensure(g_circuit == q_circuit, || {
            tag("G-circuit vs quotient circuit")
        })?;
        let g_entries = every_g_circuit_has_entry(ssg);
        let q_entries = circuit_without_entry(qg).is_none();
        ensure(g_entries == q_entries, || tag("entries"))?;
        let g_trans = is_weakly_g_transitive(ssg)
            .map_err(|e| tag(&e.to_string()))?
            .holds();
        ensure(g_trans == is_cofinal(qg).holds(), || {
            tag("transitivity vs cofinality")
        })?;
        with_circuit += g_circuit as usize;
        all_entries += g_entries as usize;
        transitive += g_trans as usize;
    }
    within(start, Duration::from_secs(60), "equivalence suite")?;
    Ok(format!(
        "{} instances, 0 disagreements (G-circuit {with_circuit}, all entries {all_entries}, transitive {transitive}) in {:.0?}",
        corpus.len(),
        start.elapsed()
    ))
}

// 4: G-traces on E against traces on the quotient
fn trace_bridge(corpus: &[SelfSimilarGraph]) -> Outcome {
    let (mut feasible, mut acyclic, mut forced_none) = (0, 0, 0);
    for (i, ssg) in corpus.iter().enumerate() {
        let tag = |what: &str| format!("instance {i}: {what}");
        let q = build_quotient(ssg);
        let qg = q.graph();
        let on_e = graph_g_trace_exists(ssg);
        let on_q = graph_trace_exists(qg);
        ensure(on_e.is_feasible() == on_q.is_feasible(), || {
            tag("feasibility differs")
        })?;
        feasible += on_e.is_feasible() as usize;
        if find_circuits(qg).map_err(|e| e.to_string())?.is_empty() {
            acyclic += 1;
            ensure(on_q.is_feasible(), || {
                tag("circuit-free quotient without trace")
            })?;
        }
        let simple = graph_algebra_simple(qg).map(|s| s.holds()).unwrap_or(false);
        if simple && graph_algebra_pi_sufficient(qg).holds() {
            forced_none += 1;
            ensure(!on_q.is_feasible(), || {
                tag("trace on a purely infinite quotient")
            })?;
        }
    }
    Ok(format!(
        "{} instances: {feasible} with traces, {acyclic} circuit-free, {forced_none} forced empty",
        corpus.len()
    ))
}

fn curated_graphs() -> Vec<Graph> {
    let g = |vs: &[&str], es: &[(&str, &str)]| {
        Graph::new(
            vs.iter().copied(),
            es.iter()
                .enumerate()
                .map(|(i, &(d, r))| (format!("e{i}"), d.to_string(), r.to_string())),
        )
        .unwrap()
    };
    let mut out = vec![
        catalog::two_loops(),
        catalog::one_loop(),
        catalog::two_cycle(),
        g(&["u"], &[("u", "u"), ("u", "u"), ("u", "u")]),
        g(
            &["u", "w"],
            &[("u", "u"), ("u", "u"), ("u", "w"), ("w", "w")],
        ),
        g(&["u", "w"], &[("u", "w"), ("w", "u"), ("u", "u")]),
        g(
            &["u", "w"],
            &[("u", "w"), ("w", "u"), ("u", "u"), ("w", "w")],
        ),
        g(&["u", "w"], &[("u", "w"), ("u", "w"), ("w", "u")]),
        g(&["u", "w"], &[("u", "u"), ("w", "w")]),
        g(
            &["u", "w"],
            &[("u", "u"), ("u", "u"), ("w", "w"), ("w", "w")],
        ),
        g(&["u", "w"], &[("u", "u"), ("u", "w")]),
        g(
            &["u", "w"],
            &[("u", "u"), ("u", "u"), ("w", "u"), ("w", "w")],
        ),
        g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]),
        g(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")],
        ),
        g(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "b")],
        ),
        g(
            &["a", "b", "c"],
            &[("a", "a"), ("a", "a"), ("a", "b"), ("b", "c")],
        ),
        g(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
        ),
        g(
            &["a", "b", "c", "d"],
            &[
                ("a", "a"),
                ("a", "b"),
                ("b", "b"),
                ("c", "c"),
                ("d", "d"),
                ("c", "d"),
            ],
        ),
    ];
    let mut rng = common::rng(5);
    while out.len() < 40 {
        out.push(common::random_graph(&mut rng, 4, 6, true));
    }
    out
}

// 5: monoid group test against the graph criterion
fn monoid_oracle() -> Outcome {
    let bounds = MonoidBounds::default();
    let micro = [
        ("two loops", catalog::two_loops(), "Group"),
        ("one loop", catalog::one_loop(), "NotGroup"),
        ("2-cycle", catalog::two_cycle(), "NotGroup"),
    ];
    for (name, graph, want) in &micro {
        let got = is_group_nonzero(&monoid_of(graph), bounds);
        ensure(got.label() == *want, || {
            format!("{name}: {} instead of {want}", got.label())
        })?;
    }
    let graphs = curated_graphs();
    let (mut definite, mut unknown) = (0, 0);
    for (i, graph) in graphs.iter().enumerate() {
        let criterion = graph_algebra_simple(graph)
            .map_err(|e| e.to_string())?
            .holds()
            && graph_algebra_pi_sufficient(graph).holds();
        match is_group_nonzero(&monoid_of(graph), bounds) {
            GroupTestVerdict::Group(_) => {
                definite += 1;
                ensure(criterion, || {
                    format!("graph {i}: Group but criterion fails")
                })?;
            }
            GroupTestVerdict::NotGroup(_) => {
                definite += 1;
                ensure(!criterion, || {
                    format!("graph {i}: NotGroup but criterion holds")
                })?;
            }
            GroupTestVerdict::Unknown { .. } => unknown += 1,
        }
    }
    ensure(definite >= 20, || {
        format!("only {definite} definite verdicts")
    })?;
    Ok(format!(
        "{} graphs: {definite} definite, {unknown} unknown; micro-graphs Group/NotGroup/NotGroup",
        graphs.len()
    ))
}

// 6: greatest fixed point against brute-force path fixing
fn triv_soundness(corpus: &[SelfSimilarGraph]) -> Outcome {
    let mut pairs = 0;
    let mut refused = 0;
    for (i, ssg) in corpus.iter().enumerate() {
        let triv = match compute_triv(ssg) {
            Ok(t) => t,
            Err(AnalysisError::SourcePresent { .. }) if !ssg.is_source_free() => {
                refused += 1;
                continue;
            }
            Err(e) => return Err(format!("instance {i}: {e}")),
        };
        let depth = ssg.group().order() * ssg.graph().vertex_count() + 1;
        for g in ssg.group().elements() {
            for v in ssg.graph().vertices() {
                let oracle = common::fixes_all_paths(ssg, g, v, depth);
                ensure(triv.contains(g, v) == oracle, || {
                    format!("instance {i}: ({}, {}) disagrees", g.0, v.0)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} instances, {pairs} pairs compared, {refused} refused for sources",
        corpus.len()
    ))
}

struct Classified {
    ssg: SelfSimilarGraph,
    report: ClassificationReport,
}

fn full_corpus(constant: &[SelfSimilarGraph]) -> Vec<SelfSimilarGraph> {
    let mut all: Vec<SelfSimilarGraph> = catalog::entries().into_iter().map(|(_, s)| s).collect();
    all.extend(constant.iter().cloned());
    all.extend(common::mixed_corpus(150, 7));
    all.extend(common::sourced_corpus(100, 11));
    let mut rng = common::rng(2);
    for i in 0..50 {
        let graph = common::random_graph(&mut rng, 6, 10, i % 2 == 0);
        all.push(SelfSimilarGraph::with_trivial_group(graph));
    }
    all
}

fn classify_all(corpus: Vec<SelfSimilarGraph>) -> Result<Vec<Classified>, String> {
    corpus
        .into_iter()
        .map(|ssg| {
            let report = classify(&ssg, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
            Ok(Classified { ssg, report })
        })
        .collect()
}

// 7: report-level invariants
fn meta_invariants(all: &[Classified]) -> Outcome {
    let mut source_free = 0;
    for (i, c) in all.iter().enumerate() {
        if c.ssg.is_source_free() {
            source_free += 1;
            ensure(c.report.stably_finite.value != Tri::Yes, || {
                format!("report {i}: stably finite on a source-free input")
            })?;
        }
        let broken = report_invariants(&c.report);
        ensure(broken.is_empty(), || {
            format!("report {i}: {}", broken.join("; "))
        })?;
    }
    Ok(format!(
        "{} reports ({source_free} source-free), all invariants hold",
        all.len()
    ))
}

// 8: every definite verdict replays through the witness checker
fn witness_replay(all: &[Classified]) -> Outcome {
    let mut definite = 0;
    for (i, c) in all.iter().enumerate() {
        definite += verdicts(&c.report)
            .iter()
            .filter(|(_, v)| v.value != Tri::Unknown)
            .count();
        let failures = check_report(&c.ssg, &c.report);
        ensure(failures.is_empty(), || {
            format!("report {i}: {}", failures.join("; "))
        })?;
    }
    Ok(format!(
        "{definite} definite verdicts across {} reports replayed",
        all.len()
    ))
}

fn run(number: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {number} ({name}): {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL criterion {number} ({name}): {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let constant = constant_corpus();
    let mut with_sources = constant.clone();
    with_sources.extend(common::sourced_corpus(100, 11));
    let mut results = vec![
        run(1, "golden ring example", golden_ring),
        run(2, "trivial-group degeneration", trivial_group),
        run(3, "quotient equivalences", || {
            quotient_equivalences(&constant)
        }),
        run(4, "trace bridge", || trace_bridge(&with_sources)),
        run(5, "monoid oracle", monoid_oracle),
    ];
    let mut fixed_point_corpus = constant.clone();
    fixed_point_corpus.extend(common::mixed_corpus(150, 7));
    fixed_point_corpus.extend(common::sourced_corpus(100, 11));
    results.push(run(6, "fixed-point soundness", || {
        triv_soundness(&fixed_point_corpus)
    }));

    let start = Instant::now();
    match classify_all(full_corpus(&constant)) {
        Ok(all) => {
            eprintln!("classified {} inputs in {:.1?}", all.len(), start.elapsed());
            results.push(run(7, "report invariants", || meta_invariants(&all)));
            results.push(run(8, "witness replay", || witness_replay(&all)));
        }
        Err(e) => {
            for (n, name) in [(7, "report invariants"), (8, "witness replay")] {
                println!("FAIL criterion {n} ({name}): classification failed: {e}");
                results.push(false);
            }
        }
    }
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
