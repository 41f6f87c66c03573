mod common;

use selfsim_core::analysis::{g_reaches, reachable_from};
use selfsim_core::catalog;
use selfsim_core::classify::{classify, ClassifyOptions, KIRCHBERG};
use selfsim_core::monoid::GroupTestVerdict;
use selfsim_core::witness::Tri;
use selfsim_core::{build_quotient, SelfSimilarGraph};

fn corpus() -> Vec<SelfSimilarGraph> {
    let mut all: Vec<SelfSimilarGraph> = catalog::entries().into_iter().map(|(_, s)| s).collect();
    all.extend(common::constant_corpus(60, 21));
    all.extend(common::mixed_corpus(60, 22));
    all.extend(common::sourced_corpus(40, 23));
    all
}

#[test]
fn g_reaches_is_quotient_reachability_pulled_back() {
    for ssg in corpus() {
        let q = build_quotient(&ssg);
        let rel = g_reaches(&ssg);
        for v in ssg.graph().vertices() {
            let reached = reachable_from(q.graph(), &[q.orbit_of(v)]);
            for w in ssg.graph().vertices() {
                assert_eq!(rel.contains(v, w), reached[q.orbit_of(w).0]);
            }
        }
    }
}

#[test]
fn quotient_monoid_corroborates_simple_verdicts() {
    let mut checked = 0;
    for ssg in corpus() {
        let report = classify(&ssg, &ClassifyOptions::default()).unwrap();
        if report.simple.value != Tri::Yes {
            continue;
        }
        match report.monoid_quotient.as_ref().unwrap() {
            GroupTestVerdict::Group(_) => {
                checked += 1;
                assert_eq!(report.purely_infinite.value, Tri::Yes);
            }
            GroupTestVerdict::NotGroup(_) => {
                checked += 1;
                assert_eq!(report.purely_infinite.value, Tri::No);
            }
            GroupTestVerdict::Unknown { .. } => {}
        }
    }
    assert!(checked > 0);
}

#[test]
fn non_pseudo_free_two_loops_keeps_structure() {
    let ssg = catalog::z2_trivial(catalog::two_loops());
    let report = classify(&ssg, &ClassifyOptions::default()).unwrap();
    assert_eq!(report.pseudo_free.value, Tri::No);
    for v in [
        &report.simple,
        &report.purely_infinite,
        &report.stably_finite,
    ] {
        assert_eq!(v.value, Tri::Unknown);
    }
    assert_eq!(report.quotient.graph().vertex_count(), 1);
    assert_eq!(report.quotient.graph().edge_count(), 2);
    assert!(report.quotient_circuits > 0);
}

#[test]
fn ring_examples_are_kirchberg() {
    for n in [2, 3, 5] {
        let report = classify(&catalog::cyclic_example(n), &ClassifyOptions::default()).unwrap();
        assert_eq!(report.pseudo_free.value, Tri::Yes);
        assert_eq!(report.effectivity.value, Tri::Yes);
        assert_eq!(report.minimal.value, Tri::Yes);
        assert_eq!(report.stably_finite.value, Tri::No);
        assert_eq!(report.dichotomy, KIRCHBERG);
        assert!(!report.trace.is_feasible());
    }
}
