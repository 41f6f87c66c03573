//! Fixed-point computations over `G × E`: pseudo-freeness and trivial actions on cylinders.
//!
//! `(g, v)` belongs to the trivial set when `g` fixes every infinite path received at `v`.
//! Reading the group element as the state of a Mealy machine whose input is the edge
//! sequence, that is a safety property, so the set is the greatest fixed point of
//!
//! ```text
//! (g, v) ∈ T  ⟺  g·v = v  ∧  ∀ e ∈ r⁻¹(v): g·e = e ∧ (φ(g, e), d(e)) ∈ T
//! ```

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::AnalysisError;
use crate::model::{EdgeId, Elem, Path, SelfSimilarGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoFreeness {
    Free,
    /// `g ≠ 1` with `g·e = e` and `φ(g, e) = 1`.
    Counterexample {
        g: Elem,
        e: EdgeId,
    },
}

impl PseudoFreeness {
    pub fn holds(&self) -> bool {
        matches!(self, PseudoFreeness::Free)
    }
}

/// Scans `G × E¹` for a nonidentity element fixing an edge with trivial restriction.
pub fn is_pseudo_free(ssg: &SelfSimilarGraph) -> PseudoFreeness {
    let group = ssg.group();
    for g in group.elements().filter(|&g| !group.is_identity(g)) {
        for e in ssg.graph().edge_ids() {
            if ssg.act_edge(g, e) == e && group.is_identity(ssg.restrict(g, e)) {
                return PseudoFreeness::Counterexample { g, e };
            }
        }
    }
    PseudoFreeness::Free
}

/// Pairs `(g, v)` such that `g` acts trivially on the cylinder at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrivSet {
    pairs: BTreeSet<(Elem, VertexId)>,
}

impl TrivSet {
    pub fn contains(&self, g: Elem, v: VertexId) -> bool {
        self.pairs.contains(&(g, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, VertexId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The first pair whose element is not the identity.
    pub fn nonidentity_pair(&self, ssg: &SelfSimilarGraph) -> Option<(Elem, VertexId)> {
        self.iter().find(|&(g, _)| !ssg.group().is_identity(g))
    }
}

impl FromIterator<(Elem, VertexId)> for TrivSet {
    fn from_iter<I: IntoIterator<Item = (Elem, VertexId)>>(iter: I) -> Self {
        TrivSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// All `(g, v)` with `g·v = v`: the starting point of the deletion iteration.
pub fn initial_candidates(ssg: &SelfSimilarGraph) -> TrivSet {
    ssg.group()
        .elements()
        .flat_map(|g| {
            ssg.graph()
                .vertices()
                .filter(move |&v| ssg.act_vertex(g, v) == v)
                .map(move |v| (g, v))
        })
        .collect()
}

/// One round of deleting pairs that violate the closure condition.
pub fn deletion_round(ssg: &SelfSimilarGraph, set: &TrivSet) -> TrivSet {
    set.iter()
        .filter(|&(g, v)| survives(ssg, set, g, v))
        .collect()
}

fn survives(ssg: &SelfSimilarGraph, set: &TrivSet, g: Elem, v: VertexId) -> bool {
    ssg.act_vertex(g, v) == v
        && ssg
            .graph()
            .in_edges(v)
            .iter()
            .all(|&e| ssg.act_edge(g, e) == e && set.contains(ssg.restrict(g, e), ssg.graph().d(e)))
}

fn require_source_free(ssg: &SelfSimilarGraph) -> Result<(), AnalysisError> {
    let sources = ssg.graph().sources();
    if sources.is_empty() {
        Ok(())
    } else {
        Err(AnalysisError::SourcePresent {
            vertices: sources
                .iter()
                .map(|&v| ssg.graph().vertex_name(v).to_string())
                .collect(),
        })
    }
}

/// The greatest fixed point, by deletion from [`initial_candidates`] until stable.
///
/// Cylinders at sources are empty, so the condition is vacuous there and the
/// computation is refused.
pub fn compute_triv(ssg: &SelfSimilarGraph) -> Result<TrivSet, AnalysisError> {
    require_source_free(ssg)?;
    let mut set = initial_candidates(ssg);
    loop {
        let next = deletion_round(ssg, &set);
        if next.len() == set.len() {
            return Ok(set);
        }
        set = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderCondition {
    /// No nonidentity element fixes a whole cylinder.
    Holds,
    Fails {
        g: Elem,
        v: VertexId,
    },
}

impl CylinderCondition {
    pub fn holds(&self) -> bool {
        matches!(self, CylinderCondition::Holds)
    }
}

pub fn cylinder_condition_holds(
    ssg: &SelfSimilarGraph,
) -> Result<CylinderCondition, AnalysisError> {
    let triv = compute_triv(ssg)?;
    Ok(match triv.nonidentity_pair(ssg) {
        Some((g, v)) => CylinderCondition::Fails { g, v },
        None => CylinderCondition::Holds,
    })
}

/// A shortest finite path received at `v` that `g` moves, if one exists.
///
/// Explores states `(φ(g, α), d(α))` over prefixes `α` that `g` fixes; the first
/// edge whose image differs closes the witness.
pub fn moved_path(ssg: &SelfSimilarGraph, g: Elem, v: VertexId) -> Option<Path> {
    let graph = ssg.graph();
    if ssg.act_vertex(g, v) != v {
        return Some(Path::empty(v));
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((g, v));
    queue.push_back((g, Path::empty(v)));
    while let Some((h, prefix)) = queue.pop_front() {
        let u = prefix.domain();
        for &e in graph.in_edges(u) {
            let mut next = prefix.clone();
            next.push(graph, e)
                .expect("e is received at the prefix domain");
            if ssg.act_edge(h, e) != e {
                return Some(next);
            }
            let state = (ssg.restrict(h, e), graph.d(e));
            if seen.insert(state) {
                queue.push_back((state.0, next));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_group_is_pseudo_free_with_identity_cylinders() {
        let ssg = SelfSimilarGraph::with_trivial_group(catalog::two_loops());
        assert!(is_pseudo_free(&ssg).holds());
        let triv = compute_triv(&ssg).unwrap();
        assert_eq!(triv.len(), 1);
        assert!(cylinder_condition_holds(&ssg).unwrap().holds());
    }

    #[test]
    fn trivial_z2_action_fails_both_conditions() {
        let ssg = catalog::z2_trivial(catalog::one_loop());
        assert_eq!(
            is_pseudo_free(&ssg),
            PseudoFreeness::Counterexample {
                g: Elem(1),
                e: EdgeId(0)
            }
        );
        let triv = compute_triv(&ssg).unwrap();
        assert_eq!(triv.len(), 2);
        assert_eq!(
            cylinder_condition_holds(&ssg).unwrap(),
            CylinderCondition::Fails {
                g: Elem(1),
                v: VertexId(0)
            }
        );
        assert_eq!(moved_path(&ssg, Elem(1), VertexId(0)), None);
    }

    #[test]
    fn ring_example_is_pseudo_free_and_has_only_identity_cylinders() {
        let ssg = catalog::cyclic_example(2);
        assert!(is_pseudo_free(&ssg).holds());
        let triv = compute_triv(&ssg).unwrap();
        let expected: TrivSet = (0..3).map(|v| (Elem(0), VertexId(v))).collect();
        assert_eq!(triv, expected);
        let moved = moved_path(&ssg, Elem(1), VertexId(0)).unwrap();
        assert_eq!(moved.display(ssg.graph()), "e1");
    }

    #[test]
    fn sources_are_refused() {
        let ssg = SelfSimilarGraph::with_trivial_group(catalog::single_edge());
        assert!(matches!(
            compute_triv(&ssg),
            Err(AnalysisError::SourcePresent { .. })
        ));
    }

    #[test]
    fn result_is_a_fixed_point() {
        for (_, ssg) in catalog::entries() {
            if let Ok(triv) = compute_triv(&ssg) {
                assert_eq!(deletion_round(&ssg, &triv), triv);
            }
        }
    }
}
