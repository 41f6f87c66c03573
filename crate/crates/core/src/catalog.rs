//! Curated instances shipped with the crate and mirrored as documents under `catalog/`.

use crate::model::{
    Cocycle, EdgeId, Elem, FinGroup, Graph, GraphAction, SelfSimilarGraph, VertexId,
};

fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vertices.iter().copied(),
        edges
            .iter()
            .map(|&(id, d, r)| (id.to_string(), d.to_string(), r.to_string())),
    )
    .expect("catalog graphs are well formed")
}

/// Edges `e₁…eₙ` into `v` from `w₁…wₙ`, and a two-way ring on the `wᵢ`:
/// `fᵢ` runs from `wᵢ₊₁` into `wᵢ`, `gᵢ` from `wᵢ` into `wᵢ₊₁` (indices mod n).
pub fn cyclic_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let w = |i: usize| format!("w{}", (i - 1) % n + 1);
    let mut vertices = vec!["v".to_string()];
    vertices.extend((1..=n).map(w));
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((format!("e{i}"), w(i), "v".to_string()));
    }
    for i in 1..=n {
        edges.push((format!("f{i}"), w(i + 1), w(i)));
    }
    for i in 1..=n {
        edges.push((format!("g{i}"), w(i), w(i + 1)));
    }
    Graph::new(vertices, edges).expect("ring graph is well formed")
}

/// `ℤ/n` rotating the ring, fixing `v`, with restriction `φ(k, e) = k`.
pub fn cyclic_example(n: usize) -> SelfSimilarGraph {
    let graph = cyclic_graph(n);
    let group = FinGroup::cyclic(n);
    // vertex 0 is v, vertices 1..=n are the ring; edges come in three blocks of n
    let shift = |k: Elem, i: usize| (i + k.0) % n;
    let action = GraphAction::from_fn(
        &group,
        &graph,
        |k, v| {
            if v.0 == 0 {
                v
            } else {
                VertexId(1 + shift(k, v.0 - 1))
            }
        },
        |k, e| {
            let (block, i) = (e.0 / n, e.0 % n);
            EdgeId(block * n + shift(k, i))
        },
    );
    let cocycle = Cocycle::constant(&group, &graph);
    SelfSimilarGraph::new(graph, group, action, cocycle).expect("ring action is self-similar")
}

pub fn one_loop() -> Graph {
    graph(&["v"], &[("a", "v", "v")])
}

pub fn two_loops() -> Graph {
    graph(&["v"], &[("a", "v", "v"), ("b", "v", "v")])
}

pub fn two_cycle() -> Graph {
    graph(&["u", "w"], &[("a", "w", "u"), ("b", "u", "w")])
}

/// `ℤ/2` acting trivially on `graph` with `φ ≡ 1`; never pseudo-free when `graph` has edges.
pub fn z2_trivial(graph: Graph) -> SelfSimilarGraph {
    let group = FinGroup::cyclic(2);
    let action = GraphAction::trivial(&group, &graph);
    let cocycle = Cocycle::trivial(&group, &graph);
    SelfSimilarGraph::new(graph, group, action, cocycle).expect("trivial action is self-similar")
}

/// One vertex, `ℤ/2` swapping its two loops, `φ(g, e) = g`.
pub fn z2_swap_loops() -> SelfSimilarGraph {
    let graph = two_loops();
    let group = FinGroup::cyclic(2);
    let action = GraphAction::from_fn(&group, &graph, |_, v| v, |g, e| EdgeId((e.0 + g.0) % 2));
    let cocycle = Cocycle::constant(&group, &graph);
    SelfSimilarGraph::new(graph, group, action, cocycle).expect("swap action is self-similar")
}

/// Two vertices with no edges between them, each carrying a pair of loops swapped by `ℤ/2`.
pub fn disconnected_orbits() -> SelfSimilarGraph {
    let graph = graph(
        &["u", "w"],
        &[
            ("a1", "u", "u"),
            ("a2", "u", "u"),
            ("b1", "w", "w"),
            ("b2", "w", "w"),
        ],
    );
    let group = FinGroup::cyclic(2);
    let action = GraphAction::from_fn(
        &group,
        &graph,
        |_, v| v,
        |g, e| EdgeId((e.0 / 2) * 2 + (e.0 % 2 + g.0) % 2),
    );
    let cocycle = Cocycle::constant(&group, &graph);
    SelfSimilarGraph::new(graph, group, action, cocycle).expect("swap action is self-similar")
}

/// `u` receives one edge from `w`, and `w` receives nothing.
pub fn single_edge() -> Graph {
    graph(&["u", "w"], &[("a", "w", "u")])
}

/// Every named catalog instance, in a stable order.
pub fn entries() -> Vec<(String, SelfSimilarGraph)> {
    let mut out = Vec::new();
    for n in [2, 3, 5] {
        out.push((format!("cyclic-n{n}"), cyclic_example(n)));
    }
    out.push((
        "cyclic-n3-trivial-group".into(),
        SelfSimilarGraph::with_trivial_group(cyclic_graph(3)),
    ));
    out.push((
        "one-loop".into(),
        SelfSimilarGraph::with_trivial_group(one_loop()),
    ));
    out.push((
        "two-loops".into(),
        SelfSimilarGraph::with_trivial_group(two_loops()),
    ));
    out.push((
        "two-cycle".into(),
        SelfSimilarGraph::with_trivial_group(two_cycle()),
    ));
    out.push(("z2-trivial-one-loop".into(), z2_trivial(one_loop())));
    out.push(("z2-trivial-two-loops".into(), z2_trivial(two_loops())));
    out.push(("z2-swap-loops".into(), z2_swap_loops()));
    out.push(("disconnected-orbits".into(), disconnected_orbits()));
    out.push((
        "single-edge".into(),
        SelfSimilarGraph::with_trivial_group(single_edge()),
    ));
    out
}
