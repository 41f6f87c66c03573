//! Random corpora and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use selfsim_core::{
    Cocycle, EdgeId, Elem, FinGroup, Graph, GraphAction, Path, SelfSimilarGraph, VertexId,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random graph with at most `max_v` vertices and `max_e` edges. When
/// `source_free` is set every vertex receives at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize, source_free: bool) -> Graph {
    let nv = rng.gen_range(1..=max_v);
    let lo = if source_free { nv } else { 0 };
    let ne = rng.gen_range(lo..=max_e.max(lo));
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..ne {
        let r = if source_free && i < nv {
            i
        } else {
            rng.gen_range(0..nv)
        };
        let d = rng.gen_range(0..nv);
        edges.push((format!("e{i}"), vertices[d].clone(), vertices[r].clone()));
    }
    Graph::new(vertices, edges).expect("generated graph is well formed")
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

struct EdgeOrbit {
    size: usize,
    r: (usize, usize),
    d: (usize, usize),
    multiplier: usize,
}

/// A random `ℤ/n` self-similar graph, `n ≤ 4`, built from vertex and edge orbits.
///
/// `k` rotates every orbit by `k`. The restriction is `φ(k, e) = m·k` with `m`
/// constant on each edge orbit and `m ≡ 1` modulo every vertex orbit size, so both
/// cocycle laws hold. With `constant` set, `m = 1` everywhere.
pub fn random_zn(rng: &mut ChaCha8Rng, source_free: bool, constant: bool) -> SelfSimilarGraph {
    loop {
        if let Some(ssg) = try_random_zn(rng, source_free, constant) {
            return ssg;
        }
    }
}

fn try_random_zn(
    rng: &mut ChaCha8Rng,
    source_free: bool,
    constant: bool,
) -> Option<SelfSimilarGraph> {
    let n = *[1, 2, 2, 3, 3, 4, 4].choose(rng).unwrap();
    let divs = divisors(n);
    let orbit_count = rng.gen_range(1..=3);
    let vsizes: Vec<usize> = (0..orbit_count)
        .map(|_| *divs.choose(rng).unwrap())
        .collect();
    let period = vsizes.iter().fold(1, |a, &b| lcm(a, b));
    let multipliers: Vec<usize> = (0..n).filter(|m| (m + n - 1) % period == 0).collect();

    let mut edge_orbits = Vec::new();
    let new_orbit = |rng: &mut ChaCha8Rng, ro: usize| {
        let dor = rng.gen_range(0..orbit_count);
        let base = lcm(vsizes[ro], vsizes[dor]);
        let sizes: Vec<usize> = divs.iter().copied().filter(|s| s % base == 0).collect();
        EdgeOrbit {
            size: *sizes.choose(rng).unwrap(),
            r: (ro, rng.gen_range(0..vsizes[ro])),
            d: (dor, rng.gen_range(0..vsizes[dor])),
            multiplier: if constant {
                1
            } else {
                *multipliers.choose(rng).unwrap()
            },
        }
    };
    if source_free {
        for o in 0..orbit_count {
            edge_orbits.push(new_orbit(rng, o));
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let ro = rng.gen_range(0..orbit_count);
        edge_orbits.push(new_orbit(rng, ro));
    }

    let nv: usize = vsizes.iter().sum();
    let ne: usize = edge_orbits.iter().map(|o| o.size).sum();
    if nv > 8 || ne > 14 {
        return None;
    }

    let mut vbase = Vec::new();
    let mut vertices = Vec::new();
    for (o, &s) in vsizes.iter().enumerate() {
        vbase.push(vertices.len());
        vertices.extend((0..s).map(|j| format!("a{o}_{j}")));
    }
    let vorbit: Vec<(usize, usize)> = vsizes
        .iter()
        .enumerate()
        .flat_map(|(o, &s)| (0..s).map(move |j| (o, j)))
        .collect();
    let vid = |o: usize, j: usize| vbase[o] + j % vsizes[o];

    let mut ebase = Vec::new();
    let mut eorbit = Vec::new();
    let mut edges = Vec::new();
    for (k, orbit) in edge_orbits.iter().enumerate() {
        ebase.push(edges.len());
        for j in 0..orbit.size {
            let r = vid(orbit.r.0, orbit.r.1 + j);
            let d = vid(orbit.d.0, orbit.d.1 + j);
            edges.push((
                format!("x{k}_{j}"),
                vertices[d].clone(),
                vertices[r].clone(),
            ));
            eorbit.push((k, j));
        }
    }
    let graph = Graph::new(vertices, edges).expect("generated graph is well formed");
    let group = FinGroup::cyclic(n);
    let action = GraphAction::from_fn(
        &group,
        &graph,
        |k, v| {
            let (o, j) = vorbit[v.0];
            VertexId(vid(o, j + k.0))
        },
        |k, e| {
            let (o, j) = eorbit[e.0];
            EdgeId(ebase[o] + (j + k.0) % edge_orbits[o].size)
        },
    );
    let cocycle = Cocycle::from_fn(&group, &graph, |k, e| {
        Elem(edge_orbits[eorbit[e.0].0].multiplier * k.0 % n)
    });
    Some(
        SelfSimilarGraph::new(graph, group, action, cocycle)
            .expect("orbit construction is self-similar"),
    )
}

/// Source-free `ℤ/n` instances with constant cocycles.
pub fn constant_corpus(count: usize, seed: u64) -> Vec<SelfSimilarGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_zn(&mut r, true, true)).collect()
}

/// Source-free instances with mixed restrictions, including non-pseudo-free ones.
pub fn mixed_corpus(count: usize, seed: u64) -> Vec<SelfSimilarGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_zn(&mut r, true, false)).collect()
}

/// Instances that may have sources.
pub fn sourced_corpus(count: usize, seed: u64) -> Vec<SelfSimilarGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_zn(&mut r, false, false))
        .collect()
}

/// Whether `g` fixes every path of length at most `depth` with range `v`.
///
/// Walks edges from the raw edge list and applies the action through
/// `extend_action` one edge at a time, memoized on `(g, v, depth)`.
pub fn fixes_all_paths(ssg: &SelfSimilarGraph, g: Elem, v: VertexId, depth: usize) -> bool {
    let mut memo = HashMap::new();
    fixes_rec(ssg, g, v, depth, &mut memo)
}

fn fixes_rec(
    ssg: &SelfSimilarGraph,
    g: Elem,
    v: VertexId,
    depth: usize,
    memo: &mut HashMap<(Elem, VertexId, usize), bool>,
) -> bool {
    if let Some(&known) = memo.get(&(g, v, depth)) {
        return known;
    }
    let graph = ssg.graph();
    let mut ok = ssg.act_vertex(g, v) == v;
    if ok && depth > 0 {
        for (i, edge) in graph.edges().iter().enumerate() {
            if edge.r != v {
                continue;
            }
            let e = EdgeId(i);
            let single = graph.path(vec![e]).unwrap();
            let (image, h) = ssg.extend_action(g, &single);
            if image != single || !fixes_rec(ssg, h, edge.d, depth - 1, memo) {
                ok = false;
                break;
            }
        }
    }
    memo.insert((g, v, depth), ok);
    ok
}

/// Every path with range `v` of length at most `max_len`, enumerated explicitly.
pub fn paths_from(graph: &Graph, v: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = vec![Path::empty(v)];
    let mut frontier = vec![Path::empty(v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in graph.in_edges(p.domain()) {
                let mut q = p.clone();
                q.push(graph, e).unwrap();
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The graph with its vertices and edges listed in a different order.
pub fn permuted(graph: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut vs: Vec<String> = graph.vertex_names().to_vec();
    vs.shuffle(rng);
    let mut es: Vec<(String, String, String)> = graph
        .edges()
        .iter()
        .map(|e| {
            (
                e.name.clone(),
                graph.vertex_name(e.d).to_string(),
                graph.vertex_name(e.r).to_string(),
            )
        })
        .collect();
    es.shuffle(rng);
    Graph::new(vs, es).unwrap()
}
