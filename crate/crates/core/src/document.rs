//! JSON documents: the input description, the quotient output, and lookups between names and
//! indices.
//!
//! ```json
//! {
//!   "vertices": ["v", "w"],
//!   "edges": [{"id": "e", "d": "w", "r": "v"}],
//!   "group": {"elements": ["0", "1"], "identity": "0",
//!             "table": {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "0"}}},
//!   "action": {"vertices": {"0": {...}, "1": {...}}, "edges": {"0": {...}, "1": {...}}},
//!   "cocycle": {"0": {"e": "0"}, "1": {"e": "1"}}
//! }
//! ```
//!
//! `group`, `action` and `cocycle` are given together or omitted together; omitting them means
//! the trivial group. Unknown keys and repeated keys are rejected.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{LoadError, ParseError, ValidationError, Violation};
use crate::model::{
    Cocycle, EdgeId, Elem, FinGroup, Graph, GraphAction, SelfSimilarGraph, VertexId,
};
use crate::quotient::QuotientGraph;

/// A JSON object read in document order that refuses repeated keys.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniqueMap<V>(pub Vec<(String, V)>);

impl<V> UniqueMap<V> {
    pub fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }
}

impl<V: Serialize> Serialize for UniqueMap<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct UniqueVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for UniqueVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object without repeated keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if out.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }

        deserializer.deserialize_map(UniqueVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub d: String,
    pub r: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: UniqueMap<UniqueMap<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub vertices: UniqueMap<UniqueMap<String>>,
    pub edges: UniqueMap<UniqueMap<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<UniqueMap<UniqueMap<String>>>,
    /// Present on quotient output; informational and not validated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_of: Option<QuotientMaps>,
}

/// Looks up `table[outer][inner]` for every pair, mapping names through `resolve` and
/// recording one violation per missing or unknown entry.
fn full_table<T: Copy>(
    table: &UniqueMap<UniqueMap<String>>,
    context: &str,
    outer: &[String],
    inner: &[String],
    resolve: impl Fn(&str) -> Option<T>,
    violations: &mut Vec<Violation>,
) -> Option<Vec<Vec<T>>> {
    let mut out = Vec::with_capacity(outer.len());
    let before = violations.len();
    for key in table.keys().filter(|k| !outer.iter().any(|o| o == k)) {
        violations.push(Violation::UnknownName {
            context: context.to_string(),
            name: key.to_string(),
        });
    }
    for o in outer {
        let Some(row) = table.get(o) else {
            violations.push(Violation::MissingEntry {
                context: format!("{context}: no entry for {o}"),
            });
            continue;
        };
        for key in row.keys().filter(|k| !inner.iter().any(|i| i == k)) {
            violations.push(Violation::UnknownName {
                context: format!("{context}[{o}]"),
                name: key.to_string(),
            });
        }
        let mut cells = Vec::with_capacity(inner.len());
        for i in inner {
            match row.get(i) {
                None => violations.push(Violation::MissingEntry {
                    context: format!("{context}[{o}]: no entry for {i}"),
                }),
                Some(name) => match resolve(name) {
                    Some(t) => cells.push(t),
                    None => violations.push(Violation::UnknownName {
                        context: format!("{context}[{o}][{i}]"),
                        name: name.clone(),
                    }),
                },
            }
        }
        out.push(cells);
    }
    (violations.len() == before).then_some(out)
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn graph(&self) -> Result<Graph, ValidationError> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.d.clone(), e.r.clone())),
        )
    }

    /// Validates the description, reporting every violation found.
    pub fn to_model(&self) -> Result<SelfSimilarGraph, ValidationError> {
        let graph = self.graph()?;
        let (group_doc, action_doc, cocycle_doc) = match (&self.group, &self.action, &self.cocycle)
        {
            (None, None, None) => return Ok(SelfSimilarGraph::with_trivial_group(graph)),
            (Some(g), Some(a), Some(c)) => (g, a, c),
            _ => {
                return Err(vec![Violation::MissingEntry {
                    context: "group, action and cocycle must be given together".into(),
                }]
                .into())
            }
        };

        let mut violations = Vec::new();
        let elements = &group_doc.elements;
        let mut seen = std::collections::HashSet::new();
        for g in elements {
            if !seen.insert(g) {
                violations.push(Violation::UnknownName {
                    context: "group elements (repeated)".into(),
                    name: g.clone(),
                });
            }
        }
        let elem = |name: &str| elements.iter().position(|g| g == name).map(Elem);
        let identity = elem(&group_doc.identity);
        if identity.is_none() {
            violations.push(Violation::UnknownName {
                context: "group identity".into(),
                name: group_doc.identity.clone(),
            });
        }
        let table = full_table(
            &group_doc.table,
            "group table",
            elements,
            elements,
            elem,
            &mut violations,
        );
        let vertex_names = graph.vertex_names().to_vec();
        let edge_names: Vec<String> = graph
            .edge_ids()
            .map(|e| graph.edge_name(e).to_string())
            .collect();
        let on_vertices = full_table(
            &action_doc.vertices,
            "action on vertices",
            elements,
            &vertex_names,
            |n| graph.vertex_id(n),
            &mut violations,
        );
        let on_edges = full_table(
            &action_doc.edges,
            "action on edges",
            elements,
            &edge_names,
            |n| graph.edge_id(n),
            &mut violations,
        );
        let cocycle = full_table(
            cocycle_doc,
            "cocycle",
            elements,
            &edge_names,
            elem,
            &mut violations,
        );
        if !violations.is_empty() {
            return Err(violations.into());
        }
        let (Some(identity), Some(table), Some(on_vertices), Some(on_edges), Some(cocycle)) =
            (identity, table, on_vertices, on_edges, cocycle)
        else {
            unreachable!("tables are complete when no violation was recorded")
        };
        let group = FinGroup::from_table(elements.clone(), identity, table)?;
        SelfSimilarGraph::new(
            graph,
            group,
            GraphAction::from_tables(on_vertices, on_edges),
            Cocycle::from_table(cocycle),
        )
    }

    pub fn from_model(ssg: &SelfSimilarGraph) -> Self {
        let graph = ssg.graph();
        let group = ssg.group();
        let mut doc = Self::from_graph(graph);
        let names = |g: Elem| group.name(g).to_string();
        let per_element = |f: &dyn Fn(Elem) -> UniqueMap<String>| {
            UniqueMap(group.elements().map(|g| (names(g), f(g))).collect())
        };
        doc.group = Some(GroupDoc {
            elements: group.names().to_vec(),
            identity: names(group.identity()),
            table: per_element(&|g| {
                UniqueMap(
                    group
                        .elements()
                        .map(|h| (names(h), names(group.mul(g, h))))
                        .collect(),
                )
            }),
        });
        doc.action = Some(ActionDoc {
            vertices: per_element(&|g| {
                UniqueMap(
                    graph
                        .vertices()
                        .map(|v| {
                            let w = ssg.act_vertex(g, v);
                            (
                                graph.vertex_name(v).to_string(),
                                graph.vertex_name(w).to_string(),
                            )
                        })
                        .collect(),
                )
            }),
            edges: per_element(&|g| {
                UniqueMap(
                    graph
                        .edge_ids()
                        .map(|e| {
                            let f = ssg.act_edge(g, e);
                            (
                                graph.edge_name(e).to_string(),
                                graph.edge_name(f).to_string(),
                            )
                        })
                        .collect(),
                )
            }),
        });
        doc.cocycle = Some(per_element(&|g| {
            UniqueMap(
                graph
                    .edge_ids()
                    .map(|e| (graph.edge_name(e).to_string(), names(ssg.restrict(g, e))))
                    .collect(),
            )
        }));
        doc
    }

    pub fn from_graph(graph: &Graph) -> Self {
        GraphDocument {
            vertices: graph.vertex_names().to_vec(),
            edges: graph
                .edge_ids()
                .map(|e| EdgeDoc {
                    id: graph.edge_name(e).to_string(),
                    d: graph.vertex_name(graph.d(e)).to_string(),
                    r: graph.vertex_name(graph.r(e)).to_string(),
                })
                .collect(),
            group: None,
            action: None,
            cocycle: None,
            quotient_of: None,
        }
    }
}

/// Parses and validates in one step.
pub fn load(text: &str) -> Result<SelfSimilarGraph, LoadError> {
    Ok(GraphDocument::from_json(text)?.to_model()?)
}

/// Maps from a quotient graph back to the input it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientMaps {
    /// Input vertex → its class.
    pub orbit_of: UniqueMap<String>,
    /// Class → chosen representative.
    pub representatives: UniqueMap<String>,
    /// Quotient edge → the input edge it copies.
    pub edge_origin: UniqueMap<String>,
}

/// The quotient graph as a plain graph document carrying its maps under `quotient_of`.
pub fn quotient_document(ssg: &SelfSimilarGraph, q: &QuotientGraph) -> GraphDocument {
    let graph = ssg.graph();
    let qg = q.graph();
    let mut doc = GraphDocument::from_graph(qg);
    doc.quotient_of = Some(QuotientMaps {
        orbit_of: UniqueMap(
            graph
                .vertices()
                .map(|v| {
                    (
                        graph.vertex_name(v).to_string(),
                        qg.vertex_name(q.orbit_of(v)).to_string(),
                    )
                })
                .collect(),
        ),
        representatives: UniqueMap(
            qg.vertices()
                .map(|c| {
                    (
                        qg.vertex_name(c).to_string(),
                        graph.vertex_name(q.representative(c)).to_string(),
                    )
                })
                .collect(),
        ),
        edge_origin: UniqueMap(
            qg.edge_ids()
                .map(|e| {
                    (
                        qg.edge_name(e).to_string(),
                        graph.edge_name(q.edge_origin(e)).to_string(),
                    )
                })
                .collect(),
        ),
    });
    doc
}

/// Resolves a list of edge names into indices, for callers holding names only.
pub fn edge_ids(graph: &Graph, names: &[&str]) -> Option<Vec<EdgeId>> {
    names.iter().map(|n| graph.edge_id(n)).collect()
}

pub fn vertex_ids(graph: &Graph, names: &[&str]) -> Option<Vec<VertexId>> {
    names.iter().map(|n| graph.vertex_id(n)).collect()
}
