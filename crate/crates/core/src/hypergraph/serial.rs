use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use super::Hypergraph;
use crate::error::Result;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphFile {
    edges: EdgeEntries,
    nodes: Vec<String>,
}

/// Edge object that keeps every entry so duplicate keys can be reported
/// instead of silently overwritten.
struct EdgeEntries(Vec<(String, Vec<String>)>);

impl Serialize for EdgeEntries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let sorted: BTreeMap<&str, &Vec<String>> =
            self.0.iter().map(|(k, v)| (k.as_str(), v)).collect();
        sorted.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EdgeEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = EdgeEntries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping edge labels to arrays of node labels")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((key, value)) = map.next_entry::<String, Vec<String>>()? {
                    entries.push((key, value));
                }
                Ok(EdgeEntries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

impl Hypergraph {
    /// Parses the canonical JSON hypergraph format:
    /// `{"nodes": [...], "edges": {"label": [...], ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: HypergraphFile = serde_json::from_str(text)?;
        Hypergraph::new(file.nodes, file.edges.0)
    }

    /// Serialises with sorted keys and arrays, pretty-printed, newline-terminated.
    pub fn to_json(&self) -> String {
        let file = HypergraphFile {
            nodes: self.nodes.clone(),
            edges: EdgeEntries(
                self.edges
                    .iter()
                    .map(|e| {
                        let members = e.nodes.iter().map(|&v| self.nodes[v].clone()).collect();
                        (e.label.clone(), members)
                    })
                    .collect(),
            ),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("hypergraph serialises");
        out.push('\n');
        out
    }
}
