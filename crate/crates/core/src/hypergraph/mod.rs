//! Hypergraphs `H = (V, E, f)` with `f: E -> 2^V \ {}`.
//!
//! Nodes and hyperedges carry string labels externally and dense indices
//! internally. Both are kept sorted by label so every downstream refinement
//! visits elements in the same order regardless of how the input was written.

mod generate;
mod iso;
mod morphism;
mod serial;

pub mod corpus;

pub use generate::{random_hypergraph, random_with_profile, GeneratorParams};
pub use iso::{brute_force_isomorphic, find_isomorphism, OracleBounds};
pub use morphism::{check_morphism, permute, random_collapse, random_permutation, HypergraphMorphism};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A labelled hyperedge; `nodes` holds sorted, distinct node indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    pub label: String,
    pub nodes: Vec<usize>,
}

impl Hyperedge {
    pub fn cardinality(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    nodes: Vec<String>,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Builds a hypergraph from labelled nodes and labelled node lists.
    ///
    /// Node and edge order is normalised to sorted-by-label. Duplicate
    /// node sets under distinct edge labels are allowed.
    pub fn new<N, E, S>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut labels = BTreeSet::new();
        for node in nodes {
            let node = node.into();
            if !labels.insert(node.clone()) {
                return Err(Error::DuplicateNode(node));
            }
        }
        let nodes: Vec<String> = labels.into_iter().collect();
        let index: BTreeMap<&str, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();

        let mut by_label: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (label, members) in edges {
            let label = label.into();
            if by_label.contains_key(&label) {
                return Err(Error::DuplicateEdge(label));
            }
            if members.is_empty() {
                return Err(Error::EmptyHyperedge(label));
            }
            let mut set = BTreeSet::new();
            for member in members {
                let member = member.into();
                let Some(&i) = index.get(member.as_str()) else {
                    return Err(Error::UnknownNode {
                        edge: label,
                        node: member,
                    });
                };
                if !set.insert(i) {
                    return Err(Error::RepeatedNode {
                        edge: label,
                        node: member,
                    });
                }
            }
            by_label.insert(label, set.into_iter().collect());
        }
        let edges = by_label
            .into_iter()
            .map(|(label, nodes)| Hyperedge { label, nodes })
            .collect();
        Ok(Self { nodes, edges })
    }

    /// Builds a hypergraph directly from indices. Labels must already be
    /// sorted and unique; edge node lists must be non-empty and in range.
    pub(crate) fn from_indexed(nodes: Vec<String>, edges: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let named: Vec<(String, Vec<String>)> = edges
            .into_iter()
            .map(|(label, members)| {
                let members = members.into_iter().map(|i| nodes[i].clone()).collect();
                (label, members)
            })
            .collect();
        Self::new(nodes, named)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_label(&self, node: usize) -> &str {
        &self.nodes[node]
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, edge: usize) -> &Hyperedge {
        &self.edges[edge]
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(label)).ok()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges
            .binary_search_by(|e| e.label.as_str().cmp(label))
            .ok()
    }

    /// Number of hyperedges containing each node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.nodes.len()];
        for edge in &self.edges {
            for &v in &edge.nodes {
                degrees[v] += 1;
            }
        }
        degrees
    }

    /// Sorted multiset of hyperedge cardinalities.
    pub fn cardinality_profile(&self) -> Vec<usize> {
        let mut cards: Vec<usize> = self.edges.iter().map(Hyperedge::cardinality).collect();
        cards.sort_unstable();
        cards
    }

    /// Sum of hyperedge cardinalities, i.e. the number of incidences.
    pub fn incidence_count(&self) -> usize {
        self.edges.iter().map(Hyperedge::cardinality).sum()
    }

    pub fn has_singleton_edge(&self) -> bool {
        self.edges.iter().any(|e| e.nodes.len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_order() {
        let h = Hypergraph::new(
            ["c", "a", "b"],
            [("y", vec!["c", "a"]), ("x", vec!["b"])],
        )
        .unwrap();
        assert_eq!(h.node_labels(), ["a", "b", "c"]);
        assert_eq!(h.edge(0).label, "x");
        assert_eq!(h.edge(1).nodes, vec![0, 2]);
    }

    #[test]
    fn rejects_bad_edges() {
        let empty = Hypergraph::new(["a"], [("e", Vec::<&str>::new())]);
        assert!(matches!(empty, Err(Error::EmptyHyperedge(_))));
        let unknown = Hypergraph::new(["a"], [("e", vec!["b"])]);
        assert!(matches!(unknown, Err(Error::UnknownNode { .. })));
        let repeated = Hypergraph::new(["a"], [("e", vec!["a", "a"])]);
        assert!(matches!(repeated, Err(Error::RepeatedNode { .. })));
        let dup = Hypergraph::new(["a", "a"], Vec::<(&str, Vec<&str>)>::new());
        assert!(matches!(dup, Err(Error::DuplicateNode(_))));
        let dup_edge = Hypergraph::new(["a"], [("e", vec!["a"]), ("e", vec!["a"])]);
        assert!(matches!(dup_edge, Err(Error::DuplicateEdge(_))));
    }

    #[test]
    fn duplicate_node_sets_are_allowed() {
        let h = Hypergraph::new(["a", "b"], [("e1", vec!["a", "b"]), ("e2", vec!["b", "a"])]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edge(0).nodes, h.edge(1).nodes);
    }

    #[test]
    fn degree_and_profile() {
        let (h, _) = corpus::counterexample_pair();
        assert_eq!(h.degrees(), vec![1, 2, 2, 1, 2, 2]);
        assert_eq!(h.cardinality_profile(), vec![2, 2, 3, 3]);
        assert_eq!(h.incidence_count(), 10);
    }
}
