//! The two lifts from hypergraphs to graded posets.
//!
//! * Incidence: nodes at dimension 0, hyperedges at dimension 1, `v ≺ e`
//!   iff `v ∈ f(e)`.
//! * Symmetric simplicial: one vertex element per node plus, for every
//!   hyperedge `e` and every subset `U ⊆ f(e)` with `|U| ≥ 2`, a simplex
//!   `U_e` of dimension `|U| - 1`. Simplices are keyed by edge, so two
//!   hyperedges over the same node set yield disjoint simplex families.

mod functor;

pub use functor::{
    check_functor_laws, check_poset_map, compare_maps, lift_morphism, lift_morphism_incidence,
    lift_morphism_symmetric, FunctorLawReport, MorphismChain, PosetMap,
};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poset::{GradedPoset, PosetElement, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Functor {
    Incidence,
    Symmetric,
}

impl FromStr for Functor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "incidence" => Ok(Self::Incidence),
            "s" | "symmetric" => Ok(Self::Symmetric),
            other => Err(Error::Config(format!("unknown functor `{other}`"))),
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Incidence => "i",
            Self::Symmetric => "s",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftConfig {
    /// Hyperedges with more nodes than this contribute no simplices above
    /// dimension 0 to the symmetric lift.
    pub threshold: usize,
    /// Optional cap on simplex dimension in the symmetric lift.
    pub max_dim: Option<usize>,
}

impl Default for LiftConfig {
    fn default() -> Self {
        Self { threshold: 20, max_dim: None }
    }
}

impl LiftConfig {
    pub fn validate(&self) -> Result<()> {
        if self.threshold < 2 {
            return Err(Error::Config(format!("truncation threshold must be at least 2, got {}", self.threshold)));
        }
        Ok(())
    }

    /// Largest simplex cardinality kept for a hyperedge of cardinality `c`,
    /// or 0 when the edge is truncated.
    fn max_simplex_size(&self, c: usize) -> usize {
        if c > self.threshold {
            return 0;
        }
        match self.max_dim {
            Some(d) => c.min(d + 1),
            None => c,
        }
    }
}

/// Conditions on a lifted poset that do not make it invalid but matter to
/// callers relying on `|B(σ)| > 1` above dimension 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LiftWarning {
    /// A singleton hyperedge gives a dimension-1 element with a single
    /// boundary element in the incidence lift.
    SingletonEdge(String),
    /// The hyperedge exceeds the truncation threshold; only its vertices
    /// survive in the symmetric lift.
    TruncatedEdge(String),
}

#[derive(Clone, Debug)]
pub struct Lifted {
    pub poset: GradedPoset,
    pub warnings: Vec<LiftWarning>,
}

impl Lifted {
    /// True when no element above dimension 0 has fewer than two boundary elements.
    pub fn satisfies_boundary_precondition(&self) -> bool {
        let p = &self.poset;
        (0..p.len()).all(|i| p.dim(i) == 0 || p.boundary(i).len() > 1)
    }
}

/// Lifts `h` with the chosen functor, collecting warnings.
pub fn lift(h: &Hypergraph, functor: Functor, cfg: &LiftConfig) -> Result<Lifted> {
    cfg.validate()?;
    let (poset, warnings) = match functor {
        Functor::Incidence => {
            let warnings = h
                .edges()
                .iter()
                .filter(|e| e.cardinality() == 1)
                .map(|e| LiftWarning::SingletonEdge(e.label.clone()))
                .collect();
            (incidence_lift(h), warnings)
        }
        Functor::Symmetric => {
            let warnings = h
                .edges()
                .iter()
                .filter(|e| e.cardinality() > cfg.threshold)
                .map(|e| LiftWarning::TruncatedEdge(e.label.clone()))
                .collect();
            (SimplexTable::build(h, cfg).poset, warnings)
        }
    };
    Ok(Lifted { poset, warnings })
}

/// Appends `#k` to repeated ids so pathological labels never collide.
fn disambiguate(ids: Vec<String>) -> Vec<String> {
    let mut seen: HashSet<String> = HashSet::with_capacity(ids.len());
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let mut candidate = id.clone();
        let mut k = 1;
        while !seen.insert(candidate.clone()) {
            k += 1;
            candidate = format!("{id}#{k}");
        }
        out.push(candidate);
    }
    out
}

/// Incidence poset: element `i < |V|` is node `i`, element `|V| + j` is edge `j`.
pub fn incidence_lift(h: &Hypergraph) -> GradedPoset {
    let n = h.node_count();
    let ids = disambiguate(
        h.node_labels()
            .iter()
            .cloned()
            .chain(h.edges().iter().map(|e| e.label.clone()))
            .collect(),
    );
    let elements = ids
        .into_iter()
        .enumerate()
        .map(|(i, id)| {
            if i < n {
                PosetElement::new(id, 0).with_provenance(Provenance::Node(h.node_label(i).to_string()))
            } else {
                PosetElement::new(id, 1).with_provenance(Provenance::Edge(h.edge(i - n).label.clone()))
            }
        })
        .collect();
    let covers = h
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(j, e)| e.nodes.iter().map(move |&v| (v, n + j)));
    GradedPoset::new(elements, covers).expect("incidence lift is well formed")
}

/// Symmetric simplicial lift, truncated per `cfg`.
pub fn symmetric_simplicial_lift(h: &Hypergraph, cfg: &LiftConfig) -> GradedPoset {
    SimplexTable::build(h, cfg).poset
}

/// Identifies an element of the symmetric lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum SimplexKey {
    Vertex(usize),
    Face { edge: usize, nodes: Vec<usize> },
}

pub(crate) struct SimplexTable {
    pub poset: GradedPoset,
    pub keys: Vec<SimplexKey>,
    pub lookup: HashMap<SimplexKey, usize>,
}

impl SimplexTable {
    pub fn build(h: &Hypergraph, cfg: &LiftConfig) -> Self {
        let mut keys: Vec<SimplexKey> = (0..h.node_count()).map(SimplexKey::Vertex).collect();
        for (j, edge) in h.edges().iter().enumerate() {
            let top = cfg.max_simplex_size(edge.cardinality());
            for size in 2..=top {
                for nodes in edge.nodes.iter().copied().combinations(size) {
                    keys.push(SimplexKey::Face { edge: j, nodes });
                }
            }
        }
        let lookup: HashMap<SimplexKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

        let mut covers = Vec::new();
        for (i, key) in keys.iter().enumerate() {
            let SimplexKey::Face { edge, nodes } = key else { continue };
            if nodes.len() == 2 {
                covers.extend(nodes.iter().map(|&v| (lookup[&SimplexKey::Vertex(v)], i)));
            } else {
                for skip in 0..nodes.len() {
                    let mut face = nodes.clone();
                    face.remove(skip);
                    covers.push((lookup[&SimplexKey::Face { edge: *edge, nodes: face }], i));
                }
            }
        }

        let ids = disambiguate(
            keys.iter()
                .map(|k| match k {
                    SimplexKey::Vertex(v) => h.node_label(*v).to_string(),
                    SimplexKey::Face { edge, nodes } => format!(
                        "{{{}}}_{}",
                        nodes.iter().map(|&v| h.node_label(v)).join(","),
                        h.edge(*edge).label
                    ),
                })
                .collect(),
        );
        let elements = keys
            .iter()
            .zip(ids)
            .map(|(k, id)| match k {
                SimplexKey::Vertex(v) => {
                    PosetElement::new(id, 0).with_provenance(Provenance::Node(h.node_label(*v).to_string()))
                }
                SimplexKey::Face { edge, nodes } => PosetElement::new(id, nodes.len() - 1).with_provenance(
                    Provenance::Simplex {
                        nodes: nodes.iter().map(|&v| h.node_label(v).to_string()).collect(),
                        edge: h.edge(*edge).label.clone(),
                    },
                ),
            })
            .collect();
        let poset = GradedPoset::new(elements, covers).expect("symmetric lift is well formed");
        Self { poset, keys, lookup }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{corpus, random_hypergraph, GeneratorParams};
    use crate::poset::{validate_graded, AdjacencySemantics};
    use proptest::prelude::*;

    fn ids(p: &GradedPoset, items: impl IntoIterator<Item = usize>) -> Vec<String> {
        let mut out: Vec<String> = items.into_iter().map(|i| p.element(i).id.clone()).collect();
        out.sort();
        out
    }

    /// C(n, k) by Pascal's rule.
    fn binomial(n: usize, k: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![1; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn incidence_running_example() {
        let p = incidence_lift(&corpus::running_example());
        assert_eq!(p.len(), 6);
        let covers: Vec<(String, String)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (p.element(a).id.clone(), p.element(b).id.clone()))
            .collect();
        let expected = [("v1", "e1"), ("v2", "e1"), ("v3", "e1"), ("v1", "e2"), ("v2", "e2"), ("v4", "e2")];
        assert_eq!(covers.len(), 6);
        for (a, b) in expected {
            assert!(covers.contains(&(a.to_string(), b.to_string())));
        }
        assert!(validate_graded(&p).is_empty());
        let e1 = p.index_of("e1").unwrap();
        assert_eq!(ids(&p, p.boundary(e1).iter().copied()), ["v1", "v2", "v3"]);
        let v1 = p.index_of("v1").unwrap();
        assert_eq!(ids(&p, p.coboundary(v1).iter().copied()), ["e1", "e2"]);
        assert!(p.boundary(v1).is_empty());
        assert!(p.coboundary(e1).is_empty());
    }

    #[test]
    fn incidence_upper_adjacency_of_v3() {
        let p = incidence_lift(&corpus::running_example());
        let v3 = p.index_of("v3").unwrap();
        let e1 = p.index_of("e1").unwrap();
        let pairs = p.upper_adjacency(v3, AdjacencySemantics::PairMultiset);
        assert_eq!(ids(&p, pairs.iter().map(|e| e.neighbor)), ["v1", "v2"]);
        assert!(pairs.iter().all(|e| e.via == Some(e1)));
        let distinct = p.upper_adjacency(v3, AdjacencySemantics::DistinctNeighbor);
        assert_eq!(ids(&p, distinct.iter().map(|e| e.neighbor)), ["v1", "v2"]);
    }

    #[test]
    fn incidence_edgeless_and_single_edge() {
        let h = Hypergraph::new(["a", "b"], Vec::<(&str, Vec<&str>)>::new()).unwrap();
        let p = incidence_lift(&h);
        assert_eq!(p.len(), 2);
        assert!(p.covers().is_empty());
        assert!(p.elements().iter().all(|e| e.dim == 0));

        let p = incidence_lift(&corpus::single_edge_target());
        assert_eq!((p.len(), p.covers().len()), (4, 3));
    }

    #[test]
    fn counterexample_lower_adjacency() {
        let (h, hp) = corpus::counterexample_pair();
        let p = incidence_lift(&h);
        let e2 = p.index_of("e2").unwrap();
        let distinct = p.lower_adjacency(e2, AdjacencySemantics::DistinctNeighbor);
        assert_eq!(ids(&p, distinct.iter().map(|e| e.neighbor)), ["e1", "e3"]);

        let q = incidence_lift(&hp);
        let e2p = q.index_of("e2'").unwrap();
        let distinct = q.lower_adjacency(e2p, AdjacencySemantics::DistinctNeighbor);
        assert_eq!(ids(&q, distinct.iter().map(|e| e.neighbor)), ["e1'"]);
        let pairs = q.lower_adjacency(e2p, AdjacencySemantics::PairMultiset);
        let named: Vec<(String, String)> = pairs
            .iter()
            .map(|e| (q.element(e.neighbor).id.clone(), q.element(e.via.unwrap()).id.clone()))
            .collect();
        assert_eq!(named, [("e1'".to_string(), "v2'".to_string()), ("e1'".to_string(), "v3'".to_string())]);
    }

    #[test]
    fn symmetric_running_example() {
        let p = symmetric_simplicial_lift(&corpus::running_example(), &LiftConfig::default());
        assert_eq!(p.len(), 12);
        assert_eq!(p.dim_histogram(), vec![4, 6, 2]);
        assert_eq!(p.covers().len(), 18);
        assert!(validate_graded(&p).is_empty());

        let tri = p.index_of("{v1,v2,v3}_e1").unwrap();
        assert_eq!(
            ids(&p, p.boundary(tri).iter().copied()),
            ["{v1,v2}_e1", "{v1,v3}_e1", "{v2,v3}_e1"]
        );
        let edge = p.index_of("{v1,v2}_e1").unwrap();
        assert_eq!(ids(&p, p.coboundary(edge).iter().copied()), ["{v1,v2,v3}_e1"]);
        assert_eq!(ids(&p, p.boundary(edge).iter().copied()), ["v1", "v2"]);
    }

    #[test]
    fn symmetric_counterexample_lower_neighbors() {
        let (h, hp) = corpus::counterexample_pair();
        let cfg = LiftConfig::default();
        let p = symmetric_simplicial_lift(&h, &cfg);
        let s = p.index_of("{v2,v3}_e2").unwrap();
        let lower = p.lower_adjacency(s, AdjacencySemantics::DistinctNeighbor);
        assert_eq!(
            ids(&p, lower.iter().map(|e| e.neighbor)),
            ["{v1,v2}_e1", "{v2,v6}_e1", "{v3,v4}_e3", "{v3,v5}_e3"]
        );
        let q = symmetric_simplicial_lift(&hp, &cfg);
        let s = q.index_of("{v2',v3'}_e2'").unwrap();
        let lower = q.lower_adjacency(s, AdjacencySemantics::DistinctNeighbor);
        assert_eq!(
            ids(&q, lower.iter().map(|e| e.neighbor)),
            ["{v1',v2'}_e1'", "{v1',v3'}_e1'", "{v2',v3'}_e1'"]
        );
        assert_eq!(q.lower_adjacency(s, AdjacencySemantics::PairMultiset).len(), 4);
    }

    #[test]
    fn single_edge_sizes() {
        // c vertex elements plus C(c, n+1) simplices in each dimension n >= 1.
        for c in 2..=6 {
            let nodes: Vec<String> = (0..c).map(|i| format!("n{i}")).collect();
            let h = Hypergraph::new(nodes.clone(), [("e".to_string(), nodes)]).unwrap();
            let p = symmetric_simplicial_lift(&h, &LiftConfig::default());
            let expected = c + (1..c).map(|n| binomial(c, n + 1)).sum::<usize>();
            assert_eq!(p.len(), expected, "c = {c}");
            for n in 1..c {
                assert_eq!(p.dim_histogram()[n], binomial(c, n + 1));
            }
        }
    }

    #[test]
    fn truncation_boundary() {
        let nodes: Vec<String> = (0..21).map(|i| format!("n{i:02}")).collect();
        let h = Hypergraph::new(nodes.clone(), [("big".to_string(), nodes)]).unwrap();
        let lifted = lift(&h, Functor::Symmetric, &LiftConfig::default()).unwrap();
        assert_eq!(lifted.poset.len(), 21);
        assert!(lifted.poset.covers().is_empty());
        assert_eq!(lifted.warnings, vec![LiftWarning::TruncatedEdge("big".into())]);

        let small = corpus::single_edge_target();
        let cfg = LiftConfig { threshold: 2, max_dim: None };
        assert_eq!(symmetric_simplicial_lift(&small, &cfg).len(), 3);
    }

    #[test]
    fn max_dim_cap() {
        let cfg = LiftConfig { threshold: 20, max_dim: Some(1) };
        let p = symmetric_simplicial_lift(&corpus::running_example(), &cfg);
        assert_eq!(p.dim_histogram(), vec![4, 6]);
    }

    #[test]
    fn threshold_must_be_at_least_two() {
        let cfg = LiftConfig { threshold: 1, max_dim: None };
        assert!(lift(&corpus::running_example(), Functor::Symmetric, &cfg).is_err());
    }

    #[test]
    fn duplicate_edges_get_separate_simplices() {
        let h = Hypergraph::new(["a", "b"], [("x", vec!["a", "b"]), ("y", vec!["a", "b"])]).unwrap();
        let p = symmetric_simplicial_lift(&h, &LiftConfig::default());
        assert_eq!(p.len(), 4);
        assert!(p.index_of("{a,b}_x").is_ok() && p.index_of("{a,b}_y").is_ok());
    }

    #[test]
    fn singleton_edges() {
        let h = Hypergraph::new(["a", "b"], [("x", vec!["a"]), ("y", vec!["a", "b"])]).unwrap();
        let s = lift(&h, Functor::Symmetric, &LiftConfig::default()).unwrap();
        assert_eq!(s.poset.len(), 3);
        assert!(s.satisfies_boundary_precondition());
        let i = lift(&h, Functor::Incidence, &LiftConfig::default()).unwrap();
        assert_eq!(i.warnings, vec![LiftWarning::SingletonEdge("x".into())]);
        assert!(!i.satisfies_boundary_precondition());
    }

    #[test]
    fn colliding_labels_are_disambiguated() {
        let h = Hypergraph::new(["x"], [("x", vec!["x"])]).unwrap();
        let p = incidence_lift(&h);
        assert_eq!(p.element(1).id, "x#2");
    }

    proptest! {
        #[test]
        fn lifts_are_graded(seed in any::<u64>()) {
            let h = random_hypergraph(&GeneratorParams { seed, ..GeneratorParams::default() }).unwrap();
            let i = incidence_lift(&h);
            prop_assert!(validate_graded(&i).is_empty());
            prop_assert_eq!(i.len(), h.node_count() + h.edge_count());
            prop_assert_eq!(i.covers().len(), h.incidence_count());
            for (j, e) in h.edges().iter().enumerate() {
                prop_assert_eq!(i.boundary(h.node_count() + j).len(), e.cardinality());
            }

            let s = symmetric_simplicial_lift(&h, &LiftConfig::default());
            prop_assert!(validate_graded(&s).is_empty());
            for x in 0..s.len() {
                if s.dim(x) >= 1 {
                    prop_assert_eq!(s.boundary(x).len(), s.dim(x) + 1);
                }
            }
        }

        #[test]
        fn adjacency_symmetry_and_counts(seed in any::<u64>()) {
            let h = random_hypergraph(&GeneratorParams { seed, ..GeneratorParams::default() }).unwrap();
            for p in [incidence_lift(&h), symmetric_simplicial_lift(&h, &LiftConfig::default())] {
                for x in 0..p.len() {
                    for &t in p.boundary(x) {
                        prop_assert!(p.coboundary(t).contains(&x));
                    }
                    let expected: usize = p.boundary(x).iter().map(|&t| p.coboundary(t).len() - 1).sum();
                    prop_assert_eq!(p.lower_adjacency(x, AdjacencySemantics::PairMultiset).len(), expected);
                    for entry in p.lower_adjacency(x, AdjacencySemantics::DistinctNeighbor) {
                        let back = p.lower_adjacency(entry.neighbor, AdjacencySemantics::DistinctNeighbor);
                        prop_assert!(back.iter().any(|e| e.neighbor == x));
                    }
                    for entry in p.upper_adjacency(x, AdjacencySemantics::DistinctNeighbor) {
                        let back = p.upper_adjacency(entry.neighbor, AdjacencySemantics::DistinctNeighbor);
                        prop_assert!(back.iter().any(|e| e.neighbor == x));
                    }
                }
            }
        }
    }
}
