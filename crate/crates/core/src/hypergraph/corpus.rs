//! Fixed hypergraphs used throughout the test suites and the CLI.

use std::collections::BTreeMap;

use super::{Hypergraph, HypergraphMorphism};

/// Two hyperedges sharing two nodes: `e1 = {v1, v2, v3}`, `e2 = {v1, v2, v4}`.
pub fn running_example() -> Hypergraph {
    Hypergraph::new(
        ["v1", "v2", "v3", "v4"],
        [("e1", vec!["v1", "v2", "v3"]), ("e2", vec!["v1", "v2", "v4"])],
    )
    .expect("valid fixture")
}

/// A single hyperedge `e = {w1, w2, w3}`.
pub fn single_edge_target() -> Hypergraph {
    Hypergraph::new(["w1", "w2", "w3"], [("e", vec!["w1", "w2", "w3"])]).expect("valid fixture")
}

/// The collapse `running_example() -> single_edge_target()` sending
/// `v1 -> w1`, `v2 -> w3`, `v3, v4 -> w2` and both edges onto `e`.
pub fn collapse_morphism() -> (HypergraphMorphism, Hypergraph) {
    let source = running_example();
    let target = single_edge_target();
    let nodes: BTreeMap<String, String> = [("v1", "w1"), ("v2", "w3"), ("v3", "w2"), ("v4", "w2")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let edges: BTreeMap<String, String> = [("e1", "e"), ("e2", "e")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let phi = HypergraphMorphism::from_labels(&source, &target, &nodes, &edges).expect("valid fixture");
    (phi, target)
}

/// A pair that bipartite node/hyperedge refinement cannot separate but
/// which are not isomorphic:
///
/// * `H  = {e1 = {v1,v2,v6}, e2 = {v2,v3}, e3 = {v3,v4,v5}, e4 = {v5,v6}}`
/// * `H' = {e1' = {v1',v2',v3'}, e2' = {v2',v3'}, e3' = {v4',v5',v6'}, e4' = {v5',v6'}}`
pub fn counterexample_pair() -> (Hypergraph, Hypergraph) {
    let h = Hypergraph::new(
        ["v1", "v2", "v3", "v4", "v5", "v6"],
        [
            ("e1", vec!["v1", "v2", "v6"]),
            ("e2", vec!["v2", "v3"]),
            ("e3", vec!["v3", "v4", "v5"]),
            ("e4", vec!["v5", "v6"]),
        ],
    )
    .expect("valid fixture");
    let h_prime = Hypergraph::new(
        ["v1'", "v2'", "v3'", "v4'", "v5'", "v6'"],
        [
            ("e1'", vec!["v1'", "v2'", "v3'"]),
            ("e2'", vec!["v2'", "v3'"]),
            ("e3'", vec!["v4'", "v5'", "v6'"]),
            ("e4'", vec!["v5'", "v6'"]),
        ],
    )
    .expect("valid fixture");
    (h, h_prime)
}

/// A 2-uniform pair (6-cycle vs. two triangles) that plain colour
/// refinement cannot separate.
pub fn hexagon_vs_triangles() -> (Hypergraph, Hypergraph) {
    let nodes = ["a", "b", "c", "d", "f", "g"];
    let hexagon = Hypergraph::new(
        nodes,
        [
            ("x1", vec!["a", "b"]),
            ("x2", vec!["b", "c"]),
            ("x3", vec!["c", "d"]),
            ("x4", vec!["d", "f"]),
            ("x5", vec!["f", "g"]),
            ("x6", vec!["g", "a"]),
        ],
    )
    .expect("valid fixture");
    let triangles = Hypergraph::new(
        nodes,
        [
            ("x1", vec!["a", "b"]),
            ("x2", vec!["b", "c"]),
            ("x3", vec!["c", "a"]),
            ("x4", vec!["d", "f"]),
            ("x5", vec!["f", "g"]),
            ("x6", vec!["g", "d"]),
        ],
    )
    .expect("valid fixture");
    (hexagon, triangles)
}
