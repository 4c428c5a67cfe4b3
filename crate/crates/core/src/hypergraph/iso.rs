use std::collections::HashMap;

use super::{Hypergraph, HypergraphMorphism};
use crate::error::{Error, Result};

/// Size limits for the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_nodes: usize,
    pub max_edges: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self { max_nodes: 10, max_edges: 10 }
    }
}

impl OracleBounds {
    fn check(&self, h: &Hypergraph) -> Result<()> {
        if h.node_count() > self.max_nodes {
            return Err(Error::BoundExceeded {
                what: "node set",
                size: h.node_count(),
                bound: self.max_nodes,
            });
        }
        if h.edge_count() > self.max_edges {
            return Err(Error::BoundExceeded {
                what: "edge set",
                size: h.edge_count(),
                bound: self.max_edges,
            });
        }
        Ok(())
    }
}

/// Ground-truth isomorphism test by exhaustive search, default bounds.
pub fn brute_force_isomorphic(h: &Hypergraph, h2: &Hypergraph) -> Result<bool> {
    Ok(find_isomorphism(h, h2, OracleBounds::default())?.is_some())
}

/// Searches node bijections; an edge bijection exists for a node bijection
/// iff the multisets of mapped edge node-sets coincide, so edges are
/// matched by counting rather than enumerated separately.
pub fn find_isomorphism(
    h: &Hypergraph,
    h2: &Hypergraph,
    bounds: OracleBounds,
) -> Result<Option<HypergraphMorphism>> {
    bounds.check(h)?;
    bounds.check(h2)?;
    if h.node_count() != h2.node_count()
        || h.edge_count() != h2.edge_count()
        || h.cardinality_profile() != h2.cardinality_profile()
    {
        return Ok(None);
    }

    let signature = |g: &Hypergraph| -> Vec<Vec<usize>> {
        let mut sig = vec![Vec::new(); g.node_count()];
        for e in g.edges() {
            for &v in &e.nodes {
                sig[v].push(e.cardinality());
            }
        }
        sig.iter_mut().for_each(|s| s.sort_unstable());
        sig
    };
    let sig1 = signature(h);
    let sig2 = signature(h2);
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    // Edges of h grouped by their largest node: once that node is mapped the
    // whole edge image is known and can be checked against h2.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); h.node_count()];
    for (j, e) in h.edges().iter().enumerate() {
        closing[*e.nodes.last().expect("edges are non-empty")].push(j);
    }
    let mut available: HashMap<Vec<usize>, usize> = HashMap::new();
    for e in h2.edges() {
        *available.entry(e.nodes.clone()).or_default() += 1;
    }

    let mut search = Search {
        h,
        sig1: &sig1,
        sig2: &sig2,
        closing: &closing,
        available,
        node_map: vec![usize::MAX; h.node_count()],
        used: vec![false; h2.node_count()],
    };
    if !search.assign(0) {
        return Ok(None);
    }
    let node_map = search.node_map;

    let mut slots: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (j, e) in h2.edges().iter().enumerate().rev() {
        slots.entry(e.nodes.clone()).or_default().push(j);
    }
    let phi = HypergraphMorphism { node_map, edge_map: Vec::new() };
    let edge_map = h
        .edges()
        .iter()
        .map(|e| {
            slots
                .get_mut(&phi.image_of(&e.nodes))
                .and_then(Vec::pop)
                .expect("edge multiset matched")
        })
        .collect();
    Ok(Some(HypergraphMorphism { edge_map, ..phi }))
}

struct Search<'a> {
    h: &'a Hypergraph,
    sig1: &'a [Vec<usize>],
    sig2: &'a [Vec<usize>],
    closing: &'a [Vec<usize>],
    available: HashMap<Vec<usize>, usize>,
    node_map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize) -> bool {
        if v == self.node_map.len() {
            return true;
        }
        for w in 0..self.used.len() {
            if self.used[w] || self.sig1[v] != self.sig2[w] {
                continue;
            }
            self.node_map[v] = w;
            self.used[w] = true;

            let mut taken = Vec::new();
            let mut consistent = true;
            for &j in &self.closing[v] {
                let mut image: Vec<usize> =
                    self.h.edge(j).nodes.iter().map(|&u| self.node_map[u]).collect();
                image.sort_unstable();
                match self.available.get_mut(&image) {
                    Some(count) if *count > 0 => {
                        *count -= 1;
                        taken.push(image);
                    }
                    _ => {
                        consistent = false;
                        break;
                    }
                }
            }
            if consistent && self.assign(v + 1) {
                return true;
            }
            for image in taken {
                *self.available.get_mut(&image).expect("taken from map") += 1;
            }
            self.used[w] = false;
            self.node_map[v] = usize::MAX;
        }
        false
    }
}
