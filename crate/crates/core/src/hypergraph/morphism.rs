use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::error::{Error, Result};
use crate::perm::invert;

/// A pair of maps `(a, b)` on node and edge indices. Validity against a
/// particular source and target is checked by [`check_morphism`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypergraphMorphism {
    pub node_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl HypergraphMorphism {
    pub fn identity(h: &Hypergraph) -> Self {
        Self {
            node_map: (0..h.node_count()).collect(),
            edge_map: (0..h.edge_count()).collect(),
        }
    }

    /// Resolves label maps into index maps. Both maps must be total on the
    /// source and land in the target.
    pub fn from_labels(
        source: &Hypergraph,
        target: &Hypergraph,
        node_map: &BTreeMap<String, String>,
        edge_map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let resolve_node = |label: &str| {
            let to = node_map.get(label).ok_or_else(|| Error::UnknownId {
                kind: "node",
                id: label.to_string(),
            })?;
            target.node_index(to).ok_or_else(|| Error::UnknownId {
                kind: "node",
                id: to.clone(),
            })
        };
        let resolve_edge = |label: &str| {
            let to = edge_map.get(label).ok_or_else(|| Error::UnknownId {
                kind: "edge",
                id: label.to_string(),
            })?;
            target.edge_index(to).ok_or_else(|| Error::UnknownId {
                kind: "edge",
                id: to.clone(),
            })
        };
        for label in node_map.keys() {
            if source.node_index(label).is_none() {
                return Err(Error::UnknownId { kind: "node", id: label.clone() });
            }
        }
        for label in edge_map.keys() {
            if source.edge_index(label).is_none() {
                return Err(Error::UnknownId { kind: "edge", id: label.clone() });
            }
        }
        Ok(Self {
            node_map: source
                .node_labels()
                .iter()
                .map(|l| resolve_node(l))
                .collect::<Result<_>>()?,
            edge_map: source
                .edges()
                .iter()
                .map(|e| resolve_edge(&e.label))
                .collect::<Result<_>>()?,
        })
    }

    /// `then ∘ self`: apply `self` first.
    pub fn then(&self, then: &HypergraphMorphism) -> Self {
        Self {
            node_map: self.node_map.iter().map(|&v| then.node_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| then.edge_map[e]).collect(),
        }
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            node_map: invert(&self.node_map).ok_or(Error::NotBijective("node"))?,
            edge_map: invert(&self.edge_map).ok_or(Error::NotBijective("edge"))?,
        })
    }

    pub fn is_bijective(&self) -> bool {
        invert(&self.node_map).is_some() && invert(&self.edge_map).is_some()
    }

    /// Image of a sorted node set under the node map, sorted and deduplicated.
    pub fn image_of(&self, nodes: &[usize]) -> Vec<usize> {
        let mut image: Vec<usize> = nodes.iter().map(|&v| self.node_map[v]).collect();
        image.sort_unstable();
        image.dedup();
        image
    }
}

/// True iff `a_* ∘ f = f' ∘ b` holds edge by edge.
pub fn check_morphism(phi: &HypergraphMorphism, h: &Hypergraph, h2: &Hypergraph) -> Result<bool> {
    if phi.node_map.len() != h.node_count() {
        return Err(Error::InvalidMorphism(format!(
            "node map has {} entries for {} nodes",
            phi.node_map.len(),
            h.node_count()
        )));
    }
    if phi.edge_map.len() != h.edge_count() {
        return Err(Error::InvalidMorphism(format!(
            "edge map has {} entries for {} edges",
            phi.edge_map.len(),
            h.edge_count()
        )));
    }
    if let Some(&v) = phi.node_map.iter().find(|&&v| v >= h2.node_count()) {
        return Err(Error::UnknownId { kind: "node", id: format!("#{v}") });
    }
    if let Some(&e) = phi.edge_map.iter().find(|&&e| e >= h2.edge_count()) {
        return Err(Error::UnknownId { kind: "edge", id: format!("#{e}") });
    }
    Ok(h
        .edges()
        .iter()
        .zip(&phi.edge_map)
        .all(|(edge, &target)| phi.image_of(&edge.nodes) == h2.edge(target).nodes))
}

/// Relabels the incidence structure of `h`: node `i` takes the place of
/// node `node_perm[i]` and edge `j` the place of edge `edge_perm[j]`.
/// Returns the permuted hypergraph together with the isomorphism `h -> h'`.
pub fn permute(
    h: &Hypergraph,
    node_perm: &[usize],
    edge_perm: &[usize],
) -> Result<(Hypergraph, HypergraphMorphism)> {
    if node_perm.len() != h.node_count() || invert(node_perm).is_none() {
        return Err(Error::NotBijective("node"));
    }
    if edge_perm.len() != h.edge_count() || invert(edge_perm).is_none() {
        return Err(Error::NotBijective("edge"));
    }
    let phi = HypergraphMorphism {
        node_map: node_perm.to_vec(),
        edge_map: edge_perm.to_vec(),
    };
    let mut edges: Vec<(String, Vec<usize>)> = vec![Default::default(); h.edge_count()];
    for (j, edge) in h.edges().iter().enumerate() {
        let target = edge_perm[j];
        edges[target] = (h.edge(target).label.clone(), phi.image_of(&edge.nodes));
    }
    let permuted = Hypergraph::from_indexed(h.node_labels().to_vec(), edges)?;
    Ok((permuted, phi))
}

/// [`permute`] with uniformly random permutations drawn from `seed`.
pub fn random_permutation(h: &Hypergraph, seed: u64) -> (Hypergraph, HypergraphMorphism) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut node_perm: Vec<usize> = (0..h.node_count()).collect();
    let mut edge_perm: Vec<usize> = (0..h.edge_count()).collect();
    node_perm.shuffle(&mut rng);
    edge_perm.shuffle(&mut rng);
    permute(h, &node_perm, &edge_perm).expect("shuffles are bijections")
}

/// A seeded surjective node collapse `h -> h'`. Nodes are merged into
/// `u1..uk`; each edge maps to its image set, and edges with equal images
/// are merged with probability one half so the edge map need not be
/// injective either.
pub fn random_collapse(h: &Hypergraph, seed: u64) -> (Hypergraph, HypergraphMorphism) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.node_count();
    let classes = if n == 0 { 0 } else { rng.gen_range(1..=n) };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut class_of = vec![0; n];
    for (rank, &v) in order.iter().enumerate() {
        class_of[v] = if rank < classes { rank } else { rng.gen_range(0..classes) };
    }
    let node_label = |c: usize| format!("u{}", c + 1);

    let merge = rng.gen_bool(0.5);
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut edge_class = Vec::with_capacity(h.edge_count());
    for edge in h.edges() {
        let mut image: Vec<usize> = edge.nodes.iter().map(|&v| class_of[v]).collect();
        image.sort_unstable();
        image.dedup();
        let existing = if merge { images.iter().position(|i| *i == image) } else { None };
        edge_class.push(existing.unwrap_or_else(|| {
            images.push(image);
            images.len() - 1
        }));
    }
    let edge_label = |c: usize| format!("f{}", c + 1);

    let target = Hypergraph::new(
        (0..classes).map(node_label),
        images
            .iter()
            .enumerate()
            .map(|(c, image)| (edge_label(c), image.iter().map(|&v| node_label(v)).collect())),
    )
    .expect("collapsed hypergraph is valid");
    let node_map: BTreeMap<String, String> = h
        .node_labels()
        .iter()
        .zip(&class_of)
        .map(|(l, &c)| (l.clone(), node_label(c)))
        .collect();
    let edge_map: BTreeMap<String, String> = h
        .edges()
        .iter()
        .zip(&edge_class)
        .map(|(e, &c)| (e.label.clone(), edge_label(c)))
        .collect();
    let phi = HypergraphMorphism::from_labels(h, &target, &node_map, &edge_map).expect("labels resolve");
    (target, phi)
}
