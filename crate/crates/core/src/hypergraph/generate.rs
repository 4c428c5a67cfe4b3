use std::ops::RangeInclusive;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub nodes: RangeInclusive<usize>,
    pub edges: RangeInclusive<usize>,
    pub cardinality: RangeInclusive<usize>,
    /// Forbid singleton hyperedges, so every lifted element above
    /// dimension 0 has at least two boundary elements.
    pub min_cardinality_two: bool,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            nodes: 3..=7,
            edges: 1..=5,
            cardinality: 1..=3,
            min_cardinality_two: false,
            seed: 0,
        }
    }
}

impl GeneratorParams {
    fn effective_cardinality(&self) -> RangeInclusive<usize> {
        let lo = if self.min_cardinality_two {
            (*self.cardinality.start()).max(2)
        } else {
            *self.cardinality.start()
        };
        lo..=*self.cardinality.end()
    }

    pub fn validate(&self) -> Result<()> {
        let card = self.effective_cardinality();
        if self.nodes.is_empty() || self.edges.is_empty() || card.is_empty() {
            return Err(Error::InfeasibleParams("empty range".into()));
        }
        if *card.start() == 0 {
            return Err(Error::InfeasibleParams("hyperedges need at least one node".into()));
        }
        if *card.end() > *self.nodes.start() {
            return Err(Error::InfeasibleParams(format!(
                "cardinality up to {} exceeds minimum node count {}",
                card.end(),
                self.nodes.start()
            )));
        }
        Ok(())
    }
}

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn build(rng: &mut ChaCha8Rng, node_count: usize, cards: &[usize]) -> Hypergraph {
    let edges: Vec<(String, Vec<usize>)> = labels("e", cards.len())
        .into_iter()
        .zip(cards)
        .map(|(label, &k)| (label, index::sample(rng, node_count, k).into_vec()))
        .collect();
    Hypergraph::from_indexed(labels("v", node_count), edges).expect("generated hypergraph is valid")
}

/// Seeded random hypergraph. Nodes are `v1..vn`, edges `e1..em`; each
/// edge picks its cardinality uniformly and its members without
/// replacement.
pub fn random_hypergraph(params: &GeneratorParams) -> Result<Hypergraph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = rng.gen_range(params.nodes.clone());
    let m = rng.gen_range(params.edges.clone());
    let card = params.effective_cardinality();
    let cards: Vec<usize> = (0..m).map(|_| rng.gen_range(card.clone())).collect();
    Ok(build(&mut rng, n, &cards))
}

/// Random hypergraph with a prescribed node count and edge cardinalities.
/// Used to draw non-trivial comparison partners that agree on the
/// obvious invariants.
pub fn random_with_profile(node_count: usize, cardinalities: &[usize], seed: u64) -> Result<Hypergraph> {
    if let Some(&k) = cardinalities.iter().find(|&&k| k == 0 || k > node_count) {
        return Err(Error::InfeasibleParams(format!(
            "cardinality {k} is not within 1..={node_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(build(&mut rng, node_count, cardinalities))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(seed: u64) -> GeneratorParams {
        GeneratorParams {
            nodes: 5..=5,
            edges: 3..=3,
            cardinality: 2..=3,
            min_cardinality_two: false,
            seed,
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = random_hypergraph(&params(11)).unwrap();
        let b = random_hypergraph(&params(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.node_count(), a.edge_count()), (5, 3));
        assert!(a.edges().iter().all(|e| (2..=3).contains(&e.cardinality())));
    }

    #[test]
    fn min_cardinality_two_forbids_singletons() {
        for seed in 0..200 {
            let p = GeneratorParams {
                cardinality: 1..=3,
                min_cardinality_two: true,
                seed,
                ..GeneratorParams::default()
            };
            let h = random_hypergraph(&p).unwrap();
            assert!(h.edges().iter().all(|e| e.cardinality() >= 2));
        }
    }

    #[test]
    fn different_seeds_differ() {
        let distinct: std::collections::BTreeSet<String> =
            (0..20).map(|s| random_hypergraph(&params(s)).unwrap().to_json()).collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn infeasible_params() {
        let p = GeneratorParams {
            nodes: 2..=4,
            cardinality: 1..=3,
            ..GeneratorParams::default()
        };
        assert!(matches!(random_hypergraph(&p), Err(Error::InfeasibleParams(_))));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = GeneratorParams { edges: 3..=1, ..GeneratorParams::default() };
        assert!(random_hypergraph(&empty).is_err());
        assert!(random_with_profile(3, &[4], 0).is_err());
    }

    #[test]
    fn profile_is_respected() {
        let h = random_with_profile(6, &[3, 2, 3, 2], 5).unwrap();
        assert_eq!(h.cardinality_profile(), vec![2, 2, 3, 3]);
        assert_eq!(h.node_count(), 6);
    }
}
