use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{incidence_lift, Functor, LiftConfig, SimplexKey, SimplexTable};
use crate::error::{Error, Result};
use crate::hypergraph::{check_morphism, random_collapse, random_permutation, Hypergraph, HypergraphMorphism};
use crate::poset::GradedPoset;

/// A map between poset elements by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub map: Vec<usize>,
}

impl PosetMap {
    pub fn identity(len: usize) -> Self {
        Self { map: (0..len).collect() }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PosetMap) -> Self {
        Self { map: self.map.iter().map(|&x| then.map[x]).collect() }
    }

    /// True iff the map is a bijection carrying covers exactly onto covers.
    pub fn is_isomorphism(&self, p: &GradedPoset, q: &GradedPoset) -> bool {
        if self.map.len() != p.len() || p.len() != q.len() || crate::perm::invert(&self.map).is_none() {
            return false;
        }
        let image: HashSet<(usize, usize)> = p.covers().iter().map(|&(a, b)| (self.map[a], self.map[b])).collect();
        image.len() == q.covers().len() && q.covers().iter().all(|c| image.contains(c))
    }
}

/// Checks that `f: p -> q` is total, order-preserving and never raises dimension.
pub fn check_poset_map(f: &PosetMap, p: &GradedPoset, q: &GradedPoset) -> Result<()> {
    if f.map.len() != p.len() {
        return Err(Error::InvalidMorphism(format!(
            "map has {} entries for a poset of {} elements",
            f.map.len(),
            p.len()
        )));
    }
    if let Some(x) = (0..p.len()).find(|&x| f.map[x] >= q.len()) {
        return Err(Error::UnknownElement(format!("image of `{}`", p.element(x).id)));
    }
    for x in 0..p.len() {
        if q.dim(f.map[x]) > p.dim(x) {
            return Err(Error::InvalidMorphism(format!("`{}` is sent to a higher dimension", p.element(x).id)));
        }
    }
    for &(a, b) in p.covers() {
        if !q.leq(f.map[a], f.map[b]) {
            return Err(Error::InvalidMorphism(format!(
                "order between `{}` and `{}` is not preserved",
                p.element(a).id,
                p.element(b).id
            )));
        }
    }
    Ok(())
}

/// Id of the first element of `p` on which the two maps disagree.
pub fn compare_maps(f: &PosetMap, g: &PosetMap, p: &GradedPoset) -> Option<String> {
    if f.map.len() != g.map.len() {
        return Some("<length>".to_string());
    }
    (0..f.map.len()).find(|&x| f.map[x] != g.map[x]).map(|x| p.element(x).id.clone())
}

fn ensure_morphism(phi: &HypergraphMorphism, h: &Hypergraph, h2: &Hypergraph) -> Result<()> {
    if check_morphism(phi, h, h2)? {
        Ok(())
    } else {
        Err(Error::InvalidMorphism("edge images do not match node images".into()))
    }
}

/// `I(φ)`: nodes by `a`, edges by `b`.
pub fn lift_morphism_incidence(phi: &HypergraphMorphism, h: &Hypergraph, h2: &Hypergraph) -> Result<PosetMap> {
    ensure_morphism(phi, h, h2)?;
    let n2 = h2.node_count();
    let map = phi
        .node_map
        .iter()
        .copied()
        .chain(phi.edge_map.iter().map(|&e| n2 + e))
        .collect();
    Ok(PosetMap { map })
}

/// `S(φ)`: a simplex `U_e` goes to `a(U)_{b(e)}`, or to a vertex when `a`
/// collapses `U` to a single node.
pub fn lift_morphism_symmetric(
    phi: &HypergraphMorphism,
    h: &Hypergraph,
    h2: &Hypergraph,
    cfg: &LiftConfig,
) -> Result<PosetMap> {
    ensure_morphism(phi, h, h2)?;
    cfg.validate()?;
    let source = SimplexTable::build(h, cfg);
    let target = SimplexTable::build(h2, cfg);
    symmetric_map(phi, &source, &target, h2)
}

fn symmetric_map(
    phi: &HypergraphMorphism,
    source: &SimplexTable,
    target: &SimplexTable,
    h2: &Hypergraph,
) -> Result<PosetMap> {
    let map = source
        .keys
        .iter()
        .enumerate()
        .map(|(i, key)| {
            let image = match key {
                SimplexKey::Vertex(v) => SimplexKey::Vertex(phi.node_map[*v]),
                SimplexKey::Face { edge, nodes } => {
                    let image = phi.image_of(nodes);
                    if image.len() == 1 {
                        SimplexKey::Vertex(image[0])
                    } else {
                        SimplexKey::Face { edge: phi.edge_map[*edge], nodes: image }
                    }
                }
            };
            target.lookup.get(&image).copied().ok_or_else(|| {
                let edge = match key {
                    SimplexKey::Face { edge, .. } => h2.edge(phi.edge_map[*edge]).label.clone(),
                    SimplexKey::Vertex(_) => String::new(),
                };
                Error::TruncationMismatch { simplex: source.poset.element(i).id.clone(), edge }
            })
        })
        .collect::<Result<_>>()?;
    Ok(PosetMap { map })
}

pub fn lift_morphism(
    phi: &HypergraphMorphism,
    h: &Hypergraph,
    h2: &Hypergraph,
    functor: Functor,
    cfg: &LiftConfig,
) -> Result<PosetMap> {
    match functor {
        Functor::Incidence => lift_morphism_incidence(phi, h, h2),
        Functor::Symmetric => lift_morphism_symmetric(phi, h, h2, cfg),
    }
}

/// `H0 -φ1-> H1 -φ2-> ... -> Hk`.
#[derive(Clone, Debug)]
pub struct MorphismChain {
    pub source: Hypergraph,
    pub steps: Vec<(HypergraphMorphism, Hypergraph)>,
}

impl MorphismChain {
    /// A chain of `len` steps, each a random relabelling or a random collapse.
    pub fn random(source: Hypergraph, len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut steps = Vec::with_capacity(len);
        let mut current = source.clone();
        for _ in 0..len {
            let step_seed = rng.gen();
            let (next, phi) = if rng.gen_bool(0.5) {
                random_permutation(&current, step_seed)
            } else {
                random_collapse(&current, step_seed)
            };
            steps.push((phi, next.clone()));
            current = next;
        }
        Self { source, steps }
    }

    pub fn hypergraphs(&self) -> impl Iterator<Item = &Hypergraph> {
        std::iter::once(&self.source).chain(self.steps.iter().map(|(_, h)| h))
    }

    pub fn target(&self) -> &Hypergraph {
        self.steps.last().map_or(&self.source, |(_, h)| h)
    }

    /// The composite `φk ∘ ... ∘ φ1`.
    pub fn composite(&self) -> HypergraphMorphism {
        self.steps
            .iter()
            .fold(HypergraphMorphism::identity(&self.source), |acc, (phi, _)| acc.then(phi))
    }
}

/// Outcome of [`check_functor_laws`]. `first_failure` names the law and
/// the first offending element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorLawReport {
    pub maps_checked: usize,
    pub first_failure: Option<String>,
}

impl FunctorLawReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that the lift sends identities to identities, every step to a
/// valid poset map, and composites to composites (each consecutive pair
/// and the whole chain).
pub fn check_functor_laws(chain: &MorphismChain, functor: Functor, cfg: &LiftConfig) -> Result<FunctorLawReport> {
    cfg.validate()?;
    let graphs: Vec<&Hypergraph> = chain.hypergraphs().collect();
    let tables: Vec<Option<SimplexTable>> = graphs
        .iter()
        .map(|h| (functor == Functor::Symmetric).then(|| SimplexTable::build(h, cfg)))
        .collect();
    let posets: Vec<GradedPoset> = graphs
        .iter()
        .zip(&tables)
        .map(|(h, t)| match t {
            Some(t) => t.poset.clone(),
            None => incidence_lift(h),
        })
        .collect();
    let lift_between = |phi: &HypergraphMorphism, i: usize, j: usize| -> Result<PosetMap> {
        ensure_morphism(phi, graphs[i], graphs[j])?;
        match (&tables[i], &tables[j]) {
            (Some(s), Some(t)) => symmetric_map(phi, s, t, graphs[j]),
            _ => lift_morphism_incidence(phi, graphs[i], graphs[j]),
        }
    };

    let mut report = FunctorLawReport::default();
    for (i, h) in graphs.iter().enumerate() {
        let id = lift_between(&HypergraphMorphism::identity(h), i, i)?;
        report.maps_checked += 1;
        if let Some(x) = compare_maps(&id, &PosetMap::identity(posets[i].len()), &posets[i]) {
            report.first_failure = Some(format!("identity on object {i} moves `{x}`"));
            return Ok(report);
        }
    }

    let mut lifted = Vec::with_capacity(chain.steps.len());
    for (k, (phi, _)) in chain.steps.iter().enumerate() {
        let f = lift_between(phi, k, k + 1)?;
        report.maps_checked += 1;
        if let Err(err) = check_poset_map(&f, &posets[k], &posets[k + 1]) {
            report.first_failure = Some(format!("step {k}: {err}"));
            return Ok(report);
        }
        lifted.push(f);
    }

    for k in 1..chain.steps.len() {
        let direct = lift_between(&chain.steps[k - 1].0.then(&chain.steps[k].0), k - 1, k + 1)?;
        report.maps_checked += 1;
        if let Some(x) = compare_maps(&direct, &lifted[k - 1].then(&lifted[k]), &posets[k - 1]) {
            report.first_failure = Some(format!("composition of steps {} and {k} differs at `{x}`", k - 1));
            return Ok(report);
        }
    }

    if chain.steps.len() > 2 {
        let direct = lift_between(&chain.composite(), 0, chain.steps.len())?;
        let composed = lifted.iter().skip(1).fold(lifted[0].clone(), |acc, f| acc.then(f));
        report.maps_checked += 1;
        if let Some(x) = compare_maps(&direct, &composed, &posets[0]) {
            report.first_failure = Some(format!("composite of the whole chain differs at `{x}`"));
        }
    }
    Ok(report)
}
