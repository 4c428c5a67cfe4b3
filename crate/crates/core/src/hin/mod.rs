//! Random-weight message passing over lifted posets.
//!
//! Each layer computes one message per enabled adjacency kind and adds
//! them to the current feature:
//!
//! ```text
//! m_B(σ) = MLP_B((1 + ε_B) h(σ) + Σ_{τ ∈ B(σ)} h(τ))
//! m_L(σ) = MLP_L((1 + ε_L) h(σ) + Σ_{(σ', τ) ∈ L(σ)} relu(W_L [h(σ') ‖ h(τ)] + b_L))
//! h'(σ)  = h(σ) + m_B(σ) + m_C(σ) + m_L(σ) + m_U(σ)
//! ```
//!
//! and likewise for `C` and `U`. Under distinct-neighbour semantics the
//! `h(τ)` slot is the zero vector. Neighbour contributions are summed in
//! ascending value order, so the result depends only on the multiset of
//! addends and elements with equal refinement colors get bit-identical
//! features.

mod params;

pub use params::{init_params, HinParams, KindParams, LayerParams, Mlp, MpnConfig, PairPerceptron};

use std::cmp::Ordering;

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lift::{lift, Functor, LiftConfig};
use crate::poset::GradedPoset;
use crate::wl::Adjacency;

/// Row `i` is the feature of element `i` after `layer` layers.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureState {
    pub layer: usize,
    pub features: Array2<f64>,
}

impl FeatureState {
    /// All-ones features, mirroring the constant initial coloring.
    pub fn ones(elements: usize, width: usize) -> Self {
        Self { layer: 0, features: Array2::ones((elements, width)) }
    }

    pub fn width(&self) -> usize {
        self.features.ncols()
    }

    /// Feature vectors keyed by element id, in element order.
    pub fn dump(&self, p: &GradedPoset) -> Vec<ElementFeature> {
        self.features
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, row)| ElementFeature { id: p.element(i).id.clone(), features: row.to_vec() })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElementFeature {
    pub id: String,
    pub features: Vec<f64>,
}

fn cmp_vectors(a: &Array1<f64>, b: &Array1<f64>) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Sum in ascending lexicographic order so the result is a function of the multiset.
fn canonical_sum(mut terms: Vec<Array1<f64>>, width: usize) -> Array1<f64> {
    terms.sort_by(cmp_vectors);
    terms.into_iter().fold(Array1::zeros(width), |acc, t| acc + t)
}

/// Applies layer `feats.layer` of `params` to every element of `p`.
pub fn hin_layer(p: &GradedPoset, feats: &FeatureState, params: &HinParams, cfg: &MpnConfig) -> Result<FeatureState> {
    if feats.width() != params.width {
        return Err(Error::WidthMismatch { expected: params.width, found: feats.width() });
    }
    if feats.features.nrows() != p.len() {
        return Err(Error::DomainMismatch(format!(
            "{} feature rows for a poset of {} elements",
            feats.features.nrows(),
            p.len()
        )));
    }
    let layer = params.layers.get(feats.layer).ok_or_else(|| {
        Error::Config(format!("parameters cover {} layers, layer {} requested", params.layers.len(), feats.layer))
    })?;
    let d = params.width;
    let h = |i: usize| feats.features.row(i).to_owned();
    let zero = Array1::<f64>::zeros(d);

    let mut out = Array2::zeros((p.len(), d));
    for sigma in 0..p.len() {
        let own = h(sigma);
        let mut messages = Vec::new();
        for kind in cfg.adjacencies.iter() {
            let kp = &layer.kinds[kind as usize];
            let terms: Vec<Array1<f64>> = match kind {
                Adjacency::Boundary => p.boundary(sigma).iter().map(|&t| h(t)).collect(),
                Adjacency::Coboundary => p.coboundary(sigma).iter().map(|&t| h(t)).collect(),
                Adjacency::Lower | Adjacency::Upper => {
                    let entries = if kind == Adjacency::Lower {
                        p.lower_adjacency(sigma, cfg.semantics)
                    } else {
                        p.upper_adjacency(sigma, cfg.semantics)
                    };
                    let pair = kp.pair.as_ref().expect("pair perceptron for L and U");
                    entries
                        .iter()
                        .map(|e| pair.apply(&h(e.neighbor), &e.via.map_or_else(|| zero.clone(), h)))
                        .collect()
                }
            };
            let aggregate = &own * (1.0 + kp.eps) + canonical_sum(terms, d);
            messages.push(kp.mlp.apply(&aggregate));
        }
        let next = messages.into_iter().fold(own, |acc, m| acc + m);
        out.row_mut(sigma).assign(&next);
    }
    Ok(FeatureState { layer: feats.layer + 1, features: out })
}

/// `cfg.layers` layers from all-ones features.
pub fn hin_run(p: &GradedPoset, params: &HinParams, cfg: &MpnConfig) -> Result<FeatureState> {
    let mut feats = FeatureState::ones(p.len(), params.width);
    for _ in 0..cfg.layers {
        feats = hin_layer(p, &feats, params, cfg)?;
    }
    Ok(feats)
}

/// Sorted multiset of feature vectors quantised to multiples of `tol`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Readout(pub Vec<Vec<i64>>);

pub fn readout(feats: &FeatureState, tol: f64) -> Result<Readout> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Config(format!("readout tolerance must be positive, got {tol}")));
    }
    let mut rows = Vec::with_capacity(feats.features.nrows());
    for (i, row) in feats.features.rows().into_iter().enumerate() {
        let q = row
            .iter()
            .map(|&x| {
                let scaled = (x / tol).round();
                if scaled.is_finite() && scaled.abs() < i64::MAX as f64 {
                    Ok(scaled as i64)
                } else {
                    Err(Error::NonFinite { element: i, value: x })
                }
            })
            .collect::<Result<Vec<i64>>>()?;
        rows.push(q);
    }
    rows.sort();
    Ok(Readout(rows))
}

/// True iff the readouts of the two posets differ.
pub fn poset_distinguishes(
    p: &GradedPoset,
    q: &GradedPoset,
    params: &HinParams,
    cfg: &MpnConfig,
    tol: f64,
) -> Result<bool> {
    let a = readout(&hin_run(p, params, cfg)?, tol)?;
    let b = readout(&hin_run(q, params, cfg)?, tol)?;
    Ok(a != b)
}

/// Lifts both hypergraphs and compares their readouts.
pub fn hin_distinguishes(
    h: &Hypergraph,
    h2: &Hypergraph,
    functor: Functor,
    lift_cfg: &LiftConfig,
    params: &HinParams,
    cfg: &MpnConfig,
    tol: f64,
) -> Result<bool> {
    let p = lift(h, functor, lift_cfg)?.poset;
    let q = lift(h2, functor, lift_cfg)?.poset;
    poset_distinguishes(&p, &q, params, cfg, tol)
}
