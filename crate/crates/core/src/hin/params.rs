use ndarray::{Array1, Array2};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::AdjacencySemantics;
use crate::wl::{AdjacencySet, RefinementConfig};

/// Two affine maps with a rectifier between them, hidden width equal to
/// the feature width.
#[derive(Clone, Debug, PartialEq)]
pub struct Mlp {
    pub w1: Array2<f64>,
    pub b1: Array1<f64>,
    pub w2: Array2<f64>,
    pub b2: Array1<f64>,
}

impl Mlp {
    pub fn apply(&self, x: &Array1<f64>) -> Array1<f64> {
        let hidden = (self.w1.dot(x) + &self.b1).mapv(relu);
        self.w2.dot(&hidden) + &self.b2
    }
}

/// `relu(W [x ‖ y] + b)` taking `2d` inputs to `d` outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct PairPerceptron {
    pub w: Array2<f64>,
    pub b: Array1<f64>,
}

impl PairPerceptron {
    pub fn apply(&self, x: &Array1<f64>, y: &Array1<f64>) -> Array1<f64> {
        let d = x.len();
        let left = self.w.slice(ndarray::s![.., ..d]).dot(x);
        let right = self.w.slice(ndarray::s![.., d..]).dot(y);
        (left + right + &self.b).mapv(relu)
    }
}

pub(crate) fn relu(x: f64) -> f64 {
    x.max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KindParams {
    pub mlp: Mlp,
    pub eps: f64,
    /// Present for lower and upper adjacency only.
    pub pair: Option<PairPerceptron>,
}

/// Parameters for one layer, indexed in `B, C, L, U` order.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerParams {
    pub kinds: [KindParams; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct HinParams {
    pub seed: u64,
    pub width: usize,
    pub layers: Vec<LayerParams>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MpnConfig {
    pub adjacencies: AdjacencySet,
    pub semantics: AdjacencySemantics,
    pub layers: usize,
    pub width: usize,
}

impl Default for MpnConfig {
    fn default() -> Self {
        Self {
            adjacencies: AdjacencySet::FULL,
            semantics: AdjacencySemantics::PairMultiset,
            layers: 2,
            width: 16,
        }
    }
}

impl MpnConfig {
    /// Same adjacency choices as a refinement run.
    pub fn matching(cfg: &RefinementConfig, layers: usize, width: usize) -> Self {
        Self { adjacencies: cfg.adjacencies, semantics: cfg.semantics, layers, width }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.layers == 0 {
            return Err(Error::Config(format!(
                "width and layer count must be positive, got d = {} and L = {}",
                self.width, self.layers
            )));
        }
        Ok(())
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    dist: Uniform<f64>,
    scale: f64,
}

impl Sampler {
    fn matrix(&mut self, rows: usize, cols: usize) -> Array2<f64> {
        Array2::from_shape_simple_fn((rows, cols), || self.dist.sample(&mut self.rng) * self.scale)
    }

    fn vector(&mut self, n: usize) -> Array1<f64> {
        Array1::from_shape_simple_fn(n, || self.dist.sample(&mut self.rng) * self.scale)
    }
}

/// Draws every weight and bias from `Uniform(-1, 1) / sqrt(d)` with a
/// ChaCha8 stream. All four kinds are generated for every layer whatever
/// the adjacency set, so a seed fixes the same weights across configs.
/// Every `ε` starts at zero.
pub fn init_params(cfg: &MpnConfig, seed: u64) -> Result<HinParams> {
    cfg.validate()?;
    let d = cfg.width;
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        dist: Uniform::new_inclusive(-1.0, 1.0),
        scale: 1.0 / (d as f64).sqrt(),
    };
    let mut layers = Vec::with_capacity(cfg.layers);
    for _ in 0..cfg.layers {
        let mut kind = |k: usize| {
            let mlp = Mlp { w1: s.matrix(d, d), b1: s.vector(d), w2: s.matrix(d, d), b2: s.vector(d) };
            let pair = (k >= 2).then(|| PairPerceptron { w: s.matrix(d, 2 * d), b: s.vector(d) });
            KindParams { mlp, eps: 0.0, pair }
        };
        let kinds = [kind(0), kind(1), kind(2), kind(3)];
        layers.push(LayerParams { kinds });
    }
    Ok(HinParams { seed, width: d, layers })
}
