//! Colour refinement on graded posets and the bipartite hypergraph baseline.
//!
//! Every comparison runs both sides in lock-step against one shared
//! [`ColorTable`], so a color id means the same thing on either side. The
//! run stops at the first iteration whose histograms differ, or once the
//! partition of the disjoint union stops splitting.

mod color;
mod config;

pub use color::{ColorId, ColorTable, Coloring, Encoding, Histogram};
pub use config::{Adjacency, AdjacencySet, RefinementConfig};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lift::{lift, Functor, LiftConfig};
use crate::poset::{AdjacencyEntry, GradedPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Distinguished { iteration: usize },
    NotDistinguished { stable_at: usize },
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Self::Distinguished { .. })
    }

    /// Iteration at which the run ended, whichever way.
    pub fn iteration(&self) -> usize {
        match *self {
            Self::Distinguished { iteration } => iteration,
            Self::NotDistinguished { stable_at } => stable_at,
        }
    }
}

/// Result of a lock-step comparison. `colorings[t]` and `histograms[t]`
/// hold both sides at iteration `t`.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// False when the iteration cap was hit before the partition settled.
    pub stabilized: bool,
    pub histograms: Vec<[Histogram; 2]>,
    #[serde(skip)]
    pub colorings: Vec<[Coloring; 2]>,
    #[serde(skip)]
    pub table: ColorTable,
}

trait Refiner {
    fn len(&self) -> usize;
    fn initial(&self, table: &mut ColorTable) -> Coloring;
    fn step(&self, c: &Coloring, table: &mut ColorTable) -> Coloring;
}

/// Graded refinement with adjacency lists resolved once up front.
struct Graded<'a> {
    poset: &'a GradedPoset,
    cfg: RefinementConfig,
    lower: Vec<Vec<AdjacencyEntry>>,
    upper: Vec<Vec<AdjacencyEntry>>,
}

impl<'a> Graded<'a> {
    fn new(poset: &'a GradedPoset, cfg: RefinementConfig) -> Self {
        let collect = |on: bool, f: &dyn Fn(usize) -> Vec<AdjacencyEntry>| {
            if on {
                (0..poset.len()).map(f).collect()
            } else {
                Vec::new()
            }
        };
        let lower = collect(cfg.adjacencies.contains(Adjacency::Lower), &|s| {
            poset.lower_adjacency(s, cfg.semantics)
        });
        let upper = collect(cfg.adjacencies.contains(Adjacency::Upper), &|s| {
            poset.upper_adjacency(s, cfg.semantics)
        });
        Self { poset, cfg, lower, upper }
    }

    fn encode(&self, sigma: usize, c: &Coloring) -> Encoding {
        let col = |x: usize| c.colors[x];
        let plain = |xs: &[usize]| -> Vec<(ColorId, Option<ColorId>)> {
            let mut v: Vec<_> = xs.iter().map(|&x| (col(x), None)).collect();
            v.sort_unstable();
            v
        };
        let paired = |xs: &[AdjacencyEntry]| -> Vec<(ColorId, Option<ColorId>)> {
            let mut v: Vec<_> = xs.iter().map(|e| (col(e.neighbor), e.via.map(col))).collect();
            v.sort_unstable();
            v
        };
        let parts = self
            .cfg
            .adjacencies
            .iter()
            .map(|a| match a {
                Adjacency::Boundary => plain(self.poset.boundary(sigma)),
                Adjacency::Coboundary => plain(self.poset.coboundary(sigma)),
                Adjacency::Lower => paired(&self.lower[sigma]),
                Adjacency::Upper => paired(&self.upper[sigma]),
            })
            .collect();
        Encoding::Graded { prev: c.colors[sigma], parts }
    }
}

impl Refiner for Graded<'_> {
    fn len(&self) -> usize {
        self.poset.len()
    }

    fn initial(&self, table: &mut ColorTable) -> Coloring {
        Coloring::new(0, vec![table.intern(Encoding::Initial(0)); self.poset.len()])
    }

    fn step(&self, c: &Coloring, table: &mut ColorTable) -> Coloring {
        let colors = (0..self.poset.len()).map(|s| table.intern(self.encode(s, c))).collect();
        Coloring::new(c.iteration + 1, colors)
    }
}

/// The incidence graph of a hypergraph: nodes first, then hyperedges.
struct Bipartite {
    nodes: usize,
    neighbors: Vec<Vec<usize>>,
}

impl Bipartite {
    fn new(h: &Hypergraph) -> Self {
        let n = h.node_count();
        let mut neighbors = vec![Vec::new(); n + h.edge_count()];
        for (j, e) in h.edges().iter().enumerate() {
            for &v in &e.nodes {
                neighbors[v].push(n + j);
                neighbors[n + j].push(v);
            }
        }
        Self { nodes: n, neighbors }
    }
}

impl Refiner for Bipartite {
    fn len(&self) -> usize {
        self.neighbors.len()
    }

    fn initial(&self, table: &mut ColorTable) -> Coloring {
        let node = table.intern(Encoding::Initial(0));
        let edge = table.intern(Encoding::Initial(1));
        let colors = (0..self.len()).map(|i| if i < self.nodes { node } else { edge }).collect();
        Coloring::new(0, colors)
    }

    fn step(&self, c: &Coloring, table: &mut ColorTable) -> Coloring {
        let colors = self
            .neighbors
            .iter()
            .enumerate()
            .map(|(i, adj)| {
                let mut neighbors: Vec<ColorId> = adj.iter().map(|&x| c.colors[x]).collect();
                neighbors.sort_unstable();
                table.intern(Encoding::Bipartite { prev: c.colors[i], neighbors })
            })
            .collect();
        Coloring::new(c.iteration + 1, colors)
    }
}

fn joint_classes(pair: &[Coloring; 2]) -> usize {
    Histogram::of(&[&pair[0], &pair[1]]).0.len()
}

fn lockstep<R: Refiner>(a: &R, b: &R, max_iterations: Option<usize>) -> Comparison {
    let max = max_iterations.unwrap_or(a.len().max(b.len()) + 1);
    let mut table = ColorTable::new();
    let mut current = [a.initial(&mut table), b.initial(&mut table)];
    let mut histograms = Vec::new();
    let mut colorings = Vec::new();
    let finish = |verdict, stabilized, histograms, colorings, table| Comparison {
        verdict,
        stabilized,
        histograms,
        colorings,
        table,
    };

    let hist = [current[0].histogram(), current[1].histogram()];
    let differ = hist[0] != hist[1];
    histograms.push(hist);
    colorings.push(current.clone());
    if differ {
        return finish(Verdict::Distinguished { iteration: 0 }, false, histograms, colorings, table);
    }
    for t in 1..=max {
        let next = [a.step(&current[0], &mut table), b.step(&current[1], &mut table)];
        let hist = [next[0].histogram(), next[1].histogram()];
        let differ = hist[0] != hist[1];
        let stable = joint_classes(&next) == joint_classes(&current);
        histograms.push(hist);
        colorings.push(next.clone());
        if differ {
            return finish(Verdict::Distinguished { iteration: t }, false, histograms, colorings, table);
        }
        if stable {
            return finish(Verdict::NotDistinguished { stable_at: t }, true, histograms, colorings, table);
        }
        current = next;
    }
    finish(Verdict::NotDistinguished { stable_at: max }, false, histograms, colorings, table)
}

/// One refinement step of `p` under `cfg`, interning into `table`.
pub fn gwl_step(p: &GradedPoset, c: &Coloring, table: &mut ColorTable, cfg: &RefinementConfig) -> Result<Coloring> {
    if c.len() != p.len() {
        return Err(Error::DomainMismatch(format!(
            "coloring has {} entries, poset has {} elements",
            c.len(),
            p.len()
        )));
    }
    Ok(Graded::new(p, *cfg).step(c, table))
}

/// Refines `p` from the constant coloring until its partition stops
/// changing or the iteration cap is reached. The last two colorings
/// induce the same partition unless the cap was hit.
pub fn gwl_run(p: &GradedPoset, cfg: &RefinementConfig) -> Vec<Coloring> {
    let refiner = Graded::new(p, *cfg);
    let max = cfg.max_iterations.unwrap_or(p.len() + 1);
    let mut table = ColorTable::new();
    let mut out = vec![refiner.initial(&mut table)];
    for _ in 0..max {
        let prev = out.last().expect("non-empty");
        let next = refiner.step(prev, &mut table);
        let stable = next.class_count() == prev.class_count();
        out.push(next);
        if stable {
            break;
        }
    }
    out
}

/// Lock-step graded refinement of two posets.
pub fn compare_refinement(p: &GradedPoset, q: &GradedPoset, cfg: &RefinementConfig) -> Comparison {
    lockstep(&Graded::new(p, *cfg), &Graded::new(q, *cfg), cfg.max_iterations)
}

/// Lifts both hypergraphs with `functor` and compares the lifts.
pub fn catwl_test(
    h: &Hypergraph,
    h2: &Hypergraph,
    functor: Functor,
    lift_cfg: &LiftConfig,
    refine_cfg: &RefinementConfig,
) -> Result<Comparison> {
    let p = lift(h, functor, lift_cfg)?.poset;
    let q = lift(h2, functor, lift_cfg)?.poset;
    Ok(compare_refinement(&p, &q, refine_cfg))
}

/// Bipartite hypergraph refinement over `V ⊔ E`, nodes and hyperedges
/// seeded with two different colors.
pub fn hwl_test(h: &Hypergraph, h2: &Hypergraph, max_iterations: Option<usize>) -> Comparison {
    lockstep(&Bipartite::new(h), &Bipartite::new(h2), max_iterations)
}

/// `c ⊑ d`: equal `c` colors imply equal `d` colors, across all the given
/// colorings taken together (one per poset).
pub fn refines(c: &[&Coloring], d: &[&Coloring]) -> Result<bool> {
    if c.len() != d.len() || c.iter().zip(d).any(|(x, y)| x.len() != y.len()) {
        return Err(Error::DomainMismatch("colorings cover different element sets".into()));
    }
    let mut image = std::collections::HashMap::new();
    for (x, y) in c.iter().zip(d) {
        for (&cx, &dy) in x.colors.iter().zip(&y.colors) {
            if *image.entry(cx).or_insert(dy) != dy {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
