//! Batch comparisons over generated hypergraph pairs.
//!
//! Pairs are processed in parallel, each with its own color tables, and
//! rows come back in pair order so reports are reproducible.

use std::fmt::Write as _;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::hin::{hin_distinguishes, init_params, MpnConfig};
use crate::hypergraph::{
    corpus, find_isomorphism, random_hypergraph, random_permutation, random_with_profile, GeneratorParams, Hypergraph,
    OracleBounds,
};
use crate::lift::{Functor, LiftConfig};
use crate::wl::{catwl_test, hwl_test, Comparison, RefinementConfig, Verdict};

#[derive(Clone, Debug)]
pub struct HypergraphPair {
    pub id: String,
    pub left: Hypergraph,
    pub right: Hypergraph,
    /// Known by construction for relabelled pairs.
    pub known_isomorphic: Option<bool>,
}

#[derive(Clone, Debug)]
pub enum PairSource {
    /// `left` from the template, `right` drawn independently with the same
    /// node count and hyperedge cardinality profile.
    Random { count: usize, template: GeneratorParams },
    /// `left` from the template, `right` a random relabelling of it.
    Isomorphic { count: usize, template: GeneratorParams },
    /// The hand-built pairs from the corpus.
    Fixtures,
}

impl PairSource {
    pub fn pairs(&self) -> Result<Vec<HypergraphPair>> {
        match self {
            Self::Random { count, template } => {
                let mut rng = ChaCha8Rng::seed_from_u64(template.seed);
                (0..*count)
                    .map(|i| {
                        let left = random_hypergraph(&GeneratorParams { seed: rng.gen(), ..template.clone() })?;
                        let right = random_with_profile(left.node_count(), &left.cardinality_profile(), rng.gen())?;
                        Ok(HypergraphPair { id: format!("rand-{i:04}"), left, right, known_isomorphic: None })
                    })
                    .collect()
            }
            Self::Isomorphic { count, template } => {
                let mut rng = ChaCha8Rng::seed_from_u64(template.seed);
                (0..*count)
                    .map(|i| {
                        let left = random_hypergraph(&GeneratorParams { seed: rng.gen(), ..template.clone() })?;
                        let (right, _) = random_permutation(&left, rng.gen());
                        Ok(HypergraphPair { id: format!("iso-{i:04}"), left, right, known_isomorphic: Some(true) })
                    })
                    .collect()
            }
            Self::Fixtures => {
                let (h, hp) = corpus::counterexample_pair();
                let (hex, tri) = corpus::hexagon_vs_triangles();
                Ok(vec![
                    HypergraphPair { id: "counterexample".into(), left: h, right: hp, known_isomorphic: Some(false) },
                    HypergraphPair { id: "hexagon-triangles".into(), left: hex, right: tri, known_isomorphic: Some(false) },
                ])
            }
        }
    }
}

/// One verdict column of a battery.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    Hwl,
    Catwl { functor: Functor, refine: RefinementConfig },
    Hin { functor: Functor, mpn: MpnConfig, seed: u64, tol: f64 },
}

impl Method {
    pub fn id(&self) -> String {
        match self {
            Self::Hwl => "hwl".into(),
            Self::Catwl { functor, refine } => format!("catwl-{functor}:{}", refine.id()),
            Self::Hin { functor, mpn, seed, .. } => {
                format!("hin-{functor}:{}-{}:s{seed}", mpn.adjacencies, mpn.semantics)
            }
        }
    }

    /// Runs the method on one pair. Message passing reports its layer
    /// count as the iteration.
    pub fn run(&self, h: &Hypergraph, h2: &Hypergraph, lift_cfg: &LiftConfig) -> Result<(Verdict, Option<Comparison>)> {
        match self {
            Self::Hwl => {
                let cmp = hwl_test(h, h2, None);
                Ok((cmp.verdict, Some(cmp)))
            }
            Self::Catwl { functor, refine } => {
                let cmp = catwl_test(h, h2, *functor, lift_cfg, refine)?;
                Ok((cmp.verdict, Some(cmp)))
            }
            Self::Hin { functor, mpn, seed, tol } => {
                let params = init_params(mpn, *seed)?;
                let verdict = if hin_distinguishes(h, h2, *functor, lift_cfg, &params, mpn, *tol)? {
                    Verdict::Distinguished { iteration: mpn.layers }
                } else {
                    Verdict::NotDistinguished { stable_at: mpn.layers }
                };
                Ok((verdict, None))
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BatteryOptions {
    pub lift: LiftConfig,
    /// Run the exhaustive isomorphism search on every pair.
    pub oracle: bool,
    pub bounds: OracleBounds,
    /// Keep full refinement traces on each row.
    pub keep_traces: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryRow {
    pub pair_id: String,
    pub config_id: String,
    pub verdict: Verdict,
    /// Ground truth, from the oracle or from construction.
    pub isomorphic: Option<bool>,
    #[serde(skip)]
    pub trace: Option<Comparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub pairs: Vec<String>,
    pub methods: Vec<String>,
    /// `rows[p * methods.len() + m]` is pair `p` under method `m`.
    pub rows: Vec<BatteryRow>,
    /// Pairs whose oracle answer contradicts how they were built.
    pub oracle_conflicts: Vec<String>,
}

pub fn run_battery(pairs: &[HypergraphPair], methods: &[Method], opts: &BatteryOptions) -> Result<BatteryReport> {
    let per_pair: Vec<(Vec<BatteryRow>, bool)> = pairs
        .par_iter()
        .map(|pair| {
            let oracle = if opts.oracle {
                Some(find_isomorphism(&pair.left, &pair.right, opts.bounds)?.is_some())
            } else {
                None
            };
            let conflict = matches!((oracle, pair.known_isomorphic), (Some(a), Some(b)) if a != b);
            let truth = oracle.or(pair.known_isomorphic);
            let rows = methods
                .iter()
                .map(|m| {
                    let (verdict, trace) = m.run(&pair.left, &pair.right, &opts.lift)?;
                    Ok(BatteryRow {
                        pair_id: pair.id.clone(),
                        config_id: m.id(),
                        verdict,
                        isomorphic: truth,
                        trace: trace.filter(|_| opts.keep_traces),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((rows, conflict))
        })
        .collect::<Result<_>>()?;

    let oracle_conflicts = pairs
        .iter()
        .zip(&per_pair)
        .filter(|(_, (_, c))| *c)
        .map(|(p, _)| p.id.clone())
        .collect();
    Ok(BatteryReport {
        pairs: pairs.iter().map(|p| p.id.clone()).collect(),
        methods: methods.iter().map(Method::id).collect(),
        rows: per_pair.into_iter().flat_map(|(rows, _)| rows).collect(),
        oracle_conflicts,
    })
}

impl BatteryReport {
    pub fn row(&self, pair: usize, method: usize) -> &BatteryRow {
        &self.rows[pair * self.methods.len() + method]
    }

    /// Rows that separate a pair known to be isomorphic.
    pub fn soundness_violations(&self) -> Vec<&BatteryRow> {
        self.rows
            .iter()
            .filter(|r| r.isomorphic == Some(true) && r.verdict.is_distinguished())
            .collect()
    }

    pub fn distinguished_counts(&self) -> Vec<usize> {
        (0..self.methods.len())
            .map(|m| (0..self.pairs.len()).filter(|&p| self.row(p, m).verdict.is_distinguished()).count())
            .collect()
    }

    /// `[a][b]` counts pairs on which methods `a` and `b` reach the same
    /// distinguished / not-distinguished outcome.
    pub fn agreement_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.methods.len();
        let mut out = vec![vec![0; n]; n];
        for p in 0..self.pairs.len() {
            let d: Vec<bool> = (0..n).map(|m| self.row(p, m).verdict.is_distinguished()).collect();
            for (a, row) in out.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell += usize::from(d[a] == d[b]);
                }
            }
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["pair_id", "config_id", "verdict", "iteration", "oracle"])?;
        for r in &self.rows {
            let verdict = if r.verdict.is_distinguished() { "distinguished" } else { "not-distinguished" };
            let oracle = match r.isomorphic {
                Some(true) => "isomorphic",
                Some(false) => "non-isomorphic",
                None => "",
            };
            w.write_record([
                r.pair_id.as_str(),
                r.config_id.as_str(),
                verdict,
                &r.verdict.iteration().to_string(),
                oracle,
            ])
            ?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pairs: {}", self.pairs.len());
        let _ = writeln!(s, "soundness violations: {}", self.soundness_violations().len());
        if !self.oracle_conflicts.is_empty() {
            let _ = writeln!(s, "oracle conflicts: {}", self.oracle_conflicts.join(", "));
        }
        let _ = writeln!(s, "distinguished:");
        for (id, n) in self.methods.iter().zip(self.distinguished_counts()) {
            let _ = writeln!(s, "  {id}: {n}/{}", self.pairs.len());
        }
        let _ = writeln!(s, "agreement:");
        for (id, row) in self.methods.iter().zip(self.agreement_matrix()) {
            let cells: Vec<String> = row.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "  {id}: {}", cells.join(" "));
        }
        s
    }
}
