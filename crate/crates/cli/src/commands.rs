use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use catwl::battery::{run_battery, BatteryOptions, BatteryReport, Method, PairSource};
use catwl::hin::{hin_run, init_params, readout, MpnConfig};
use catwl::hypergraph::{corpus, GeneratorParams, Hypergraph};
use catwl::lift::{lift, Functor, LiftConfig, LiftWarning};
use catwl::poset::{AdjacencySemantics, GradedPoset};
use catwl::wl::{catwl_test, hwl_test, AdjacencySet, RefinementConfig};
use serde_json::{json, Value};

use crate::manifest::RunManifest;
use crate::{BatteryArgs, Command, MpnArgs, RefineArgs, TestMethod, TruncationArgs};

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Lift { input, functor, truncation, out, dot } => cmd_lift(&input, functor, &truncation, out, dot),
        Command::Test { a, b, method, truncation, refine, mpn, seed, out } => {
            cmd_test(&a, &b, method, &truncation, &refine, &mpn, seed, out)
        }
        Command::Battery(args) => cmd_battery(&args),
        Command::Counterexample { emit } => cmd_counterexample(emit),
        Command::Render { input, out } => cmd_render(&input, out),
    }
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Hypergraph::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn lift_config(t: &TruncationArgs) -> Result<LiftConfig> {
    let cfg = LiftConfig { threshold: t.tau, max_dim: t.max_dim };
    cfg.validate()?;
    Ok(cfg)
}

fn refine_config(r: &RefineArgs) -> RefinementConfig {
    RefinementConfig { adjacencies: r.adjacency, semantics: r.semantics, max_iterations: r.iters }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json serialises");
    out.push('\n');
    out
}

/// DOT with the manifest as a leading comment.
fn dot_with_manifest(dot: &str, manifest: &RunManifest) -> String {
    let compact = serde_json::to_string(manifest).expect("manifest serialises");
    format!("/* manifest: {} */\n{dot}", compact.replace("*/", "* /"))
}

fn cmd_lift(input: &Path, functor: Functor, t: &TruncationArgs, out: Option<PathBuf>, dot: Option<PathBuf>) -> Result<u8> {
    let h = read_hypergraph(input)?;
    let cfg = lift_config(t)?;
    let lifted = lift(&h, functor, &cfg)?;
    let mut manifest = RunManifest::new("lift", &[input]);
    manifest.functor = Some(functor);
    manifest.lift = Some(cfg);

    for w in &lifted.warnings {
        match w {
            LiftWarning::SingletonEdge(e) => eprintln!("warning: hyperedge `{e}` is a singleton"),
            LiftWarning::TruncatedEdge(e) => eprintln!("warning: hyperedge `{e}` exceeds tau and was truncated"),
        }
    }
    let poset: Value = serde_json::from_str(&lifted.poset.to_json())?;
    emit(out.as_deref(), &pretty(&json!({ "manifest": manifest, "poset": poset })))?;
    if let Some(path) = dot {
        fs::write(&path, dot_with_manifest(&lifted.poset.hasse_dot(), &manifest))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("elements: {}, covers: {}", lifted.poset.len(), lifted.poset.covers().len());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_test(
    a: &Path,
    b: &Path,
    method: TestMethod,
    t: &TruncationArgs,
    r: &RefineArgs,
    m: &MpnArgs,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<u8> {
    let h = read_hypergraph(a)?;
    let h2 = read_hypergraph(b)?;
    let lift_cfg = lift_config(t)?;
    let refine = refine_config(r);
    let mut manifest = RunManifest::new("test", &[a, b]);

    let (distinguished, result) = match method {
        TestMethod::Hwl => {
            let cmp = hwl_test(&h, &h2, r.iters);
            (cmp.verdict.is_distinguished(), serde_json::to_value(&cmp)?)
        }
        TestMethod::CatwlI | TestMethod::CatwlS => {
            let functor = if method == TestMethod::CatwlI { Functor::Incidence } else { Functor::Symmetric };
            manifest.functor = Some(functor);
            manifest.lift = Some(lift_cfg);
            manifest.refine = Some(refine);
            let cmp = catwl_test(&h, &h2, functor, &lift_cfg, &refine)?;
            (cmp.verdict.is_distinguished(), serde_json::to_value(&cmp)?)
        }
        TestMethod::HinI | TestMethod::HinS => {
            let Some(seed) = seed else {
                bail!("--seed is required for message-passing methods");
            };
            let functor = if method == TestMethod::HinI { Functor::Incidence } else { Functor::Symmetric };
            let mpn = MpnConfig { adjacencies: r.adjacency, semantics: r.semantics, layers: m.layers, width: m.width };
            manifest.functor = Some(functor);
            manifest.lift = Some(lift_cfg);
            manifest.mpn = Some(mpn);
            manifest.seed = Some(seed);
            let params = init_params(&mpn, seed)?;
            let p = lift(&h, functor, &lift_cfg)?.poset;
            let q = lift(&h2, functor, &lift_cfg)?.poset;
            let fp = hin_run(&p, &params, &mpn)?;
            let fq = hin_run(&q, &params, &mpn)?;
            let distinguished = readout(&fp, m.tol)? != readout(&fq, m.tol)?;
            let verdict = if distinguished { "distinguished" } else { "not-distinguished" };
            let result = json!({
                "verdict": verdict,
                "layers": mpn.layers,
                "tol": m.tol,
                "features": [fp.dump(&p), fq.dump(&q)],
            });
            (distinguished, result)
        }
    };
    emit(out.as_deref(), &pretty(&json!({ "manifest": manifest, "result": result })))?;
    Ok(u8::from(distinguished))
}

fn battery_methods(args: &BatteryArgs) -> Result<Vec<Method>> {
    let mut methods = Vec::new();
    if args.hwl {
        methods.push(Method::Hwl);
    }
    for &functor in &args.functors {
        for &set in &args.configs {
            for &semantics in &args.semantics {
                methods.push(Method::Catwl { functor, refine: RefinementConfig::new(set, semantics) });
            }
        }
    }
    if args.hin {
        let seed = args.seed.context("--hin needs --seed")?;
        for &functor in &args.functors {
            for &adjacencies in &args.configs {
                for &semantics in &args.semantics {
                    let mpn = MpnConfig { adjacencies, semantics, layers: args.mpn.layers, width: args.mpn.width };
                    methods.push(Method::Hin { functor, mpn, seed, tol: args.mpn.tol });
                }
            }
        }
    }
    if methods.is_empty() {
        bail!("no configurations selected");
    }
    Ok(methods)
}

fn report_summary(report: &BatteryReport) -> Value {
    json!({
        "pairs": report.pairs.len(),
        "methods": report.methods,
        "soundness_violations": report.soundness_violations().len(),
        "oracle_conflicts": report.oracle_conflicts,
        "distinguished": report.distinguished_counts(),
        "agreement": report.agreement_matrix(),
    })
}

fn cmd_battery(args: &BatteryArgs) -> Result<u8> {
    let stochastic = args.pairs + args.iso_pairs > 0;
    let seed = match (args.seed, stochastic) {
        (None, true) => bail!("--seed is required when generating pairs"),
        (seed, _) => seed,
    };
    let template = GeneratorParams {
        nodes: args.min_nodes..=args.max_nodes,
        edges: args.min_edges..=args.max_edges,
        cardinality: args.min_card..=args.max_card,
        min_cardinality_two: args.min_card >= 2,
        seed: seed.unwrap_or(0),
    };
    let mut pairs = Vec::new();
    if args.include_counterexample {
        pairs.extend(PairSource::Fixtures.pairs()?.into_iter().take(1));
    }
    if args.pairs > 0 {
        pairs.extend(PairSource::Random { count: args.pairs, template: template.clone() }.pairs()?);
    }
    if args.iso_pairs > 0 {
        let template = GeneratorParams { seed: template.seed.wrapping_add(1), ..template };
        pairs.extend(PairSource::Isomorphic { count: args.iso_pairs, template }.pairs()?);
    }
    if pairs.is_empty() {
        bail!("no pairs selected; use --pairs, --iso-pairs or --include-counterexample");
    }

    let methods = battery_methods(args)?;
    let lift_cfg = lift_config(&args.truncation)?;
    let opts = BatteryOptions { lift: lift_cfg, oracle: args.oracle, ..BatteryOptions::default() };
    let report = run_battery(&pairs, &methods, &opts)?;

    let mut manifest = RunManifest::new("battery", &[]);
    manifest.lift = Some(lift_cfg);
    manifest.seed = seed;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    let sidecar = pretty(&json!({
        "manifest": manifest,
        "method_configs": methods,
        "summary": report_summary(&report),
    }));
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            let mut side = path.clone().into_os_string();
            side.push(".manifest.json");
            fs::write(&side, &sidecar).with_context(|| format!("writing {}", PathBuf::from(&side).display()))?;
        }
        None => {
            print!("{}", String::from_utf8(csv).expect("csv is utf-8"));
            eprint!("{sidecar}");
        }
    }
    eprint!("{}", report.summary());
    Ok(u8::from(!report.soundness_violations().is_empty()))
}

fn names(p: &GradedPoset, items: impl IntoIterator<Item = usize>) -> String {
    let ids: Vec<&str> = items.into_iter().map(|i| p.element(i).id.as_str()).collect();
    format!("{{{}}}", ids.join(", "))
}

/// The first-step multisets of every element above dimension 0. Starting
/// from a constant coloring, these sizes are what iteration 1 compares.
fn walkthrough() -> Result<String> {
    let (h, hp) = corpus::counterexample_pair();
    let cfg = LiftConfig::default();
    let mut s = String::new();
    for (functor, title) in [(Functor::Incidence, "incidence lift"), (Functor::Symmetric, "symmetric simplicial lift")] {
        for semantics in [AdjacencySemantics::DistinctNeighbor, AdjacencySemantics::PairMultiset] {
            writeln!(s, "{title}, {semantics} semantics, iteration 1 multisets")?;
            for (name, g) in [("H", &h), ("H'", &hp)] {
                let p = lift(g, functor, &cfg)?.poset;
                for x in (0..p.len()).filter(|&x| p.dim(x) == 1) {
                    let lower = p.lower_adjacency(x, semantics);
                    let upper = p.upper_adjacency(x, semantics);
                    writeln!(
                        s,
                        "  {name:<2} {}: B = {} C = {} L = {} (size {}) U = {} (size {})",
                        p.element(x).id,
                        names(&p, p.boundary(x).iter().copied()),
                        names(&p, p.coboundary(x).iter().copied()),
                        names(&p, lower.iter().map(|e| e.neighbor)),
                        lower.len(),
                        names(&p, upper.iter().map(|e| e.neighbor)),
                        upper.len(),
                    )?;
                }
            }
            let refine = RefinementConfig::new(AdjacencySet::FULL, semantics);
            let verdict = catwl_test(&h, &hp, functor, &cfg, &refine)?.verdict;
            writeln!(s, "  verdict: {verdict:?}\n")?;
        }
    }
    writeln!(s, "bipartite baseline: {:?}", hwl_test(&h, &hp, None).verdict)?;
    Ok(s)
}

fn cmd_counterexample(dir: Option<PathBuf>) -> Result<u8> {
    let text = walkthrough()?;
    let Some(dir) = dir else {
        print!("{text}");
        return Ok(0);
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let (h, hp) = corpus::counterexample_pair();
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
    };
    write("h.json", &h.to_json())?;
    write("h_prime.json", &hp.to_json())?;
    write("walkthrough.txt", &text)?;
    write("manifest.json", &RunManifest::new("counterexample", &[]).to_json())?;
    eprintln!("wrote h.json, h_prime.json, walkthrough.txt and manifest.json to {}", dir.display());
    Ok(0)
}

fn cmd_render(input: &Path, out: Option<PathBuf>) -> Result<u8> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
    // Accept both a bare poset and the wrapped output of `catwl lift`.
    let poset_text = match value.get("poset") {
        Some(inner) => inner.to_string(),
        None => text,
    };
    let poset = GradedPoset::from_json(&poset_text).with_context(|| format!("parsing {}", input.display()))?;
    let manifest = RunManifest::new("render", &[input]);
    emit(out.as_deref(), &dot_with_manifest(&poset.hasse_dot(), &manifest))?;
    Ok(0)
}
