//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print; the process
//! exits non-zero when any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use fixcat::algebra::{
    adjoint_equivalence_from_initial, algebra_2cells, all_mediators, lambek_chain, pseudo_initial_mediator,
    unique_algebra_2cell, Algebra, TwoEndofunctor,
};
use fixcat::cat::{enumerate_functors, samples, FinCategory, FunctorData, SearchBound};
use fixcat::format::{category_from, parse, Document};
use fixcat::laws::{
    cat_corpus_exhaustive, check_all, check_fix, compare_operators, poset_corpus, projection_report, rel_corpus,
    run_suite, CatModel, CorpusSpec, LawReport, PosetModel, RelModel, SuiteConfig,
};
use fixcat::poly::{
    bisimilar, freyd_dinat_check, span_uniformity_check, wtype_enumerate, wtype_stabilization, CoalgebraSystem,
    Polynomial, SpanEntry, SpanSquare,
};
use fixcat::poset::{bifree_star, kleene_star, monotone_maps, pointed_posets_up_to_iso};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIFREE_MAX_SIZE: usize = 4;
const BIFREE_BUDGET: Duration = Duration::from_secs(30);
const THIN_BUDGET: Duration = Duration::from_secs(60);
const PROJECTION_BUDGET: Duration = Duration::from_secs(30);
const PROJECTION_DRAWS: usize = 500;
const PSEUDO_BUDGET: Duration = Duration::from_secs(30);
const PSEUDO_MIN_INSTANCES: usize = 5;
const PSEUDO_MAX_OBJECTS: usize = 4;
const POLY_BUDGET: Duration = Duration::from_secs(30);
const SPAN_CORPUS: usize = 40;
const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn budget(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(reports: &[LawReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passes()) {
        None => Ok(()),
        Some(r) => Err(format!("{} on {}: {}/{} ({:?})", r.law, r.model, r.passed, r.instances, r.counterexample)),
    }
}

fn bifree_equals_kleene() -> Outcome {
    let start = Instant::now();
    let (mut posets, mut maps) = (0, 0);
    for n in 1..=BIFREE_MAX_SIZE {
        for p in pointed_posets_up_to_iso(n) {
            let p = Arc::new(p);
            posets += 1;
            for f in monotone_maps(&p, &p, false) {
                maps += 1;
                let (b, k) = (bifree_star(&f), kleene_star(&f));
                ensure(b == k, || format!("map {:?} on {:?}: bifree {b}, kleene {k}", f.assignment, p.elements()))?;
            }
        }
    }
    let took = budget(start, BIFREE_BUDGET)?;
    Ok(format!("{maps} endomaps on {posets} pointed posets, {took:.2?}"))
}

fn thin_laws() -> Outcome {
    let start = Instant::now();
    let config = SuiteConfig {
        models: ["poset", "rel", "scott"].map(String::from).to_vec(),
        seed: SEED,
        ..SuiteConfig::default()
    };
    ensure(config.exhaustive_max == 3 && config.random_draws == 1000 && config.random_sizes == [4, 5], || {
        "default config changed".into()
    })?;
    let report = run_suite(&config).map_err(|e| e.to_string())?;
    let laws: Vec<&LawReport> = report
        .reports
        .iter()
        .filter(|r| r.law.starts_with("fix") || r.law.starts_with("dinat") || r.law.starts_with("unif"))
        .collect();
    for family in ["fix", "dinat", "unif"] {
        for model in ["poset", "rel", "scott"] {
            ensure(laws.iter().any(|r| r.law == family && r.model == model), || format!("no {family} on {model}"))?;
        }
    }
    let owned: Vec<LawReport> = laws.iter().map(|r| (*r).clone()).collect();
    all_pass(&owned)?;
    let instances: usize = laws.iter().map(|r| r.instances).sum();
    let took = budget(start, THIN_BUDGET)?;
    Ok(format!("{} law reports, {instances} instances, {took:.2?}", laws.len()))
}

fn product_projections() -> Outcome {
    let start = Instant::now();
    let spec = CorpusSpec::default();
    let small = spec.exhaustive_max;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let poset = poset_corpus(&spec, &mut rng).map_err(|e| e.to_string())?;
    let exhaustive = poset.pairs.iter().filter(|(f, _)| f.source.len() <= small && f.target.len() <= small).count();
    let r1 = projection_report(
        &PosetModel::KLEENE,
        &poset,
        |f| f.source.len() <= small && f.target.len() <= small,
        PROJECTION_DRAWS,
    );
    ensure(r1.instances == exhaustive + PROJECTION_DRAWS, || {
        format!("poset: {} instances, wanted {exhaustive} + {PROJECTION_DRAWS}", r1.instances)
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(1);
    let rel = rel_corpus(&spec, &mut rng).map_err(|e| e.to_string())?;
    let exhaustive_rel = rel.pairs.iter().filter(|(f, _)| f.source.len() <= small && f.target.len() <= small).count();
    let r2 = projection_report(
        &RelModel::CLOSURE,
        &rel,
        |f| f.source.len() <= small && f.target.len() <= small,
        PROJECTION_DRAWS,
    );
    ensure(r2.instances == exhaustive_rel + PROJECTION_DRAWS, || {
        format!("rel: {} instances, wanted {exhaustive_rel} + {PROJECTION_DRAWS}", r2.instances)
    })?;
    all_pass(&[r1.clone(), r2.clone()])?;
    let took = budget(start, PROJECTION_BUDGET)?;
    Ok(format!("poset {} pairs, rel {} pairs, {took:.2?}", r1.instances, r2.instances))
}

fn contractibility() -> Outcome {
    let spec = CorpusSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let poset = poset_corpus(&spec, &mut rng).map_err(|e| e.to_string())?;
    let a = compare_operators(&PosetModel::KLEENE, &PosetModel::BIFREE, &poset).map_err(|e| e.to_string())?;
    ensure(a.passes() && a.all_identity, || format!("kleene vs bifree: {a:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(1);
    let rel = rel_corpus(&spec, &mut rng).map_err(|e| e.to_string())?;
    let b = compare_operators(&RelModel::CLOSURE, &RelModel::TREE, &rel).map_err(|e| e.to_string())?;
    ensure(b.passes() && b.all_identity, || format!("closure vs tree: {b:?}"))?;
    Ok(format!(
        "unique identity comparison on {}+{} poset and {}+{} rel instances",
        a.endos_checked, a.squares_checked, b.endos_checked, b.squares_checked
    ))
}

/// Algebras for `C ↦ K`: every functor `K → A`.
fn constant_algebras(k: &Arc<FinCategory>, a: &Arc<FinCategory>) -> Result<Vec<Algebra>, String> {
    let structures = enumerate_functors(k, a, SearchBound::default()).map_err(|e| e.to_string())?;
    Ok(structures.into_iter().map(|s| Algebra { carrier: a.clone(), structure: s }).collect())
}

fn pseudo_initial() -> Outcome {
    let start = Instant::now();
    let bound = SearchBound::default();
    let cats: Vec<(&str, Arc<FinCategory>)> = vec![
        ("involution", Arc::new(samples::involution())),
        ("twin-initial", Arc::new(samples::twin_initial())),
        ("vee", Arc::new(samples::vee())),
        ("iso-pair", Arc::new(samples::iso_pair())),
        ("pointed-iso", Arc::new(samples::pointed_iso())),
        ("chain-2", Arc::new(FinCategory::chain(2))),
    ];
    let mut instances = 0;
    let mut pairs = 0;
    for (name, k) in &cats {
        ensure(k.object_count() <= PSEUDO_MAX_OBJECTS && k.is_valid(), || format!("{name} is not a small category"))?;
        let f = TwoEndofunctor::Constant(k.clone());
        let chain = lambek_chain(&f, 8).map_err(|e| e.to_string())?;
        ensure(chain.is_stabilized(), || format!("{name}: chain did not stabilize"))?;
        let eq = adjoint_equivalence_from_initial(&chain).map_err(|e| e.to_string())?;
        let (t1, t2) = eq.triangle_identities().map_err(|e| e.to_string())?;
        ensure(t1 && t2 && eq.is_invertible(), || format!("{name}: triangle identities fail"))?;
        for (_, carrier) in &cats {
            for alg in constant_algebras(k, carrier)?.into_iter().take(4) {
                pseudo_initial_mediator(&f, &chain, &alg, bound).map_err(|e| format!("{name}: {e}"))?;
                let ms = all_mediators(&f, &chain, &alg, bound).map_err(|e| e.to_string())?;
                for v in &ms {
                    for w in &ms {
                        let n = algebra_2cells(&f, &chain, &alg, v, w, bound).map_err(|e| e.to_string())?.len();
                        ensure(n == 1, || format!("{name}: {n} algebra 2-cells between mediators"))?;
                        unique_algebra_2cell(&f, &chain, &alg, v, w, bound).map_err(|e| e.to_string())?;
                        pairs += 1;
                    }
                }
            }
        }
        instances += 1;
    }
    // the identity 2-endofunctor: the chain stays at the empty category
    let id = TwoEndofunctor::Identity;
    let chain = lambek_chain(&id, 8).map_err(|e| e.to_string())?;
    for (name, c) in &cats {
        let alg = Algebra { carrier: c.clone(), structure: FunctorData::identity(c) };
        let m = pseudo_initial_mediator(&id, &chain, &alg, bound).map_err(|e| format!("identity, {name}: {e}"))?;
        unique_algebra_2cell(&id, &chain, &alg, &m, &m, bound).map_err(|e| e.to_string())?;
    }
    ensure(instances >= PSEUDO_MIN_INSTANCES, || format!("only {instances} instances"))?;
    let took = budget(start, PSEUDO_BUDGET)?;
    Ok(format!("{instances} categories, {pairs} mediator pairs with one 2-cell each, {took:.2?}"))
}

fn cat_coherence() -> Outcome {
    let m = CatModel::default();
    let corpus = cat_corpus_exhaustive(&m).map_err(|e| e.to_string())?;
    let reports = check_all(&m, &corpus).map_err(|e| e.to_string())?;
    for law in [
        "fix-naturality",
        "dinat-unity",
        "dinat-1-naturality",
        "dinat-2-naturality",
        "dinat-fix",
        "fix-unif",
        "dinat-unif",
    ] {
        ensure(reports.iter().any(|r| r.law == law && r.instances > 0), || format!("{law} has no instances"))?;
    }
    all_pass(&reports)?;
    let instances: usize = reports.iter().map(|r| r.instances).sum();
    Ok(format!("{} laws, {instances} instances", reports.len()))
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let sorts: Vec<String> = (0..rng.gen_range(1..=2)).map(|k| format!("s{k}")).collect();
    let (mut e, mut b, mut s, mut p, mut t) = (vec![], vec![], vec![], vec![], vec![]);
    // a nullary constructor in every sort keeps every stage nonempty
    for j in 0..sorts.len() {
        b.push(format!("c{}", b.len()));
        t.push(j);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let k = b.len();
        b.push(format!("c{k}"));
        t.push(rng.gen_range(0..sorts.len()));
        for a in 0..rng.gen_range(1..=2) {
            e.push(format!("c{k}.{a}"));
            s.push(rng.gen_range(0..sorts.len()));
            p.push(k);
        }
    }
    Polynomial::new(sorts.clone(), e, b, sorts, s, p, t).expect("well-formed")
}

fn polynomials() -> Outcome {
    let start = Instant::now();
    let tree = Polynomial::binary_tree();
    let counts = wtype_enumerate(&tree, 4).map_err(|e| e.to_string())?.counts;
    let mut oracle = vec![0usize];
    for _ in 0..4 {
        let c = *oracle.last().unwrap();
        oracle.push(1 + c * c);
    }
    ensure(counts == oracle && counts == [0, 1, 2, 5, 26], || format!("binary-tree counts {counts:?}"))?;

    let constant = Polynomial::constant(&["a", "b"]);
    let at = wtype_stabilization(&constant, 4).map_err(|e| e.to_string())?;
    ensure(at == Some(1), || format!("constant stabilizes at {at:?}"))?;

    let id = Polynomial::over_one(&[("next", 1)]);
    let loops = CoalgebraSystem::from_ids(
        id,
        &[
            ("x", "next", vec!["x"]),
            ("y", "next", vec!["z"]),
            ("z", "next", vec!["y"]),
            ("u", "next", vec!["v"]),
            ("v", "next", vec!["w"]),
            ("w", "next", vec!["v"]),
        ],
    )
    .map_err(|e| e.to_string())?;
    let n = loops.states.len();
    for a in 0..n {
        for b in 0..n {
            ensure(bisimilar(&loops, &loops, a, b).map_err(|e| e.to_string())?, || {
                format!("{} and {} not bisimilar", loops.states[a], loops.states[b])
            })?;
        }
    }

    let freyd = [
        (Polynomial::constant(&["a", "b"]), Polynomial::constant(&["c"])),
        (Polynomial::constant(&["k"]), Polynomial::binary_tree()),
        (Polynomial::binary_tree(), Polynomial::stream(&["0", "1"])),
    ];
    for (f, g) in &freyd {
        let r = freyd_dinat_check(f, g, 2).map_err(|e| e.to_string())?;
        ensure(r.passes(), || format!("freyd fails on {f} / {g}: {r:?}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..SPAN_CORPUS {
        let f = random_polynomial(&mut rng);
        let r = span_uniformity_check(&SpanSquare::identity(&f), 3).map_err(|e| format!("{f}: {e}"))?;
        ensure(r.passes(), || format!("identity on {f}: {r:?}"))?;
    }
    for sq in hand_built_spans() {
        let r = span_uniformity_check(&sq, 4).map_err(|e| e.to_string())?;
        ensure(r.passes(), || format!("{} → {}: {r:?}", sq.f, sq.g))?;
    }
    let took = budget(start, POLY_BUDGET)?;
    Ok(format!("counts {counts:?}, {n} bisimilar states, 3 freyd, {SPAN_CORPUS}+2 spans, {took:.2?}"))
}

/// Mirror image of binary trees, and a renaming of constants.
fn hand_built_spans() -> Vec<SpanSquare> {
    let f = Polynomial::binary_tree();
    let g = Polynomial::over_one(&[("nil", 0), ("fork", 2)]);
    let mut mirror = SpanSquare::identity(&f);
    mirror.g = g;
    mirror.gamma = vec![
        SpanEntry { edge: 0, b: 0, target: 0, positions: vec![] },
        SpanEntry { edge: 0, b: 1, target: 1, positions: vec![(0, 1), (0, 0)] },
    ];
    let p = Polynomial::constant(&["p", "q"]);
    let mut rename = SpanSquare::identity(&p);
    rename.g = Polynomial::constant(&["r", "s"]);
    rename.gamma[0].target = 1;
    rename.gamma[1].target = 0;
    vec![mirror, rename]
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn exit_code(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fixcat")).args(args).output().map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "killed by a signal".into())
}

fn negative_controls() -> Outcome {
    let spec = CorpusSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let corpus = poset_corpus(&spec, &mut rng).map_err(|e| e.to_string())?;
    let fix = check_fix(&PosetModel::BROKEN, &corpus);
    let first = fix.iter().find(|r| r.law == "fix").ok_or("no fix report")?;
    let cex = first.counterexample.as_ref().ok_or("broken adapter passed the fix law")?;

    let text = std::fs::read_to_string(fixture("category-corrupted")).map_err(|e| e.to_string())?;
    let Document::Category(doc) = parse(&text).map_err(|e| e.to_string())? else {
        return Err("fixture is not a category".into());
    };
    let violations = category_from(&doc).map_err(|e| e.to_string())?.validate();
    ensure(!violations.is_empty(), || "corrupted table validated".into())?;

    let broken = fixture("suite-broken");
    let corrupted = fixture("category-corrupted");
    for path in [&broken, &corrupted] {
        let code = exit_code(&["laws", path.to_str().unwrap()])?;
        ensure(code == 1, || format!("`fixcat laws {}` exited {code}", path.display()))?;
    }
    Ok(format!(
        "fix counterexample at {:?}, {} composition violations, CLI exit 1 on both",
        cex.inputs,
        violations.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("1 bifree star equals kleene star", bifree_equals_kleene),
        ("2 thin-model law suite", thin_laws),
        ("3 product identity", product_projections),
        ("4 contractible comparison", contractibility),
        ("5 pseudo-initial universal property", pseudo_initial),
        ("6 Cat 2-cell coherence", cat_coherence),
        ("7 polynomial functors", polynomials),
        ("8 negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
