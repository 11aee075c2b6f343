use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::adapters::{CatModel, InitialChoice, PosetModel, RelModel, ScottModel};
use super::check::{check_all, Counterexample, LawReport};
use super::compare::{build_dinat_via_products, compare_operators};
use super::corpora::{cat_corpus, poset_corpus, rel_corpus, scott_corpus, CorpusSpec};
use super::corpus::Corpus;
use super::model::FixpointModel;
use crate::cat::SearchBound;
use crate::error::{Error, Result};

/// Models a suite can run, in report order.
pub const SUITE_MODELS: [&str; 5] = ["poset", "rel", "scott", "cat", "poset-broken"];

/// What to check and how hard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub models: Vec<String>,
    /// Largest carrier enumerated exhaustively.
    pub exhaustive_max: usize,
    pub random_draws: usize,
    /// Inclusive range of random carrier sizes.
    pub random_sizes: [usize; 2],
    /// Random pairs fed to the product construction on top of the exhaustive ones.
    pub product_draws: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            models: ["poset", "rel", "scott", "cat"].map(String::from).to_vec(),
            exhaustive_max: 3,
            random_draws: 1000,
            random_sizes: [4, 5],
            product_draws: 500,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(Error::Invalid("suite has no models".into()));
        }
        for m in &self.models {
            if !SUITE_MODELS.contains(&m.as_str()) {
                return Err(Error::UnknownId { id: m.clone(), context: "suite models".into() });
            }
        }
        if self.random_sizes[0] > self.random_sizes[1] {
            return Err(Error::Invalid("random_sizes must be [min, max] with min ≤ max".into()));
        }
        Ok(())
    }

    fn spec(&self) -> CorpusSpec {
        CorpusSpec {
            exhaustive_max: self.exhaustive_max,
            random_draws: self.random_draws,
            random_min: self.random_sizes[0],
            random_max: self.random_sizes[1],
        }
    }

    /// Each model draws from its own stream, so the model list does not
    /// change what any one model sees.
    fn rng(&self, model: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let stream = match model {
            "rel" => 1,
            "scott" => 2,
            "cat" => 3,
            _ => 0,
        };
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub reports: Vec<LawReport>,
}

impl SuiteReport {
    /// Every report passed; a law with no instances does not count as passing.
    pub fn passes(&self) -> bool {
        self.reports.iter().all(LawReport::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawReport> {
        self.reports.iter().filter(|r| !r.passes())
    }
}

/// Runs every law on every configured model. Deterministic in the config
/// and `FIXCAT_SEARCH_CAP`, which bounds the Cat corpus.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let spec = config.spec();
    let mut reports = Vec::new();
    for name in SUITE_MODELS.iter().filter(|m| config.models.iter().any(|c| c == *m)) {
        let mut rng = config.rng(name);
        let batch = match *name {
            "poset" | "poset-broken" => {
                let corpus = poset_corpus(&spec, &mut rng)?;
                if *name == "poset-broken" {
                    check_all(&PosetModel::BROKEN, &corpus)?
                } else {
                    let m = PosetModel::KLEENE;
                    let mut out = check_all(&m, &corpus)?;
                    out.push(compare_report(&m, &PosetModel::BIFREE, &corpus));
                    let small = |f: &crate::poset::MonotoneMap| {
                        f.source.len() <= config.exhaustive_max && f.target.len() <= config.exhaustive_max
                    };
                    out.push(projection_report(&m, &corpus, small, config.product_draws));
                    out
                }
            }
            "rel" => {
                let corpus = rel_corpus(&spec, &mut rng)?;
                let m = RelModel::CLOSURE;
                let mut out = check_all(&m, &corpus)?;
                out.push(compare_report(&m, &RelModel::TREE, &corpus));
                let small = |f: &crate::rel::MultisetRel| {
                    f.source.len() <= config.exhaustive_max && f.target.len() <= config.exhaustive_max
                };
                out.push(projection_report(&m, &corpus, small, config.product_draws));
                out
            }
            "scott" => {
                let corpus = scott_corpus(&spec, &mut rng)?;
                check_all(&ScottModel, &corpus)?
            }
            _ => {
                let m = CatModel { bound: SearchBound::from_env()?, ..CatModel::default() };
                let corpus = cat_corpus(&m)?;
                let mut out = check_all(&m, &corpus)?;
                out.push(compare_report(&m, &CatModel { initial: InitialChoice::Last, ..m }, &corpus));
                out
            }
        };
        reports.extend(batch);
    }
    Ok(SuiteReport { seed: config.seed, reports })
}

/// [`compare_operators`] as a law report.
pub fn compare_report<M: FixpointModel>(left: &M, right: &M, corpus: &Corpus<M::Cell, M::Two>) -> LawReport {
    let instances = corpus.endos.len() + corpus.squares.len();
    let mut report = LawReport {
        law: "compare-operators".into(),
        statement: format!("{} and {} are related by a unique coherent comparison", left.name(), right.name()),
        model: left.name(),
        instances,
        passed: instances,
        counterexample: None,
        notes: Vec::new(),
    };
    match compare_operators(left, right, corpus) {
        Ok(r) => {
            if let Some(i) = r.incoherent_square {
                report.passed = corpus.endos.len() + i;
                report.counterexample = Some(Counterexample {
                    index: corpus.endos.len() + i,
                    inputs: vec![format!("square {i}")],
                    lhs: "δ_g ∘ unif¹_γ".into(),
                    rhs: "unif²_γ ∘ s(δ_f)".into(),
                });
            }
            report.notes.push(format!("comparison is the identity: {}", r.all_identity));
        }
        Err(e) => {
            report.passed = 0;
            report.counterexample = Some(Counterexample {
                index: 0,
                inputs: vec![],
                lhs: e.to_string(),
                rhs: "exactly one candidate".into(),
            });
        }
    }
    report
}

/// The projections of `(σ ∘ (f × g))*` over every small pair of the corpus
/// and up to `draws` of the others.
pub fn projection_report<M: FixpointModel>(
    m: &M,
    corpus: &Corpus<M::Cell, M::Two>,
    small: impl Fn(&M::Cell) -> bool,
    draws: usize,
) -> LawReport {
    let (exhaustive, random): (Vec<_>, Vec<_>) = corpus.pairs.iter().partition(|(f, _)| small(f));
    let pairs: Vec<_> = exhaustive.into_iter().chain(random.into_iter().take(draws)).collect();
    let mut report = LawReport {
        law: "product-projections".into(),
        statement: "π₁((σ ∘ (f × g))*) ≅ (g ∘ f)* and π₂((σ ∘ (f × g))*) ≅ (f ∘ g)*".into(),
        model: m.name(),
        instances: pairs.len(),
        passed: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    for (i, (f, g)) in pairs.iter().enumerate() {
        let (lhs, rhs) = match build_dinat_via_products(m, f, g) {
            Ok(d) if d.holds() => {
                report.passed += 1;
                continue;
            }
            Ok(d) => (format!("{} / {}", d.pi1_h_star, d.pi2_h_star), format!("{} / {}", d.gf_star, d.fg_star)),
            Err(e) => (e.to_string(), String::new()),
        };
        report.counterexample = Some(Counterexample { index: i, inputs: vec![m.describe(f), m.describe(g)], lhs, rhs });
        break;
    }
    report
}
