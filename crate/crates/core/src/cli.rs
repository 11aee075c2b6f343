//! The `fixcat` command-line front end.
//!
//! [`run`] never prints or exits; it returns the exit code and both output
//! streams so the binary and the tests share one code path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{lambek_chain, EndofunctorData};
use crate::cat::{validate_category, SearchBound};
use crate::error::{Error, Result};
use crate::format::{self, Document};
use crate::laws::{
    build_dinat_via_products, cat_corpus, compare_operators, poset_corpus, rel_corpus, run_suite, scott_corpus,
    CatModel, CorpusSpec, InitialChoice, LawReport, PosetModel, RelModel, ScottModel, SuiteConfig,
};
use crate::poly::{bisimilar, bisimulation_blocks, mtype_unfold, wtype_enumerate, CoalgebraSystem};
use crate::poset::kleene_trace;
use crate::rel::{mrel_star_trace, scott_star, tree_star};

/// Listings longer than this are elided unless `--list` is given.
pub const LIST_THRESHOLD: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelFlag {
    Poset,
    Rel,
    Scott,
    Cat,
}

#[derive(Debug, Parser)]
#[command(name = "fixcat", version, about = "Fixpoint operators on finite categorical models, and a law checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "poset")]
    model: ModelFlag,
    /// Depth bound for `wtype` and `mtype`.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
    /// Step bound for Lambek chains.
    #[arg(long, global = true, default_value_t = 16)]
    max_steps: usize,
    /// Seed for every random draw; overrides the seed of a suite config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the iteration behind a `star` result.
    #[arg(long, global = true)]
    trace: bool,
    /// Print listings in full.
    #[arg(long, global = true)]
    list: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The fixpoint of an endomorphism.
    Star { file: PathBuf },
    /// Runs a suite config (default suite without one), or checks the axioms of a category.
    Laws { file: Option<PathBuf> },
    /// Iterates an endofunctor from the initial object.
    Lambek { file: PathBuf },
    /// Stages of the W-type of a polynomial.
    Wtype { file: PathBuf },
    /// Depth-bounded unfoldings of a coalgebra's states.
    Mtype { file: PathBuf },
    /// Bisimilarity of coalgebra states.
    Bisim {
        file: PathBuf,
        /// A second system; its first state is compared with the first of `file`.
        other: Option<PathBuf>,
        /// Compare these two states of `file` (or one of each file).
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        states: Option<Vec<String>>,
    },
    /// Both projections of the fixpoint of the swapped product map.
    DinatProduct { f: PathBuf, g: PathBuf },
    /// Compares two fixpoint operators of a model on its corpus.
    Compare,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(&cli, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: EXIT_INPUT, stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn wrong_kind(path: &Path, doc: &Document, want: &str) -> Error {
    Error::Invalid(format!("{}: expected a {want} document, got {}", path.display(), doc.kind()))
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32> {
    match &cli.command {
        Command::Star { file } => star(cli, file, out),
        Command::Laws { file } => laws(cli, file.as_deref(), out),
        Command::Lambek { file } => lambek(cli, file, out),
        Command::Wtype { file } => wtype(cli, file, out),
        Command::Mtype { file } => mtype(cli, file, out),
        Command::Bisim { file, other, states } => bisim(file, other.as_deref(), states.as_deref(), out),
        Command::DinatProduct { f, g } => dinat_product(cli, f, g, out),
        Command::Compare => compare(cli, out),
    }
}

fn star(cli: &Cli, file: &Path, out: &mut String) -> Result<i32> {
    let doc = read(file)?;
    let want = match cli.model {
        ModelFlag::Poset => "monotone-map",
        ModelFlag::Rel => "multiset-relation",
        ModelFlag::Scott => "ideal-relation",
        ModelFlag::Cat => "functor",
    };
    if doc.kind() != want {
        return Err(wrong_kind(file, &doc, want));
    }
    writeln!(out, "{}", fixpoint_of(&doc, cli.max_steps)?).ok();
    if !cli.trace {
        return Ok(EXIT_OK);
    }
    match &doc {
        Document::MonotoneMap(d) => {
            let f = format::monotone_map_from(d)?;
            let steps: Vec<&str> = kleene_trace(&f).into_iter().map(|x| f.source.element_id(x)).collect();
            writeln!(out, "trace: {}", steps.join(", ")).ok();
        }
        Document::MultisetRelation(d) => {
            let f = format::mrel_from(d)?;
            let steps: Vec<String> = mrel_star_trace(&f)
                .iter()
                .map(|xs| f.source.show_subset(&xs.iter().copied().collect::<Vec<_>>()))
                .collect();
            writeln!(out, "rounds: {}", steps.join(", ")).ok();
            let t = tree_star(&f, f.source.len());
            let depth = t.witnesses.values().map(|w| w.height()).max().unwrap_or(0);
            writeln!(out, "tree depth at stabilization: {depth}").ok();
        }
        Document::Functor(d) => {
            let e = EndofunctorData::new(format::functor_from(d)?)?;
            let chain = lambek_chain(&e, cli.max_steps)?;
            let steps: Vec<&str> = chain.objects.iter().map(|&o| e.category().object_id(o)).collect();
            writeln!(out, "chain: {}", steps.join(", ")).ok();
        }
        _ => {
            writeln!(out, "trace: none for this model").ok();
        }
    }
    Ok(EXIT_OK)
}

/// The fixpoint of the endomorphism a document describes, as printed by
/// `fixcat star`. The model follows from the document kind.
pub fn fixpoint_of(doc: &Document, max_steps: usize) -> Result<String> {
    let endo = || Error::TypeMismatch("the fixpoint needs an endomorphism".into());
    match doc {
        Document::MonotoneMap(d) => {
            let f = format::monotone_map_from(d)?;
            if !f.is_endo() {
                return Err(endo());
            }
            Ok(f.source.element_id(crate::poset::kleene_star(&f)).to_string())
        }
        Document::MultisetRelation(d) => {
            let f = format::mrel_from(d)?;
            if !f.is_endo() {
                return Err(endo());
            }
            Ok(f.source.show_subset(&crate::rel::mrel_star(&f).into_iter().collect::<Vec<_>>()))
        }
        Document::IdealRelation(d) => {
            let f = format::ideal_rel_from(d)?;
            if !f.is_endo() {
                return Err(endo());
            }
            let xs: Vec<&str> = scott_star(&f).into_iter().map(|x| f.source.element_id(x)).collect();
            Ok(format!("{{{}}}", xs.join(", ")))
        }
        Document::Functor(d) => {
            let e = EndofunctorData::new(format::functor_from(d)?)?;
            let phi = lambek_chain(&e, max_steps)?.carrier()?;
            Ok(e.category().object_id(phi).to_string())
        }
        other => Err(Error::Invalid(format!("no fixpoint for a {} document", other.kind()))),
    }
}

fn render_report(r: &LawReport, out: &mut String) {
    let tag = match r.status() {
        crate::laws::Status::Pass => "PASS",
        crate::laws::Status::Fail => "FAIL",
        crate::laws::Status::Vacuous => "NONE",
    };
    writeln!(out, "{tag} {:<14} {:<20} {}/{}", r.model, r.law, r.passed, r.instances).ok();
    for n in &r.notes {
        writeln!(out, "     note: {n}").ok();
    }
}

fn render_counterexample(r: &LawReport, out: &mut String) {
    writeln!(out, "counterexample for {} on {}: {}", r.law, r.model, r.statement).ok();
    if let Some(c) = &r.counterexample {
        writeln!(out, "  instance #{}", c.index).ok();
        for i in &c.inputs {
            writeln!(out, "  input: {i}").ok();
        }
        writeln!(out, "  lhs: {}", c.lhs).ok();
        writeln!(out, "  rhs: {}", c.rhs).ok();
    } else {
        writeln!(out, "  no instances were checked").ok();
    }
}

fn laws(cli: &Cli, file: Option<&Path>, out: &mut String) -> Result<i32> {
    let mut config = match file {
        None => SuiteConfig::default(),
        Some(path) => match read(path)? {
            Document::SuiteConfig(c) => c,
            Document::Category(d) => return category_laws(&d, out),
            d => return Err(wrong_kind(path, &d, "suite-config or category")),
        },
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    let report = run_suite(&config)?;
    writeln!(out, "seed: {}", report.seed).ok();
    for r in &report.reports {
        render_report(r, out);
    }
    let code = match report.failures().next() {
        None => {
            writeln!(out, "all {} laws pass", report.reports.len()).ok();
            EXIT_OK
        }
        Some(first) => {
            render_counterexample(first, out);
            EXIT_VIOLATION
        }
    };
    Ok(code)
}

fn category_laws(d: &format::CategoryDoc, out: &mut String) -> Result<i32> {
    let c = format::category_from(d)?;
    let vs = validate_category(&c);
    if vs.is_empty() {
        writeln!(out, "category: {} objects, {} arrows; all axioms hold", c.object_count(), c.arrow_count()).ok();
        return Ok(EXIT_OK);
    }
    writeln!(out, "category violates {} axiom instance(s):", vs.len()).ok();
    for v in &vs {
        writeln!(out, "  {}: {}", v.law, v.detail).ok();
    }
    Ok(EXIT_VIOLATION)
}

fn lambek(cli: &Cli, file: &Path, out: &mut String) -> Result<i32> {
    let doc = read(file)?;
    let Document::Functor(d) = &doc else { return Err(wrong_kind(file, &doc, "functor")) };
    let e = EndofunctorData::new(format::functor_from(d)?)?;
    let c = e.category().clone();
    let chain = lambek_chain(&e, cli.max_steps)?;
    for (n, o) in chain.objects.iter().enumerate() {
        let arrow = chain.connecting.get(n).map(|&a| format!(" --{}-->", c.arrow_id(a))).unwrap_or_default();
        writeln!(out, "stage {n}: {}{arrow}", c.object_id(*o)).ok();
    }
    match chain.stabilized_at {
        Some(n) => {
            let a = chain.structure()?;
            writeln!(
                out,
                "stabilized at step {n}; carrier {}, structure {}",
                c.object_id(chain.objects[n]),
                c.arrow_id(a)
            )
            .ok();
        }
        None => {
            writeln!(out, "not stabilized within {} steps", cli.max_steps).ok();
        }
    }
    Ok(EXIT_OK)
}

fn wtype(cli: &Cli, file: &Path, out: &mut String) -> Result<i32> {
    let doc = read(file)?;
    let Document::Polynomial(d) = &doc else { return Err(wrong_kind(file, &doc, "polynomial")) };
    let p = format::polynomial_from(d)?;
    let mut stabilized = None;
    let mut last = None;
    for depth in 0..=cli.depth {
        let stage = wtype_enumerate(&p, depth)?;
        writeln!(out, "depth {depth}: {} elements", stage.trees.len()).ok();
        let done = stage.stabilized;
        last = Some(stage);
        if done {
            stabilized = Some(depth);
            break;
        }
    }
    let stage = last.expect("depth 0 is always computed");
    match stabilized {
        Some(d) => writeln!(out, "stabilized at depth {d}; {} elements", stage.trees.len()),
        None => writeln!(out, "not stabilized by depth {}", cli.depth),
    }
    .ok();
    let counts: Vec<String> = stage.counts.iter().map(|c| c.to_string()).collect();
    writeln!(out, "counts: {}", counts.join(", ")).ok();
    if cli.list || stage.trees.len() <= LIST_THRESHOLD {
        for t in &stage.trees {
            writeln!(out, "  {}", t.show(&p)).ok();
        }
    } else {
        writeln!(out, "  ({} trees; pass --list to print them)", stage.trees.len()).ok();
    }
    Ok(EXIT_OK)
}

fn coalgebra(path: &Path) -> Result<CoalgebraSystem> {
    let doc = read(path)?;
    let Document::CoalgebraSystem(d) = &doc else { return Err(wrong_kind(path, &doc, "coalgebra-system")) };
    format::coalgebra_from(d)
}

fn mtype(cli: &Cli, file: &Path, out: &mut String) -> Result<i32> {
    let c = coalgebra(file)?;
    writeln!(out, "unfoldings to depth {}:", cli.depth).ok();
    let shown = if cli.list { c.states.len() } else { c.states.len().min(LIST_THRESHOLD) };
    for x in 0..shown {
        writeln!(out, "  {}: {}", c.states[x], mtype_unfold(&c, x, cli.depth).show(&c.poly)).ok();
    }
    if shown < c.states.len() {
        writeln!(out, "  ({} more states; pass --list to print them)", c.states.len() - shown).ok();
    }
    let blocks = bisimulation_blocks(&[&c])?;
    let classes = blocks[0].iter().collect::<std::collections::BTreeSet<_>>().len();
    writeln!(out, "{} states, {} bisimilarity classes", c.states.len(), classes).ok();
    Ok(EXIT_OK)
}

fn bisim(file: &Path, other: Option<&Path>, states: Option<&[String]>, out: &mut String) -> Result<i32> {
    let c1 = coalgebra(file)?;
    let c2 = match other {
        Some(p) => coalgebra(p)?,
        None => c1.clone(),
    };
    let (x, y) = match (states, other) {
        (Some([a, b]), _) => (c1.state(a)?, c2.state(b)?),
        (None, Some(_)) => (0, 0),
        (None, None) => {
            let blocks = bisimulation_blocks(&[&c1])?;
            let n = blocks[0].iter().max().map_or(0, |m| m + 1);
            for b in 0..n {
                let members: Vec<&str> =
                    (0..c1.states.len()).filter(|&s| blocks[0][s] == b).map(|s| c1.states[s].as_str()).collect();
                writeln!(out, "{{{}}}", members.join(", ")).ok();
            }
            return Ok(EXIT_OK);
        }
        _ => return Err(Error::Invalid("--states takes two state ids".into())),
    };
    if c1.states.is_empty() || c2.states.is_empty() {
        return Err(Error::Invalid("a system has no states".into()));
    }
    let verdict = if bisimilar(&c1, &c2, x, y)? { "bisimilar" } else { "not bisimilar" };
    writeln!(out, "{} ~ {}: {verdict}", c1.states[x], c2.states[y]).ok();
    writeln!(out, "{verdict}").ok();
    Ok(EXIT_OK)
}

fn dinat_product(cli: &Cli, f: &Path, g: &Path, out: &mut String) -> Result<i32> {
    let (df, dg) = (read(f)?, read(g)?);
    let d = match (cli.model, &df, &dg) {
        (ModelFlag::Poset, Document::MonotoneMap(a), Document::MonotoneMap(b)) => {
            let m = PosetModel::KLEENE;
            build_dinat_via_products(&m, &format::monotone_map_from(a)?, &format::monotone_map_from(b)?)?
        }
        (ModelFlag::Rel, Document::MultisetRelation(a), Document::MultisetRelation(b)) => {
            let m = RelModel::CLOSURE;
            build_dinat_via_products(&m, &format::mrel_from(a)?, &format::mrel_from(b)?)?
        }
        (ModelFlag::Scott | ModelFlag::Cat, _, _) => return Err(Error::NoProducts),
        (ModelFlag::Poset, _, _) => return Err(wrong_kind(f, &df, "monotone-map pair")),
        (ModelFlag::Rel, _, _) => return Err(wrong_kind(f, &df, "multiset-relation pair")),
    };
    writeln!(out, "(gf)*     = {}", d.gf_star).ok();
    writeln!(out, "π₁(h*)    = {}", d.pi1_h_star).ok();
    writeln!(out, "(fg)*     = {}", d.fg_star).ok();
    writeln!(out, "π₂(h*)    = {}", d.pi2_h_star).ok();
    let verdict = if d.holds() { "agreement" } else { "disagreement" };
    writeln!(out, "{verdict}").ok();
    Ok(if d.holds() { EXIT_OK } else { EXIT_VIOLATION })
}

fn compare(cli: &Cli, out: &mut String) -> Result<i32> {
    let seed = cli.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = CorpusSpec::default();
    writeln!(out, "seed: {seed}").ok();
    let result = match cli.model {
        ModelFlag::Poset => {
            compare_operators(&PosetModel::KLEENE, &PosetModel::BIFREE, &poset_corpus(&spec, &mut rng)?)
        }
        ModelFlag::Rel => compare_operators(&RelModel::CLOSURE, &RelModel::TREE, &rel_corpus(&spec, &mut rng)?),
        ModelFlag::Scott => compare_operators(&ScottModel, &ScottModel, &scott_corpus(&spec, &mut rng)?),
        ModelFlag::Cat => {
            let m = CatModel { bound: SearchBound::from_env()?, ..CatModel::default() };
            let last = CatModel { initial: InitialChoice::Last, ..m };
            compare_operators(&m, &last, &cat_corpus(&m)?)
        }
    };
    match result {
        Ok(r) => {
            writeln!(out, "{} vs {}", r.left, r.right).ok();
            writeln!(out, "endomorphisms: {}, each with exactly one comparison cell", r.endos_checked).ok();
            writeln!(out, "squares checked: {}", r.squares_checked).ok();
            writeln!(out, "comparison is the identity: {}", r.all_identity).ok();
            match r.incoherent_square {
                None => {
                    writeln!(out, "coherent with unif on every square").ok();
                    Ok(EXIT_OK)
                }
                Some(i) => {
                    writeln!(out, "not coherent with unif on square #{i}").ok();
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Err(e @ Error::NotContractible(..)) => {
            writeln!(out, "{e}").ok();
            Ok(EXIT_VIOLATION)
        }
        Err(e) => Err(e),
    }
}
