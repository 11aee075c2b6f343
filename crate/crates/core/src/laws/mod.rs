//! Fixpoint operators on 2-categories and the laws they are checked against.

mod adapters;
mod check;
mod compare;
mod corpora;
mod corpus;
mod model;
mod suite;

pub use adapters::{CatModel, InitialChoice, PosetModel, PosetStar, RelModel, RelStar, ScottModel};
pub use check::{
    check_all, check_dinat, check_fix, check_unif, replay, validate_square, Counterexample, LawReport, Status,
};
pub use compare::{build_dinat_via_products, compare_operators, CompareReport, DinatProduct};
pub use corpora::{
    cat_categories, cat_corpus, cat_corpus_exhaustive, poset_corpus, rel_corpus, scott_corpus, CatCorpus, CorpusSpec,
    PosetCorpus, RelCorpus, ScottCorpus,
};
pub use corpus::{Corpus, DinatUnif, SquarePair};
pub use model::{FixpointModel, Square, ThinCell, ThinModel};
pub use suite::{compare_report, projection_report, run_suite, SuiteConfig, SuiteReport, SUITE_MODELS};
