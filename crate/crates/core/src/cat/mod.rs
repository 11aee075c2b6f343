//! Finite categories, functors, natural transformations and the 2-cell
//! calculus the Cat-instance law checks are written in.

mod category;
mod expr;
mod functor;
pub mod samples;
mod search;

pub use category::{Arrow, FinCategory, Violation};
pub use expr::{eval_2cell, TwoCellExpr};
pub use functor::{hcomp, vcomp, whisker_left, whisker_right, FunctorData, NatTransfData};
pub use search::{enumerate_functors, enumerate_nat_isos, enumerate_nat_transfs, SearchBound, SEARCH_CAP_ENV};

/// All category-law violations of `c`; empty iff `c` is a category.
pub fn validate_category(c: &FinCategory) -> Vec<Violation> {
    c.validate()
}
