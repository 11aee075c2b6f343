//! Initial algebras from Lambek chains, the pseudo-initial universal property
//! on finite categories, and the induced adjoint equivalence.

mod chain;
mod pseudo;

pub use chain::{
    algebra_morphisms, freyd_composite, lambek_chain, ChainResult, ChainStep, EndofunctorData, FreydComposite,
};
pub use pseudo::{
    adjoint_equivalence_from_initial, algebra_2cells, all_mediators, coalgebra_mediators, pseudo_initial_mediator,
    unique_algebra_2cell, AdjointEquivalence, Algebra, AlgebraOneCell, TwoEndofunctor,
};
