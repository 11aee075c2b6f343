mod coalgebra;
mod freyd;
mod polynomial;
mod uniform;
mod wtype;

pub use coalgebra::{bisimilar, bisimulation_blocks, mtype_unfold, CoalgebraSystem, Unfolding};
pub use freyd::{freyd_dinat_check, FreydReport};
pub use polynomial::{apply_polynomial, Family, Polynomial};
pub use uniform::{
    monomial_uniformity_check, span_uniformity_check, MonomialEntry, MonomialSquare, SpanEntry, SpanSquare,
    UniformityReport,
};
pub use wtype::{
    apply_to_trees, wtype_enumerate, wtype_stabilization, wtype_stages, Stage, WTree, WTypeStage, MAX_STAGE,
};
