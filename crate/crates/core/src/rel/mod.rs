//! The relational model (sets with the finite-multiset comonad) and the
//! Scott model (preorders with ideal relations).

mod mrel;
mod multiset;
mod product;
mod scott;
mod tree;

pub use mrel::{mrel_compose, mrel_identity, mrel_star, mrel_star_trace, promote, MultisetRel, MAX_SPLIT};
pub(crate) use multiset::letter;
pub use multiset::{multisets_up_to, FinSet, Multiset};
pub use product::{mrel_map_product, mrel_product, mrel_swap, RelProduct};
pub use scott::{preorders_up_to_iso, scott_compose, scott_identity, scott_promote, scott_star, IdealRel, Preorder};
pub use tree::{tree_star, TreeStar, WitnessTree};
