//! Finite pointed posets: the lifting comonad, its co-Kleisli category, the
//! Kleene fixpoint, and the fixpoint obtained from the bifree algebra ω+1.

mod fixpoint;
mod map;
mod order;
mod product;

pub use fixpoint::{bifree_star, kleene_star, kleene_trace, mediating_map, MediatingMap, OmegaBar};
pub use map::{
    cokleisli_compose, cokleisli_compose_via_comonad, comonad_laws, comultiplication, counit, from_cokleisli, lift,
    lift_map, monotone_maps, to_cokleisli, MonotoneMap,
};
pub use order::{pointed_posets_up_to_iso, PointedPoset};
pub use product::{map_product, product, swap, Product};

/// Every fixpoint of an endomap, by brute force.
pub fn fixpoints(f: &MonotoneMap) -> Vec<usize> {
    (0..f.source.len()).filter(|&x| f.apply(x) == x).collect()
}
pub(crate) use order::permutations;
