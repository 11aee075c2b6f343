use std::sync::Arc;

use super::mrel::{mrel_compose, MultisetRel};
use super::multiset::{FinSet, Multiset};
use crate::error::{Error, Result};

/// The co-Kleisli product `A ⊎ B`: `inl(a)` has index `a`, `inr(b)` has
/// index `|A| + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelProduct {
    pub left: Arc<FinSet>,
    pub right: Arc<FinSet>,
    pub carrier: Arc<FinSet>,
}

pub fn mrel_product(a: &Arc<FinSet>, b: &Arc<FinSet>) -> RelProduct {
    let names: Vec<String> = a
        .elements()
        .iter()
        .map(|x| format!("inl({x})"))
        .chain(b.elements().iter().map(|y| format!("inr({y})")))
        .collect();
    RelProduct { left: a.clone(), right: b.clone(), carrier: Arc::new(FinSet::new(&names).expect("tags are distinct")) }
}

impl RelProduct {
    pub fn inl(&self, a: usize) -> usize {
        a
    }

    pub fn inr(&self, b: usize) -> usize {
        self.left.len() + b
    }

    pub fn pi1(&self) -> MultisetRel {
        MultisetRel {
            source: self.carrier.clone(),
            target: self.left.clone(),
            pairs: (0..self.left.len()).map(|a| (Multiset::singleton(self.inl(a)), a)).collect(),
        }
    }

    pub fn pi2(&self) -> MultisetRel {
        MultisetRel {
            source: self.carrier.clone(),
            target: self.right.clone(),
            pairs: (0..self.right.len()).map(|b| (Multiset::singleton(self.inr(b)), b)).collect(),
        }
    }

    /// `⟨f, g⟩: C → A ⊎ B`.
    pub fn pair(&self, f: &MultisetRel, g: &MultisetRel) -> Result<MultisetRel> {
        if f.source != g.source || f.target != self.left || g.target != self.right {
            return Err(Error::TypeMismatch("pairing with mismatched boundaries".into()));
        }
        let pairs = f
            .pairs
            .iter()
            .map(|(m, a)| (m.clone(), self.inl(*a)))
            .chain(g.pairs.iter().map(|(m, b)| (m.clone(), self.inr(*b))))
            .collect();
        Ok(MultisetRel { source: f.source.clone(), target: self.carrier.clone(), pairs })
    }
}

/// `σ = ⟨π₂, π₁⟩: A ⊎ B → B ⊎ A`.
pub fn mrel_swap(a: &Arc<FinSet>, b: &Arc<FinSet>) -> MultisetRel {
    let ab = mrel_product(a, b);
    mrel_product(b, a).pair(&ab.pi2(), &ab.pi1()).expect("projections are parallel")
}

/// `f × g = ⟨f ⊙ π₁, g ⊙ π₂⟩`.
pub fn mrel_map_product(f: &MultisetRel, g: &MultisetRel) -> MultisetRel {
    let dom = mrel_product(&f.source, &g.source);
    let cod = mrel_product(&f.target, &g.target);
    let l = mrel_compose(f, &dom.pi1()).expect("boundary");
    let r = mrel_compose(g, &dom.pi2()).expect("boundary");
    cod.pair(&l, &r).expect("boundary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel::mrel_identity;

    #[test]
    fn swap_is_an_involution() {
        let a = Arc::new(FinSet::letters(2));
        let b = Arc::new(FinSet::new(&["x"]).unwrap());
        let s1 = mrel_swap(&a, &b);
        let s2 = mrel_swap(&b, &a);
        let ab = mrel_product(&a, &b);
        assert_eq!(mrel_compose(&s2, &s1).unwrap(), mrel_identity(&ab.carrier));
    }

    #[test]
    fn beta_laws() {
        let c = Arc::new(FinSet::letters(2));
        let a = Arc::new(FinSet::new(&["x", "y"]).unwrap());
        let b = Arc::new(FinSet::new(&["z"]).unwrap());
        let f = MultisetRel::from_ids(c.clone(), a.clone(), &[(vec!["a", "a"], "x"), (vec![], "y")]).unwrap();
        let g = MultisetRel::from_ids(c, b.clone(), &[(vec!["b"], "z")]).unwrap();
        let p = mrel_product(&a, &b);
        let fg = p.pair(&f, &g).unwrap();
        assert_eq!(mrel_compose(&p.pi1(), &fg).unwrap(), f);
        assert_eq!(mrel_compose(&p.pi2(), &fg).unwrap(), g);
    }

    #[test]
    fn product_with_empty_set() {
        let a = Arc::new(FinSet::letters(3));
        let p = mrel_product(&a, &Arc::new(FinSet::empty()));
        assert_eq!(p.carrier.len(), 3);
        let back = p.pair(&mrel_identity(&a), &MultisetRel::empty(&a, &p.right)).unwrap();
        assert_eq!(mrel_compose(&p.pi1(), &back).unwrap(), mrel_identity(&a));
        assert_eq!(mrel_compose(&back, &p.pi1()).unwrap(), mrel_identity(&p.carrier));
    }
}
