use std::sync::Arc;

use super::chain::{ChainResult, ChainStep};
use crate::cat::{
    enumerate_functors, enumerate_nat_isos, eval_2cell, FinCategory, FunctorData, NatTransfData, SearchBound,
    TwoCellExpr,
};
use crate::error::{Error, Result};

/// A strict 2-endofunctor on finite categories.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoEndofunctor {
    /// `C ↦ K`.
    Constant(Arc<FinCategory>),
    /// `C ↦ C`.
    Identity,
    /// `C ↦ K × C`.
    Product(Arc<FinCategory>),
}

impl TwoEndofunctor {
    pub fn on_category(&self, c: &Arc<FinCategory>) -> Arc<FinCategory> {
        match self {
            TwoEndofunctor::Constant(k) => k.clone(),
            TwoEndofunctor::Identity => c.clone(),
            TwoEndofunctor::Product(k) => Arc::new(k.product(c)),
        }
    }

    pub fn on_functor(&self, u: &FunctorData) -> FunctorData {
        match self {
            TwoEndofunctor::Constant(k) => FunctorData::identity(k),
            TwoEndofunctor::Identity => u.clone(),
            TwoEndofunctor::Product(k) => {
                let (src, tgt) = (self.on_category(&u.source), self.on_category(&u.target));
                let (n, m) = (u.source.object_count(), u.source.arrow_count());
                let (nt, mt) = (u.target.object_count(), u.target.arrow_count());
                let obj_map = (0..k.object_count() * n).map(|i| (i / n) * nt + u.obj(i % n)).collect();
                let arr_map = (0..k.arrow_count() * m).map(|a| (a / m) * mt + u.arr(a % m)).collect();
                FunctorData { source: src, target: tgt, obj_map, arr_map }
            }
        }
    }

    pub fn on_transformation(&self, t: &NatTransfData) -> NatTransfData {
        let (s, g) = (self.on_functor(&t.source), self.on_functor(&t.target));
        match self {
            TwoEndofunctor::Constant(_) => NatTransfData::identity(&s),
            TwoEndofunctor::Identity => t.clone(),
            TwoEndofunctor::Product(k) => {
                let (n, mt) = (t.source.source.object_count(), t.source.target.arrow_count());
                let components = (0..k.object_count() * n).map(|i| k.id(i / n) * mt + t.component(i % n)).collect();
                NatTransfData { source: s, target: g, components }
            }
        }
    }
}

impl ChainStep for TwoEndofunctor {
    type Obj = Arc<FinCategory>;
    type Arr = FunctorData;

    fn initial(&self) -> Result<Arc<FinCategory>> {
        Ok(Arc::new(FinCategory::empty()))
    }

    fn map_obj(&self, x: &Arc<FinCategory>) -> Arc<FinCategory> {
        self.on_category(x)
    }

    fn map_arr(&self, a: &FunctorData) -> Result<FunctorData> {
        Ok(self.on_functor(a))
    }

    fn out_of_initial(&self, x: &Arc<FinCategory>) -> Result<FunctorData> {
        Ok(FunctorData {
            source: Arc::new(FinCategory::empty()),
            target: x.clone(),
            obj_map: Vec::new(),
            arr_map: Vec::new(),
        })
    }

    fn inverse(&self, a: &FunctorData) -> Option<FunctorData> {
        a.inverse()
    }
}

/// An algebra `(A, f: F(A) → A)` for a 2-endofunctor.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    pub carrier: Arc<FinCategory>,
    pub structure: FunctorData,
}

/// A pseudo-morphism `(u, μ)` out of the chain algebra `(Φ, R)`:
/// `u: Φ → A` and an invertible `μ: u ∘ R ⇒ f ∘ F(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraOneCell {
    pub u: FunctorData,
    pub mu: NatTransfData,
}

fn chain_algebra(a: &ChainResult<Arc<FinCategory>, FunctorData>) -> Result<(Arc<FinCategory>, FunctorData)> {
    Ok((a.carrier()?, a.structure()?))
}

/// Every pseudo-morphism from the chain algebra to `target`, in
/// enumeration order (object map, then arrow map, then components).
pub fn all_mediators(
    f: &TwoEndofunctor,
    a: &ChainResult<Arc<FinCategory>, FunctorData>,
    target: &Algebra,
    bound: SearchBound,
) -> Result<Vec<AlgebraOneCell>> {
    let (phi, r) = chain_algebra(a)?;
    check_algebra(f, target)?;
    let mut out = Vec::new();
    for u in enumerate_functors(&phi, &target.carrier, bound)? {
        let ur = u.after(&r)?;
        let ffu = target.structure.after(&f.on_functor(&u))?;
        for mu in enumerate_nat_isos(&ur, &ffu, bound)? {
            out.push(AlgebraOneCell { u: u.clone(), mu });
        }
    }
    Ok(out)
}

fn check_algebra(f: &TwoEndofunctor, t: &Algebra) -> Result<()> {
    let fa = f.on_category(&t.carrier);
    if *t.structure.source != *fa || *t.structure.target != *t.carrier {
        return Err(Error::BoundaryMismatch("algebra structure must be F(A) → A".into()));
    }
    Ok(())
}

/// The first pseudo-morphism from the chain algebra to `target`.
pub fn pseudo_initial_mediator(
    f: &TwoEndofunctor,
    a: &ChainResult<Arc<FinCategory>, FunctorData>,
    target: &Algebra,
    bound: SearchBound,
) -> Result<AlgebraOneCell> {
    let (phi, r) = chain_algebra(a)?;
    check_algebra(f, target)?;
    for u in enumerate_functors(&phi, &target.carrier, bound)? {
        let ur = u.after(&r)?;
        let ffu = target.structure.after(&f.on_functor(&u))?;
        if let Some(mu) = enumerate_nat_isos(&ur, &ffu, bound)?.into_iter().next() {
            return Ok(AlgebraOneCell { u, mu });
        }
    }
    Err(Error::NoMediator)
}

/// Invertible `φ: v ⇒ w` with `ω ∘ (φ · R) = (f · F(φ)) ∘ ν`.
pub fn algebra_2cells(
    f: &TwoEndofunctor,
    a: &ChainResult<Arc<FinCategory>, FunctorData>,
    target: &Algebra,
    v: &AlgebraOneCell,
    w: &AlgebraOneCell,
    bound: SearchBound,
) -> Result<Vec<NatTransfData>> {
    let (_, r) = chain_algebra(a)?;
    let mut out = Vec::new();
    for phi in enumerate_nat_isos(&v.u, &w.u, bound)? {
        let lhs = TwoCellExpr::whisker_right(TwoCellExpr::atom(&phi), &r).then(TwoCellExpr::atom(&w.mu));
        let rhs = TwoCellExpr::atom(&v.mu)
            .then(TwoCellExpr::whisker_left(&target.structure, TwoCellExpr::atom(&f.on_transformation(&phi))));
        if eval_2cell(&lhs)? == eval_2cell(&rhs)? {
            out.push(phi);
        }
    }
    Ok(out)
}

/// The unique algebra 2-cell between two pseudo-morphisms.
pub fn unique_algebra_2cell(
    f: &TwoEndofunctor,
    a: &ChainResult<Arc<FinCategory>, FunctorData>,
    target: &Algebra,
    v: &AlgebraOneCell,
    w: &AlgebraOneCell,
    bound: SearchBound,
) -> Result<NatTransfData> {
    let mut found = algebra_2cells(f, a, target, v, w, bound)?;
    if found.len() == 1 {
        Ok(found.pop().expect("one survivor"))
    } else {
        Err(Error::UniquenessViolation(found.len()))
    }
}

/// `R ⊣ L` with `L = R⁻¹`, unit `η: 1 ⇒ L R` and counit `ε: R L ⇒ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointEquivalence {
    pub right: FunctorData,
    pub left: FunctorData,
    pub unit: NatTransfData,
    pub counit: NatTransfData,
}

impl AdjointEquivalence {
    /// `(ε R) ∘ (R η) = 1_R` and `(L ε) ∘ (η L) = 1_L`.
    pub fn triangle_identities(&self) -> Result<(bool, bool)> {
        let (r, l) = (&self.right, &self.left);
        let first = TwoCellExpr::whisker_left(r, TwoCellExpr::atom(&self.unit))
            .then(TwoCellExpr::whisker_right(TwoCellExpr::atom(&self.counit), r));
        let second = TwoCellExpr::whisker_right(TwoCellExpr::atom(&self.unit), l)
            .then(TwoCellExpr::whisker_left(l, TwoCellExpr::atom(&self.counit)));
        Ok((eval_2cell(&first)?.is_identity(), eval_2cell(&second)?.is_identity()))
    }

    pub fn is_invertible(&self) -> bool {
        self.unit.is_invertible() && self.counit.is_invertible()
    }
}

/// The adjoint equivalence `R ⊣ R⁻¹` carried by the invertible structure
/// functor `R: F(Φ) → Φ` of a stabilized chain.
pub fn adjoint_equivalence_from_initial(a: &ChainResult<Arc<FinCategory>, FunctorData>) -> Result<AdjointEquivalence> {
    let r = a.structure()?;
    let l = r.inverse().ok_or_else(|| Error::NotInvertible("chain structure functor".into()))?;
    let lr = l.after(&r)?;
    let rl = r.after(&l)?;
    if lr != FunctorData::identity(&r.source) || rl != FunctorData::identity(&r.target) {
        return Err(Error::NotInvertible("chain structure functor".into()));
    }
    Ok(AdjointEquivalence {
        unit: NatTransfData::identity(&lr),
        counit: NatTransfData::identity(&rl),
        right: r,
        left: l,
    })
}

/// A pseudo-morphism of coalgebras into `(Φ, L)`: `v: A → Φ` and invertible
/// `ν: L ∘ v ⇒ F(v) ∘ g` for a coalgebra `g: A → F(A)`.
pub fn coalgebra_mediators(
    f: &TwoEndofunctor,
    eq: &AdjointEquivalence,
    carrier: &Arc<FinCategory>,
    g: &FunctorData,
    bound: SearchBound,
) -> Result<Vec<(FunctorData, NatTransfData)>> {
    let phi = eq.right.target.clone();
    let mut out = Vec::new();
    for v in enumerate_functors(carrier, &phi, bound)? {
        let lv = eq.left.after(&v)?;
        let fvg = f.on_functor(&v).after(g)?;
        for nu in enumerate_nat_isos(&lv, &fvg, bound)? {
            out.push((v.clone(), nu));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lambek_chain;
    use crate::cat::samples;

    #[test]
    fn constant_chain_has_identity_structure() {
        let k = Arc::new(samples::vee());
        let f = TwoEndofunctor::Constant(k.clone());
        let a = lambek_chain(&f, 4).unwrap();
        assert_eq!(a.stabilized_at, Some(1));
        assert_eq!(a.structure().unwrap(), FunctorData::identity(&k));
        let eq = adjoint_equivalence_from_initial(&a).unwrap();
        assert_eq!(eq.triangle_identities().unwrap(), (true, true));
    }

    #[test]
    fn mediator_to_itself_is_the_identity() {
        let k = Arc::new(samples::involution());
        let f = TwoEndofunctor::Constant(k.clone());
        let a = lambek_chain(&f, 4).unwrap();
        let alg = Algebra { carrier: k.clone(), structure: FunctorData::identity(&k) };
        let m = pseudo_initial_mediator(&f, &a, &alg, SearchBound::default()).unwrap();
        assert_eq!(m.u, FunctorData::identity(&k));
        assert!(m.mu.is_identity());
        let phi = unique_algebra_2cell(&f, &a, &alg, &m, &m, SearchBound::default()).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn product_functor_acts_on_cells() {
        let k = Arc::new(FinCategory::chain(2));
        let c = Arc::new(samples::iso_pair());
        let swap = FunctorData::from_ids(
            c.clone(),
            c.clone(),
            &[("a", "b"), ("b", "a")],
            &[("1a", "1b"), ("1b", "1a"), ("i", "j"), ("j", "i")],
        )
        .unwrap();
        let f = TwoEndofunctor::Product(k);
        let fs = f.on_functor(&swap);
        assert!(fs.validate().is_empty());
        let id = FunctorData::identity(&c);
        for t in enumerate_nat_isos(&id, &swap, SearchBound::default()).unwrap() {
            assert!(f.on_transformation(&t).validate().is_empty());
        }
    }
}
