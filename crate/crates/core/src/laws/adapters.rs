use std::sync::Arc;

use super::model::{FixpointModel, Square, ThinModel};
use crate::algebra::{algebra_morphisms, lambek_chain, EndofunctorData};
use crate::cat::{
    enumerate_nat_isos, vcomp, whisker_left, whisker_right, FinCategory, FunctorData, NatTransfData, SearchBound,
};
use crate::error::{Error, Result};
use crate::poset::{self, bifree_star, kleene_star, MonotoneMap, PointedPoset};
use crate::rel::{
    mrel_compose, mrel_identity, mrel_product, mrel_star, scott_compose, scott_identity, scott_star, tree_star, FinSet,
    IdealRel, MultisetRel, Preorder,
};

fn normalized(mut m: MonotoneMap) -> MonotoneMap {
    m.strict = m.preserves_bottom();
    m
}

/// How a poset adapter computes `f*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetStar {
    /// Iterating from bottom.
    Kleene,
    /// Through the mediating map out of the bifree algebra on `ω̄`.
    Bifree,
    /// The top element, or the last maximal one: not a fixpoint operator.
    BrokenTop,
}

/// Pointed posets and monotone maps, strict maps as the strict subcategory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetModel {
    pub star: PosetStar,
}

impl PosetModel {
    pub const KLEENE: PosetModel = PosetModel { star: PosetStar::Kleene };
    pub const BIFREE: PosetModel = PosetModel { star: PosetStar::Bifree };
    pub const BROKEN: PosetModel = PosetModel { star: PosetStar::BrokenTop };

    pub fn point(&self, a: &Arc<PointedPoset>, x: usize) -> MonotoneMap {
        MonotoneMap::constant(&Arc::new(PointedPoset::one_point()), a, x)
    }
}

fn top_or_maximal(p: &PointedPoset) -> usize {
    let all: Vec<usize> = (0..p.len()).collect();
    p.join(&all)
        .unwrap_or_else(|| (0..p.len()).rev().find(|&x| (0..p.len()).all(|y| !p.leq(x, y) || x == y)).unwrap_or(0))
}

impl ThinModel for PosetModel {
    type Obj = Arc<PointedPoset>;
    type Cell = MonotoneMap;

    fn name(&self) -> String {
        match self.star {
            PosetStar::Kleene => "poset",
            PosetStar::Bifree => "poset-bifree",
            PosetStar::BrokenTop => "poset-broken",
        }
        .into()
    }

    fn dom(&self, f: &MonotoneMap) -> Arc<PointedPoset> {
        f.source.clone()
    }

    fn cod(&self, f: &MonotoneMap) -> Arc<PointedPoset> {
        f.target.clone()
    }

    fn identity(&self, a: &Arc<PointedPoset>) -> MonotoneMap {
        MonotoneMap::identity(a)
    }

    fn compose(&self, g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
        g.after(f).map(normalized)
    }

    fn terminal(&self) -> Arc<PointedPoset> {
        Arc::new(PointedPoset::one_point())
    }

    fn is_strict(&self, s: &MonotoneMap) -> bool {
        s.preserves_bottom()
    }

    fn describe(&self, f: &MonotoneMap) -> String {
        if f.source.len() == 1 {
            return f.target.element_id(f.apply(0)).to_string();
        }
        let parts: Vec<String> = (0..f.source.len())
            .map(|x| format!("{}↦{}", f.source.element_id(x), f.target.element_id(f.apply(x))))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn star(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if !f.is_endo() {
            return Err(Error::TypeMismatch("star of a non-endomap".into()));
        }
        let x = match self.star {
            PosetStar::Kleene => kleene_star(f),
            PosetStar::Bifree => bifree_star(f),
            PosetStar::BrokenTop => top_or_maximal(&f.source),
        };
        Ok(self.point(&f.source, x))
    }

    fn product(
        &self,
        a: &Arc<PointedPoset>,
        b: &Arc<PointedPoset>,
    ) -> Result<(Arc<PointedPoset>, MonotoneMap, MonotoneMap)> {
        let p = poset::product(a, b);
        Ok((p.carrier.clone(), p.pi1(), p.pi2()))
    }

    fn pair(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        poset::product(&f.target, &g.target).pair(f, g).map(normalized)
    }
}

/// How the relational adapter computes `f*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelStar {
    /// Closure rounds from the empty set.
    Closure,
    /// Roots of finite witness trees.
    Tree,
}

/// Finite sets and multiset relations (the co-Kleisli category of the
/// finite-multiset comonad on relations); linear relations are strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelModel {
    pub star: RelStar,
}

impl RelModel {
    pub const CLOSURE: RelModel = RelModel { star: RelStar::Closure };
    pub const TREE: RelModel = RelModel { star: RelStar::Tree };
}

impl ThinModel for RelModel {
    type Obj = Arc<FinSet>;
    type Cell = MultisetRel;

    fn name(&self) -> String {
        match self.star {
            RelStar::Closure => "rel",
            RelStar::Tree => "rel-tree",
        }
        .into()
    }

    fn dom(&self, f: &MultisetRel) -> Arc<FinSet> {
        f.source.clone()
    }

    fn cod(&self, f: &MultisetRel) -> Arc<FinSet> {
        f.target.clone()
    }

    fn identity(&self, a: &Arc<FinSet>) -> MultisetRel {
        mrel_identity(a)
    }

    fn compose(&self, g: &MultisetRel, f: &MultisetRel) -> Result<MultisetRel> {
        mrel_compose(g, f)
    }

    fn terminal(&self) -> Arc<FinSet> {
        Arc::new(FinSet::empty())
    }

    fn is_strict(&self, s: &MultisetRel) -> bool {
        s.is_linear()
    }

    fn describe(&self, f: &MultisetRel) -> String {
        if f.source.is_empty() {
            let xs: Vec<usize> = f.as_subset().into_iter().collect();
            return f.target.show_subset(&xs);
        }
        f.show()
    }

    fn star(&self, f: &MultisetRel) -> Result<MultisetRel> {
        if !f.is_endo() {
            return Err(Error::TypeMismatch("star of a non-endorelation".into()));
        }
        let xs = match self.star {
            RelStar::Closure => mrel_star(f),
            RelStar::Tree => {
                let t = tree_star(f, f.source.len());
                if !t.stabilized {
                    return Err(Error::NotStabilized(f.source.len()));
                }
                t.elements
            }
        };
        Ok(MultisetRel::point(&f.target, &xs))
    }

    fn product(&self, a: &Arc<FinSet>, b: &Arc<FinSet>) -> Result<(Arc<FinSet>, MultisetRel, MultisetRel)> {
        let p = mrel_product(a, b);
        Ok((p.carrier.clone(), p.pi1(), p.pi2()))
    }

    fn pair(&self, f: &MultisetRel, g: &MultisetRel) -> Result<MultisetRel> {
        mrel_product(&f.target, &g.target).pair(f, g)
    }
}

/// Preorders and ideal relations; linear relations are strict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScottModel;

impl ThinModel for ScottModel {
    type Obj = Arc<Preorder>;
    type Cell = IdealRel;

    fn name(&self) -> String {
        "scott".into()
    }

    fn dom(&self, f: &IdealRel) -> Arc<Preorder> {
        f.source.clone()
    }

    fn cod(&self, f: &IdealRel) -> Arc<Preorder> {
        f.target.clone()
    }

    fn identity(&self, a: &Arc<Preorder>) -> IdealRel {
        scott_identity(a)
    }

    fn compose(&self, g: &IdealRel, f: &IdealRel) -> Result<IdealRel> {
        scott_compose(g, f)
    }

    fn terminal(&self) -> Arc<Preorder> {
        Arc::new(Preorder::empty())
    }

    fn is_strict(&self, s: &IdealRel) -> bool {
        s.is_linear()
    }

    fn describe(&self, f: &IdealRel) -> String {
        if f.source.is_empty() {
            let xs: Vec<&str> = f.as_subset().into_iter().map(|x| f.target.element_id(x)).collect();
            return format!("{{{}}}", xs.join(", "));
        }
        f.show()
    }

    fn star(&self, f: &IdealRel) -> Result<IdealRel> {
        if !f.is_endo() {
            return Err(Error::TypeMismatch("star of a non-endorelation".into()));
        }
        Ok(IdealRel::point(&f.target, &scott_star(f)))
    }
}

/// Which initial object the Cat adapter starts its Lambek chains from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialChoice {
    First,
    Last,
}

/// Finite categories, functors and natural transformations; `F*` picks the
/// carrier of the stabilized Lambek chain, and the witness cells are
/// read off the universal property of that initial algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatModel {
    pub initial: InitialChoice,
    pub bound: SearchBound,
    pub max_steps: usize,
}

impl Default for CatModel {
    fn default() -> Self {
        CatModel { initial: InitialChoice::First, bound: SearchBound::default(), max_steps: 16 }
    }
}

impl CatModel {
    pub fn with_initial(initial: InitialChoice) -> Self {
        CatModel { initial, ..Self::default() }
    }

    /// `(Φ, a: F(Φ) → Φ)` for an endofunctor `F`.
    pub fn initial_algebra(&self, f: &FunctorData) -> Result<(usize, usize)> {
        let c = &f.source;
        let inits = c.initial_objects();
        let o = match self.initial {
            InitialChoice::First => inits.first(),
            InitialChoice::Last => inits.last(),
        }
        .copied()
        .ok_or(Error::NoInitialObject)?;
        let e = EndofunctorData::new(f.clone())?.from_initial_object(o)?;
        let chain = lambek_chain(&e, self.max_steps)?;
        Ok((chain.carrier()?, chain.structure()?))
    }

    fn point(&self, c: &Arc<FinCategory>, o: usize) -> FunctorData {
        FunctorData::constant(&Arc::new(FinCategory::terminal()), c, o)
    }

    /// The unique algebra morphism between two `F`-algebras.
    fn unique_morphism(&self, f: &FunctorData, x: (usize, usize), y: (usize, usize)) -> Result<usize> {
        let ms = algebra_morphisms(f, x, y);
        match ms.as_slice() {
            [m] => Ok(*m),
            _ => Err(Error::UniquenessViolation(ms.len())),
        }
    }

    fn inverted(&self, c: &FinCategory, m: usize, what: &str) -> Result<usize> {
        c.inverse(m).ok_or_else(|| Error::NotInvertible(format!("{what}: `{}`", c.arrow_id(m))))
    }
}

impl FixpointModel for CatModel {
    type Obj = Arc<FinCategory>;
    type Cell = FunctorData;
    type Two = NatTransfData;

    fn name(&self) -> String {
        match self.initial {
            InitialChoice::First => "cat",
            InitialChoice::Last => "cat-last-initial",
        }
        .into()
    }

    fn dom(&self, f: &FunctorData) -> Arc<FinCategory> {
        f.source.clone()
    }

    fn cod(&self, f: &FunctorData) -> Arc<FinCategory> {
        f.target.clone()
    }

    fn identity(&self, a: &Arc<FinCategory>) -> FunctorData {
        FunctorData::identity(a)
    }

    fn compose(&self, g: &FunctorData, f: &FunctorData) -> Result<FunctorData> {
        g.after(f)
    }

    fn terminal(&self) -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }

    fn is_strict(&self, s: &FunctorData) -> bool {
        s.preserves_initial()
    }

    fn describe(&self, f: &FunctorData) -> String {
        if f.source.object_count() == 1 && f.source.arrow_count() == 1 {
            return f.target.object_id(f.obj(0)).to_string();
        }
        format!("{f:?}")
    }

    fn two_identity(&self, f: &FunctorData) -> NatTransfData {
        NatTransfData::identity(f)
    }

    fn two_source(&self, a: &NatTransfData) -> FunctorData {
        a.source.clone()
    }

    fn two_target(&self, a: &NatTransfData) -> FunctorData {
        a.target.clone()
    }

    fn vcomp(&self, beta: &NatTransfData, alpha: &NatTransfData) -> Result<NatTransfData> {
        vcomp(beta, alpha)
    }

    fn whisker_left(&self, h: &FunctorData, alpha: &NatTransfData) -> Result<NatTransfData> {
        whisker_left(h, alpha)
    }

    fn whisker_right(&self, alpha: &NatTransfData, k: &FunctorData) -> Result<NatTransfData> {
        whisker_right(alpha, k)
    }

    fn two_inverse(&self, alpha: &NatTransfData) -> Result<NatTransfData> {
        alpha.inverse().ok_or_else(|| Error::NotInvertible(format!("{alpha:?}")))
    }

    fn two_eq(&self, a: &NatTransfData, b: &NatTransfData) -> bool {
        a == b
    }

    fn describe_two(&self, a: &NatTransfData) -> String {
        if a.source.source.object_count() == 1 {
            return a.source.target.arrow_id(a.components[0]).to_string();
        }
        format!("{a:?}")
    }

    fn isos_between(&self, p: &FunctorData, q: &FunctorData) -> Result<Vec<NatTransfData>> {
        enumerate_nat_isos(p, q, self.bound)
    }

    fn star(&self, f: &FunctorData) -> Result<FunctorData> {
        let (phi, _) = self.initial_algebra(f)?;
        Ok(self.point(&f.target, phi))
    }

    fn fix(&self, f: &FunctorData) -> Result<NatTransfData> {
        let (phi, a) = self.initial_algebra(f)?;
        let s = self.point(&f.target, phi);
        NatTransfData::new(f.after(&s)?, s, vec![a])
    }

    fn alpha_star(&self, alpha: &NatTransfData) -> Result<NatTransfData> {
        let (f, g) = (&alpha.source, &alpha.target);
        let c = &f.target;
        let (pf, a) = self.initial_algebra(f)?;
        let (pg, b) = self.initial_algebra(g)?;
        let m = self.unique_morphism(f, (pf, a), (pg, c.comp(b, alpha.component(pg))))?;
        NatTransfData::new(self.point(c, pf), self.point(c, pg), vec![m])
    }

    fn dinat(&self, f: &FunctorData, g: &FunctorData) -> Result<NatTransfData> {
        let gf = g.after(f)?;
        let fg = f.after(g)?;
        let (p_gf, a_gf) = self.initial_algebra(&gf)?;
        let (p_fg, a_fg) = self.initial_algebra(&fg)?;
        let b = &f.target;
        let m = self.unique_morphism(&fg, (p_fg, a_fg), (f.obj(p_gf), f.arr(a_gf)))?;
        let d = self.inverted(b, m, "dinat comparison")?;
        NatTransfData::new(f.after(&self.point(&f.source, p_gf))?, self.point(b, p_fg), vec![d])
    }

    fn unif(&self, sq: &Square<FunctorData, NatTransfData>) -> Result<NatTransfData> {
        let (s, f, g) = (&sq.s, &sq.f, &sq.g);
        let b = &g.target;
        let (pf, a) = self.initial_algebra(f)?;
        let (pg, c) = self.initial_algebra(g)?;
        let gamma_inv = self.inverted(b, sq.gamma.component(pf), "square component")?;
        let structure = b.comp(s.arr(a), gamma_inv);
        let m = self.unique_morphism(g, (pg, c), (s.obj(pf), structure))?;
        let u = self.inverted(b, m, "uniformity comparison")?;
        NatTransfData::new(s.after(&self.point(&f.source, pf))?, self.point(b, pg), vec![u])
    }
}
