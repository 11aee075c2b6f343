use std::fmt::Debug;
use std::sync::Arc;

use crate::cat::{FinCategory, FunctorData};
use crate::error::{invalid, Error, Result};

/// What the Lambek chain needs from an endofunctor on a category with an
/// initial object.
pub trait ChainStep {
    type Obj: Clone + PartialEq + Debug;
    type Arr: Clone + PartialEq + Debug;

    fn initial(&self) -> Result<Self::Obj>;
    fn map_obj(&self, x: &Self::Obj) -> Self::Obj;
    fn map_arr(&self, a: &Self::Arr) -> Result<Self::Arr>;
    /// The unique arrow out of the initial object.
    fn out_of_initial(&self, x: &Self::Obj) -> Result<Self::Arr>;
    fn inverse(&self, a: &Self::Arr) -> Option<Self::Arr>;
}

/// The chain `0 → F0 → F²0 → …` up to stabilization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainResult<O, A> {
    /// `F^n(0)` for every computed stage.
    pub objects: Vec<O>,
    /// `c_n: F^n(0) → F^{n+1}(0)`.
    pub connecting: Vec<A>,
    /// First `n` with `c_n` invertible.
    pub stabilized_at: Option<usize>,
    /// `c_n⁻¹: F(Φ) → Φ` at stabilization.
    pub algebra: Option<A>,
}

impl<O: Clone, A: Clone> ChainResult<O, A> {
    pub fn is_stabilized(&self) -> bool {
        self.stabilized_at.is_some()
    }

    /// The carrier `Φ = F^n(0)`.
    pub fn carrier(&self) -> Result<O> {
        match self.stabilized_at {
            Some(n) => Ok(self.objects[n].clone()),
            None => Err(Error::NotStabilized(self.connecting.len())),
        }
    }

    pub fn structure(&self) -> Result<A> {
        self.algebra.clone().ok_or(Error::NotStabilized(self.connecting.len()))
    }
}

/// Iterates from the initial object, stopping at the first invertible
/// connecting arrow or after `max_steps` connecting arrows.
pub fn lambek_chain<C: ChainStep>(f: &C, max_steps: usize) -> Result<ChainResult<C::Obj, C::Arr>> {
    if max_steps == 0 {
        return Err(invalid("max_steps must be at least 1"));
    }
    let zero = f.initial()?;
    let mut objects = vec![zero.clone()];
    let mut connecting = Vec::new();
    let mut c = f.out_of_initial(&f.map_obj(&zero))?;
    for n in 0..max_steps {
        let next = f.map_obj(&objects[n]);
        objects.push(next);
        connecting.push(c.clone());
        if let Some(inv) = f.inverse(&c) {
            objects.truncate(n + 2);
            return Ok(ChainResult { objects, connecting, stabilized_at: Some(n), algebra: Some(inv) });
        }
        c = f.map_arr(&c)?;
    }
    Ok(ChainResult { objects, connecting, stabilized_at: None, algebra: None })
}

/// An endofunctor on a finite category, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct EndofunctorData {
    functor: FunctorData,
    initial: Option<usize>,
}

impl EndofunctorData {
    pub fn new(functor: FunctorData) -> Result<Self> {
        if !functor.is_endo() {
            return Err(Error::TypeMismatch("endofunctor must have source = target".into()));
        }
        functor.source.ensure_valid("endofunctor base")?;
        if let Some(v) = functor.validate().into_iter().next() {
            return Err(invalid(format!("not a functor: {}", v.detail)));
        }
        Ok(EndofunctorData { functor, initial: None })
    }

    /// Runs the chain from a chosen initial object instead of the first one.
    pub fn from_initial_object(mut self, o: usize) -> Result<Self> {
        if !self.functor.source.is_initial(o) {
            return Err(invalid(format!("`{}` is not initial", self.functor.source.object_id(o))));
        }
        self.initial = Some(o);
        Ok(self)
    }

    pub fn functor(&self) -> &FunctorData {
        &self.functor
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.functor.source
    }
}

impl ChainStep for EndofunctorData {
    type Obj = usize;
    type Arr = usize;

    fn initial(&self) -> Result<usize> {
        match self.initial {
            Some(o) => Ok(o),
            None => self.category().initial_objects().first().copied().ok_or(Error::NoInitialObject),
        }
    }

    fn map_obj(&self, x: &usize) -> usize {
        self.functor.obj(*x)
    }

    fn map_arr(&self, a: &usize) -> Result<usize> {
        Ok(self.functor.arr(*a))
    }

    fn out_of_initial(&self, x: &usize) -> Result<usize> {
        Ok(self.category().from_initial(self.initial()?, *x))
    }

    fn inverse(&self, a: &usize) -> Option<usize> {
        self.category().inverse(*a)
    }
}

/// Arrows `h: x → y` with `h ∘ α = β ∘ F(h)` between the `F`-algebras
/// `(x, α: F x → x)` and `(y, β: F y → y)`, `F` an endofunctor of `c`.
pub fn algebra_morphisms(f: &FunctorData, x: (usize, usize), y: (usize, usize)) -> Vec<usize> {
    let c = &f.source;
    c.hom(x.0, y.0).into_iter().filter(|&h| c.compose(h, x.1) == c.compose(y.1, f.arr(h))).collect()
}

/// Outcome of the rolling check for `F ∘ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreydComposite {
    pub f_stabilized_at: usize,
    pub ff_stabilized_at: Option<usize>,
    /// Algebra morphisms from the `FF`-chain algebra to `(Φ, R ∘ F(R))`.
    pub comparison_count: usize,
    pub comparison_invertible: bool,
}

impl FreydComposite {
    pub fn holds(&self) -> bool {
        self.ff_stabilized_at.is_some() && self.comparison_count == 1 && self.comparison_invertible
    }
}

/// Checks that `(Φ, R ∘ F(R))` is the initial `FF`-algebra when `(Φ, R)` is
/// the stabilized `F`-algebra.
pub fn freyd_composite(f: &EndofunctorData, max_steps: usize) -> Result<FreydComposite> {
    let chain = lambek_chain(f, max_steps)?;
    let n = chain.stabilized_at.ok_or(Error::NotStabilized(max_steps))?;
    let (phi, r) = (chain.carrier()?, chain.structure()?);
    let c = f.category().clone();
    let ff = EndofunctorData { functor: f.functor.after(&f.functor)?, initial: Some(f.initial()?) };
    let rr = c.comp(r, f.functor.arr(r));
    let chain2 = lambek_chain(&ff, 2 * max_steps)?;
    let (count, inv) = match chain2.stabilized_at {
        Some(_) => {
            let ms = algebra_morphisms(&ff.functor, (chain2.carrier()?, chain2.structure()?), (phi, rr));
            let inv = ms.len() == 1 && c.is_iso(ms[0]);
            (ms.len(), inv)
        }
        None => (0, false),
    };
    Ok(FreydComposite {
        f_stabilized_at: n,
        ff_stabilized_at: chain2.stabilized_at,
        comparison_count: count,
        comparison_invertible: inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::samples;

    fn endo(c: FinCategory, objs: &[(&str, &str)], arrs: &[(&str, &str)]) -> EndofunctorData {
        let c = Arc::new(c);
        EndofunctorData::new(FunctorData::from_ids(c.clone(), c, objs, arrs).unwrap()).unwrap()
    }

    #[test]
    fn constant_functor_stabilizes_at_one() {
        let c = Arc::new(FinCategory::chain(2));
        let f = EndofunctorData::new(FunctorData::constant(&c, &c, 1)).unwrap();
        let r = lambek_chain(&f, 5).unwrap();
        assert_eq!(r.stabilized_at, Some(1));
        assert_eq!(r.carrier().unwrap(), 1);
        assert_eq!(r.structure().unwrap(), c.id(1));
    }

    #[test]
    fn identity_functor_is_stable_immediately() {
        let c = Arc::new(FinCategory::chain(3));
        let f = EndofunctorData::new(FunctorData::identity(&c)).unwrap();
        let r = lambek_chain(&f, 5).unwrap();
        assert_eq!((r.stabilized_at, r.carrier().unwrap()), (Some(0), 0));
    }

    #[test]
    fn involution_twisted_algebra() {
        // F(0) = x, F(i) = s, F(s) = 1x: the structure map is s itself
        let f = endo(
            samples::involution(),
            &[("0", "x"), ("x", "x")],
            &[("10", "1x"), ("1x", "1x"), ("i", "s"), ("s", "1x")],
        );
        let r = lambek_chain(&f, 5).unwrap();
        let c = f.category();
        assert_eq!(r.stabilized_at, Some(1));
        assert_eq!(r.structure().unwrap(), c.arrow("s").unwrap());
        assert!(freyd_composite(&f, 5).unwrap().holds());
    }

    #[test]
    fn no_initial_object() {
        let c = Arc::new(samples::iso_pair().product(&FinCategory::discrete(&["p", "q"])));
        let f = EndofunctorData::new(FunctorData::identity(&c)).unwrap();
        assert_eq!(lambek_chain(&f, 3).unwrap_err(), Error::NoInitialObject);
    }
}
