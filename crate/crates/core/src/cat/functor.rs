use std::fmt;
use std::sync::Arc;

use super::category::{FinCategory, Violation};
use crate::error::{Error, Result};

/// A functor between finite categories, given by its object and arrow maps.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctorData {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub obj_map: Vec<usize>,
    pub arr_map: Vec<usize>,
}

impl fmt::Debug for FunctorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor{{")?;
        for (i, &o) in self.obj_map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.source.object_id(i), self.target.object_id(o))?;
        }
        write!(f, " | ")?;
        for (i, &a) in self.arr_map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.source.arrow_id(i), self.target.arrow_id(a))?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FunctorData {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<usize>,
        arr_map: Vec<usize>,
    ) -> Result<Self> {
        if obj_map.len() != source.object_count() || arr_map.len() != source.arrow_count() {
            return Err(Error::TypeMismatch("functor maps do not cover the source".into()));
        }
        if obj_map.iter().any(|&o| o >= target.object_count()) || arr_map.iter().any(|&a| a >= target.arrow_count()) {
            return Err(Error::TypeMismatch("functor maps leave the target".into()));
        }
        Ok(FunctorData { source, target, obj_map, arr_map })
    }

    /// Builds a functor from id-level maps.
    pub fn from_ids<S: AsRef<str>>(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: &[(S, S)],
        arrows: &[(S, S)],
    ) -> Result<Self> {
        let mut om = vec![usize::MAX; source.object_count()];
        for (a, b) in objects {
            om[source.object(a.as_ref())?] = target.object(b.as_ref())?;
        }
        let mut am = vec![usize::MAX; source.arrow_count()];
        for (a, b) in arrows {
            am[source.arrow(a.as_ref())?] = target.arrow(b.as_ref())?;
        }
        if let Some(i) = om.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Invalid(format!("object `{}` is not mapped", source.object_id(i))));
        }
        if let Some(i) = am.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Invalid(format!("arrow `{}` is not mapped", source.arrow_id(i))));
        }
        Self::new(source, target, om, am)
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.object_count()).collect(),
            arr_map: (0..c.arrow_count()).collect(),
        }
    }

    /// The functor constant at object `o` of `target`.
    pub fn constant(source: &Arc<FinCategory>, target: &Arc<FinCategory>, o: usize) -> Self {
        FunctorData {
            source: source.clone(),
            target: target.clone(),
            obj_map: vec![o; source.object_count()],
            arr_map: vec![target.id(o); source.arrow_count()],
        }
    }

    pub fn is_endo(&self) -> bool {
        same_category(&self.source, &self.target)
    }

    pub fn obj(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn arr(&self, a: usize) -> usize {
        self.arr_map[a]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FunctorData) -> Result<FunctorData> {
        if !same_category(&f.target, &self.source) {
            return Err(Error::TypeMismatch("functor composite: target ≠ source".into()));
        }
        Ok(FunctorData {
            source: f.source.clone(),
            target: self.target.clone(),
            obj_map: f.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            arr_map: f.arr_map.iter().map(|&a| self.arr_map[a]).collect(),
        })
    }

    pub fn validate(&self) -> Vec<Violation> {
        let (c, d) = (&self.source, &self.target);
        let mut out = Vec::new();
        for a in 0..c.arrow_count() {
            let fa = self.arr_map[a];
            if d.source(fa) != self.obj_map[c.source(a)] || d.target(fa) != self.obj_map[c.target(a)] {
                out.push(Violation {
                    law: "functor-endpoints",
                    detail: format!("image of `{}` has wrong endpoints", c.arrow_id(a)),
                });
            }
        }
        for o in 0..c.object_count() {
            if self.arr_map[c.id(o)] != d.id(self.obj_map[o]) {
                out.push(Violation {
                    law: "functor-identity",
                    detail: format!("identity of `{}` not preserved", c.object_id(o)),
                });
            }
        }
        for g in 0..c.arrow_count() {
            for f in 0..c.arrow_count() {
                if let Some(gf) = c.compose(g, f) {
                    if d.compose(self.arr_map[g], self.arr_map[f]) != Some(self.arr_map[gf]) {
                        out.push(Violation {
                            law: "functor-composition",
                            detail: format!(
                                "F({} ∘ {}) ≠ F{} ∘ F{}",
                                c.arrow_id(g),
                                c.arrow_id(f),
                                c.arrow_id(g),
                                c.arrow_id(f)
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    /// An inverse functor, if this one is an isomorphism of categories.
    pub fn inverse(&self) -> Option<FunctorData> {
        let (c, d) = (&self.source, &self.target);
        if c.object_count() != d.object_count() || c.arrow_count() != d.arrow_count() {
            return None;
        }
        let mut om = vec![usize::MAX; d.object_count()];
        for (i, &o) in self.obj_map.iter().enumerate() {
            if om[o] != usize::MAX {
                return None;
            }
            om[o] = i;
        }
        let mut am = vec![usize::MAX; d.arrow_count()];
        for (i, &a) in self.arr_map.iter().enumerate() {
            if am[a] != usize::MAX {
                return None;
            }
            am[a] = i;
        }
        Some(FunctorData { source: d.clone(), target: c.clone(), obj_map: om, arr_map: am })
    }

    /// Whether the functor sends some initial object of the source to an
    /// initial object of the target (vacuously true for an empty source).
    pub fn preserves_initial(&self) -> bool {
        match self.source.initial_objects().first() {
            None => self.source.object_count() == 0,
            Some(&i) => self.target.is_initial(self.obj_map[i]),
        }
    }
}

/// A natural transformation, stored by its components (arrow indices in the
/// common target category).
#[derive(Clone, PartialEq, Eq)]
pub struct NatTransfData {
    pub source: FunctorData,
    pub target: FunctorData,
    pub components: Vec<usize>,
}

impl fmt::Debug for NatTransfData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatTransf[")?;
        let c = &self.source.source;
        let d = &self.source.target;
        for (i, &a) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", c.object_id(i), d.arrow_id(a))?;
        }
        write!(f, "]")
    }
}

fn parallel(f: &FunctorData, g: &FunctorData) -> bool {
    same_category(&f.source, &g.source) && same_category(&f.target, &g.target)
}

impl NatTransfData {
    pub fn new(source: FunctorData, target: FunctorData, components: Vec<usize>) -> Result<Self> {
        if !parallel(&source, &target) {
            return Err(Error::BoundaryMismatch("functors are not parallel".into()));
        }
        if components.len() != source.source.object_count()
            || components.iter().any(|&a| a >= source.target.arrow_count())
        {
            return Err(Error::BoundaryMismatch("components do not match the source".into()));
        }
        Ok(NatTransfData { source, target, components })
    }

    pub fn identity(f: &FunctorData) -> Self {
        let d = &f.target;
        NatTransfData { source: f.clone(), target: f.clone(), components: f.obj_map.iter().map(|&o| d.id(o)).collect() }
    }

    pub fn component(&self, o: usize) -> usize {
        self.components[o]
    }

    /// Component typing and naturality-square violations.
    pub fn validate(&self) -> Vec<Violation> {
        let c = &self.source.source;
        let d = &self.source.target;
        let mut out = Vec::new();
        for o in 0..c.object_count() {
            let a = self.components[o];
            if d.source(a) != self.source.obj(o) || d.target(a) != self.target.obj(o) {
                out.push(Violation {
                    law: "component-typed",
                    detail: format!("component at `{}` has wrong endpoints", c.object_id(o)),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..c.arrow_count() {
            let (x, y) = (c.source(f), c.target(f));
            let lhs = d.compose(self.target.arr(f), self.components[x]);
            let rhs = d.compose(self.components[y], self.source.arr(f));
            if lhs.is_none() || lhs != rhs {
                out.push(Violation {
                    law: "naturality",
                    detail: format!("square at `{}` does not commute", c.arrow_id(f)),
                });
            }
        }
        out
    }

    pub fn is_natural(&self) -> bool {
        self.validate().is_empty()
    }

    /// Componentwise inverse, if every component is invertible.
    pub fn inverse(&self) -> Option<NatTransfData> {
        let d = &self.source.target;
        let comps: Option<Vec<usize>> = self.components.iter().map(|&a| d.inverse(a)).collect();
        Some(NatTransfData { source: self.target.clone(), target: self.source.clone(), components: comps? })
    }

    pub fn is_invertible(&self) -> bool {
        let d = &self.source.target;
        self.components.iter().all(|&a| d.is_iso(a))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == NatTransfData::identity(&self.source)
    }
}

/// Vertical composite `beta ∘ alpha` (alpha first).
pub fn vcomp(beta: &NatTransfData, alpha: &NatTransfData) -> Result<NatTransfData> {
    if alpha.target != beta.source {
        return Err(Error::BoundaryMismatch(
            "vertical composite: target of the first cell ≠ source of the second".into(),
        ));
    }
    let d = &alpha.source.target;
    let components = alpha.components.iter().zip(&beta.components).map(|(&a, &b)| d.comp(b, a)).collect();
    Ok(NatTransfData { source: alpha.source.clone(), target: beta.target.clone(), components })
}

/// Left whiskering `h · alpha`: components `h(alpha_x)`.
pub fn whisker_left(h: &FunctorData, alpha: &NatTransfData) -> Result<NatTransfData> {
    if !same_category(&alpha.source.target, &h.source) {
        return Err(Error::BoundaryMismatch("left whisker: functor source mismatch".into()));
    }
    Ok(NatTransfData {
        source: h.after(&alpha.source)?,
        target: h.after(&alpha.target)?,
        components: alpha.components.iter().map(|&a| h.arr(a)).collect(),
    })
}

/// Right whiskering `alpha · k`: components `alpha_{k x}`.
pub fn whisker_right(alpha: &NatTransfData, k: &FunctorData) -> Result<NatTransfData> {
    if !same_category(&k.target, &alpha.source.source) {
        return Err(Error::BoundaryMismatch("right whisker: functor target mismatch".into()));
    }
    Ok(NatTransfData {
        source: alpha.source.after(k)?,
        target: alpha.target.after(k)?,
        components: k.obj_map.iter().map(|&o| alpha.components[o]).collect(),
    })
}

/// Horizontal composite `beta ⋆ alpha` for `alpha: F ⇒ G: A → B` and
/// `beta: H ⇒ K: B → C`, giving `H∘F ⇒ K∘G`.
pub fn hcomp(beta: &NatTransfData, alpha: &NatTransfData) -> Result<NatTransfData> {
    vcomp(&whisker_left(&beta.target, alpha)?, &whisker_right(beta, &alpha.source)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<FinCategory> {
        Arc::new(FinCategory::chain(2))
    }

    #[test]
    fn identity_functor_is_valid_and_composes() {
        let c = two();
        let id = FunctorData::identity(&c);
        assert!(id.validate().is_empty());
        assert_eq!(id.after(&id).unwrap(), id);
    }

    #[test]
    fn constant_transformation_zero_to_one() {
        let d2 = Arc::new(FinCategory::discrete(&["p", "q"]));
        let c = two();
        let f = FunctorData::constant(&d2, &c, 0);
        let g = FunctorData::constant(&d2, &c, 1);
        let up = c.arrow("0<=1").unwrap();
        let t = NatTransfData::new(f, g, vec![up, up]).unwrap();
        assert!(t.is_natural());
        assert!(!t.is_invertible());
    }

    #[test]
    fn vcomp_with_identity_is_unchanged() {
        let c = two();
        let d2 = Arc::new(FinCategory::discrete(&["p"]));
        let f = FunctorData::constant(&d2, &c, 0);
        let g = FunctorData::constant(&d2, &c, 1);
        let t = NatTransfData::new(f.clone(), g.clone(), vec![c.arrow("0<=1").unwrap()]).unwrap();
        assert_eq!(vcomp(&NatTransfData::identity(&g), &t).unwrap(), t);
        assert_eq!(vcomp(&t, &NatTransfData::identity(&f)).unwrap(), t);
        assert!(matches!(vcomp(&t, &t), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn hcomp_of_identities_is_identity() {
        let c = two();
        let f = FunctorData::identity(&c);
        let i = NatTransfData::identity(&f);
        let h = hcomp(&i, &i).unwrap();
        assert!(h.is_identity());
    }

    #[test]
    fn inverse_functor_of_identity() {
        let c = two();
        let id = FunctorData::identity(&c);
        assert_eq!(id.inverse().unwrap(), id);
        let collapse = FunctorData::constant(&c, &c, 0);
        assert!(collapse.inverse().is_none());
    }
}
