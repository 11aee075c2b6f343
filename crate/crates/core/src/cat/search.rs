use std::sync::Arc;

use super::category::FinCategory;
use super::functor::{same_category, FunctorData, NatTransfData};
use crate::error::{Error, Result};

/// Environment variable overriding [`SearchBound::default`]: `N` or `N,M`
/// for at most `N` objects and `M` arrows per category.
pub const SEARCH_CAP_ENV: &str = "FIXCAT_SEARCH_CAP";

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound {
    pub max_objects: usize,
    pub max_arrows: usize,
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound { max_objects: 5, max_arrows: 12 }
    }
}

impl SearchBound {
    /// The default bound, overridden by `FIXCAT_SEARCH_CAP` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SEARCH_CAP_ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("{SEARCH_CAP_ENV} must be `N` or `N,M`, got `{s}`"));
        let mut parts = s.split(',').map(|p| p.trim().parse::<usize>());
        let objects = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
        let arrows = match parts.next() {
            Some(p) => p.map_err(|_| bad())?,
            None => Self::default().max_arrows.max(objects * objects),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(SearchBound { max_objects: objects, max_arrows: arrows })
    }

    fn check(&self, c: &FinCategory, d: &FinCategory) -> Result<()> {
        let prod = c.object_count() * d.object_count();
        if prod > self.max_objects * self.max_objects {
            return Err(Error::SizeCap(format!(
                "{} × {} objects exceeds the bound of {}",
                c.object_count(),
                d.object_count(),
                self.max_objects * self.max_objects
            )));
        }
        for x in [c, d] {
            if x.object_count() > self.max_objects || x.arrow_count() > self.max_arrows {
                return Err(Error::SizeCap(format!(
                    "category with {} objects / {} arrows exceeds {} / {}",
                    x.object_count(),
                    x.arrow_count(),
                    self.max_objects,
                    self.max_arrows
                )));
            }
        }
        Ok(())
    }
}

/// Every functor `c → d`, in lexicographic order of (object map, arrow map).
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>, bound: SearchBound) -> Result<Vec<FunctorData>> {
    bound.check(c, d)?;
    let (no, na) = (c.object_count(), c.arrow_count());
    let mut out = Vec::new();
    if no > 0 && d.object_count() == 0 {
        return Ok(out);
    }
    let mut obj_map = vec![0usize; no];
    loop {
        let mut arr_map = vec![usize::MAX; na];
        let mut ok = true;
        for o in 0..no {
            arr_map[c.id(o)] = d.id(obj_map[o]);
        }
        // identities must be distinct arrows per object in a valid category
        for o in 0..no {
            if arr_map[c.id(o)] != d.id(obj_map[o]) {
                ok = false;
            }
        }
        if ok {
            let free: Vec<usize> = (0..na).filter(|&a| arr_map[a] == usize::MAX).collect();
            assign_arrows(c, d, &obj_map, &mut arr_map, &free, 0, &mut out);
        }
        // next object map (odometer, last position fastest)
        let mut i = no;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            obj_map[i] += 1;
            if obj_map[i] < d.object_count() {
                break;
            }
            obj_map[i] = 0;
        }
    }
}

fn composition_ok(c: &FinCategory, d: &FinCategory, arr_map: &[usize], a: usize) -> bool {
    let n = c.arrow_count();
    let assigned = |x: usize| arr_map[x] != usize::MAX;
    for other in 0..n {
        if !assigned(other) {
            continue;
        }
        for (g, f) in [(a, other), (other, a)] {
            if let Some(gf) = c.compose(g, f) {
                if assigned(gf) && d.compose(arr_map[g], arr_map[f]) != Some(arr_map[gf]) {
                    return false;
                }
            }
        }
    }
    // `a` may itself be the composite of two assigned arrows
    for g in 0..n {
        if !assigned(g) {
            continue;
        }
        for f in 0..n {
            if !assigned(f) {
                continue;
            }
            if c.compose(g, f) == Some(a) && d.compose(arr_map[g], arr_map[f]) != Some(arr_map[a]) {
                return false;
            }
        }
    }
    true
}

fn assign_arrows(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    obj_map: &[usize],
    arr_map: &mut Vec<usize>,
    free: &[usize],
    k: usize,
    out: &mut Vec<FunctorData>,
) {
    if k == free.len() {
        // identities were pre-assigned without composition checks
        for a in 0..c.arrow_count() {
            if !composition_ok(c, d, arr_map, a) {
                return;
            }
        }
        out.push(FunctorData {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            arr_map: arr_map.clone(),
        });
        return;
    }
    let a = free[k];
    for cand in d.hom(obj_map[c.source(a)], obj_map[c.target(a)]) {
        arr_map[a] = cand;
        if composition_ok(c, d, arr_map, a) {
            assign_arrows(c, d, obj_map, arr_map, free, k + 1, out);
        }
    }
    arr_map[a] = usize::MAX;
}

/// Every natural transformation `f ⇒ g`, in lexicographic order of components.
pub fn enumerate_nat_transfs(f: &FunctorData, g: &FunctorData, bound: SearchBound) -> Result<Vec<NatTransfData>> {
    if !same_category(&f.source, &g.source) || !same_category(&f.target, &g.target) {
        return Err(Error::BoundaryMismatch("functors are not parallel".into()));
    }
    bound.check(&f.source, &f.target)?;
    let c = &f.source;
    let mut comps = vec![usize::MAX; c.object_count()];
    let mut out = Vec::new();
    assign_components(f, g, &mut comps, 0, &mut out);
    Ok(out)
}

fn assign_components(f: &FunctorData, g: &FunctorData, comps: &mut Vec<usize>, o: usize, out: &mut Vec<NatTransfData>) {
    let c = &f.source;
    let d = &f.target;
    if o == c.object_count() {
        out.push(NatTransfData { source: f.clone(), target: g.clone(), components: comps.clone() });
        return;
    }
    for cand in d.hom(f.obj(o), g.obj(o)) {
        comps[o] = cand;
        let natural = (0..c.arrow_count()).all(|a| {
            let (x, y) = (c.source(a), c.target(a));
            if x > o || y > o {
                return true;
            }
            d.compose(g.arr(a), comps[x]) == d.compose(comps[y], f.arr(a))
        });
        if natural {
            assign_components(f, g, comps, o + 1, out);
        }
    }
    comps[o] = usize::MAX;
}

/// Invertible natural transformations `f ⇒ g`.
pub fn enumerate_nat_isos(f: &FunctorData, g: &FunctorData, bound: SearchBound) -> Result<Vec<NatTransfData>> {
    Ok(enumerate_nat_transfs(f, g, bound)?.into_iter().filter(|t| t.is_invertible()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn terminal_to_terminal_has_one_functor() {
        let t = arc(FinCategory::terminal());
        let fs = enumerate_functors(&t, &t, SearchBound::default()).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], FunctorData::identity(&t));
    }

    #[test]
    fn discrete_two_to_discrete_three_has_nine() {
        let c = arc(FinCategory::discrete(&["a", "b"]));
        let d = arc(FinCategory::discrete(&["x", "y", "z"]));
        assert_eq!(enumerate_functors(&c, &d, SearchBound::default()).unwrap().len(), 9);
    }

    #[test]
    fn arrow_category_to_terminal_has_one() {
        let c = arc(FinCategory::chain(2));
        let t = arc(FinCategory::terminal());
        assert_eq!(enumerate_functors(&c, &t, SearchBound::default()).unwrap().len(), 1);
    }

    #[test]
    fn chain2_endofunctors_are_the_three_monotone_maps() {
        let c = arc(FinCategory::chain(2));
        let fs = enumerate_functors(&c, &c, SearchBound::default()).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|f| f.validate().is_empty()));
    }

    #[test]
    fn size_cap_is_reported() {
        let big = arc(FinCategory::discrete(&["a", "b", "c", "d", "e", "f"]));
        let r = enumerate_functors(&big, &big, SearchBound::default());
        assert!(matches!(r, Err(Error::SizeCap(_))));
    }

    #[test]
    fn identity_transformation_on_terminal() {
        let t = arc(FinCategory::terminal());
        let id = FunctorData::identity(&t);
        let ts = enumerate_nat_transfs(&id, &id, SearchBound::default()).unwrap();
        assert_eq!(ts, vec![NatTransfData::identity(&id)]);
    }

    #[test]
    fn constant_zero_functors_have_one_transformation() {
        let d2 = arc(FinCategory::discrete(&["p", "q"]));
        let c = arc(FinCategory::chain(2));
        let f = FunctorData::constant(&d2, &c, 0);
        assert_eq!(enumerate_nat_transfs(&f, &f, SearchBound::default()).unwrap().len(), 1);
        let g = FunctorData::constant(&d2, &c, 1);
        let ts = enumerate_nat_transfs(&f, &g, SearchBound::default()).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].components, vec![c.arrow("0<=1").unwrap(); 2]);
        assert!(enumerate_nat_transfs(&g, &f, SearchBound::default()).unwrap().is_empty());
    }

    #[test]
    fn bound_parsing() {
        assert_eq!(SearchBound::parse("3,9").unwrap(), SearchBound { max_objects: 3, max_arrows: 9 });
        assert_eq!(SearchBound::parse("6").unwrap().max_objects, 6);
        assert!(SearchBound::parse("x").is_err());
    }
}
