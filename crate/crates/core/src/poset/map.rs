use std::sync::Arc;

use super::order::{fresh_id, PointedPoset};
use crate::error::{invalid, Error, Result};

/// A monotone map between pointed posets. `strict` is a declared flag:
/// a strict map must send bottom to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: Arc<PointedPoset>,
    pub target: Arc<PointedPoset>,
    pub assignment: Vec<usize>,
    pub strict: bool,
}

impl MonotoneMap {
    pub fn new(
        source: Arc<PointedPoset>,
        target: Arc<PointedPoset>,
        assignment: Vec<usize>,
        strict: bool,
    ) -> Result<Self> {
        let m = MonotoneMap { source, target, assignment, strict };
        match m.violations().into_iter().next() {
            Some(v) => Err(invalid(v)),
            None => Ok(m),
        }
    }

    /// Builds a map from `(source id, target id)` pairs.
    pub fn from_ids<S: AsRef<str>>(
        source: Arc<PointedPoset>,
        target: Arc<PointedPoset>,
        pairs: &[(S, S)],
        strict: bool,
    ) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (x, y) in pairs {
            let x = source.element(x.as_ref())?;
            if assignment[x].replace(target.element(y.as_ref())?).is_some() {
                return Err(invalid(format!("`{}` assigned twice", source.element_id(x))));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| invalid(format!("`{}` unassigned", source.element_id(x)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment, strict)
    }

    pub fn violations(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        if self.assignment.len() != s.len() || self.assignment.iter().any(|&y| y >= t.len()) {
            return vec!["assignment is not a total map into the target".into()];
        }
        let mut out = Vec::new();
        for x in 0..s.len() {
            for y in 0..s.len() {
                if s.leq(x, y) && !t.leq(self.assignment[x], self.assignment[y]) {
                    out.push(format!(
                        "not monotone: `{}` ≤ `{}` but images are not ordered",
                        s.element_id(x),
                        s.element_id(y)
                    ));
                }
            }
        }
        if self.strict && self.assignment[s.bottom()] != t.bottom() {
            out.push("declared strict but bottom is not preserved".into());
        }
        out
    }

    pub fn identity(p: &Arc<PointedPoset>) -> Self {
        MonotoneMap { source: p.clone(), target: p.clone(), assignment: (0..p.len()).collect(), strict: true }
    }

    pub fn constant(source: &Arc<PointedPoset>, target: &Arc<PointedPoset>, y: usize) -> Self {
        MonotoneMap {
            source: source.clone(),
            target: target.clone(),
            assignment: vec![y; source.len()],
            strict: y == target.bottom(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Whether bottom is preserved, regardless of the declared flag.
    pub fn preserves_bottom(&self) -> bool {
        self.assignment[self.source.bottom()] == self.target.bottom()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.target != self.source {
            return Err(Error::TypeMismatch("composite of maps with mismatched boundary".into()));
        }
        Ok(MonotoneMap {
            source: f.source.clone(),
            target: self.target.clone(),
            assignment: f.assignment.iter().map(|&x| self.assignment[x]).collect(),
            strict: self.strict && f.strict,
        })
    }

    /// `f^n(⊥), n = 0, 1, …` until the first repeat (inclusive of the fixpoint).
    pub fn iterates(&self) -> Vec<usize> {
        assert!(self.is_endo(), "iterates of a non-endomap");
        let mut out = vec![self.source.bottom()];
        loop {
            let last = *out.last().expect("nonempty");
            let next = self.apply(last);
            if next == last {
                return out;
            }
            out.push(next);
        }
    }
}

/// Every monotone map `source → target`, in lexicographic order of
/// assignments. With `strict_only`, only bottom-preserving maps.
pub fn monotone_maps(source: &Arc<PointedPoset>, target: &Arc<PointedPoset>, strict_only: bool) -> Vec<MonotoneMap> {
    let n = source.len();
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    fn go(
        s: &PointedPoset,
        t: &PointedPoset,
        strict_only: bool,
        a: &mut Vec<usize>,
        k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == s.len() {
            out.push(a.clone());
            return;
        }
        for y in 0..t.len() {
            if strict_only && k == s.bottom() && y != t.bottom() {
                continue;
            }
            let ok = (0..k).all(|x| (!s.leq(x, k) || t.leq(a[x], y)) && (!s.leq(k, x) || t.leq(y, a[x])));
            if ok {
                a[k] = y;
                go(s, t, strict_only, a, k + 1, out);
            }
        }
    }
    let mut raw = Vec::new();
    go(source, target, strict_only, &mut a, 0, &mut raw);
    for assignment in raw {
        let strict = assignment[source.bottom()] == target.bottom();
        out.push(MonotoneMap { source: source.clone(), target: target.clone(), assignment, strict });
    }
    out
}

/// Adjoins a fresh bottom below every element of `p`. The fresh bottom gets
/// index 0; element `x` of `p` becomes `x + 1`.
pub fn lift(p: &PointedPoset) -> PointedPoset {
    let n = p.len();
    let mut names = vec![fresh_id("⊥", p.elements())];
    names.extend(p.elements().iter().cloned());
    let mut m = vec![vec![false; n + 1]; n + 1];
    m[0] = vec![true; n + 1];
    for x in 0..n {
        for y in 0..n {
            m[x + 1][y + 1] = p.leq(x, y);
        }
    }
    PointedPoset::from_matrix(names, m, 0).expect("lift of a valid poset")
}

/// The lifted map: strict, fresh bottom to fresh bottom, `f` above it.
pub fn lift_map(f: &MonotoneMap) -> MonotoneMap {
    let mut assignment = vec![0];
    assignment.extend(f.assignment.iter().map(|&y| y + 1));
    MonotoneMap { source: Arc::new(lift(&f.source)), target: Arc::new(lift(&f.target)), assignment, strict: true }
}

/// The counit `ε: A_⊥ → A`, collapsing the fresh bottom onto `⊥_A`.
pub fn counit(a: &PointedPoset) -> MonotoneMap {
    let mut assignment = vec![a.bottom()];
    assignment.extend(0..a.len());
    let a = Arc::new(a.clone());
    MonotoneMap { source: Arc::new(lift(&a)), target: a, assignment, strict: true }
}

/// The comultiplication `δ: A_⊥ → A_⊥⊥`, the lift of the inclusion `A → A_⊥`.
pub fn comultiplication(a: &PointedPoset) -> MonotoneMap {
    let la = lift(a);
    let mut assignment = vec![0];
    assignment.extend((0..a.len()).map(|x| x + 2));
    MonotoneMap { source: Arc::new(la.clone()), target: Arc::new(lift(&la)), assignment, strict: true }
}

/// The three comonad laws at `a`, as `(law, holds)` pairs.
pub fn comonad_laws(a: &PointedPoset) -> Vec<(&'static str, bool)> {
    let la = lift(a);
    let d = comultiplication(a);
    let id = MonotoneMap::identity(&Arc::new(la.clone()));
    let eps_la = counit(&la);
    let l_eps = lift_map(&counit(a));
    let dd = comultiplication(&la);
    let l_d = lift_map(&d);
    let left = eps_la.after(&d).map(|c| c.assignment == id.assignment).unwrap_or(false);
    let right = l_eps.after(&d).map(|c| c.assignment == id.assignment).unwrap_or(false);
    let assoc = match (l_d.after(&d), dd.after(&d)) {
        (Ok(x), Ok(y)) => x.assignment == y.assignment,
        _ => false,
    };
    vec![("ε_{A⊥} ∘ δ = id", left), ("ε_⊥ ∘ δ = id", right), ("δ_⊥ ∘ δ = δ ∘ δ", assoc)]
}

/// Co-Kleisli composite of general monotone maps, which under the
/// isomorphism with the co-Kleisli category is plain composition.
pub fn cokleisli_compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    let mut c = g.after(f)?;
    c.strict = c.preserves_bottom();
    Ok(c)
}

/// The strict transpose `f♯: A_⊥ → B` of a general map `f: A → B`.
pub fn to_cokleisli(f: &MonotoneMap) -> MonotoneMap {
    let mut assignment = vec![f.target.bottom()];
    assignment.extend(f.assignment.iter().copied());
    MonotoneMap { source: Arc::new(lift(&f.source)), target: f.target.clone(), assignment, strict: true }
}

/// `h ∘ up` for a strict `h: A_⊥ → B`, inverse to [`to_cokleisli`].
pub fn from_cokleisli(h: &MonotoneMap, a: &Arc<PointedPoset>) -> MonotoneMap {
    let assignment: Vec<usize> = (0..a.len()).map(|x| h.apply(x + 1)).collect();
    let strict = assignment[a.bottom()] == h.target.bottom();
    MonotoneMap { source: a.clone(), target: h.target.clone(), assignment, strict }
}

/// The co-Kleisli composite computed literally as `g♯ ∘ (f♯)_⊥ ∘ δ`,
/// transported back to a general map.
pub fn cokleisli_compose_via_comonad(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.target != g.source {
        return Err(Error::TypeMismatch("composite of maps with mismatched boundary".into()));
    }
    let lf = lift_map(&to_cokleisli(f));
    let h = to_cokleisli(g).after(&lf)?.after(&comultiplication(&f.source))?;
    Ok(from_cokleisli(&h, &f.source))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<PointedPoset> {
        Arc::new(PointedPoset::chain(n))
    }

    #[test]
    fn lift_shapes() {
        assert_eq!(lift(&PointedPoset::one_point()).with_index_names(), PointedPoset::chain(2));
        assert_eq!(lift(&lift(&PointedPoset::one_point())).with_index_names(), PointedPoset::chain(3));
    }

    #[test]
    fn monotone_map_counts() {
        // monotone self-maps of a 2-chain: 3; of a 3-chain: C(5,3) = 10
        assert_eq!(monotone_maps(&chain(2), &chain(2), false).len(), 3);
        assert_eq!(monotone_maps(&chain(3), &chain(3), false).len(), 10);
        assert_eq!(monotone_maps(&chain(3), &chain(3), true).len(), 6);
    }

    #[test]
    fn strict_flag_is_validated() {
        let c = chain(2);
        assert!(MonotoneMap::new(c.clone(), c.clone(), vec![1, 1], true).is_err());
        assert!(MonotoneMap::new(c.clone(), c.clone(), vec![1, 0], false).is_err());
        assert!(MonotoneMap::new(c.clone(), c, vec![1, 1], false).is_ok());
    }

    #[test]
    fn cokleisli_formulations_agree_on_chains() {
        let c = chain(3);
        for f in monotone_maps(&c, &c, false) {
            for g in monotone_maps(&c, &c, false) {
                assert_eq!(
                    cokleisli_compose(&g, &f).unwrap().assignment,
                    cokleisli_compose_via_comonad(&g, &f).unwrap().assignment
                );
            }
        }
    }
}
