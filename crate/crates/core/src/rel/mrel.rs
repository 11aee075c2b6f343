use std::collections::BTreeSet;
use std::sync::Arc;

use super::multiset::{FinSet, Multiset};
use crate::error::{invalid, Error, Result};

/// Largest multiset the composition will split.
pub const MAX_SPLIT: usize = 8;

/// A co-Kleisli morphism `A → B` of the relational model: a finite set of
/// pairs `(m, b)` with `m` a multiset over `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultisetRel {
    pub source: Arc<FinSet>,
    pub target: Arc<FinSet>,
    pub pairs: BTreeSet<(Multiset, usize)>,
}

impl MultisetRel {
    pub fn new(
        source: Arc<FinSet>,
        target: Arc<FinSet>,
        pairs: impl IntoIterator<Item = (Multiset, usize)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for (m, b) in &pairs {
            if m.max_element().is_some_and(|x| x >= source.len()) || *b >= target.len() {
                return Err(invalid("pair refers to an element outside the boundary"));
            }
        }
        Ok(MultisetRel { source, target, pairs })
    }

    pub fn from_ids<S: AsRef<str>>(source: Arc<FinSet>, target: Arc<FinSet>, pairs: &[(Vec<S>, S)]) -> Result<Self> {
        let mut out = Vec::new();
        for (m, b) in pairs {
            let xs = m.iter().map(|x| source.element(x.as_ref())).collect::<Result<Vec<_>>>()?;
            out.push((Multiset::from_elems(&xs), target.element(b.as_ref())?));
        }
        Self::new(source, target, out)
    }

    pub fn empty(source: &Arc<FinSet>, target: &Arc<FinSet>) -> Self {
        MultisetRel { source: source.clone(), target: target.clone(), pairs: BTreeSet::new() }
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Every pair is `([a], b)`: the image of a plain relation.
    pub fn is_linear(&self) -> bool {
        self.pairs.iter().all(|(m, _)| m.size() == 1)
    }

    /// The point `{([], a) | a ∈ xs}: ∅ → A`.
    pub fn point(a: &Arc<FinSet>, xs: &BTreeSet<usize>) -> Self {
        MultisetRel {
            source: Arc::new(FinSet::empty()),
            target: a.clone(),
            pairs: xs.iter().map(|&x| (Multiset::empty(), x)).collect(),
        }
    }

    /// The subset picked out by a 1-cell out of the empty set.
    pub fn as_subset(&self) -> BTreeSet<usize> {
        self.pairs.iter().filter(|(m, _)| m.is_empty()).map(|&(_, b)| b).collect()
    }

    /// `{b | (m, b) ∈ self, supp m ⊆ xs}`: composite with a point.
    pub fn apply(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.pairs.iter().filter(|(m, _)| m.support().all(|x| xs.contains(&x))).map(|&(_, b)| b).collect()
    }

    pub fn show(&self) -> String {
        let ps: Vec<String> = self
            .pairs
            .iter()
            .map(|(m, b)| format!("({}, {})", m.show(&self.source), self.target.element_id(*b)))
            .collect();
        format!("{{{}}}", ps.join(", "))
    }
}

/// `{([a], a) | a ∈ A}`.
pub fn mrel_identity(a: &Arc<FinSet>) -> MultisetRel {
    MultisetRel {
        source: a.clone(),
        target: a.clone(),
        pairs: (0..a.len()).map(|x| (Multiset::singleton(x), x)).collect(),
    }
}

/// The promotion `J(s)` of a plain relation `s ⊆ A × B`.
pub fn promote(a: &Arc<FinSet>, b: &Arc<FinSet>, s: &BTreeSet<(usize, usize)>) -> MultisetRel {
    MultisetRel {
        source: a.clone(),
        target: b.clone(),
        pairs: s.iter().map(|&(x, y)| (Multiset::singleton(x), y)).collect(),
    }
}

/// Co-Kleisli composite `g ⊙ f`: `(m, c)` whenever `(n, c) ∈ g`,
/// `n = [b₁, …, b_k]`, `(mᵢ, bᵢ) ∈ f` and `m = m₁ + ⋯ + m_k`.
pub fn mrel_compose(g: &MultisetRel, f: &MultisetRel) -> Result<MultisetRel> {
    if f.target != g.source {
        return Err(Error::TypeMismatch(format!(
            "composite of A → B with C → D where B has {} and C has {} elements",
            f.target.len(),
            g.source.len()
        )));
    }
    let mut by_target: Vec<Vec<&Multiset>> = vec![Vec::new(); f.target.len()];
    for (m, b) in &f.pairs {
        by_target[*b].push(m);
    }
    let mut pairs = BTreeSet::new();
    for (n, c) in &g.pairs {
        if n.size() > MAX_SPLIT {
            return Err(Error::SizeCap(format!("multiset of size {} exceeds {MAX_SPLIT}", n.size())));
        }
        let occurrences = n.elems();
        if occurrences.iter().any(|&b| by_target[b].is_empty()) {
            continue;
        }
        let mut sums = BTreeSet::new();
        splittings(&occurrences, &by_target, 0, Multiset::empty(), &mut sums);
        pairs.extend(sums.into_iter().map(|m| (m, *c)));
    }
    Ok(MultisetRel { source: f.source.clone(), target: g.target.clone(), pairs })
}

fn splittings(occ: &[usize], by_target: &[Vec<&Multiset>], k: usize, acc: Multiset, out: &mut BTreeSet<Multiset>) {
    if k == occ.len() {
        out.insert(acc);
        return;
    }
    for m in &by_target[occ[k]] {
        splittings(occ, by_target, k + 1, acc.sum(m), out);
    }
}

/// Least `X ⊆ A` closed under the rules of `f`, by iteration from `∅`.
pub fn mrel_star(f: &MultisetRel) -> BTreeSet<usize> {
    mrel_star_trace(f).pop().expect("trace is nonempty")
}

/// The closure rounds `∅, f(∅), f(f(∅)), …` up to the first repeat.
pub fn mrel_star_trace(f: &MultisetRel) -> Vec<BTreeSet<usize>> {
    assert!(f.is_endo(), "star of a non-endomorphism");
    let mut out = vec![BTreeSet::new()];
    loop {
        let last = out.last().expect("nonempty");
        let next = f.apply(last);
        if &next == last {
            return out;
        }
        out.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> Arc<FinSet> {
        Arc::new(FinSet::new(names).unwrap())
    }

    #[test]
    fn compose_with_nullary_rule() {
        let (a, b, c) = (set(&["a"]), set(&["b"]), set(&["c"]));
        let f = MultisetRel::from_ids(a.clone(), b.clone(), &[(vec![], "b")]).unwrap();
        let g = MultisetRel::from_ids(b, c.clone(), &[(vec!["b"], "c")]).unwrap();
        let gf = mrel_compose(&g, &f).unwrap();
        assert_eq!(gf, MultisetRel::from_ids(a, c, &[(vec![], "c")]).unwrap());
    }

    #[test]
    fn multiplicities_add_up() {
        let a = set(&["a", "b"]);
        let f = MultisetRel::from_ids(a.clone(), a.clone(), &[(vec!["a"], "a"), (vec!["b", "b"], "a")]).unwrap();
        let g = MultisetRel::from_ids(a.clone(), a.clone(), &[(vec!["a", "a"], "b")]).unwrap();
        let gf = mrel_compose(&g, &f).unwrap();
        let expect = MultisetRel::from_ids(
            a.clone(),
            a,
            &[(vec!["a", "a"], "b"), (vec!["a", "b", "b"], "b"), (vec!["b", "b", "b", "b"], "b")],
        )
        .unwrap();
        assert_eq!(gf, expect);
    }

    #[test]
    fn star_examples() {
        let a = set(&["a", "b"]);
        let f = MultisetRel::from_ids(a.clone(), a.clone(), &[(vec!["a"], "a")]).unwrap();
        assert!(mrel_star(&f).is_empty());
        let f = MultisetRel::from_ids(a.clone(), a.clone(), &[(vec![], "a"), (vec!["a"], "b")]).unwrap();
        assert_eq!(mrel_star(&f), [0, 1].into_iter().collect());
        assert_eq!(mrel_star_trace(&f).len(), 3);
        assert!(mrel_star(&MultisetRel::empty(&a, &a)).is_empty());
    }

    #[test]
    fn boundary_errors() {
        let (a, b) = (set(&["a"]), set(&["b", "c"]));
        let f = MultisetRel::empty(&a, &b);
        assert!(matches!(mrel_compose(&f, &f), Err(Error::TypeMismatch(_))));
        assert!(MultisetRel::new(a.clone(), a, [(Multiset::singleton(3), 0)]).is_err());
    }
}
