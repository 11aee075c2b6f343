use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// A finite preorder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Preorder {
    /// Builds a preorder from generating pairs, taking the
    /// reflexive-transitive closure.
    pub fn new<S: AsRef<str>>(elements: &[S], leq: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(invalid(format!("duplicate element `{e}`")));
            }
        }
        let n = elements.len();
        let mut m = vec![vec![false; n]; n];
        for (x, y) in leq {
            let look = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "preorder elements".into() })
            };
            m[look(x.as_ref())?][look(y.as_ref())?] = true;
        }
        Ok(Self::from_relation(elements, m))
    }

    /// Reflexive-transitive closure of an arbitrary relation matrix.
    pub fn from_relation(elements: Vec<String>, mut m: Vec<Vec<bool>>) -> Self {
        let n = elements.len();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        Preorder { elements, leq: m }
    }

    pub fn discrete(n: usize) -> Self {
        let elements = (0..n).map(super::multiset::letter).collect();
        Self::from_relation(elements, vec![vec![false; n]; n])
    }

    pub fn empty() -> Self {
        Preorder { elements: Vec::new(), leq: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_id(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn element(&self, id: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == id)
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "preorder elements".into() })
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| x == y || !self.leq[x][y]))
    }

    /// Strict generating pairs `x ≤ y, x ≠ y`, as ids.
    pub fn order_pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq[x][y] {
                    out.push((self.elements[x].clone(), self.elements[y].clone()));
                }
            }
        }
        out
    }

    pub fn down_closure(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len()).filter(|&y| xs.iter().any(|&x| self.leq[y][x])).collect()
    }

    /// `u ⊑ v`: every element of `u` is below some element of `v`.
    pub fn hoare_leq(&self, u: &BTreeSet<usize>, v: &BTreeSet<usize>) -> bool {
        u.iter().all(|&x| v.iter().any(|&y| self.leq[x][y]))
    }

    /// Smallest index in the equivalence class of `x`.
    fn class_rep(&self, x: usize) -> usize {
        (0..self.len()).find(|&y| self.leq[x][y] && self.leq[y][x]).expect("reflexive")
    }

    /// Canonical representative of `u` up to `⊑`-equivalence: one element
    /// (the least index) per maximal class of its down-closure.
    pub fn canonical_set(&self, u: &BTreeSet<usize>) -> BTreeSet<usize> {
        u.iter()
            .filter(|&&x| !u.iter().any(|&y| self.leq[x][y] && !self.leq[y][x]))
            .map(|&x| self.class_rep(x))
            .collect()
    }
}

type Gen = (BTreeSet<usize>, usize);

/// A co-Kleisli morphism of the Scott model, presented by generators. The
/// relation it denotes is the saturation: `(u, b)` whenever some generator
/// `(u₀, b₀)` has `u₀ ⊑ u` and `b ≤ b₀`. Stored normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealRel {
    pub source: Arc<Preorder>,
    pub target: Arc<Preorder>,
    pairs: BTreeSet<Gen>,
}

impl IdealRel {
    pub fn new(source: Arc<Preorder>, target: Arc<Preorder>, pairs: impl IntoIterator<Item = Gen>) -> Result<Self> {
        let pairs: Vec<Gen> = pairs.into_iter().collect();
        for (u, b) in &pairs {
            if u.iter().any(|&x| x >= source.len()) || *b >= target.len() {
                return Err(invalid("pair refers to an element outside the boundary"));
            }
        }
        Ok(Self::normalized(source, target, pairs))
    }

    pub fn from_ids<S: AsRef<str>>(
        source: Arc<Preorder>,
        target: Arc<Preorder>,
        pairs: &[(Vec<S>, S)],
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (u, b) in pairs {
            let u = u.iter().map(|x| source.element(x.as_ref())).collect::<Result<BTreeSet<_>>>()?;
            out.push((u, target.element(b.as_ref())?));
        }
        Self::new(source, target, out)
    }

    fn normalized(source: Arc<Preorder>, target: Arc<Preorder>, pairs: Vec<Gen>) -> Self {
        let canon: BTreeSet<Gen> =
            pairs.into_iter().map(|(u, b)| (source.canonical_set(&u), target.class_rep(b))).collect();
        let keep: BTreeSet<Gen> = canon
            .iter()
            .filter(|p| !canon.iter().any(|q| q != *p && subsumes(&source, &target, q, p)))
            .cloned()
            .collect();
        IdealRel { source, target, pairs: keep }
    }

    pub fn generators(&self) -> &BTreeSet<Gen> {
        &self.pairs
    }

    /// Membership in the saturation.
    pub fn contains(&self, u: &BTreeSet<usize>, b: usize) -> bool {
        self.pairs.iter().any(|(u0, b0)| self.source.hoare_leq(u0, u) && self.target.leq(b, *b0))
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Every generator has a singleton source set.
    pub fn is_linear(&self) -> bool {
        self.pairs.iter().all(|(u, _)| u.len() == 1)
    }

    /// The point picked out by the down-closed set `xs`.
    pub fn point(a: &Arc<Preorder>, xs: &BTreeSet<usize>) -> Self {
        Self::normalized(Arc::new(Preorder::empty()), a.clone(), xs.iter().map(|&x| (BTreeSet::new(), x)).collect())
    }

    /// The down-closed subset a 1-cell out of the empty preorder denotes.
    pub fn as_subset(&self) -> BTreeSet<usize> {
        let tops = self.pairs.iter().filter(|(u, _)| u.is_empty()).map(|&(_, b)| b).collect();
        self.target.down_closure(&tops)
    }

    /// Image of a down-closed set.
    pub fn apply(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        let tops = self.pairs.iter().filter(|(u, _)| u.iter().all(|x| xs.contains(x))).map(|&(_, b)| b).collect();
        self.target.down_closure(&tops)
    }

    pub fn show(&self) -> String {
        let ps: Vec<String> = self
            .pairs
            .iter()
            .map(|(u, b)| {
                let us: Vec<&str> = u.iter().map(|&x| self.source.element_id(x)).collect();
                format!("({{{}}}, {})", us.join(", "), self.target.element_id(*b))
            })
            .collect();
        format!("{{{}}}", ps.join(", "))
    }
}

/// Every preorder on `n` elements up to isomorphism, elements named by
/// letters.
pub fn preorders_up_to_iso(n: usize) -> Vec<Preorder> {
    let elements: Vec<String> = (0..n).map(super::multiset::letter).collect();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let perms = crate::poset::permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << off.len()) {
        let mut m = vec![vec![false; n]; n];
        for (k, &(i, j)) in off.iter().enumerate() {
            m[i][j] = bits & (1 << k) != 0;
        }
        let p = Preorder::from_relation(elements.clone(), m);
        let canon = perms
            .iter()
            .map(|pi| {
                let mut key = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        key[pi[i] * n + pi[j]] = p.leq[i][j];
                    }
                }
                key
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(p);
        }
    }
    out
}

/// `p` lies in the saturation of `q`.
fn subsumes(s: &Preorder, t: &Preorder, q: &Gen, p: &Gen) -> bool {
    s.hoare_leq(&q.0, &p.0) && t.leq(p.1, q.1)
}

/// `{({a}, a)}`.
pub fn scott_identity(a: &Arc<Preorder>) -> IdealRel {
    IdealRel::normalized(a.clone(), a.clone(), (0..a.len()).map(|x| ([x].into(), x)).collect())
}

/// The promotion of a plain ideal relation `s ⊆ A × B`.
pub fn scott_promote(a: &Arc<Preorder>, b: &Arc<Preorder>, s: &BTreeSet<(usize, usize)>) -> IdealRel {
    IdealRel::normalized(a.clone(), b.clone(), s.iter().map(|&(x, y)| ([x].into(), y)).collect())
}

/// Composite `g ∘ f`: for each generator `(v, c)` of `g`, choose for every
/// `b ∈ v` a generator `(u_b, b')` of `f` with `b ≤ b'`; the union of the
/// `u_b` with `c` is a generator of the composite.
pub fn scott_compose(g: &IdealRel, f: &IdealRel) -> Result<IdealRel> {
    if f.target != g.source {
        return Err(Error::TypeMismatch("composite of ideal relations with mismatched boundary".into()));
    }
    let fgens: Vec<&Gen> = f.pairs.iter().collect();
    let mut out = Vec::new();
    for (v, c) in &g.pairs {
        let options: Vec<Vec<&BTreeSet<usize>>> =
            v.iter().map(|&b| fgens.iter().filter(|(_, b1)| f.target.leq(b, *b1)).map(|(u, _)| u).collect()).collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; options.len()];
        loop {
            let u: BTreeSet<usize> =
                choice.iter().enumerate().flat_map(|(i, &k)| options[i][k].iter().copied()).collect();
            out.push((u, *c));
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    Ok(IdealRel::normalized(f.source.clone(), g.target.clone(), out))
}

/// Least down-closed `X` closed under the rules of `f`.
pub fn scott_star(f: &IdealRel) -> BTreeSet<usize> {
    assert!(f.is_endo(), "star of a non-endomorphism");
    let mut x = BTreeSet::new();
    loop {
        let next = f.apply(&x);
        if next == x {
            return x;
        }
        x = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Arc<Preorder> {
        Arc::new(Preorder::new(&["lo", "hi"], &[("lo", "hi")]).unwrap())
    }

    #[test]
    fn preorder_classes() {
        let counts: Vec<usize> = (0..=4).map(|n| preorders_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn normalization_drops_subsumed_pairs() {
        let a = chain2();
        // ({lo}, lo) is subsumed by ({lo}, hi); ({hi}, hi) by ({lo}, hi)
        let r = IdealRel::from_ids(a.clone(), a.clone(), &[(vec!["lo"], "lo"), (vec!["lo"], "hi"), (vec!["hi"], "hi")])
            .unwrap();
        assert_eq!(r.generators().len(), 1);
        assert!(r.contains(&[1].into(), 0));
        assert!(!r.contains(&BTreeSet::new(), 0));
    }

    #[test]
    fn hoare_equivalent_sets_collapse() {
        let a = chain2();
        let r1 = IdealRel::from_ids(a.clone(), a.clone(), &[(vec!["lo", "hi"], "lo")]).unwrap();
        let r2 = IdealRel::from_ids(a.clone(), a.clone(), &[(vec!["hi"], "lo")]).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn identity_is_unital() {
        let a = chain2();
        let id = scott_identity(&a);
        let f = IdealRel::from_ids(a.clone(), a.clone(), &[(vec![], "lo"), (vec!["lo", "hi"], "hi")]).unwrap();
        assert_eq!(scott_compose(&id, &f).unwrap(), f);
        assert_eq!(scott_compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn star_on_discrete() {
        let a = Arc::new(Preorder::discrete(2));
        let f = IdealRel::from_ids(a.clone(), a.clone(), &[(vec![], "a")]).unwrap();
        assert_eq!(scott_star(&f), [0].into());
    }

    #[test]
    fn star_is_down_closed() {
        let a = chain2();
        let f = IdealRel::from_ids(a.clone(), a.clone(), &[(vec![], "hi")]).unwrap();
        assert_eq!(scott_star(&f), [0, 1].into());
    }
}
