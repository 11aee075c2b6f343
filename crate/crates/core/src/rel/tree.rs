use std::collections::{BTreeMap, BTreeSet};

use super::mrel::MultisetRel;
use super::multiset::Multiset;

/// A finite multiset tree labelled by rules of an endorelation: a node using
/// rule `(m, a)` has one child per occurrence in `m`, deriving that element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTree {
    pub rule: (Multiset, usize),
    pub children: Vec<WitnessTree>,
}

impl WitnessTree {
    /// The element this tree derives.
    pub fn label(&self) -> usize {
        self.rule.1
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Every node uses a rule of `f` and its children derive exactly the
    /// rule's multiset.
    pub fn is_valid_for(&self, f: &MultisetRel) -> bool {
        if !f.pairs.contains(&self.rule) {
            return false;
        }
        let labels: Vec<usize> = self.children.iter().map(|c| c.label()).collect();
        Multiset::from_elems(&labels) == self.rule.0 && self.children.iter().all(|c| c.is_valid_for(f))
    }
}

/// Result of evaluating the tree construction up to a height bound.
#[derive(Debug, Clone)]
pub struct TreeStar {
    pub elements: BTreeSet<usize>,
    pub stabilized: bool,
    pub depth: usize,
    /// One witness per derived element.
    pub witnesses: BTreeMap<usize, WitnessTree>,
}

/// Elements derived by some tree of height at most `depth`; `stabilized`
/// when raising the bound to `depth + 1` derives nothing new.
pub fn tree_star(f: &MultisetRel, depth: usize) -> TreeStar {
    assert!(f.is_endo(), "tree construction on a non-endomorphism");
    let levels = witness_levels(f, depth + 1);
    let at = |h: usize| -> BTreeSet<usize> { levels[h].keys().copied().collect() };
    let elements = at(depth);
    let stabilized = elements == at(depth + 1);
    let witnesses = levels.into_iter().nth(depth).expect("level exists");
    debug_assert!(witnesses.values().all(|t| t.is_valid_for(f) && t.height() <= depth));
    TreeStar { elements, stabilized, depth, witnesses }
}

/// `levels[h]`: a tree of height ≤ h for every element derivable that way.
fn witness_levels(f: &MultisetRel, max: usize) -> Vec<BTreeMap<usize, WitnessTree>> {
    let mut levels: Vec<BTreeMap<usize, WitnessTree>> = Vec::with_capacity(max + 1);
    for h in 0..=max {
        let mut level = if h == 0 { BTreeMap::new() } else { levels[h - 1].clone() };
        for (m, a) in &f.pairs {
            if level.contains_key(a) {
                continue;
            }
            let children: Option<Vec<WitnessTree>> = if m.is_empty() {
                Some(Vec::new())
            } else if h == 0 {
                None
            } else {
                m.elems().into_iter().map(|b| levels[h - 1].get(&b).cloned()).collect()
            };
            if let Some(children) = children {
                level.insert(*a, WitnessTree { rule: (m.clone(), *a), children });
            }
        }
        levels.push(level);
    }
    levels
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rel::{mrel_star, FinSet};

    #[test]
    fn depth_zero_uses_leaf_rules() {
        let a = Arc::new(FinSet::new(&["a", "b"]).unwrap());
        let f = MultisetRel::from_ids(a.clone(), a, &[(vec![], "a"), (vec!["a"], "b")]).unwrap();
        let t0 = tree_star(&f, 0);
        assert_eq!(t0.elements, [0].into_iter().collect());
        assert!(!t0.stabilized);
        let t2 = tree_star(&f, 2);
        assert_eq!(t2.elements, mrel_star(&f));
        assert!(t2.stabilized);
        assert_eq!(t2.witnesses[&1].height(), 1);
        assert!(t2.witnesses.values().all(|t| t.is_valid_for(&f)));
    }

    #[test]
    fn binary_rule_witness_has_two_children() {
        let a = Arc::new(FinSet::new(&["a", "b"]).unwrap());
        let f = MultisetRel::from_ids(a.clone(), a, &[(vec![], "a"), (vec!["a", "a"], "b")]).unwrap();
        let t = tree_star(&f, 1);
        assert_eq!(t.witnesses[&1].children.len(), 2);
    }
}
