use std::collections::{HashMap, HashSet};

use crate::error::{invalid, Error, Result};

/// A finite poset with a least element.
///
/// Elements are addressed by index; ids are kept for printing and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedPoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
    bottom: usize,
}

impl PointedPoset {
    /// Builds a poset from generating pairs `x ≤ y`; the reflexive-transitive
    /// closure is taken, then antisymmetry and the bottom are checked.
    pub fn new<S: AsRef<str>>(elements: &[S], leq: &[(S, S)], bottom: &str) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(invalid(format!("duplicate element `{e}`")));
            }
        }
        let look = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "poset elements".into() })
        };
        let n = elements.len();
        let mut m = vec![vec![false; n]; n];
        for (x, y) in leq {
            m[look(x.as_ref())?][look(y.as_ref())?] = true;
        }
        let bottom = look(bottom)?;
        Self::from_matrix(elements, closure(m), bottom)
    }

    /// Builds a poset from a full order matrix, validating every axiom.
    pub fn from_matrix(elements: Vec<String>, leq: Vec<Vec<bool>>, bottom: usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(invalid("a pointed poset needs at least one element"));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) || bottom >= n {
            return Err(invalid("order matrix does not match the element list"));
        }
        let p = PointedPoset { elements, leq, bottom };
        match p.violations().into_iter().next() {
            Some(v) => Err(invalid(v)),
            None => Ok(p),
        }
    }

    /// Axiom violations of the underlying data; empty for a valid poset.
    pub fn violations(&self) -> Vec<String> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            if !self.leq[x][x] {
                out.push(format!("not reflexive at `{}`", self.elements[x]));
            }
            if !self.leq[self.bottom][x] {
                out.push(format!("bottom is not below `{}`", self.elements[x]));
            }
            for y in 0..n {
                if x != y && self.leq[x][y] && self.leq[y][x] {
                    out.push(format!("not antisymmetric: `{}` and `{}`", self.elements[x], self.elements[y]));
                }
                for z in 0..n {
                    if self.leq[x][y] && self.leq[y][z] && !self.leq[x][z] {
                        out.push(format!(
                            "not transitive: `{}` ≤ `{}` ≤ `{}`",
                            self.elements[x], self.elements[y], self.elements[z]
                        ));
                    }
                }
            }
        }
        out
    }

    /// The one-point poset `{⊥}`.
    pub fn one_point() -> Self {
        PointedPoset { elements: vec!["⊥".into()], leq: vec![vec![true]], bottom: 0 }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0, "empty chain has no bottom");
        let elements = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        PointedPoset { elements, leq, bottom: 0 }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
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
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "poset elements".into() })
    }

    /// The full order as `(x, y)` id pairs with `x ≤ y`, `x ≠ y`.
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

    /// Least upper bound of `xs`, if one exists.
    pub fn join(&self, xs: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&u| xs.iter().all(|&x| self.leq[x][u])).collect();
        upper.iter().copied().find(|&u| upper.iter().all(|&v| self.leq[u][v]))
    }

    /// A copy with elements renamed to `0..n` in index order.
    pub fn with_index_names(&self) -> Self {
        PointedPoset { elements: (0..self.len()).map(|i| i.to_string()).collect(), ..self.clone() }
    }
}

/// An id not in `taken`, starting from `base` and appending primes.
pub(crate) fn fresh_id(base: &str, taken: &[String]) -> String {
    let taken: HashSet<&str> = taken.iter().map(|s| s.as_str()).collect();
    let mut id = base.to_string();
    while taken.contains(id.as_str()) {
        id.push('\'');
    }
    id
}

fn closure(mut m: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = m.len();
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
    m
}

/// One representative of every isomorphism class of pointed posets with
/// exactly `n` elements. Representatives have elements named `0..n`, with
/// `0` the bottom.
pub fn pointed_posets_up_to_iso(n: usize) -> Vec<PointedPoset> {
    if n == 0 {
        return Vec::new();
    }
    // the non-bottom part is an arbitrary poset on n-1 elements
    let k = n - 1;
    let pairs: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let perms = permutations(k);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut m = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                m[i][j] = true;
            }
        }
        if !is_strict_order(&m) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if m[p[i]][p[j]] {
                        bits |= 1 << b;
                    }
                }
                bits
            })
            .min()
            .unwrap_or(0);
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let mut full = vec![vec![false; n]; n];
        for x in 0..n {
            full[0][x] = true;
            full[x][x] = true;
        }
        for i in 0..k {
            for j in 0..k {
                if m[i][j] {
                    full[i + 1][j + 1] = true;
                }
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        out.push(PointedPoset::from_matrix(names, full, 0).expect("generated poset is valid"));
    }
    out
}

fn is_strict_order(m: &[Vec<bool>]) -> bool {
    let k = m.len();
    for i in 0..k {
        for j in 0..k {
            if m[i][j] && m[j][i] {
                return false;
            }
            for l in 0..k {
                if m[i][j] && m[j][l] && !m[i][l] {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_validation() {
        let p = PointedPoset::new(&["b", "x", "y"], &[("b", "x"), ("x", "y")], "b").unwrap();
        assert!(p.leq(0, 2));
        assert!(PointedPoset::new(&["b", "x"], &[("x", "b"), ("b", "x")], "b").is_err());
        assert!(PointedPoset::new(&["b", "x"], &[], "b").is_err());
    }

    #[test]
    fn class_counts_match_unlabelled_posets() {
        // pointed posets on n elements ↔ posets on n-1 elements: 1, 1, 2, 5, 16
        let counts: Vec<usize> = (1..=5).map(|n| pointed_posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn joins() {
        let c = PointedPoset::chain(3);
        assert_eq!(c.join(&[0, 2, 1]), Some(2));
        assert_eq!(c.join(&[]), Some(0));
        let v = PointedPoset::new(&["b", "x", "y"], &[("b", "x"), ("b", "y")], "b").unwrap();
        assert_eq!(v.join(&[1, 2]), None);
    }
}
