use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// A finite set of named elements, addressed by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    pub fn new<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(invalid(format!("duplicate element `{e}`")));
            }
        }
        Ok(FinSet { elements })
    }

    /// `n` elements named `a`, `b`, `c`, ….
    pub fn letters(n: usize) -> Self {
        FinSet { elements: (0..n).map(letter).collect() }
    }

    pub fn empty() -> Self {
        FinSet { elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
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
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "set elements".into() })
    }

    /// Renders a subset as `{a, b}`.
    pub fn show_subset(&self, xs: &[usize]) -> String {
        let names: Vec<&str> = xs.iter().map(|&x| self.element_id(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

pub(crate) fn letter(i: usize) -> String {
    let base = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        base.to_string()
    } else {
        format!("{base}{}", i / 26)
    }
}

/// A finite multiset of element indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(BTreeMap<usize, u32>);

impl Multiset {
    pub fn empty() -> Self {
        Multiset(BTreeMap::new())
    }

    pub fn singleton(x: usize) -> Self {
        Multiset::from_elems(&[x])
    }

    pub fn from_elems(xs: &[usize]) -> Self {
        let mut m = BTreeMap::new();
        for &x in xs {
            *m.entry(x).or_insert(0) += 1;
        }
        Multiset(m)
    }

    /// From `(element, multiplicity)` pairs; zero multiplicities are rejected.
    pub fn from_counts(pairs: &[(usize, u32)]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for &(x, k) in pairs {
            if k == 0 {
                return Err(invalid("multiplicities must be positive"));
            }
            *m.entry(x).or_insert(0) += k;
        }
        Ok(Multiset(m))
    }

    pub fn size(&self) -> usize {
        self.0.values().map(|&k| k as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&x, &k)| (x, k))
    }

    /// Elements with repetition, in ascending order.
    pub fn elems(&self) -> Vec<usize> {
        self.0.iter().flat_map(|(&x, &k)| std::iter::repeat_n(x, k as usize)).collect()
    }

    pub fn sum(&self, other: &Multiset) -> Multiset {
        let mut m = self.0.clone();
        for (&x, &k) in &other.0 {
            *m.entry(x).or_insert(0) += k;
        }
        Multiset(m)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Multiset {
        let mut m = BTreeMap::new();
        for (&x, &k) in &self.0 {
            *m.entry(f(x)).or_insert(0) += k;
        }
        Multiset(m)
    }

    pub fn max_element(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn show(&self, set: &FinSet) -> String {
        let names: Vec<&str> = self.elems().into_iter().map(|x| set.element_id(x)).collect();
        format!("[{}]", names.join(", "))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.elems().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", xs.join(","))
    }
}

/// All multisets over `0..n` of size at most `max_size`, in a fixed order.
pub fn multisets_up_to(n: usize, max_size: usize) -> Vec<Multiset> {
    let mut out = vec![Multiset::empty()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for xs in &frontier {
            let start = xs.last().copied().unwrap_or(0);
            for x in start..n {
                let mut ys = xs.clone();
                ys.push(x);
                out.push(Multiset::from_elems(&ys));
                next.push(ys);
            }
        }
        frontier = next;
    }
    out
}
