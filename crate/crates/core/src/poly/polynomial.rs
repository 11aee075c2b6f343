use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// A polynomial `I ← E → B → J` over finite sets: `s: E → I`, `p: E → B`,
/// `t: B → J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub i: Vec<String>,
    pub e: Vec<String>,
    pub b: Vec<String>,
    pub j: Vec<String>,
    pub s: Vec<usize>,
    pub p: Vec<usize>,
    pub t: Vec<usize>,
}

fn check_names(kind: &str, names: &[String]) -> Result<()> {
    let set: BTreeSet<&String> = names.iter().collect();
    if set.len() != names.len() {
        return Err(invalid(format!("duplicate id in {kind}")));
    }
    Ok(())
}

fn lookup(names: &[String], id: &str, context: &str) -> Result<usize> {
    names.iter().position(|n| n == id).ok_or_else(|| Error::UnknownId { id: id.into(), context: context.into() })
}

impl Polynomial {
    pub fn new(
        i: Vec<String>,
        e: Vec<String>,
        b: Vec<String>,
        j: Vec<String>,
        s: Vec<usize>,
        p: Vec<usize>,
        t: Vec<usize>,
    ) -> Result<Self> {
        for (kind, names) in [("I", &i), ("E", &e), ("B", &b), ("J", &j)] {
            check_names(kind, names)?;
        }
        let total = |m: &[usize], dom: usize, cod: usize| m.len() == dom && m.iter().all(|&x| x < cod);
        if !total(&s, e.len(), i.len()) || !total(&p, e.len(), b.len()) || !total(&t, b.len(), j.len()) {
            return Err(invalid("polynomial maps must be total with the stated boundaries"));
        }
        Ok(Polynomial { i, e, b, j, s, p, t })
    }

    /// Builds a polynomial from id-level maps, each listed as `(x, f(x))`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_ids<S: AsRef<str>>(
        i: &[S],
        e: &[S],
        b: &[S],
        j: &[S],
        s: &[(S, S)],
        p: &[(S, S)],
        t: &[(S, S)],
    ) -> Result<Self> {
        let own = |xs: &[S]| xs.iter().map(|x| x.as_ref().to_string()).collect::<Vec<_>>();
        let (i, e, b, j) = (own(i), own(e), own(b), own(j));
        let table = |pairs: &[(S, S)], dom: &[String], cod: &[String], name: &str| -> Result<Vec<usize>> {
            let mut out = vec![None; dom.len()];
            for (x, y) in pairs {
                let x = lookup(dom, x.as_ref(), name)?;
                if out[x].replace(lookup(cod, y.as_ref(), name)?).is_some() {
                    return Err(invalid(format!("map {name} assigns `{}` twice", dom[x])));
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(k, v)| v.ok_or_else(|| invalid(format!("map {name} misses `{}`", dom[k]))))
                .collect()
        };
        let s = table(s, &e, &i, "s")?;
        let p = table(p, &e, &b, "p")?;
        let t = table(t, &b, &j, "t")?;
        Self::new(i, e, b, j, s, p, t)
    }

    /// An endo-polynomial over `1` with the given constructors and arities.
    pub fn over_one<S: AsRef<str>>(constructors: &[(S, usize)]) -> Self {
        let mut b = Vec::new();
        let mut e = Vec::new();
        let mut p = Vec::new();
        for (k, (name, arity)) in constructors.iter().enumerate() {
            b.push(name.as_ref().to_string());
            for a in 0..*arity {
                e.push(format!("{}.{a}", name.as_ref()));
                p.push(k);
            }
        }
        let n_e = e.len();
        let n_b = b.len();
        Polynomial::new(vec!["*".into()], e, b, vec!["*".into()], vec![0; n_e], p, vec![0; n_b])
            .expect("well-formed by construction")
    }

    /// `leaf | node(X, X)`.
    pub fn binary_tree() -> Self {
        Self::over_one(&[("leaf", 0), ("node", 2)])
    }

    /// `A × X`, one unary constructor per label.
    pub fn stream<S: AsRef<str>>(labels: &[S]) -> Self {
        let cs: Vec<(String, usize)> = labels.iter().map(|l| (l.as_ref().to_string(), 1)).collect();
        Self::over_one(&cs)
    }

    /// Constructors of arity zero only.
    pub fn constant<S: AsRef<str>>(labels: &[S]) -> Self {
        let cs: Vec<(String, usize)> = labels.iter().map(|l| (l.as_ref().to_string(), 0)).collect();
        Self::over_one(&cs)
    }

    /// The fiber `p⁻¹(b)` in index order.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.e.len()).filter(|&e| self.p[e] == b).collect()
    }

    pub fn arity(&self, b: usize) -> usize {
        self.p.iter().filter(|&&x| x == b).count()
    }

    /// `I = J` as id lists.
    pub fn is_endo(&self) -> bool {
        self.i == self.j
    }

    pub fn is_over_one(&self) -> bool {
        self.is_endo() && self.i.len() == 1
    }

    /// `p` is a bijection.
    pub fn is_span(&self) -> bool {
        self.e.len() == self.b.len() && (0..self.b.len()).all(|b| self.arity(b) == 1)
    }

    /// `B` is a singleton.
    pub fn is_monomial(&self) -> bool {
        self.b.len() == 1
    }

    /// The identity span on `I`.
    pub fn identity_span(i: &[String]) -> Self {
        let n = i.len();
        let ids: Vec<usize> = (0..n).collect();
        Polynomial {
            i: i.to_vec(),
            e: i.iter().map(|x| format!("e.{x}")).collect(),
            b: i.iter().map(|x| format!("b.{x}")).collect(),
            j: i.to_vec(),
            s: ids.clone(),
            p: ids.clone(),
            t: ids,
        }
    }

    pub(crate) fn require_endo(&self) -> Result<()> {
        if self.is_endo() {
            Ok(())
        } else {
            Err(Error::TypeMismatch("expected an endo-polynomial (I = J)".into()))
        }
    }

    pub(crate) fn require_over_one(&self) -> Result<()> {
        if self.is_over_one() {
            Ok(())
        } else {
            Err(Error::TypeMismatch("expected an endo-polynomial over a singleton".into()))
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = (0..self.b.len()).map(|b| format!("{}/{}", self.b[b], self.arity(b))).collect();
        write!(f, "{}", cs.join(" + "))
    }
}

/// A finite family of sets indexed by the sorts of a polynomial.
pub type Family = Vec<Vec<String>>;

/// `j ↦ Σ_{b ∈ t⁻¹(j)} Π_{e ∈ p⁻¹(b)} X_{s(e)}`, elements rendered as
/// `b(x₁,…,x_k)` in fiber order (`b` alone for an empty fiber).
pub fn apply_polynomial(poly: &Polynomial, x: &Family) -> Result<Family> {
    if x.len() != poly.i.len() {
        return Err(Error::TypeMismatch(format!("family has {} sorts, polynomial expects {}", x.len(), poly.i.len())));
    }
    let mut out: Family = vec![Vec::new(); poly.j.len()];
    for b in 0..poly.b.len() {
        let fib = poly.fiber(b);
        let choices: Vec<&Vec<String>> = fib.iter().map(|&e| &x[poly.s[e]]).collect();
        let sizes: Vec<usize> = choices.iter().map(|c| c.len()).collect();
        for idx in tuples(&sizes) {
            let elem = if fib.is_empty() {
                poly.b[b].clone()
            } else {
                let args: Vec<&str> = idx.iter().enumerate().map(|(k, &i)| choices[k][i].as_str()).collect();
                format!("{}({})", poly.b[b], args.join(","))
            };
            out[poly.t[b]].push(elem);
        }
    }
    Ok(out)
}

/// All index tuples `(i₀, …, i_{k-1})` with `iₙ < sizes[n]`, last position
/// fastest. One empty tuple when `sizes` is empty.
pub(crate) fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_anything_is_a_singleton() {
        let p = Polynomial::constant(&["b"]);
        assert_eq!(apply_polynomial(&p, &vec![vec!["x".into(), "y".into()]]).unwrap(), vec![vec!["b".to_string()]]);
    }

    #[test]
    fn binary_node_on_three_elements() {
        let p = Polynomial::over_one(&[("node", 2)]);
        let x = vec![vec!["x".into(), "y".into(), "z".into()]];
        let out = apply_polynomial(&p, &x).unwrap();
        assert_eq!(out[0].len(), 9);
        assert_eq!(out[0][1], "node(x,y)");
    }

    #[test]
    fn empty_family_keeps_constants() {
        let out = apply_polynomial(&Polynomial::binary_tree(), &vec![vec![]]).unwrap();
        assert_eq!(out, vec![vec!["leaf".to_string()]]);
    }

    #[test]
    fn shape_predicates() {
        assert!(Polynomial::stream(&["a", "b"]).is_span());
        assert!(!Polynomial::binary_tree().is_span());
        assert!(Polynomial::over_one(&[("m", 3)]).is_monomial());
        assert!(Polynomial::identity_span(&["x".into(), "y".into()]).is_span());
    }
}
