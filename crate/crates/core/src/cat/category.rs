use std::collections::HashMap;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// An arrow record: opaque id plus endpoints (object indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with an explicit composition table.
///
/// Objects and arrows are addressed by index internally and by their string
/// ids at the boundary. Construction only checks that ids resolve; the
/// category laws are checked by [`FinCategory::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<Option<usize>>,
    // compose[g][f] = g ∘ f
    compose: Vec<Vec<Option<usize>>>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// A failed category law, with the ids that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCategory{{objects: {:?}, arrows: [", self.objects)?;
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {} -> {}", a.id, self.objects[a.source], self.objects[a.target])?;
        }
        write!(f, "]}}")
    }
}

impl FinCategory {
    /// Builds a category from id-level data.
    ///
    /// `compose` lists triples `(g, f, g∘f)`.
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        arrows: &[(S, S, S)],
        identities: &[(S, S)],
        compose: &[(S, S, S)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(invalid(format!("duplicate object id `{o}`")));
            }
        }
        let obj = |id: &str| {
            object_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "objects".into() })
        };
        let mut arrow_recs = Vec::with_capacity(arrows.len());
        let mut arrow_index = HashMap::new();
        for (id, s, t) in arrows {
            let id = id.as_ref().to_string();
            if arrow_index.insert(id.clone(), arrow_recs.len()).is_some() {
                return Err(invalid(format!("duplicate arrow id `{id}`")));
            }
            arrow_recs.push(Arrow { id, source: obj(s.as_ref())?, target: obj(t.as_ref())? });
        }
        let arr = |id: &str| {
            arrow_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "arrows".into() })
        };
        let mut identity = vec![None; objects.len()];
        for (o, a) in identities {
            let o = obj(o.as_ref())?;
            if identity[o].is_some() {
                return Err(invalid(format!("object `{}` has two identities", objects[o])));
            }
            identity[o] = Some(arr(a.as_ref())?);
        }
        let n = arrow_recs.len();
        let mut table = vec![vec![None; n]; n];
        for (g, f, h) in compose {
            let (g, f, h) = (arr(g.as_ref())?, arr(f.as_ref())?, arr(h.as_ref())?);
            if table[g][f].is_some() {
                return Err(invalid(format!("composite {} ∘ {} listed twice", arrow_recs[g].id, arrow_recs[f].id)));
            }
            table[g][f] = Some(h);
        }
        Ok(FinCategory { objects, arrows: arrow_recs, identity, compose: table, object_index, arrow_index })
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        Self::new::<&str>(&[], &[], &[], &[]).expect("empty category")
    }

    /// One object, one arrow.
    pub fn terminal() -> Self {
        Self::new(&["*"], &[("id_*", "*", "*")], &[("*", "id_*")], &[("id_*", "id_*", "id_*")])
            .expect("terminal category")
    }

    /// Discrete category on the given object ids.
    pub fn discrete<S: AsRef<str>>(objects: &[S]) -> Self {
        let ids: Vec<String> = objects.iter().map(|o| format!("id_{}", o.as_ref())).collect();
        let arrows: Vec<(String, String, String)> = objects
            .iter()
            .zip(&ids)
            .map(|(o, i)| (i.clone(), o.as_ref().to_string(), o.as_ref().to_string()))
            .collect();
        let idents: Vec<(String, String)> =
            objects.iter().zip(&ids).map(|(o, i)| (o.as_ref().to_string(), i.clone())).collect();
        let comp: Vec<(String, String, String)> = ids.iter().map(|i| (i.clone(), i.clone(), i.clone())).collect();
        let objs: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        Self::new(&objs, &arrows, &idents, &comp).expect("discrete category")
    }

    /// The preorder `leq` (given as a reflexive, transitive relation by index)
    /// viewed as a thin category. Arrow ids are `a<=b`, identities `a<=a`.
    pub fn thin<S: AsRef<str>>(objects: &[S], leq: &[Vec<bool>]) -> Self {
        let names: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let n = names.len();
        let id = |a: usize, b: usize| format!("{}<={}", names[a], names[b]);
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] {
                    arrows.push((id(a, b), names[a].clone(), names[b].clone()));
                }
            }
        }
        let idents: Vec<(String, String)> = (0..n).map(|a| (names[a].clone(), id(a, a))).collect();
        let mut comp = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if leq[a][b] && leq[b][c] {
                        comp.push((id(b, c), id(a, b), id(a, c)));
                    }
                }
            }
        }
        Self::new(&names, &arrows, &idents, &comp).expect("thin category")
    }

    /// The chain `0 < 1 < … < n-1` as a thin category, objects named by index.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self::thin(&names, &leq)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_id(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    pub fn object(&self, id: &str) -> Result<usize> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "objects".into() })
    }

    pub fn arrow(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "arrows".into() })
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    /// Identity arrow on object `o`. Panics on an invalid category that lacks it.
    pub fn id(&self, o: usize) -> usize {
        self.identity[o].expect("identity arrow (validate the category first)")
    }

    pub fn identity_of(&self, o: usize) -> Option<usize> {
        self.identity[o]
    }

    /// `g ∘ f`, if listed in the table.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// `g ∘ f` for composable arrows of a valid category.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        debug_assert_eq!(self.target(f), self.source(g), "composing non-composable arrows");
        self.compose[g][f].expect("composite (validate the category first)")
    }

    /// Composite of a path given in diagrammatic order (first arrow first).
    pub fn comp_path(&self, path: &[usize]) -> usize {
        let mut it = path.iter();
        let mut acc = *it.next().expect("non-empty path");
        for &a in it {
            acc = self.comp(a, acc);
        }
        acc
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&x| self.arrows[x].source == a && self.arrows[x].target == b).collect()
    }

    /// A two-sided inverse of `a`, if one exists.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let (s, t) = (self.source(a), self.target(a));
        self.hom(t, s)
            .into_iter()
            .find(|&b| self.compose(b, a) == self.identity[s] && self.compose(a, b) == self.identity[t])
    }

    pub fn is_iso(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    /// Objects with exactly one arrow to every object.
    pub fn initial_objects(&self) -> Vec<usize> {
        (0..self.objects.len()).filter(|&o| (0..self.objects.len()).all(|x| self.hom(o, x).len() == 1)).collect()
    }

    pub fn is_initial(&self, o: usize) -> bool {
        (0..self.objects.len()).all(|x| self.hom(o, x).len() == 1)
    }

    /// The unique arrow out of an initial object.
    pub fn from_initial(&self, initial: usize, x: usize) -> usize {
        let h = self.hom(initial, x);
        debug_assert_eq!(h.len(), 1, "not initial");
        h[0]
    }

    /// All category-law violations. Empty iff the data is a category.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.arrows.len();
        for (o, ida) in self.identity.iter().enumerate() {
            match ida {
                None => out.push(Violation {
                    law: "identity-exists",
                    detail: format!("object `{}` has no identity", self.objects[o]),
                }),
                Some(i) => {
                    let a = &self.arrows[*i];
                    if a.source != o || a.target != o {
                        out.push(Violation {
                            law: "identity-exists",
                            detail: format!("identity `{}` of `{}` is not an endo-arrow on it", a.id, self.objects[o]),
                        });
                    }
                }
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].target == self.arrows[g].source;
                match (composable, self.compose[g][f]) {
                    (true, None) => out.push(Violation {
                        law: "composition-total",
                        detail: format!("{} ∘ {} is undefined", self.arrows[g].id, self.arrows[f].id),
                    }),
                    (false, Some(_)) => out.push(Violation {
                        law: "composition-total",
                        detail: format!(
                            "{} ∘ {} is defined on a non-composable pair",
                            self.arrows[g].id, self.arrows[f].id
                        ),
                    }),
                    (true, Some(h)) => {
                        let r = &self.arrows[h];
                        if r.source != self.arrows[f].source || r.target != self.arrows[g].target {
                            out.push(Violation {
                                law: "composition-typed",
                                detail: format!(
                                    "{} ∘ {} = {} has the wrong endpoints",
                                    self.arrows[g].id, self.arrows[f].id, r.id
                                ),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..n {
            let a = &self.arrows[f];
            let (ida, idb) = (self.id(a.source), self.id(a.target));
            if self.compose[idb][f] != Some(f) {
                out.push(Violation { law: "left-identity", detail: format!("id ∘ {} ≠ {}", a.id, a.id) });
            }
            if self.compose[f][ida] != Some(f) {
                out.push(Violation { law: "right-identity", detail: format!("{} ∘ id ≠ {}", a.id, a.id) });
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.compose[g][f] else { continue };
                for h in 0..n {
                    let Some(hg) = self.compose[h][g] else { continue };
                    let lhs = self.compose[h][gf];
                    let rhs = self.compose[hg][f];
                    if lhs != rhs {
                        out.push(Violation {
                            law: "associativity",
                            detail: format!(
                                "{h} ∘ ({g} ∘ {f}) ≠ ({h} ∘ {g}) ∘ {f}",
                                h = self.arrows[h].id,
                                g = self.arrows[g].id,
                                f = self.arrows[f].id
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self, what: &str) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(invalid(format!("{what} is not a category: {}", v[0])))
        }
    }

    /// Id-level dump: `(objects, arrows, identities, composition triples)`.
    #[allow(clippy::type_complexity)]
    pub fn to_parts(
        &self,
    ) -> (Vec<String>, Vec<(String, String, String)>, Vec<(String, String)>, Vec<(String, String, String)>) {
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.id.clone(), self.objects[a.source].clone(), self.objects[a.target].clone()))
            .collect();
        let identities = self
            .identity
            .iter()
            .enumerate()
            .filter_map(|(o, a)| a.map(|a| (self.objects[o].clone(), self.arrows[a].id.clone())))
            .collect();
        let mut compose = Vec::new();
        for (g, row) in self.compose.iter().enumerate() {
            for (f, h) in row.iter().enumerate() {
                if let Some(h) = h {
                    compose.push((self.arrows[g].id.clone(), self.arrows[f].id.clone(), self.arrows[*h].id.clone()));
                }
            }
        }
        (self.objects.clone(), arrows, identities, compose)
    }

    /// Binary product category, objects named `(a,b)` and arrows `(f,g)`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let on = |a: usize, b: usize| format!("({},{})", self.objects[a], other.objects[b]);
        let an = |f: usize, g: usize| format!("({},{})", self.arrows[f].id, other.arrows[g].id);
        let mut objects = Vec::new();
        for a in 0..self.object_count() {
            for b in 0..other.object_count() {
                objects.push(on(a, b));
            }
        }
        let mut arrows = Vec::new();
        for f in 0..self.arrow_count() {
            for g in 0..other.arrow_count() {
                arrows.push((an(f, g), on(self.source(f), other.source(g)), on(self.target(f), other.target(g))));
            }
        }
        let mut idents = Vec::new();
        for a in 0..self.object_count() {
            for b in 0..other.object_count() {
                idents.push((on(a, b), an(self.id(a), other.id(b))));
            }
        }
        let mut comp = Vec::new();
        for f1 in 0..self.arrow_count() {
            for f2 in 0..self.arrow_count() {
                let Some(f) = self.compose(f2, f1) else { continue };
                for g1 in 0..other.arrow_count() {
                    for g2 in 0..other.arrow_count() {
                        let Some(g) = other.compose(g2, g1) else { continue };
                        comp.push((an(f2, g2), an(f1, g1), an(f, g)));
                    }
                }
            }
        }
        FinCategory::new(&objects, &arrows, &idents, &comp).expect("product of valid categories")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        assert!(FinCategory::terminal().validate().is_empty());
    }

    #[test]
    fn broken_identity_law_reported_once() {
        // id_b ∘ f is listed as g, a different parallel arrow
        let c = FinCategory::new(
            &["a", "b"],
            &[("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
            &[("a", "id_a"), ("b", "id_b")],
            &[
                ("id_a", "id_a", "id_a"),
                ("id_b", "id_b", "id_b"),
                ("id_b", "f", "g"),
                ("f", "id_a", "f"),
                ("id_b", "g", "g"),
                ("g", "id_a", "g"),
            ],
        )
        .unwrap();
        let v = c.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].law, "left-identity");
    }

    #[test]
    fn chain3_has_full_table_and_passes_brute_force() {
        let c = FinCategory::chain(3);
        assert_eq!(c.arrow_count(), 6);
        // brute force over all triples, independent of validate()
        for f in 0..6 {
            for g in 0..6 {
                for h in 0..6 {
                    if c.target(f) == c.source(g) && c.target(g) == c.source(h) {
                        let l = c.compose(h, c.compose(g, f).unwrap()).unwrap();
                        let r = c.compose(c.compose(h, g).unwrap(), f).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
        assert!(c.validate().is_empty());
    }

    #[test]
    fn missing_composite_is_a_violation() {
        let c = FinCategory::new(
            &["a"],
            &[("id_a", "a", "a"), ("e", "a", "a")],
            &[("a", "id_a")],
            &[("id_a", "id_a", "id_a"), ("id_a", "e", "e"), ("e", "id_a", "e")],
        )
        .unwrap();
        let v = c.validate();
        assert!(v.iter().any(|v| v.law == "composition-total"), "{v:?}");
    }

    #[test]
    fn unknown_ids_are_errors() {
        let r = FinCategory::new(&["a"], &[("f", "a", "zz")], &[], &[]);
        assert!(matches!(r, Err(Error::UnknownId { .. })));
    }

    #[test]
    fn initial_objects_and_inverses() {
        let c = FinCategory::chain(3);
        assert_eq!(c.initial_objects(), vec![0]);
        let up = c.arrow("0<=1").unwrap();
        assert!(c.inverse(up).is_none());
        assert!(c.is_iso(c.id(2)));
    }

    #[test]
    fn product_is_valid() {
        let p = FinCategory::chain(2).product(&FinCategory::discrete(&["x", "y"]));
        assert_eq!(p.object_count(), 4);
        assert!(p.validate().is_empty());
    }
}
