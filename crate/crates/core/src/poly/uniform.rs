use std::collections::{BTreeMap, BTreeSet};

use super::coalgebra::{bisimulation_blocks, CoalgebraSystem};
use super::polynomial::{tuples, Polynomial};
use super::wtype::{wtype_stages, ShowTree, WTree};
use crate::error::{Error, Result};

/// One component of a cartesian iso `γ: S ∘ f ≅ g ∘ S` for a span `S`.
///
/// The summand `(edge, b)` of `S(f(X))` goes to the summand of `g(S(X))`
/// with constructor `target` whose `k`-th argument is span edge
/// `positions[k].0` applied to the argument of `b` at fiber element
/// `positions[k].1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanEntry {
    pub edge: usize,
    pub b: usize,
    pub target: usize,
    pub positions: Vec<(usize, usize)>,
}

/// A span `S: I → J`, endo-polynomials `f` over `I` and `g` over `J`, and a
/// cartesian iso `S ∘ f ≅ g ∘ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanSquare {
    pub span: Polynomial,
    pub f: Polynomial,
    pub g: Polynomial,
    pub gamma: Vec<SpanEntry>,
}

impl SpanSquare {
    /// The identity span on the sorts of `f` with the identity square.
    pub fn identity(f: &Polynomial) -> Self {
        let span = Polynomial::identity_span(&f.i);
        let gamma = (0..f.b.len())
            .map(|b| SpanEntry {
                edge: f.t[b],
                b,
                target: b,
                positions: f.fiber(b).into_iter().map(|e| (f.s[e], e)).collect(),
            })
            .collect();
        SpanSquare { span, f: f.clone(), g: f.clone(), gamma }
    }

    /// Checks shapes, sorts, fiber bijections and that `γ` is bijective on
    /// summands.
    pub fn validate(&self) -> Result<()> {
        let (sp, f, g) = (&self.span, &self.f, &self.g);
        let bad = |m: String| Err(Error::NotCartesian(m));
        if !sp.is_span() {
            return bad("strict map is not span-shaped".into());
        }
        f.require_endo()?;
        g.require_endo()?;
        if sp.i != f.i || sp.j != g.i {
            return bad("span boundaries do not match the endo-polynomials".into());
        }
        let mut seen = BTreeSet::new();
        let mut images = BTreeSet::new();
        for en in &self.gamma {
            if en.edge >= sp.e.len() || en.b >= f.b.len() || en.target >= g.b.len() {
                return bad("entry out of range".into());
            }
            if f.t[en.b] != sp.s[en.edge] {
                return bad(format!("constructor `{}` does not live over edge `{}`", f.b[en.b], sp.e[en.edge]));
            }
            if !seen.insert((en.edge, en.b)) {
                return bad(format!("summand ({}, {}) listed twice", sp.e[en.edge], f.b[en.b]));
            }
            if g.t[en.target] != sp.t[sp.p[en.edge]] {
                return bad(format!("`{}` lands in the wrong sort", g.b[en.target]));
            }
            let gfib = g.fiber(en.target);
            let mut ffib = f.fiber(en.b);
            if en.positions.len() != gfib.len() {
                return bad(format!("arity mismatch at `{}`", g.b[en.target]));
            }
            let mut used: Vec<usize> = en.positions.iter().map(|&(_, e)| e).collect();
            used.sort_unstable();
            ffib.sort_unstable();
            if used != ffib {
                return bad(format!("positions of `{}` are not a bijection onto its fiber", f.b[en.b]));
            }
            for (k, &(sigma, e)) in en.positions.iter().enumerate() {
                if sigma >= sp.e.len() || sp.s[sigma] != f.s[e] || sp.t[sp.p[sigma]] != g.s[gfib[k]] {
                    return bad(format!("argument {k} of `{}` has the wrong sort", g.b[en.target]));
                }
            }
            let key: (usize, Vec<usize>) = (en.target, en.positions.iter().map(|&(s, _)| s).collect());
            if !images.insert(key) {
                return bad("γ is not injective on summands".into());
            }
        }
        for edge in 0..sp.e.len() {
            for b in 0..f.b.len() {
                if f.t[b] == sp.s[edge] && !seen.contains(&(edge, b)) {
                    return bad(format!("summand ({}, {}) has no image", sp.e[edge], f.b[b]));
                }
            }
        }
        // surjectivity: every summand of g(S(X)) is hit
        let mut codomain = 0usize;
        for b in 0..g.b.len() {
            let options: Vec<usize> =
                g.fiber(b).iter().map(|&e| (0..sp.e.len()).filter(|&s| sp.t[sp.p[s]] == g.s[e]).count()).collect();
            codomain += tuples(&options).len();
        }
        if codomain != images.len() {
            return bad("γ is not surjective on summands".into());
        }
        Ok(())
    }

    fn entry_map(&self) -> BTreeMap<(usize, usize), &SpanEntry> {
        self.gamma.iter().map(|e| ((e.edge, e.b), e)).collect()
    }

    /// The induced map `S(W_f) → W_g` on a summand `(edge, t)`.
    pub fn induced(&self, edge: usize, t: &WTree) -> WTree {
        induced(&self.entry_map(), edge, t, &self.f)
    }
}

fn induced(map: &BTreeMap<(usize, usize), &SpanEntry>, edge: usize, t: &WTree, f: &Polynomial) -> WTree {
    let en = map[&(edge, t.b)];
    let fib = f.fiber(t.b);
    let children = en
        .positions
        .iter()
        .map(|&(sigma, e)| {
            let k = fib.iter().position(|&x| x == e).expect("validated");
            induced(map, sigma, &t.children[k], f)
        })
        .collect();
    WTree { b: en.target, children }
}

/// Result of a stage-wise uniformity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityReport {
    pub stages_checked: usize,
    pub elements_mapped: usize,
    pub counterexample: Option<String>,
}

impl UniformityReport {
    pub fn passes(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, for every `d ≤ depth`, that the induced map sends `S` of the
/// `d`-th stage of `f`'s W-chain bijectively onto the `d`-th stage of `g`'s.
pub fn span_uniformity_check(sq: &SpanSquare, depth: usize) -> Result<UniformityReport> {
    sq.validate()?;
    let (sp, f, g) = (&sq.span, &sq.f, &sq.g);
    let fs = wtype_stages(f, depth)?;
    let gs = wtype_stages(g, depth)?;
    let map = sq.entry_map();
    let mut mapped = 0;
    for d in 0..=depth {
        for j in 0..g.i.len() {
            let mut image = BTreeSet::new();
            for edge in (0..sp.e.len()).filter(|&e| sp.t[sp.p[e]] == j) {
                for t in &fs[d][sp.s[edge]] {
                    let u = induced(&map, edge, t, f);
                    mapped += 1;
                    if !gs[d][j].contains(&u) {
                        return Ok(report(
                            d,
                            mapped,
                            format!(
                                "stage {d}: ({}, {}) maps to {}, outside the stage of g",
                                sp.e[edge],
                                ShowTree { tree: t, polys: &[f] },
                                ShowTree { tree: &u, polys: &[g] }
                            ),
                        ));
                    }
                    if !image.insert(u) {
                        return Ok(report(d, mapped, format!("stage {d}: two elements collide in sort `{}`", g.i[j])));
                    }
                }
            }
            if image.len() != gs[d][j].len() {
                return Ok(report(
                    d,
                    mapped,
                    format!("stage {d}: image has {} of {} elements in sort `{}`", image.len(), gs[d][j].len(), g.i[j]),
                ));
            }
        }
    }
    Ok(UniformityReport { stages_checked: depth + 1, elements_mapped: mapped, counterexample: None })
}

fn report(d: usize, mapped: usize, msg: String) -> UniformityReport {
    UniformityReport { stages_checked: d + 1, elements_mapped: mapped, counterexample: Some(msg) }
}

/// One component of a cartesian iso `γ: M ∘ f ≅ g ∘ M` for a monomial
/// `M(X) = X^E` over `1`: the tuple of `f`-constructors `bs` (one per
/// element of `E`) goes to `target`, whose argument `(k, e')` (fiber
/// element `k` of `target`, monomial position `e'`) is the argument of
/// `bs[e]` at fiber element `positions[k][e'].1`, where `e = positions[k][e'].0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialEntry {
    pub bs: Vec<usize>,
    pub target: usize,
    pub positions: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSquare {
    pub monomial: Polynomial,
    pub f: Polynomial,
    pub g: Polynomial,
    pub gamma: Vec<MonomialEntry>,
}

impl MonomialSquare {
    /// `M(X) = X` and a constructor relabelling `f ≅ g` that preserves
    /// arities.
    pub fn relabelling(f: &Polynomial, g: &Polynomial, rename: &[usize]) -> Self {
        let monomial = Polynomial::over_one(&[("m", 1)]);
        let gamma = (0..f.b.len())
            .map(|b| MonomialEntry {
                bs: vec![b],
                target: rename[b],
                positions: f.fiber(b).into_iter().map(|e| vec![(0, e)]).collect(),
            })
            .collect();
        MonomialSquare { monomial, f: f.clone(), g: g.clone(), gamma }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, f, g) = (&self.monomial, &self.f, &self.g);
        let bad = |s: String| Err(Error::NotCartesian(s));
        if !m.is_monomial() || !m.is_over_one() {
            return bad("strict map is not a monomial over 1".into());
        }
        f.require_over_one()?;
        g.require_over_one()?;
        let n = m.e.len();
        let mut seen = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for en in &self.gamma {
            if en.bs.len() != n || en.bs.iter().any(|&b| b >= f.b.len()) || en.target >= g.b.len() {
                return bad("entry out of range".into());
            }
            if !seen.insert(en.bs.clone()) {
                return bad("constructor tuple listed twice".into());
            }
            if !targets.insert(en.target) {
                return bad("γ is not injective on constructors".into());
            }
            if en.positions.len() != g.arity(en.target) || en.positions.iter().any(|r| r.len() != n) {
                return bad(format!("arity mismatch at `{}`", g.b[en.target]));
            }
            let mut used: Vec<(usize, usize)> = en.positions.iter().flatten().copied().collect();
            used.sort_unstable();
            let mut want: Vec<(usize, usize)> =
                en.bs.iter().enumerate().flat_map(|(e, &b)| f.fiber(b).into_iter().map(move |x| (e, x))).collect();
            want.sort_unstable();
            if used != want {
                return bad(format!("positions of `{}` are not a bijection", g.b[en.target]));
            }
        }
        let expected = f.b.len().checked_pow(n as u32).unwrap_or(usize::MAX);
        if seen.len() != expected || targets.len() != g.b.len() {
            return bad("γ is not a bijection on constructors".into());
        }
        Ok(())
    }

    /// The `g`-coalgebra `M(c)` on `X^E` induced by `γ`; state `u` encodes the
    /// tuple with the last position fastest.
    pub fn induced_system(&self, c: &CoalgebraSystem) -> Result<CoalgebraSystem> {
        self.validate()?;
        if c.poly != self.f {
            return Err(Error::TypeMismatch("coalgebra is not over f".into()));
        }
        let n = self.monomial.e.len();
        let sizes = vec![c.states.len(); n];
        let all = tuples(&sizes);
        let index: BTreeMap<Vec<usize>, usize> = all.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let entries: BTreeMap<&Vec<usize>, &MonomialEntry> = self.gamma.iter().map(|e| (&e.bs, e)).collect();
        let mut states = Vec::new();
        let mut structure = Vec::new();
        for u in &all {
            let names: Vec<&str> = u.iter().map(|&x| c.states[x].as_str()).collect();
            states.push(format!("({})", names.join(",")));
            let bs: Vec<usize> = u.iter().map(|&x| c.structure[x].0).collect();
            let en = entries[&bs];
            let succ = en
                .positions
                .iter()
                .map(|row| {
                    let tuple: Vec<usize> = row
                        .iter()
                        .map(|&(e, pos)| {
                            let fib = self.f.fiber(bs[e]);
                            let k = fib.iter().position(|&x| x == pos).expect("validated");
                            c.structure[u[e]].1[k]
                        })
                        .collect();
                    index[&tuple]
                })
                .collect();
            structure.push((en.target, succ));
        }
        CoalgebraSystem::new(self.g.clone(), states, structure)
    }
}

/// Checks that componentwise-bisimilar tuples stay bisimilar in the induced
/// `g`-coalgebra.
pub fn monomial_uniformity_check(sq: &MonomialSquare, c: &CoalgebraSystem) -> Result<UniformityReport> {
    let mc = sq.induced_system(c)?;
    let n = sq.monomial.e.len();
    let blocks_f = bisimulation_blocks(&[c])?.remove(0);
    let blocks_g = bisimulation_blocks(&[&mc])?.remove(0);
    let all = tuples(&vec![c.states.len(); n]);
    for (i, u) in all.iter().enumerate() {
        for (k, v) in all.iter().enumerate().skip(i + 1) {
            let related = u.iter().zip(v).all(|(&x, &y)| blocks_f[x] == blocks_f[y]);
            if related && blocks_g[i] != blocks_g[k] {
                return Ok(UniformityReport {
                    stages_checked: 1,
                    elements_mapped: all.len(),
                    counterexample: Some(format!(
                        "{} and {} are bisimilar componentwise but not after the map",
                        mc.states[i], mc.states[k]
                    )),
                });
            }
        }
    }
    Ok(UniformityReport { stages_checked: 1, elements_mapped: all.len(), counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_square_validates_and_passes() {
        let f = Polynomial::binary_tree();
        let sq = SpanSquare::identity(&f);
        sq.validate().unwrap();
        let r = span_uniformity_check(&sq, 4).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.elements_mapped, [0, 1, 2, 5, 26].iter().sum::<usize>());
    }

    #[test]
    fn broken_square_is_rejected() {
        let f = Polynomial::binary_tree();
        let mut sq = SpanSquare::identity(&f);
        sq.gamma.pop();
        assert!(matches!(sq.validate(), Err(Error::NotCartesian(_))));
    }

    #[test]
    fn swapped_constants_pass() {
        // both constructors of f sent to the same-arity but swapped targets
        let f = Polynomial::constant(&["p", "q"]);
        let g = Polynomial::constant(&["r", "s"]);
        let mut sq = SpanSquare::identity(&f);
        sq.g = g;
        sq.gamma[0].target = 1;
        sq.gamma[1].target = 0;
        assert!(span_uniformity_check(&sq, 3).unwrap().passes());
    }

    #[test]
    fn relabelled_streams_preserve_bisimilarity() {
        let f = Polynomial::stream(&["0", "1"]);
        let g = Polynomial::stream(&["x", "y"]);
        let sq = MonomialSquare::relabelling(&f, &g, &[1, 0]);
        let c = CoalgebraSystem::from_ids(
            f,
            &[("a", "0", vec!["b"]), ("b", "1", vec!["a"]), ("c", "0", vec!["d"]), ("d", "1", vec!["c"])],
        )
        .unwrap();
        assert!(monomial_uniformity_check(&sq, &c).unwrap().passes());
    }

    #[test]
    fn squared_monomial() {
        // M(X) = X², f = g = streams over {0,1}; γ pairs labels.
        let f = Polynomial::stream(&["0", "1"]);
        let g = Polynomial::stream(&["00", "01", "10", "11"]);
        let m = Polynomial::over_one(&[("m", 2)]);
        let gamma = (0..4)
            .map(|t| MonomialEntry { bs: vec![t / 2, t % 2], target: t, positions: vec![vec![(0, t / 2), (1, t % 2)]] })
            .collect();
        let sq = MonomialSquare { monomial: m, f: f.clone(), g, gamma };
        sq.validate().unwrap();
        let c = CoalgebraSystem::from_ids(f, &[("a", "0", vec!["a"]), ("b", "0", vec!["c"]), ("c", "0", vec!["b"])])
            .unwrap();
        let r = monomial_uniformity_check(&sq, &c).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.elements_mapped, 9);
    }
}
