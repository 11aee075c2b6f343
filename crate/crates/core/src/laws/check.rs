use serde::{Deserialize, Serialize};

use super::corpus::Corpus;
use super::model::{FixpointModel, Square};
use crate::error::{Error, Result};

/// The first failing instance of a law, with both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in the law's instance list; [`replay`] re-evaluates it.
    pub index: usize,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// No instances were tried.
    Vacuous,
}

/// Outcome of one law on one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub statement: String,
    pub model: String,
    pub instances: usize,
    pub passed: usize,
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn status(&self) -> Status {
        if self.counterexample.is_some() {
            Status::Fail
        } else if self.instances == 0 {
            Status::Vacuous
        } else {
            Status::Pass
        }
    }

    pub fn passes(&self) -> bool {
        self.status() == Status::Pass
    }
}

struct Failure {
    inputs: Vec<String>,
    lhs: String,
    rhs: String,
}

type Eval<'a> = Box<dyn Fn(usize) -> Option<Failure> + 'a>;

/// A law as a list of instances and an evaluator for each.
struct Law<'a> {
    id: &'static str,
    statement: &'static str,
    count: usize,
    eval: Eval<'a>,
}

fn show<M: FixpointModel>(m: &M, r: &Result<M::Two>) -> String {
    match r {
        Ok(t) => m.describe_two(t),
        Err(e) => format!("error: {e}"),
    }
}

/// Evaluates both sides; the instance fails unless both succeed and agree.
fn equal<M: FixpointModel>(
    m: &M,
    inputs: impl FnOnce() -> Vec<String>,
    lhs: Result<M::Two>,
    rhs: Result<M::Two>,
) -> Option<Failure> {
    match (&lhs, &rhs) {
        (Ok(a), Ok(b)) if m.two_eq(a, b) => None,
        _ => Some(Failure { inputs: inputs(), lhs: show(m, &lhs), rhs: show(m, &rhs) }),
    }
}

/// Checks that `cell` is an invertible 2-cell `src ⇒ tgt`.
fn boundary<M: FixpointModel>(
    m: &M,
    inputs: impl FnOnce() -> Vec<String>,
    cell: Result<M::Two>,
    src: Result<M::Cell>,
    tgt: Result<M::Cell>,
) -> Option<Failure> {
    let ok = match (&cell, &src, &tgt) {
        (Ok(c), Ok(s), Ok(t)) => m.two_source(c) == *s && m.two_target(c) == *t && m.is_invertible(c),
        _ => false,
    };
    if ok {
        return None;
    }
    let side = |r: &Result<M::Cell>| match r {
        Ok(c) => m.describe(c),
        Err(e) => format!("error: {e}"),
    };
    let lhs = match &cell {
        Ok(c) if !m.is_invertible(c) => format!("{} (not invertible)", m.describe_two(c)),
        other => show(m, other),
    };
    Some(Failure { inputs: inputs(), lhs, rhs: format!("{} ⇒ {}", side(&src), side(&tgt)) })
}

fn star_of<M: FixpointModel>(m: &M, f: &M::Cell) -> Result<M::Cell> {
    m.star(f)
}

fn names<M: FixpointModel>(m: &M, cells: &[&M::Cell]) -> Vec<String> {
    cells.iter().map(|c| m.describe(c)).collect()
}

fn square_inputs<M: FixpointModel>(m: &M, sq: &Square<M::Cell, M::Two>) -> Vec<String> {
    vec![
        format!("s = {}", m.describe(&sq.s)),
        format!("f = {}", m.describe(&sq.f)),
        format!("g = {}", m.describe(&sq.g)),
        format!("γ = {}", m.describe_two(&sq.gamma)),
    ]
}

/// `γ: s ∘ f ⇒ g ∘ s`, invertible, with `s` strict.
pub fn validate_square<M: FixpointModel>(m: &M, sq: &Square<M::Cell, M::Two>) -> Result<()> {
    let bad = |msg: &str| Err(Error::InvalidSquare(format!("{msg}: {}", square_inputs(m, sq).join("; "))));
    if !m.is_strict(&sq.s) {
        return bad("s is not strict");
    }
    if m.two_source(&sq.gamma) != m.compose(&sq.s, &sq.f)? || m.two_target(&sq.gamma) != m.compose(&sq.g, &sq.s)? {
        return bad("γ is not a cell s ∘ f ⇒ g ∘ s");
    }
    if !m.is_invertible(&sq.gamma) {
        return bad("γ is not invertible");
    }
    Ok(())
}

fn fix_laws<'a, M: FixpointModel>(m: &'a M, c: &'a Corpus<M::Cell, M::Two>) -> Vec<Law<'a>> {
    vec![
        Law {
            id: "fix",
            statement: "fix_f is an invertible 2-cell f ∘ f* ⇒ f*",
            count: c.endos.len(),
            eval: Box::new(move |i| {
                let f = &c.endos[i];
                let s = star_of(m, f);
                let src = s.as_ref().map_err(Clone::clone).and_then(|s| m.compose(f, s));
                boundary(m, || names(m, &[f]), m.fix(f), src, s)
            }),
        },
        Law {
            id: "fix-naturality",
            statement: "α* ∘ fix_f = fix_g ∘ g(α*) ∘ α_{f*}",
            count: c.endo_isos.len(),
            eval: Box::new(move |i| {
                let alpha = &c.endo_isos[i];
                let (f, g) = (m.two_source(alpha), m.two_target(alpha));
                let ast = m.alpha_star(alpha);
                let lhs = ast.clone().and_then(|a| m.vcomp(&a, &m.fix(&f)?));
                let rhs = ast.and_then(|a| {
                    let first = m.whisker_right(alpha, &m.star(&f)?)?;
                    m.vcomp(&m.fix(&g)?, &m.vcomp(&m.whisker_left(&g, &a)?, &first)?)
                });
                equal(m, || vec![format!("α = {}", m.describe_two(alpha))], lhs, rhs)
            }),
        },
    ]
}

fn dinat_laws<'a, M: FixpointModel>(m: &'a M, c: &'a Corpus<M::Cell, M::Two>) -> Vec<Law<'a>> {
    let n2 = c.left_cells.len();
    vec![
        Law {
            id: "dinat",
            statement: "dinat^f_g is an invertible 2-cell f ∘ (g ∘ f)* ⇒ (f ∘ g)*",
            count: c.pairs.len(),
            eval: Box::new(move |i| {
                let (f, g) = &c.pairs[i];
                let src = m.compose(g, f).and_then(|gf| m.compose(f, &m.star(&gf)?));
                let tgt = m.compose(f, g).and_then(|fg| m.star(&fg));
                boundary(m, || names(m, &[f, g]), m.dinat(f, g), src, tgt)
            }),
        },
        Law {
            id: "dinat-unity",
            statement: "dinat^{id}_f = id_{f*}",
            count: c.endos.len(),
            eval: Box::new(move |i| {
                let f = &c.endos[i];
                let id = m.identity(&m.dom(f));
                let rhs = m.star(f).map(|s| m.two_identity(&s));
                equal(m, || names(m, &[f]), m.dinat(&id, f), rhs)
            }),
        },
        Law {
            id: "dinat-fix",
            statement: "dinat^f_{id} = fix_f",
            count: c.endos.len(),
            eval: Box::new(move |i| {
                let f = &c.endos[i];
                let id = m.identity(&m.dom(f));
                equal(m, || names(m, &[f]), m.dinat(f, &id), m.fix(f))
            }),
        },
        Law {
            id: "dinat-1-naturality",
            statement: "dinat^g_{fh} ∘ g(dinat^f_{hg}) = dinat^{gf}_h",
            count: c.triples.len(),
            eval: Box::new(move |i| {
                let (f, g, h) = &c.triples[i];
                let lhs = (|| {
                    let inner = m.whisker_left(g, &m.dinat(f, &m.compose(h, g)?)?)?;
                    m.vcomp(&m.dinat(g, &m.compose(f, h)?)?, &inner)
                })();
                let rhs = m.compose(g, f).and_then(|gf| m.dinat(&gf, h));
                equal(m, || names(m, &[f, g, h]), lhs, rhs)
            }),
        },
        Law {
            id: "dinat-2-naturality",
            statement: "(αg)* ∘ dinat^f_g = dinat^{f'}_g ∘ f'((gα)*) ∘ α_{(gf)*} and (fβ)* ∘ dinat^f_g = dinat^f_{g'} ∘ f((βf)*)",
            count: n2 + c.right_cells.len(),
            eval: Box::new(move |i| {
                if i < n2 {
                    let (alpha, g) = &c.left_cells[i];
                    let (f, f2) = (m.two_source(alpha), m.two_target(alpha));
                    let lhs = (|| m.vcomp(&m.alpha_star(&m.whisker_right(alpha, g)?)?, &m.dinat(&f, g)?))();
                    let rhs = (|| {
                        let first = m.whisker_right(alpha, &m.star(&m.compose(g, &f)?)?)?;
                        let second = m.whisker_left(&f2, &m.alpha_star(&m.whisker_left(g, alpha)?)?)?;
                        m.vcomp(&m.dinat(&f2, g)?, &m.vcomp(&second, &first)?)
                    })();
                    equal(m, || vec![format!("α = {}", m.describe_two(alpha)), m.describe(g)], lhs, rhs)
                } else {
                    let (f, beta) = &c.right_cells[i - n2];
                    let (g, g2) = (m.two_source(beta), m.two_target(beta));
                    let lhs = (|| m.vcomp(&m.alpha_star(&m.whisker_left(f, beta)?)?, &m.dinat(f, &g)?))();
                    let rhs = (|| {
                        let inner = m.whisker_left(f, &m.alpha_star(&m.whisker_right(beta, f)?)?)?;
                        m.vcomp(&m.dinat(f, &g2)?, &inner)
                    })();
                    equal(m, || vec![m.describe(f), format!("β = {}", m.describe_two(beta))], lhs, rhs)
                }
            }),
        },
        Law {
            id: "dinat-coherence",
            statement: "dinat^f_g ∘ f(dinat^g_f) = fix_{fg}",
            count: c.pairs.len(),
            eval: Box::new(move |i| {
                let (f, g) = &c.pairs[i];
                let lhs = (|| m.vcomp(&m.dinat(f, g)?, &m.whisker_left(f, &m.dinat(g, f)?)?))();
                let rhs = m.compose(f, g).and_then(|fg| m.fix(&fg));
                equal(m, || names(m, &[f, g]), lhs, rhs)
            }),
        },
    ]
}

fn unif_laws<'a, M: FixpointModel>(m: &'a M, c: &'a Corpus<M::Cell, M::Two>) -> Vec<Law<'a>> {
    vec![
        Law {
            id: "unif",
            statement: "unif_γ is a 2-cell s ∘ f* ⇒ g*",
            count: c.squares.len(),
            eval: Box::new(move |i| {
                let sq = &c.squares[i];
                let src = m.star(&sq.f).and_then(|s| m.compose(&sq.s, &s));
                let cell = m.unif(sq);
                let ok = match (&cell, &src, m.star(&sq.g)) {
                    (Ok(u), Ok(s), Ok(t)) => m.two_source(u) == *s && m.two_target(u) == t,
                    _ => false,
                };
                if ok {
                    return None;
                }
                Some(Failure {
                    inputs: square_inputs(m, sq),
                    lhs: show(m, &cell),
                    rhs: format!(
                        "{} ⇒ {}",
                        src.map(|s| m.describe(&s)).unwrap_or_else(|e| format!("error: {e}")),
                        m.star(&sq.g).map(|s| m.describe(&s)).unwrap_or_else(|e| format!("error: {e}"))
                    ),
                })
            }),
        },
        Law {
            id: "unif-unity",
            statement: "unif of the identity square on f is id_{f*}",
            count: c.endos.len(),
            eval: Box::new(move |i| {
                let f = &c.endos[i];
                let sq = Square { s: m.identity(&m.dom(f)), f: f.clone(), g: f.clone(), gamma: m.two_identity(f) };
                let rhs = m.star(f).map(|s| m.two_identity(&s));
                equal(m, || names(m, &[f]), m.unif(&sq), rhs)
            }),
        },
        Law {
            id: "unif-stacking",
            statement: "unif_{(ρs)∘(rγ)} = unif_ρ ∘ r(unif_γ)",
            count: c.stacked.len(),
            eval: Box::new(move |i| {
                let (gamma, rho) = &c.stacked[i];
                let lhs = (|| {
                    let cell =
                        m.vcomp(&m.whisker_right(&rho.gamma, &gamma.s)?, &m.whisker_left(&rho.s, &gamma.gamma)?)?;
                    let sq =
                        Square { s: m.compose(&rho.s, &gamma.s)?, f: gamma.f.clone(), g: rho.g.clone(), gamma: cell };
                    m.unif(&sq)
                })();
                let rhs = (|| m.vcomp(&m.unif(rho)?, &m.whisker_left(&rho.s, &m.unif(gamma)?)?))();
                equal(m, || [square_inputs(m, gamma), square_inputs(m, rho)].concat(), lhs, rhs)
            }),
        },
        Law {
            id: "unif-2-naturality",
            statement: "unif_γ = unif_ρ ∘ θ_{f*} whenever (gθ) ∘ γ = ρ ∘ (θf)",
            count: c.square_cells.len(),
            eval: Box::new(move |i| {
                let (gamma, rho, theta) = &c.square_cells[i];
                let rhs = (|| m.vcomp(&m.unif(rho)?, &m.whisker_right(theta, &m.star(&gamma.f)?)?))();
                let mut inputs = [square_inputs(m, gamma), square_inputs(m, rho)].concat();
                inputs.push(format!("θ = {}", m.describe_two(theta)));
                equal(m, || inputs, m.unif(gamma), rhs)
            }),
        },
        Law {
            id: "unif-d",
            statement: "unif_ρ ∘ s(α*) = β* ∘ unif_γ whenever ρ ∘ (sα) = (βs) ∘ γ",
            count: c.square_pairs.len(),
            eval: Box::new(move |i| {
                let p = &c.square_pairs[i];
                let lhs = (|| m.vcomp(&m.unif(&p.rho)?, &m.whisker_left(&p.gamma.s, &m.alpha_star(&p.alpha)?)?))();
                let rhs = (|| m.vcomp(&m.alpha_star(&p.beta)?, &m.unif(&p.gamma)?))();
                let mut inputs = [square_inputs(m, &p.gamma), square_inputs(m, &p.rho)].concat();
                inputs.push(format!("α = {}", m.describe_two(&p.alpha)));
                inputs.push(format!("β = {}", m.describe_two(&p.beta)));
                equal(m, || inputs, lhs, rhs)
            }),
        },
        Law {
            id: "fix-unif",
            statement: "unif_γ ∘ s(fix_f) = fix_g ∘ g(unif_γ) ∘ γ_{f*}",
            count: c.squares.len(),
            eval: Box::new(move |i| {
                let sq = &c.squares[i];
                let lhs = (|| m.vcomp(&m.unif(sq)?, &m.whisker_left(&sq.s, &m.fix(&sq.f)?)?))();
                let rhs = (|| {
                    let first = m.whisker_right(&sq.gamma, &m.star(&sq.f)?)?;
                    let second = m.whisker_left(&sq.g, &m.unif(sq)?)?;
                    m.vcomp(&m.fix(&sq.g)?, &m.vcomp(&second, &first)?)
                })();
                equal(m, || square_inputs(m, sq), lhs, rhs)
            }),
        },
        Law {
            id: "dinat-unif",
            statement: "dinat^h_k ∘ h(unif_{ρ⋆γ}) ∘ γ_{(gf)*} = unif_{γ⋆ρ} ∘ r(dinat^f_g)",
            count: c.dinat_unif.len(),
            eval: Box::new(move |i| {
                let d = &c.dinat_unif[i];
                let lhs = (|| {
                    let rg = m.vcomp(&m.whisker_left(&d.k, &d.gamma)?, &m.whisker_right(&d.rho, &d.f)?)?;
                    let sq1 =
                        Square { s: d.s.clone(), f: m.compose(&d.g, &d.f)?, g: m.compose(&d.k, &d.h)?, gamma: rg };
                    let first = m.whisker_right(&d.gamma, &m.star(&sq1.f)?)?;
                    let second = m.whisker_left(&d.h, &m.unif(&sq1)?)?;
                    m.vcomp(&m.dinat(&d.h, &d.k)?, &m.vcomp(&second, &first)?)
                })();
                let rhs = (|| {
                    let gr = m.vcomp(&m.whisker_left(&d.h, &d.rho)?, &m.whisker_right(&d.gamma, &d.g)?)?;
                    let sq2 =
                        Square { s: d.r.clone(), f: m.compose(&d.f, &d.g)?, g: m.compose(&d.h, &d.k)?, gamma: gr };
                    m.vcomp(&m.unif(&sq2)?, &m.whisker_left(&d.r, &m.dinat(&d.f, &d.g)?)?)
                })();
                let inputs = || {
                    let mut v = names(m, &[&d.f, &d.g, &d.h, &d.k, &d.s, &d.r]);
                    v.push(format!("γ = {}", m.describe_two(&d.gamma)));
                    v.push(format!("ρ = {}", m.describe_two(&d.rho)));
                    v
                };
                equal(m, inputs, lhs, rhs)
            }),
        },
    ]
}

fn run<M: FixpointModel>(m: &M, laws: Vec<Law<'_>>) -> Vec<LawReport> {
    laws.into_iter()
        .map(|law| {
            let mut passed = 0;
            let mut counterexample = None;
            for i in 0..law.count {
                match (law.eval)(i) {
                    None => passed += 1,
                    Some(f) => {
                        counterexample = Some(Counterexample { index: i, inputs: f.inputs, lhs: f.lhs, rhs: f.rhs });
                        break;
                    }
                }
            }
            LawReport {
                law: law.id.into(),
                statement: law.statement.into(),
                model: m.name(),
                instances: law.count,
                passed,
                counterexample,
                notes: Vec::new(),
            }
        })
        .collect()
}

/// The fix and fix-naturality laws.
pub fn check_fix<M: FixpointModel>(m: &M, corpus: &Corpus<M::Cell, M::Two>) -> Vec<LawReport> {
    run(m, fix_laws(m, corpus))
}

/// Boundary, unity, remark, 1- and 2-naturality, and dinat↔fix coherence.
pub fn check_dinat<M: FixpointModel>(m: &M, corpus: &Corpus<M::Cell, M::Two>) -> Vec<LawReport> {
    run(m, dinat_laws(m, corpus))
}

/// The uniformity laws and both coherences. Fails with `InvalidSquare` if
/// some square of the corpus is not a valid square.
pub fn check_unif<M: FixpointModel>(m: &M, corpus: &Corpus<M::Cell, M::Two>) -> Result<Vec<LawReport>> {
    for sq in corpus.squares.iter().chain(corpus.stacked.iter().flat_map(|(a, b)| [a, b])) {
        validate_square(m, sq)?;
    }
    let mut reports = run(m, unif_laws(m, corpus));
    let invertible =
        corpus.squares.iter().filter(|sq| m.unif(sq).map(|u| m.is_invertible(&u)).unwrap_or(false)).count();
    if let Some(r) = reports.iter_mut().find(|r| r.law == "unif") {
        r.notes.push(format!("unif_γ invertible on {invertible} of {} squares", corpus.squares.len()));
    }
    Ok(reports)
}

/// Every law: the fix laws, then dinaturality, then uniformity.
pub fn check_all<M: FixpointModel>(m: &M, corpus: &Corpus<M::Cell, M::Two>) -> Result<Vec<LawReport>> {
    let mut out = check_fix(m, corpus);
    out.extend(check_dinat(m, corpus));
    out.extend(check_unif(m, corpus)?);
    Ok(out)
}

/// Re-evaluates one instance of a law; `Some` iff it fails.
pub fn replay<M: FixpointModel>(
    m: &M,
    corpus: &Corpus<M::Cell, M::Two>,
    law: &str,
    index: usize,
) -> Result<Option<Counterexample>> {
    let laws = fix_laws(m, corpus).into_iter().chain(dinat_laws(m, corpus)).chain(unif_laws(m, corpus));
    for l in laws {
        if l.id == law {
            if index >= l.count {
                return Err(Error::Invalid(format!("`{law}` has {} instances", l.count)));
            }
            return Ok((l.eval)(index).map(|f| Counterexample { index, inputs: f.inputs, lhs: f.lhs, rhs: f.rhs }));
        }
    }
    Err(Error::UnknownId { id: law.into(), context: "laws".into() })
}
