use serde::{Deserialize, Serialize};

use super::corpus::Corpus;
use super::model::FixpointModel;
use crate::error::{Error, Result};

/// Both projections of `(σ ∘ (f × g))*` against `(gf)*` and `(fg)*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DinatProduct {
    pub gf_star: String,
    pub pi1_h_star: String,
    pub fg_star: String,
    pub pi2_h_star: String,
    pub first_holds: bool,
    pub second_holds: bool,
    /// The dinaturality cell read off `fix` of the swapped product agrees
    /// with the model's own `dinat^f_g`.
    pub agreement: bool,
}

impl DinatProduct {
    pub fn holds(&self) -> bool {
        self.first_holds && self.second_holds && self.agreement
    }
}

/// For `f: A → B` and `g: B → A`, computes `h = σ ∘ (f × g): A × B → A × B`
/// and compares the projections of `h*` with `(gf)*` and `(fg)*`.
pub fn build_dinat_via_products<M: FixpointModel>(m: &M, f: &M::Cell, g: &M::Cell) -> Result<DinatProduct> {
    let (a, b) = (m.dom(f), m.cod(f));
    if m.dom(g) != b || m.cod(g) != a {
        return Err(Error::TypeMismatch("g must go back from the codomain of f".into()));
    }
    let (_, p1, p2) = m.product(&a, &b)?;
    let (_, q1, q2) = m.product(&b, &a)?;
    let fxg = m.pair(&m.compose(f, &p1)?, &m.compose(g, &p2)?)?;
    let sigma = m.pair(&q2, &q1)?;
    let h = m.compose(&sigma, &fxg)?;
    let hs = m.star(&h)?;
    let pi1 = m.compose(&p1, &hs)?;
    let pi2 = m.compose(&p2, &hs)?;
    let gf = m.star(&m.compose(g, f)?)?;
    let fg = m.star(&m.compose(f, g)?)?;

    let first = m.isos_between(&pi1, &gf)?;
    let second = m.isos_between(&pi2, &fg)?;
    let agreement = match (first.first(), second.first()) {
        (Some(c1), Some(c2)) => {
            // π₂(h*) ≅ π₂ h h* = f π₁ h*, the middle step being π₂ fix_h
            let din = m.whisker_left(&p2, &m.fix(&h)?)?;
            let back = m.whisker_left(f, &m.two_inverse(c1)?)?;
            let cell = m.vcomp(c2, &m.vcomp(&din, &back)?)?;
            m.two_eq(&cell, &m.dinat(f, g)?)
        }
        _ => false,
    };
    Ok(DinatProduct {
        gf_star: m.describe(&gf),
        pi1_h_star: m.describe(&pi1),
        fg_star: m.describe(&fg),
        pi2_h_star: m.describe(&pi2),
        first_holds: !first.is_empty(),
        second_holds: !second.is_empty(),
        agreement,
    })
}

/// Outcome of comparing two fixpoint operators on one corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub left: String,
    pub right: String,
    pub endos_checked: usize,
    pub squares_checked: usize,
    /// Every comparison cell is an identity.
    pub all_identity: bool,
    /// First square on which the comparison cells fail to commute with `unif`.
    pub incoherent_square: Option<usize>,
}

impl CompareReport {
    pub fn passes(&self) -> bool {
        self.incoherent_square.is_none() && self.endos_checked > 0
    }
}

/// Finds, for each endo-1-cell `f`, the unique invertible `δ_f: f*₁ ⇒ f*₂`
/// with `δ_f ∘ fix¹_f = fix²_f ∘ f(δ_f)`, then checks
/// `δ_g ∘ unif¹_γ = unif²_γ ∘ s(δ_f)` on every square.
///
/// Fails with `NotContractible` when some `f` admits zero or several such cells.
pub fn compare_operators<M: FixpointModel>(
    left: &M,
    right: &M,
    corpus: &Corpus<M::Cell, M::Two>,
) -> Result<CompareReport> {
    let mut deltas: Vec<(M::Cell, M::Two)> = Vec::new();
    let mut all_identity = true;
    for f in &corpus.endos {
        let d = comparison_cell(left, right, f)?;
        let s1 = left.star(f)?;
        all_identity &= s1 == right.star(f)? && left.two_eq(&d, &left.two_identity(&s1));
        deltas.push((f.clone(), d));
    }
    let delta = |f: &M::Cell| -> Result<M::Two> {
        match deltas.iter().find(|(g, _)| g == f) {
            Some((_, d)) => Ok(d.clone()),
            None => comparison_cell(left, right, f),
        }
    };
    let mut incoherent_square = None;
    for (i, sq) in corpus.squares.iter().enumerate() {
        let lhs = left.vcomp(&delta(&sq.g)?, &left.unif(sq)?)?;
        let rhs = left.vcomp(&right.unif(sq)?, &left.whisker_left(&sq.s, &delta(&sq.f)?)?)?;
        if !left.two_eq(&lhs, &rhs) {
            incoherent_square = Some(i);
            break;
        }
    }
    Ok(CompareReport {
        left: left.name(),
        right: right.name(),
        endos_checked: corpus.endos.len(),
        squares_checked: corpus.squares.len(),
        all_identity,
        incoherent_square,
    })
}

fn comparison_cell<M: FixpointModel>(left: &M, right: &M, f: &M::Cell) -> Result<M::Two> {
    let (s1, s2) = (left.star(f)?, right.star(f)?);
    let (fix1, fix2) = (left.fix(f)?, right.fix(f)?);
    let mut survivors = Vec::new();
    for d in left.isos_between(&s1, &s2)? {
        let lhs = left.vcomp(&d, &fix1)?;
        let rhs = left.vcomp(&fix2, &left.whisker_left(f, &d)?)?;
        if left.two_eq(&lhs, &rhs) {
            survivors.push(d);
        }
    }
    match survivors.len() {
        1 => Ok(survivors.pop().expect("one survivor")),
        n => Err(Error::NotContractible(n, left.describe(f))),
    }
}
