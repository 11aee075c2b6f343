use std::collections::BTreeSet;

use super::polynomial::Polynomial;
use super::wtype::{apply_to_trees, Stage};
use crate::error::{Error, Result};

/// Stage-wise comparison of the `GF`-chain pushed through `F` with the
/// `FG`-chain.
///
/// `u[n]` alternates `F, G, F, …` from the outside in, so
/// `u[2k] = (FG)^k(∅)` and `u[2k+1] = F((GF)^k(∅))`; `v` is the same with
/// the roles swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreydReport {
    /// `|u[n]|` summed over sorts for every computed stage.
    pub counts_u: Vec<usize>,
    pub counts_v: Vec<usize>,
    /// Every `u[n] ⊆ u[n+1]` and `v[n] ⊆ v[n+1]`.
    pub inclusions_hold: bool,
    /// Least `k` with `(GF)^k(∅) = (GF)^{k+1}(∅)`, if seen.
    pub gf_stabilized_at: Option<usize>,
    /// Least `k` with `(FG)^k(∅) = (FG)^{k+1}(∅)`, if seen.
    pub fg_stabilized_at: Option<usize>,
    /// At `GF`-stabilization `k`: `F((GF)^k(∅)) = (FG)^{k+1}(∅)`, so the
    /// image of the structure map is the `FG`-structure.
    pub structure_holds: Option<bool>,
    /// The chains were cut off before stabilization.
    pub partial: bool,
    pub failure: Option<String>,
}

impl FreydReport {
    pub fn passes(&self) -> bool {
        self.inclusions_hold && self.structure_holds != Some(false) && self.failure.is_none()
    }
}

fn total(s: &Stage) -> usize {
    s.iter().map(BTreeSet::len).sum()
}

fn included(a: &Stage, b: &Stage) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

/// Runs both interleaved chains for `depth` rounds of `GF` (and two extra
/// stages when they fit under the size cap).
pub fn freyd_dinat_check(f: &Polynomial, g: &Polynomial, depth: usize) -> Result<FreydReport> {
    if f.i != g.j || f.j != g.i {
        return Err(Error::TypeMismatch("F and G do not compose both ways".into()));
    }
    let want = 2 * depth + 3;
    let mut u: Vec<Stage> = vec![vec![BTreeSet::new(); f.j.len()]];
    let mut v: Vec<Stage> = vec![vec![BTreeSet::new(); g.j.len()]];
    let mut failure = None;
    for _ in 0..want {
        let n = u.len();
        // u[n] = F(v[n-1]), v[n] = G(u[n-1])
        match (apply_to_trees(f, &v[n - 1]), apply_to_trees(g, &u[n - 1])) {
            (Ok(a), Ok(b)) => {
                u.push(a);
                v.push(b);
            }
            (Err(Error::SizeCap(_)), _) | (_, Err(Error::SizeCap(_))) => break,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    let inclusions_hold = u.windows(2).chain(v.windows(2)).all(|w| included(&w[0], &w[1]));
    if !inclusions_hold {
        failure = Some("chains are not increasing".into());
    }
    let stable = |c: &[Stage]| (0..).take_while(|k| 2 * k + 2 < c.len()).find(|&k| c[2 * k] == c[2 * k + 2]);
    let gf = stable(&v);
    let fg = stable(&u);
    let structure_holds =
        gf.and_then(|k| (2 * k + 3 < u.len()).then(|| u[2 * k + 1] == u[2 * k + 2] && u[2 * k + 2] == u[2 * k + 3]));
    if structure_holds == Some(false) {
        failure = Some("F applied to the stable GF-stage is not the FG-fixpoint".into());
    }
    if let (Some(a), Some(b)) = (gf, fg) {
        if b > a + 1 || a > b + 1 {
            failure = Some(format!("GF stabilizes at {a} but FG at {b}"));
        }
    }
    Ok(FreydReport {
        counts_u: u.iter().map(total).collect(),
        counts_v: v.iter().map(total).collect(),
        inclusions_hold,
        gf_stabilized_at: gf,
        fg_stabilized_at: fg,
        structure_holds,
        partial: gf.is_none() || structure_holds.is_none(),
        failure,
    })
}
