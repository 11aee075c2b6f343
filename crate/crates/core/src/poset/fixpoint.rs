use serde::{Deserialize, Serialize};

use super::map::MonotoneMap;

/// Least fixpoint of a monotone endomap by iteration from bottom.
pub fn kleene_star(f: &MonotoneMap) -> usize {
    *kleene_trace(f).last().expect("trace is nonempty")
}

/// The iterates `⊥, f(⊥), …` up to and including the first stable one.
pub fn kleene_trace(f: &MonotoneMap) -> Vec<usize> {
    f.iterates()
}

/// Elements of the symbolic ω+1: finite stages and the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OmegaBar {
    Fin(u64),
    Top,
}

impl OmegaBar {
    /// The algebra structure on ω+1, on its lift `(ω+1)_⊥`. `None` stands
    /// for the fresh bottom.
    pub fn structure(x: Option<OmegaBar>) -> OmegaBar {
        match x {
            None => OmegaBar::Fin(0),
            Some(OmegaBar::Fin(n)) => OmegaBar::Fin(n + 1),
            Some(OmegaBar::Top) => OmegaBar::Top,
        }
    }

    /// The point `t: 1 → ω+1`.
    pub fn point() -> OmegaBar {
        OmegaBar::Top
    }
}

/// The mediating algebra map `u_f: ω+1 → A` for an endomap `f`.
#[derive(Debug, Clone)]
pub struct MediatingMap {
    f: MonotoneMap,
    stages: Vec<usize>,
    top: usize,
}

/// Builds `u_f`: `u_f(Fin n) = f^n(⊥)` and `u_f(Top)` is the supremum of the
/// finite stages probed at `0..=|A|+1`.
pub fn mediating_map(f: &MonotoneMap) -> MediatingMap {
    assert!(f.is_endo(), "mediating map of a non-endomap");
    let a = &f.source;
    let mut stages = vec![a.bottom()];
    for _ in 0..=a.len() {
        let last = *stages.last().expect("nonempty");
        stages.push(f.apply(last));
    }
    let top = a.join(&stages).expect("a finite chain has a supremum");
    MediatingMap { f: f.clone(), stages, top }
}

impl MediatingMap {
    pub fn eval(&self, x: OmegaBar) -> usize {
        match x {
            OmegaBar::Top => self.top,
            OmegaBar::Fin(n) => {
                let n = n as usize;
                if n < self.stages.len() {
                    self.stages[n]
                } else {
                    // past the probes the chain is constant
                    *self.stages.last().expect("nonempty")
                }
            }
        }
    }

    /// `Fin(0..=|A|+1)` and `Top`.
    pub fn probes(&self) -> Vec<OmegaBar> {
        let mut out: Vec<OmegaBar> = (0..self.stages.len() as u64).map(OmegaBar::Fin).collect();
        out.push(OmegaBar::Top);
        out
    }

    /// Monotonicity of `u_f` on the probes.
    pub fn is_monotone(&self) -> bool {
        let p = self.probes();
        let a = &self.f.source;
        p.iter().all(|&x| p.iter().all(|&y| x > y || a.leq(self.eval(x), self.eval(y))))
    }

    /// The algebra square `u_f ∘ R = f♯ ∘ (u_f)_⊥` on the fresh bottom and
    /// every probe.
    pub fn square_commutes(&self) -> bool {
        let a = &self.f.source;
        let fresh = self.eval(OmegaBar::structure(None)) == a.bottom();
        fresh
            && self.probes().into_iter().all(|x| self.eval(OmegaBar::structure(Some(x))) == self.f.apply(self.eval(x)))
    }

    /// The boundary of `τ: t ⇒ R t` after applying `u_f`, which is all a
    /// thin model can observe of it.
    pub fn tau_boundary_holds(&self) -> bool {
        let t = OmegaBar::point();
        self.eval(t) == self.eval(OmegaBar::structure(Some(t)))
    }
}

/// `f* := u_f ∘ t`.
pub fn bifree_star(f: &MonotoneMap) -> usize {
    mediating_map(f).eval(OmegaBar::point())
}
