use super::model::{FixpointModel, Square};
use crate::error::Result;

/// Inputs of the dinat↔unif coherence: `f: A → B`, `g: B → A`,
/// `h: A' → B'`, `k: B' → A'`, strict `s: A → A'` and `r: B → B'`,
/// `γ: r ∘ f ⇒ h ∘ s` and `ρ: s ∘ g ⇒ k ∘ r`.
#[derive(Debug, Clone, PartialEq)]
pub struct DinatUnif<C, T> {
    pub f: C,
    pub g: C,
    pub h: C,
    pub k: C,
    pub s: C,
    pub r: C,
    pub gamma: T,
    pub rho: T,
}

/// Two squares over the same strict `s` and 2-cells `α: f ⇒ h`, `β: g ⇒ k`
/// between their endo-1-cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarePair<C, T> {
    pub gamma: Square<C, T>,
    pub rho: Square<C, T>,
    pub alpha: T,
    pub beta: T,
}

/// Two squares and a cell `θ: s ⇒ r` between their strict maps.
pub type SquareCell<C, T> = (Square<C, T>, Square<C, T>, T);

/// Instances for every law, grouped by shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus<C, T> {
    pub endos: Vec<C>,
    /// Invertible `α: f ⇒ g` between endo-1-cells.
    pub endo_isos: Vec<T>,
    /// `(f: A → B, g: B → A)`.
    pub pairs: Vec<(C, C)>,
    /// `(f: A → B, g: B → C, h: C → A)`.
    pub triples: Vec<(C, C, C)>,
    /// `(α: f ⇒ f', g)` with `g` opposite to `f`.
    pub left_cells: Vec<(T, C)>,
    /// `(f, β: g ⇒ g')`.
    pub right_cells: Vec<(C, T)>,
    pub squares: Vec<Square<C, T>>,
    /// `(γ, ρ)` with the target endo of `γ` the source endo of `ρ`.
    pub stacked: Vec<(Square<C, T>, Square<C, T>)>,
    /// `(γ, ρ, θ: s ⇒ r)` over common endo-1-cells.
    pub square_cells: Vec<SquareCell<C, T>>,
    pub square_pairs: Vec<SquarePair<C, T>>,
    pub dinat_unif: Vec<DinatUnif<C, T>>,
}

impl<C, T> Default for Corpus<C, T> {
    fn default() -> Self {
        Corpus {
            endos: Vec::new(),
            endo_isos: Vec::new(),
            pairs: Vec::new(),
            triples: Vec::new(),
            left_cells: Vec::new(),
            right_cells: Vec::new(),
            squares: Vec::new(),
            stacked: Vec::new(),
            square_cells: Vec::new(),
            square_pairs: Vec::new(),
            dinat_unif: Vec::new(),
        }
    }
}

impl<C: Clone + PartialEq, T: Clone> Corpus<C, T> {
    pub fn extend(&mut self, other: Corpus<C, T>) {
        self.endos.extend(other.endos);
        self.endo_isos.extend(other.endo_isos);
        self.pairs.extend(other.pairs);
        self.triples.extend(other.triples);
        self.left_cells.extend(other.left_cells);
        self.right_cells.extend(other.right_cells);
        self.squares.extend(other.squares);
        self.stacked.extend(other.stacked);
        self.square_cells.extend(other.square_cells);
        self.square_pairs.extend(other.square_pairs);
        self.dinat_unif.extend(other.dinat_unif);
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty() && self.pairs.is_empty() && self.squares.is_empty()
    }

    /// Derives the stacked, paired and dinat↔unif instances from the
    /// squares already present, at most `cap` of each.
    pub fn derive_from_squares<M>(&mut self, m: &M, cap: usize) -> Result<()>
    where
        M: FixpointModel<Cell = C, Two = T>,
    {
        let sq = &self.squares;
        let mut stacked = Vec::new();
        let mut dinat_unif = Vec::new();
        'outer: for a in sq {
            for b in sq {
                if stacked.len() < cap && a.g == b.f {
                    stacked.push((a.clone(), b.clone()));
                }
                if dinat_unif.len() < cap && a.s == b.s && m.dom(&a.s) == m.dom(&a.f) {
                    dinat_unif.push(DinatUnif {
                        f: a.f.clone(),
                        g: b.f.clone(),
                        h: a.g.clone(),
                        k: b.g.clone(),
                        s: a.s.clone(),
                        r: a.s.clone(),
                        gamma: a.gamma.clone(),
                        rho: b.gamma.clone(),
                    });
                }
                if stacked.len() >= cap && dinat_unif.len() >= cap {
                    break 'outer;
                }
            }
        }
        self.stacked.extend(stacked);
        self.dinat_unif.extend(dinat_unif);
        Ok(())
    }

    /// Fills the 2-cell-indexed families with identity 2-cells, the only
    /// ones a thin model has between equal 1-cells.
    pub fn with_identity_cells<M>(&mut self, m: &M)
    where
        M: FixpointModel<Cell = C, Two = T>,
    {
        self.endo_isos.extend(self.endos.iter().map(|f| m.two_identity(f)));
        for (f, g) in &self.pairs {
            self.left_cells.push((m.two_identity(f), g.clone()));
            self.right_cells.push((f.clone(), m.two_identity(g)));
        }
        for sq in &self.squares {
            self.square_cells.push((sq.clone(), sq.clone(), m.two_identity(&sq.s)));
            self.square_pairs.push(SquarePair {
                gamma: sq.clone(),
                rho: sq.clone(),
                alpha: m.two_identity(&sq.f),
                beta: m.two_identity(&sq.g),
            });
        }
    }
}

/// At most `cap` elements, evenly spaced through `v`.
pub fn spread<X: Clone>(v: &[X], cap: usize) -> Vec<X> {
    if v.len() <= cap {
        return v.to_vec();
    }
    (0..cap).map(|i| v[i * v.len() / cap].clone()).collect()
}
