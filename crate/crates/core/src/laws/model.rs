use std::fmt::Debug;

use crate::error::{Error, Result};

/// A commuting square `γ: s ∘ f ⇒ g ∘ s` with `s` strict.
#[derive(Debug, Clone, PartialEq)]
pub struct Square<C, T> {
    pub s: C,
    pub f: C,
    pub g: C,
    pub gamma: T,
}

/// What the law suite needs from a model of fixpoint operators.
///
/// Witness cells are oriented as `fix_f: f ∘ f* ⇒ f*`,
/// `dinat^f_g: f ∘ (g ∘ f)* ⇒ (f ∘ g)*`, `unif_γ: s ∘ f* ⇒ g*` and
/// `α*: f* ⇒ g*` for `α: f ⇒ g`.
pub trait FixpointModel {
    type Obj: Clone + Debug + PartialEq;
    type Cell: Clone + Debug + PartialEq;
    type Two: Clone + Debug;

    fn name(&self) -> String;

    fn dom(&self, f: &Self::Cell) -> Self::Obj;
    fn cod(&self, f: &Self::Cell) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Cell;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Cell, f: &Self::Cell) -> Result<Self::Cell>;
    fn terminal(&self) -> Self::Obj;
    /// Membership in the strict subcategory.
    fn is_strict(&self, s: &Self::Cell) -> bool;
    fn describe(&self, f: &Self::Cell) -> String;

    fn two_identity(&self, f: &Self::Cell) -> Self::Two;
    fn two_source(&self, a: &Self::Two) -> Self::Cell;
    fn two_target(&self, a: &Self::Two) -> Self::Cell;
    /// `β ∘ α`: `α` first.
    fn vcomp(&self, beta: &Self::Two, alpha: &Self::Two) -> Result<Self::Two>;
    /// `h · α`.
    fn whisker_left(&self, h: &Self::Cell, alpha: &Self::Two) -> Result<Self::Two>;
    /// `α · k`.
    fn whisker_right(&self, alpha: &Self::Two, k: &Self::Cell) -> Result<Self::Two>;
    fn two_inverse(&self, alpha: &Self::Two) -> Result<Self::Two>;
    fn two_eq(&self, a: &Self::Two, b: &Self::Two) -> bool;
    fn describe_two(&self, a: &Self::Two) -> String;
    /// Every invertible 2-cell `p ⇒ q`, for the contractibility search.
    fn isos_between(&self, p: &Self::Cell, q: &Self::Cell) -> Result<Vec<Self::Two>>;

    /// `f*: 1 → A` for an endo-1-cell `f` on `A`.
    fn star(&self, f: &Self::Cell) -> Result<Self::Cell>;
    fn fix(&self, f: &Self::Cell) -> Result<Self::Two>;
    fn alpha_star(&self, alpha: &Self::Two) -> Result<Self::Two>;
    fn dinat(&self, f: &Self::Cell, g: &Self::Cell) -> Result<Self::Two>;
    fn unif(&self, sq: &Square<Self::Cell, Self::Two>) -> Result<Self::Two>;
    /// Whether the 2-cell is invertible, when the model can decide it.
    fn is_invertible(&self, a: &Self::Two) -> bool {
        self.two_inverse(a).is_ok()
    }

    /// `A × B` with its projections.
    fn product(&self, _a: &Self::Obj, _b: &Self::Obj) -> Result<(Self::Obj, Self::Cell, Self::Cell)> {
        Err(Error::NoProducts)
    }

    /// `⟨f, g⟩: X → A × B`.
    fn pair(&self, _f: &Self::Cell, _g: &Self::Cell) -> Result<Self::Cell> {
        Err(Error::NoProducts)
    }
}

/// A locally posetal model with at most one 2-cell between parallel
/// 1-cells, which exists exactly when they are equal.
pub trait ThinModel {
    type Obj: Clone + Debug + PartialEq;
    type Cell: Clone + Debug + PartialEq;

    fn name(&self) -> String;
    fn dom(&self, f: &Self::Cell) -> Self::Obj;
    fn cod(&self, f: &Self::Cell) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Cell;
    fn compose(&self, g: &Self::Cell, f: &Self::Cell) -> Result<Self::Cell>;
    fn terminal(&self) -> Self::Obj;
    fn is_strict(&self, s: &Self::Cell) -> bool;
    fn describe(&self, f: &Self::Cell) -> String;
    fn star(&self, f: &Self::Cell) -> Result<Self::Cell>;

    fn product(&self, _a: &Self::Obj, _b: &Self::Obj) -> Result<(Self::Obj, Self::Cell, Self::Cell)> {
        Err(Error::NoProducts)
    }

    fn pair(&self, _f: &Self::Cell, _g: &Self::Cell) -> Result<Self::Cell> {
        Err(Error::NoProducts)
    }
}

/// A would-be 2-cell of a thin model: its boundary, and whether the
/// boundary is an equality (so that the cell exists).
#[derive(Debug, Clone, PartialEq)]
pub struct ThinCell<C> {
    pub src: C,
    pub tgt: C,
    pub holds: bool,
}

impl<C: PartialEq + Clone> ThinCell<C> {
    pub fn witness(src: C, tgt: C) -> Self {
        let holds = src == tgt;
        ThinCell { src, tgt, holds }
    }
}

impl<M: ThinModel> FixpointModel for M {
    type Obj = M::Obj;
    type Cell = M::Cell;
    type Two = ThinCell<M::Cell>;

    fn name(&self) -> String {
        ThinModel::name(self)
    }

    fn dom(&self, f: &M::Cell) -> M::Obj {
        ThinModel::dom(self, f)
    }

    fn cod(&self, f: &M::Cell) -> M::Obj {
        ThinModel::cod(self, f)
    }

    fn identity(&self, a: &M::Obj) -> M::Cell {
        ThinModel::identity(self, a)
    }

    fn compose(&self, g: &M::Cell, f: &M::Cell) -> Result<M::Cell> {
        ThinModel::compose(self, g, f)
    }

    fn terminal(&self) -> M::Obj {
        ThinModel::terminal(self)
    }

    fn is_strict(&self, s: &M::Cell) -> bool {
        ThinModel::is_strict(self, s)
    }

    fn describe(&self, f: &M::Cell) -> String {
        ThinModel::describe(self, f)
    }

    fn two_identity(&self, f: &M::Cell) -> ThinCell<M::Cell> {
        ThinCell { src: f.clone(), tgt: f.clone(), holds: true }
    }

    fn two_source(&self, a: &ThinCell<M::Cell>) -> M::Cell {
        a.src.clone()
    }

    fn two_target(&self, a: &ThinCell<M::Cell>) -> M::Cell {
        a.tgt.clone()
    }

    fn vcomp(&self, beta: &ThinCell<M::Cell>, alpha: &ThinCell<M::Cell>) -> Result<ThinCell<M::Cell>> {
        if alpha.tgt != beta.src {
            return Err(Error::BoundaryMismatch(format!(
                "vertical seam: {} vs {}",
                ThinModel::describe(self, &alpha.tgt),
                ThinModel::describe(self, &beta.src)
            )));
        }
        Ok(ThinCell { src: alpha.src.clone(), tgt: beta.tgt.clone(), holds: alpha.holds && beta.holds })
    }

    fn whisker_left(&self, h: &M::Cell, alpha: &ThinCell<M::Cell>) -> Result<ThinCell<M::Cell>> {
        Ok(ThinCell {
            src: ThinModel::compose(self, h, &alpha.src)?,
            tgt: ThinModel::compose(self, h, &alpha.tgt)?,
            holds: alpha.holds,
        })
    }

    fn whisker_right(&self, alpha: &ThinCell<M::Cell>, k: &M::Cell) -> Result<ThinCell<M::Cell>> {
        Ok(ThinCell {
            src: ThinModel::compose(self, &alpha.src, k)?,
            tgt: ThinModel::compose(self, &alpha.tgt, k)?,
            holds: alpha.holds,
        })
    }

    fn two_inverse(&self, alpha: &ThinCell<M::Cell>) -> Result<ThinCell<M::Cell>> {
        if !alpha.holds {
            return Err(Error::NotInvertible(self.describe_two(alpha)));
        }
        Ok(ThinCell { src: alpha.tgt.clone(), tgt: alpha.src.clone(), holds: true })
    }

    fn two_eq(&self, a: &ThinCell<M::Cell>, b: &ThinCell<M::Cell>) -> bool {
        a.holds && b.holds && a.src == b.src && a.tgt == b.tgt
    }

    fn describe_two(&self, a: &ThinCell<M::Cell>) -> String {
        let rel = if a.holds { "=" } else { "≠" };
        format!("{} {rel} {}", ThinModel::describe(self, &a.src), ThinModel::describe(self, &a.tgt))
    }

    fn isos_between(&self, p: &M::Cell, q: &M::Cell) -> Result<Vec<ThinCell<M::Cell>>> {
        Ok(if p == q { vec![ThinCell::witness(p.clone(), q.clone())] } else { Vec::new() })
    }

    fn star(&self, f: &M::Cell) -> Result<M::Cell> {
        ThinModel::star(self, f)
    }

    fn fix(&self, f: &M::Cell) -> Result<ThinCell<M::Cell>> {
        let s = ThinModel::star(self, f)?;
        Ok(ThinCell::witness(ThinModel::compose(self, f, &s)?, s))
    }

    fn alpha_star(&self, alpha: &ThinCell<M::Cell>) -> Result<ThinCell<M::Cell>> {
        let (a, b) = (ThinModel::star(self, &alpha.src)?, ThinModel::star(self, &alpha.tgt)?);
        let mut cell = ThinCell::witness(a, b);
        cell.holds &= alpha.holds;
        Ok(cell)
    }

    fn dinat(&self, f: &M::Cell, g: &M::Cell) -> Result<ThinCell<M::Cell>> {
        let gf = ThinModel::compose(self, g, f)?;
        let fg = ThinModel::compose(self, f, g)?;
        let lhs = ThinModel::compose(self, f, &ThinModel::star(self, &gf)?)?;
        Ok(ThinCell::witness(lhs, ThinModel::star(self, &fg)?))
    }

    fn unif(&self, sq: &Square<M::Cell, ThinCell<M::Cell>>) -> Result<ThinCell<M::Cell>> {
        let lhs = ThinModel::compose(self, &sq.s, &ThinModel::star(self, &sq.f)?)?;
        let mut cell = ThinCell::witness(lhs, ThinModel::star(self, &sq.g)?);
        cell.holds &= sq.gamma.holds;
        Ok(cell)
    }

    fn product(&self, a: &M::Obj, b: &M::Obj) -> Result<(M::Obj, M::Cell, M::Cell)> {
        ThinModel::product(self, a, b)
    }

    fn pair(&self, f: &M::Cell, g: &M::Cell) -> Result<M::Cell> {
        ThinModel::pair(self, f, g)
    }
}
