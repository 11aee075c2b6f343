use super::functor::{vcomp, whisker_left, whisker_right, FunctorData, NatTransfData};
use crate::error::{Error, Result};

/// A formal pasting of 2-cells, evaluated pointwise.
///
/// Expressions are never normalized; two expressions are equal when they
/// evaluate to the same [`NatTransfData`].
#[derive(Debug, Clone)]
pub enum TwoCellExpr {
    Identity(FunctorData),
    Atom(NatTransfData),
    /// `outer ∘ inner`: `inner` first.
    Vertical(Box<TwoCellExpr>, Box<TwoCellExpr>),
    /// `functor · expr`.
    WhiskerLeft(FunctorData, Box<TwoCellExpr>),
    /// `expr · functor`.
    WhiskerRight(Box<TwoCellExpr>, FunctorData),
}

impl TwoCellExpr {
    pub fn id(f: &FunctorData) -> Self {
        TwoCellExpr::Identity(f.clone())
    }

    pub fn atom(t: &NatTransfData) -> Self {
        TwoCellExpr::Atom(t.clone())
    }

    /// `self` followed by `next`.
    pub fn then(self, next: TwoCellExpr) -> Self {
        TwoCellExpr::Vertical(Box::new(next), Box::new(self))
    }

    pub fn whisker_left(f: &FunctorData, e: TwoCellExpr) -> Self {
        TwoCellExpr::WhiskerLeft(f.clone(), Box::new(e))
    }

    pub fn whisker_right(e: TwoCellExpr, f: &FunctorData) -> Self {
        TwoCellExpr::WhiskerRight(Box::new(e), f.clone())
    }

    /// Source and target functors, checking every vertical seam.
    pub fn boundary(&self) -> Result<(FunctorData, FunctorData)> {
        match self {
            TwoCellExpr::Identity(f) => Ok((f.clone(), f.clone())),
            TwoCellExpr::Atom(t) => Ok((t.source.clone(), t.target.clone())),
            TwoCellExpr::Vertical(outer, inner) => {
                let (s, m1) = inner.boundary()?;
                let (m2, t) = outer.boundary()?;
                if m1 != m2 {
                    return Err(Error::BoundaryMismatch(format!("vertical seam: {m1:?} vs {m2:?}")));
                }
                Ok((s, t))
            }
            TwoCellExpr::WhiskerLeft(h, e) => {
                let (s, t) = e.boundary()?;
                Ok((h.after(&s).map_err(seam)?, h.after(&t).map_err(seam)?))
            }
            TwoCellExpr::WhiskerRight(e, k) => {
                let (s, t) = e.boundary()?;
                Ok((s.after(k).map_err(seam)?, t.after(k).map_err(seam)?))
            }
        }
    }

    /// The natural transformation the expression denotes.
    pub fn eval(&self) -> Result<NatTransfData> {
        self.boundary()?;
        self.eval_unchecked()
    }

    fn eval_unchecked(&self) -> Result<NatTransfData> {
        match self {
            TwoCellExpr::Identity(f) => Ok(NatTransfData::identity(f)),
            TwoCellExpr::Atom(t) => Ok(t.clone()),
            TwoCellExpr::Vertical(outer, inner) => vcomp(&outer.eval_unchecked()?, &inner.eval_unchecked()?),
            TwoCellExpr::WhiskerLeft(h, e) => whisker_left(h, &e.eval_unchecked()?),
            TwoCellExpr::WhiskerRight(e, k) => whisker_right(&e.eval_unchecked()?, k),
        }
    }
}

fn seam(e: Error) -> Error {
    match e {
        Error::TypeMismatch(m) => Error::BoundaryMismatch(m),
        other => other,
    }
}

/// Evaluates a 2-cell expression.
pub fn eval_2cell(e: &TwoCellExpr) -> Result<NatTransfData> {
    e.eval()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cat::FinCategory;

    /// Two objects with an isomorphism between them.
    fn iso_pair() -> Arc<FinCategory> {
        Arc::new(
            FinCategory::new(
                &["a", "b"],
                &[("1a", "a", "a"), ("1b", "b", "b"), ("i", "a", "b"), ("j", "b", "a")],
                &[("a", "1a"), ("b", "1b")],
                &[
                    ("1a", "1a", "1a"),
                    ("1b", "1b", "1b"),
                    ("i", "1a", "i"),
                    ("1b", "i", "i"),
                    ("j", "1b", "j"),
                    ("1a", "j", "j"),
                    ("j", "i", "1a"),
                    ("i", "j", "1b"),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_expression_evaluates_to_identity() {
        let c = iso_pair();
        let f = FunctorData::identity(&c);
        assert!(eval_2cell(&TwoCellExpr::id(&f)).unwrap().is_identity());
    }

    #[test]
    fn cell_then_inverse_is_identity() {
        let c = iso_pair();
        let t = Arc::new(FinCategory::terminal());
        let fa = FunctorData::constant(&t, &c, 0);
        let fb = FunctorData::constant(&t, &c, 1);
        let alpha = NatTransfData::new(fa.clone(), fb, vec![c.arrow("i").unwrap()]).unwrap();
        let inv = alpha.inverse().unwrap();
        let e = TwoCellExpr::atom(&alpha).then(TwoCellExpr::atom(&inv));
        assert_eq!(eval_2cell(&e).unwrap(), NatTransfData::identity(&fa));
    }

    #[test]
    fn mismatched_vertical_seam_is_rejected() {
        let c = iso_pair();
        let t = Arc::new(FinCategory::terminal());
        let fa = FunctorData::constant(&t, &c, 0);
        let fb = FunctorData::constant(&t, &c, 1);
        let alpha = NatTransfData::new(fa, fb, vec![c.arrow("i").unwrap()]).unwrap();
        let e = TwoCellExpr::atom(&alpha).then(TwoCellExpr::atom(&alpha));
        assert!(matches!(eval_2cell(&e), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn left_whisker_matches_pointwise_construction() {
        let c = iso_pair();
        let t = Arc::new(FinCategory::terminal());
        let fa = FunctorData::constant(&t, &c, 0);
        let fb = FunctorData::constant(&t, &c, 1);
        let alpha = NatTransfData::new(fa, fb, vec![c.arrow("i").unwrap()]).unwrap();
        // the swap automorphism
        let swap = FunctorData::from_ids(
            c.clone(),
            c.clone(),
            &[("a", "b"), ("b", "a")],
            &[("1a", "1b"), ("1b", "1a"), ("i", "j"), ("j", "i")],
        )
        .unwrap();
        assert!(swap.validate().is_empty());
        let e = TwoCellExpr::whisker_left(&swap, TwoCellExpr::atom(&alpha));
        let got = eval_2cell(&e).unwrap();
        let direct: Vec<usize> = alpha.components.iter().map(|&a| swap.arr(a)).collect();
        assert_eq!(got.components, direct);
        assert_eq!(got.components, vec![c.arrow("j").unwrap()]);
    }
}
