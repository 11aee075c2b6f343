use std::sync::Arc;

use super::map::MonotoneMap;
use super::order::PointedPoset;
use crate::error::{Error, Result};

/// A binary product `P × Q` with its projections. Element `(x, y)` has index
/// `x * |Q| + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub left: Arc<PointedPoset>,
    pub right: Arc<PointedPoset>,
    pub carrier: Arc<PointedPoset>,
}

/// Componentwise-ordered product.
pub fn product(p: &Arc<PointedPoset>, q: &Arc<PointedPoset>) -> Product {
    let (n, m) = (p.len(), q.len());
    let names = (0..n * m).map(|i| format!("({},{})", p.element_id(i / m), q.element_id(i % m))).collect();
    let leq = (0..n * m).map(|i| (0..n * m).map(|j| p.leq(i / m, j / m) && q.leq(i % m, j % m)).collect()).collect();
    let bottom = p.bottom() * m + q.bottom();
    let carrier = PointedPoset::from_matrix(names, leq, bottom).expect("product of posets");
    Product { left: p.clone(), right: q.clone(), carrier: Arc::new(carrier) }
}

impl Product {
    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.right.len() + y
    }

    pub fn components(&self, z: usize) -> (usize, usize) {
        (z / self.right.len(), z % self.right.len())
    }

    pub fn pi1(&self) -> MonotoneMap {
        let a = (0..self.carrier.len()).map(|z| self.components(z).0).collect();
        MonotoneMap { source: self.carrier.clone(), target: self.left.clone(), assignment: a, strict: true }
    }

    pub fn pi2(&self) -> MonotoneMap {
        let a = (0..self.carrier.len()).map(|z| self.components(z).1).collect();
        MonotoneMap { source: self.carrier.clone(), target: self.right.clone(), assignment: a, strict: true }
    }

    /// `⟨f, g⟩: C → P × Q`.
    pub fn pair(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        if f.source != g.source || f.target != self.left || g.target != self.right {
            return Err(Error::TypeMismatch("pairing with mismatched boundaries".into()));
        }
        let a = (0..f.source.len()).map(|x| self.index(f.apply(x), g.apply(x))).collect();
        Ok(MonotoneMap {
            source: f.source.clone(),
            target: self.carrier.clone(),
            assignment: a,
            strict: f.strict && g.strict,
        })
    }
}

/// The symmetry `σ = ⟨π₂, π₁⟩: P × Q → Q × P`.
pub fn swap(p: &Arc<PointedPoset>, q: &Arc<PointedPoset>) -> MonotoneMap {
    let pq = product(p, q);
    let qp = product(q, p);
    qp.pair(&pq.pi2(), &pq.pi1()).expect("projections are parallel")
}

/// `f × g: A × C → B × D`.
pub fn map_product(f: &MonotoneMap, g: &MonotoneMap) -> MonotoneMap {
    let dom = product(&f.source, &g.source);
    let cod = product(&f.target, &g.target);
    let l = f.after(&dom.pi1()).expect("boundary");
    let r = g.after(&dom.pi2()).expect("boundary");
    cod.pair(&l, &r).expect("boundary")
}
