use std::collections::BTreeSet;
use std::fmt;

use super::polynomial::{tuples, Polynomial};
use crate::error::{Error, Result};

/// Largest chain stage that will be materialized.
pub const MAX_STAGE: usize = 1_000_000;

/// A well-founded tree: a constructor and one subtree per fiber element, in
/// fiber order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WTree {
    pub b: usize,
    pub children: Vec<WTree>,
}

impl WTree {
    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn show(&self, poly: &Polynomial) -> String {
        ShowTree { tree: self, polys: &[poly] }.to_string()
    }
}

/// Renders a tree whose levels alternate through `polys`.
pub(crate) struct ShowTree<'a> {
    pub tree: &'a WTree,
    pub polys: &'a [&'a Polynomial],
}

impl fmt::Display for ShowTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, rest) = self.polys.split_first().expect("at least one polynomial");
        write!(f, "{}", p.b[self.tree.b])?;
        if !self.tree.children.is_empty() {
            let mut next: Vec<&Polynomial> = rest.to_vec();
            next.push(p);
            write!(f, "(")?;
            for (k, c) in self.tree.children.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", ShowTree { tree: c, polys: &next })?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// One stage of a W-chain: a set of trees per sort.
pub type Stage = Vec<BTreeSet<WTree>>;

/// `P(X)` on sets of trees: every constructor with children drawn from the
/// sorts its fiber requires.
pub fn apply_to_trees(poly: &Polynomial, x: &Stage) -> Result<Stage> {
    let mut out: Stage = vec![BTreeSet::new(); poly.j.len()];
    let mut total = 0usize;
    for b in 0..poly.b.len() {
        let fib = poly.fiber(b);
        let pools: Vec<Vec<&WTree>> = fib.iter().map(|&e| x[poly.s[e]].iter().collect()).collect();
        let size = pools.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
        total = total.saturating_add(size.unwrap_or(usize::MAX));
        if total > MAX_STAGE {
            return Err(Error::SizeCap(format!("W-chain stage exceeds {MAX_STAGE} trees")));
        }
        let sizes: Vec<usize> = pools.iter().map(|p| p.len()).collect();
        for idx in tuples(&sizes) {
            let children = idx.iter().enumerate().map(|(k, &i)| pools[k][i].clone()).collect();
            out[poly.t[b]].insert(WTree { b, children });
        }
    }
    Ok(out)
}

/// Stages `P^0(∅), …, P^depth(∅)` of an endo-polynomial.
pub fn wtype_stages(poly: &Polynomial, depth: usize) -> Result<Vec<Stage>> {
    poly.require_endo()?;
    let mut stages: Vec<Stage> = vec![vec![BTreeSet::new(); poly.i.len()]];
    for _ in 0..depth {
        let next = apply_to_trees(poly, stages.last().expect("nonempty"))?;
        stages.push(next);
    }
    Ok(stages)
}

/// Sizes of the next stage from the sizes of the current one.
fn next_counts(poly: &Polynomial, counts: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; poly.j.len()];
    for b in 0..poly.b.len() {
        let prod = poly.fiber(b).iter().fold(1u128, |acc, &e| acc.saturating_mul(counts[poly.s[e]]));
        out[poly.t[b]] = out[poly.t[b]].saturating_add(prod);
    }
    out
}

/// The W-chain of an endo-polynomial over `1` up to a depth.
#[derive(Debug, Clone)]
pub struct WTypeStage {
    pub depth: usize,
    /// Trees of `P^depth(∅)`, i.e. of height below `depth`.
    pub trees: Vec<WTree>,
    /// `|P^d(∅)|` for `d = 0..=depth`.
    pub counts: Vec<usize>,
    /// `P^depth(∅) = P^{depth+1}(∅)`; the trees are then the whole W-type.
    pub stabilized: bool,
}

pub fn wtype_enumerate(poly: &Polynomial, depth: usize) -> Result<WTypeStage> {
    poly.require_over_one()?;
    let stages = wtype_stages(poly, depth)?;
    let counts: Vec<usize> = stages.iter().map(|s| s[0].len()).collect();
    let last = *counts.last().expect("nonempty") as u128;
    let stabilized = next_counts(poly, &[last])[0] == last;
    let trees = stages.into_iter().last().expect("nonempty").remove(0).into_iter().collect();
    Ok(WTypeStage { depth, trees, counts, stabilized })
}

/// First depth at which the chain is stable, searching up to `max_depth`.
pub fn wtype_stabilization(poly: &Polynomial, max_depth: usize) -> Result<Option<usize>> {
    for d in 0..=max_depth {
        if wtype_enumerate(poly, d)?.stabilized {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
