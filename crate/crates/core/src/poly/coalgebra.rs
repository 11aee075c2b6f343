use std::collections::HashMap;

use super::polynomial::Polynomial;
use crate::error::{invalid, Error, Result};

/// A finite coalgebra `X → P(X)` for an endo-polynomial over `1`: each state
/// has a constructor and one successor per fiber element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraSystem {
    pub poly: Polynomial,
    pub states: Vec<String>,
    pub structure: Vec<(usize, Vec<usize>)>,
}

impl CoalgebraSystem {
    pub fn new(poly: Polynomial, states: Vec<String>, structure: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        poly.require_over_one()?;
        if structure.len() != states.len() {
            return Err(invalid("structure map must be total on states"));
        }
        for (x, (b, succ)) in structure.iter().enumerate() {
            if *b >= poly.b.len() || succ.len() != poly.arity(*b) || succ.iter().any(|&y| y >= states.len()) {
                return Err(invalid(format!("state `{}` has an ill-formed observation", states[x])));
            }
        }
        Ok(CoalgebraSystem { poly, states, structure })
    }

    /// From `(state, constructor, successors)` id triples.
    pub fn from_ids<S: AsRef<str>>(poly: Polynomial, rows: &[(S, S, Vec<S>)]) -> Result<Self> {
        let states: Vec<String> = rows.iter().map(|r| r.0.as_ref().to_string()).collect();
        let look = |id: &str, names: &[String], ctx: &str| {
            names.iter().position(|n| n == id).ok_or_else(|| Error::UnknownId { id: id.into(), context: ctx.into() })
        };
        let mut structure = Vec::new();
        for (_, b, succ) in rows {
            let b = look(b.as_ref(), &poly.b, "constructors")?;
            let succ = succ.iter().map(|y| look(y.as_ref(), &states, "states")).collect::<Result<Vec<_>>>()?;
            structure.push((b, succ));
        }
        Self::new(poly, states, structure)
    }

    pub fn state(&self, id: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| Error::UnknownId { id: id.into(), context: "states".into() })
    }
}

/// Largest bisimulation on the disjoint union of `systems`, by partition
/// refinement. Returns a block number per `(system, state)`.
pub fn bisimulation_blocks(systems: &[&CoalgebraSystem]) -> Result<Vec<Vec<usize>>> {
    if let Some(first) = systems.first() {
        if systems.iter().any(|s| s.poly != first.poly) {
            return Err(Error::TypeMismatch("systems are over different polynomials".into()));
        }
    }
    let mut block: Vec<Vec<usize>> = systems.iter().map(|s| s.structure.iter().map(|(b, _)| *b).collect()).collect();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for (k, s) in systems.iter().enumerate() {
            let row = s
                .structure
                .iter()
                .enumerate()
                .map(|(x, (_, succ))| {
                    let sig = (block[k][x], succ.iter().map(|&y| block[k][y]).collect());
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            next.push(row);
        }
        let before: usize = count_blocks(&block);
        let after = ids.len();
        block = next;
        if after == before {
            return Ok(block);
        }
    }
}

fn count_blocks(block: &[Vec<usize>]) -> usize {
    let mut seen: Vec<usize> = block.iter().flatten().copied().collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

pub fn bisimilar(c1: &CoalgebraSystem, c2: &CoalgebraSystem, x1: usize, x2: usize) -> Result<bool> {
    if x1 >= c1.states.len() || x2 >= c2.states.len() {
        return Err(invalid("state out of range"));
    }
    let blocks = bisimulation_blocks(&[c1, c2])?;
    Ok(blocks[0][x1] == blocks[1][x2])
}

/// A depth-bounded unfolding; `children` is `None` where the bound cut it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unfolding {
    pub b: usize,
    pub children: Option<Vec<Unfolding>>,
}

impl Unfolding {
    pub fn show(&self, poly: &Polynomial) -> String {
        let name = &poly.b[self.b];
        match &self.children {
            None if poly.arity(self.b) > 0 => format!("{name}(…)"),
            Some(cs) if !cs.is_empty() => {
                let parts: Vec<String> = cs.iter().map(|c| c.show(poly)).collect();
                format!("{name}({})", parts.join(","))
            }
            _ => name.clone(),
        }
    }
}

/// The depth-`d` approximation of the tree a state unfolds to.
pub fn mtype_unfold(c: &CoalgebraSystem, x: usize, depth: usize) -> Unfolding {
    let (b, succ) = &c.structure[x];
    let children = if depth == 0 { None } else { Some(succ.iter().map(|&y| mtype_unfold(c, y, depth - 1)).collect()) };
    Unfolding { b: *b, children }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn streams(rows: &[(&str, &str, Vec<&str>)]) -> CoalgebraSystem {
        CoalgebraSystem::from_ids(Polynomial::stream(&["0", "1"]), rows).unwrap()
    }

    #[test]
    fn single_constructor_identifies_everything() {
        let p = Polynomial::over_one(&[("step", 1)]);
        let c1 = CoalgebraSystem::from_ids(p.clone(), &[("x", "step", vec!["x"])]).unwrap();
        let c2 = CoalgebraSystem::from_ids(p, &[("y", "step", vec!["z"]), ("z", "step", vec!["y"])]).unwrap();
        for y in 0..2 {
            assert!(bisimilar(&c1, &c2, 0, y).unwrap());
        }
    }

    #[test]
    fn different_heads_split() {
        let c = streams(&[("x", "0", vec!["x"]), ("y", "1", vec!["y"])]);
        assert!(!bisimilar(&c, &c, 0, 1).unwrap());
    }

    #[test]
    fn late_difference_is_found() {
        // 0 0 0 1 1 1 … versus 0 0 1 1 1 …
        let c = streams(&[
            ("a", "0", vec!["b"]),
            ("b", "0", vec!["c"]),
            ("c", "0", vec!["d"]),
            ("d", "1", vec!["d"]),
            ("e", "0", vec!["f"]),
            ("f", "0", vec!["d"]),
        ]);
        assert!(!bisimilar(&c, &c, 0, 4).unwrap());
        assert!(bisimilar(&c, &c, 1, 4).unwrap());
        assert_eq!(mtype_unfold(&c, 0, 1), mtype_unfold(&c, 4, 1));
        assert_ne!(mtype_unfold(&c, 0, 2), mtype_unfold(&c, 4, 2));
    }

    #[test]
    fn depth_zero_is_the_root() {
        let c = streams(&[("x", "1", vec!["x"])]);
        let u = mtype_unfold(&c, 0, 0);
        assert_eq!(u, Unfolding { b: 1, children: None });
        assert_eq!(mtype_unfold(&c, 0, 2).show(&c.poly), "1(1(1(…)))");
    }
}
