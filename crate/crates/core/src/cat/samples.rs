//! Small hand-built categories used by the Cat-instance corpora and tests.

use super::category::FinCategory;

/// Builds a category from generators where every arrow is listed with its
/// full composition table by a closure over arrow names.
fn build(
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    compose: impl Fn(&str, &str) -> Option<&'static str>,
) -> FinCategory {
    let idents: Vec<(String, String)> = objects.iter().map(|o| (o.to_string(), format!("1{o}"))).collect();
    let mut all: Vec<(String, String, String)> =
        objects.iter().map(|o| (format!("1{o}"), o.to_string(), o.to_string())).collect();
    all.extend(arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())));
    let mut comp = Vec::new();
    for (g, gs, _) in &all {
        for (f, _, ft) in &all {
            if ft != gs {
                continue;
            }
            let h = if g.starts_with('1') && objects.contains(&&g[1..]) {
                f.clone()
            } else if f.starts_with('1') && objects.contains(&&f[1..]) {
                g.clone()
            } else {
                compose(g, f).expect("composite listed").to_string()
            };
            comp.push((g.clone(), f.clone(), h));
        }
    }
    let objects: Vec<String> = objects.iter().map(|o| o.to_string()).collect();
    FinCategory::new(&objects, &all, &idents, &comp).expect("sample category")
}

/// `0 → x`, where `x` carries an involution `s` (`s ∘ s = 1x`) fixing the
/// arrow out of the initial object.
pub fn involution() -> FinCategory {
    build(&["0", "x"], &[("i", "0", "x"), ("s", "x", "x")], |g, f| match (g, f) {
        ("s", "s") => Some("1x"),
        ("s", "i") => Some("i"),
        _ => None,
    })
}

/// Two isomorphic initial objects `0 ≅ 0'` and a third object `1`.
pub fn twin_initial() -> FinCategory {
    build(&["0", "0'", "1"], &[("u", "0", "0'"), ("v", "0'", "0"), ("a", "0", "1"), ("b", "0'", "1")], |g, f| {
        match (g, f) {
            ("v", "u") => Some("10"),
            ("u", "v") => Some("10'"),
            ("b", "u") => Some("a"),
            ("a", "v") => Some("b"),
            _ => None,
        }
    })
}

/// The span `a ← 0 → b` with `0` initial.
pub fn vee() -> FinCategory {
    build(&["0", "a", "b"], &[("p", "0", "a"), ("q", "0", "b")], |_, _| None)
}

/// Two objects and an isomorphism `i: a → b`, `j = i⁻¹`.
pub fn iso_pair() -> FinCategory {
    build(&["a", "b"], &[("i", "a", "b"), ("j", "b", "a")], |g, f| match (g, f) {
        ("j", "i") => Some("1a"),
        ("i", "j") => Some("1b"),
        _ => None,
    })
}

/// Initial object `0` under an isomorphism pair `a ≅ b`.
pub fn pointed_iso() -> FinCategory {
    build(&["0", "a", "b"], &[("p", "0", "a"), ("q", "0", "b"), ("i", "a", "b"), ("j", "b", "a")], |g, f| {
        match (g, f) {
            ("j", "i") => Some("1a"),
            ("i", "j") => Some("1b"),
            ("i", "p") => Some("q"),
            ("j", "q") => Some("p"),
            _ => None,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_valid() {
        for c in [involution(), twin_initial(), vee(), iso_pair(), pointed_iso()] {
            assert!(c.validate().is_empty(), "{c:?}: {:?}", c.validate());
        }
    }

    #[test]
    fn twin_initial_has_two_initial_objects() {
        assert_eq!(twin_initial().initial_objects().len(), 2);
        assert_eq!(involution().initial_objects(), vec![0]);
        assert_eq!(iso_pair().initial_objects(), vec![0, 1]);
        assert_eq!(vee().initial_objects(), vec![0]);
    }
}
