//! The JSON document format read and written by the command-line tool.
//!
//! Every document carries a `"kind"` tag. Printing is canonical: fields in
//! declaration order, relations and multisets sorted by element position, so
//! `print(parse(print(x))) == print(x)` byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{FinCategory, FunctorData, NatTransfData};
use crate::error::{Error, Result};
use crate::laws::SuiteConfig;
use crate::poly::{CoalgebraSystem, Polynomial};
use crate::poset::{MonotoneMap, PointedPoset};
use crate::rel::{FinSet, IdealRel, Multiset, MultisetRel, Preorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    /// Pairs `x ≤ y` with `x ≠ y`; closed under transitivity when printed.
    pub leq: Vec<(String, String)>,
    pub bottom: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonotoneMapDoc {
    pub source: PosetDoc,
    /// Omitted for endomaps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PosetDoc>,
    pub map: Vec<(String, String)>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetDoc {
    pub elements: Vec<String>,
}

/// A multiset as `(element, multiplicity)` pairs.
pub type MultisetDoc = Vec<(String, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultisetRelDoc {
    pub source: FinSetDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<FinSetDoc>,
    pub pairs: Vec<(MultisetDoc, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderDoc {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealRelDoc {
    pub source: PreorderDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PreorderDoc>,
    /// Generators `(u, b)` with `u` a finite subset of the source.
    pub pairs: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    /// `(id, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(object, identity arrow)`.
    pub identities: Vec<(String, String)>,
    /// `(g, f, g ∘ f)` for every composable pair.
    pub composition: Vec<(String, String, String)>,
}

/// Object and arrow assignments of a functor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMapDoc {
    pub objects: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: CategoryDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CategoryDoc>,
    pub objects: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatTransfDoc {
    pub source: CategoryDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CategoryDoc>,
    pub from: FunctorMapDoc,
    pub to: FunctorMapDoc,
    /// `(object, component arrow)`.
    pub components: Vec<(String, String)>,
}

/// `I ← E → B → J`, each map listed as `(x, f(x))` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub i: Vec<String>,
    pub e: Vec<String>,
    pub b: Vec<String>,
    pub j: Vec<String>,
    pub s: Vec<(String, String)>,
    pub p: Vec<(String, String)>,
    pub t: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDoc {
    pub polynomial: PolynomialDoc,
    /// `(state, constructor, successors)`.
    pub states: Vec<(String, String, Vec<String>)>,
}

/// A parsed input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Poset(PosetDoc),
    MonotoneMap(MonotoneMapDoc),
    FiniteSet(FinSetDoc),
    MultisetRelation(MultisetRelDoc),
    Preorder(PreorderDoc),
    IdealRelation(IdealRelDoc),
    Category(CategoryDoc),
    Functor(FunctorDoc),
    NatTransf(NatTransfDoc),
    Polynomial(PolynomialDoc),
    CoalgebraSystem(CoalgebraDoc),
    SuiteConfig(SuiteConfig),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::MonotoneMap(_) => "monotone-map",
            Document::FiniteSet(_) => "finite-set",
            Document::MultisetRelation(_) => "multiset-relation",
            Document::Preorder(_) => "preorder",
            Document::IdealRelation(_) => "ideal-relation",
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::NatTransf(_) => "nat-transf",
            Document::Polynomial(_) => "polynomial",
            Document::CoalgebraSystem(_) => "coalgebra-system",
            Document::SuiteConfig(_) => "suite-config",
        }
    }
}

/// Parses a document, reporting syntax and schema errors with a line and column.
pub fn parse(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| {
        // tagged content is buffered, so data errors carry no position
        if e.line() == 0 {
            Error::Invalid(e.to_string().trim_end_matches(" at line 0 column 0").to_string())
        } else {
            Error::Invalid(format!("line {}, column {}: {e}", e.line(), e.column()))
        }
    })
}

/// Canonical text of a document, newline-terminated. Objects are indented
/// one field per line; arrays holding no objects stay on one line.
pub fn print(doc: &Document) -> String {
    let v = serde_json::to_value(doc).expect("documents always serialize");
    let mut s = String::new();
    write_value(&v, 0, &mut s);
    s.push('\n');
    s
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(val, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(xs) if xs.iter().any(has_object) => {
            out.push_str("[\n");
            for (k, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&inline(other)),
    }
}

fn has_object(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(_) => true,
        serde_json::Value::Array(xs) => xs.iter().any(has_object),
        _ => false,
    }
}

fn inline(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Re-reads a document through the library types and prints it canonically.
pub fn canonicalize(doc: &Document) -> Result<Document> {
    Ok(match doc {
        Document::Poset(d) => Document::Poset(poset_doc(&poset_from(d)?)),
        Document::MonotoneMap(d) => Document::MonotoneMap(monotone_map_doc(&monotone_map_from(d)?)),
        Document::FiniteSet(d) => Document::FiniteSet(fin_set_doc(&fin_set_from(d)?)),
        Document::MultisetRelation(d) => Document::MultisetRelation(mrel_doc(&mrel_from(d)?)),
        Document::Preorder(d) => Document::Preorder(preorder_doc(&preorder_from(d)?)),
        Document::IdealRelation(d) => Document::IdealRelation(ideal_rel_doc(&ideal_rel_from(d)?)),
        Document::Category(d) => Document::Category(category_doc(&category_from(d)?)),
        Document::Functor(d) => Document::Functor(functor_doc(&functor_from(d)?)),
        Document::NatTransf(d) => Document::NatTransf(nat_transf_doc(&nat_transf_from(d)?)),
        Document::Polynomial(d) => Document::Polynomial(polynomial_doc(&polynomial_from(d)?)),
        Document::CoalgebraSystem(d) => Document::CoalgebraSystem(coalgebra_doc(&coalgebra_from(d)?)),
        Document::SuiteConfig(c) => {
            c.validate()?;
            Document::SuiteConfig(c.clone())
        }
    })
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Invalid(m) => Error::Invalid(format!("{path}: {m}")),
        Error::UnknownId { id, context } => Error::UnknownId { id, context: format!("{path} ({context})") },
        other => other,
    }
}

fn owned(xs: &[(String, String)]) -> Vec<(&str, &str)> {
    xs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

pub fn poset_doc(p: &PointedPoset) -> PosetDoc {
    PosetDoc { elements: p.elements().to_vec(), leq: p.order_pairs(), bottom: p.element_id(p.bottom()).to_string() }
}

pub fn poset_from(d: &PosetDoc) -> Result<PointedPoset> {
    PointedPoset::new(&d.elements, &d.leq, &d.bottom).map_err(at("poset"))
}

pub fn monotone_map_doc(m: &MonotoneMap) -> MonotoneMapDoc {
    let map = (0..m.source.len())
        .map(|x| (m.source.element_id(x).to_string(), m.target.element_id(m.assignment[x]).to_string()))
        .collect();
    MonotoneMapDoc {
        source: poset_doc(&m.source),
        target: (m.source != m.target).then(|| poset_doc(&m.target)),
        map,
        strict: m.strict,
    }
}

pub fn monotone_map_from(d: &MonotoneMapDoc) -> Result<MonotoneMap> {
    let source = Arc::new(poset_from(&d.source).map_err(at("source"))?);
    let target = match &d.target {
        Some(t) => Arc::new(poset_from(t).map_err(at("target"))?),
        None => source.clone(),
    };
    MonotoneMap::from_ids(source, target, &owned(&d.map), d.strict).map_err(at("map"))
}

pub fn fin_set_doc(s: &FinSet) -> FinSetDoc {
    FinSetDoc { elements: s.elements().to_vec() }
}

pub fn fin_set_from(d: &FinSetDoc) -> Result<FinSet> {
    FinSet::new(&d.elements).map_err(at("finite-set"))
}

fn multiset_doc(m: &Multiset, s: &FinSet) -> MultisetDoc {
    m.counts().map(|(x, k)| (s.element_id(x).to_string(), k)).collect()
}

pub fn mrel_doc(r: &MultisetRel) -> MultisetRelDoc {
    MultisetRelDoc {
        source: fin_set_doc(&r.source),
        target: (r.source != r.target).then(|| fin_set_doc(&r.target)),
        pairs: r.pairs.iter().map(|(m, b)| (multiset_doc(m, &r.source), r.target.element_id(*b).to_string())).collect(),
    }
}

pub fn mrel_from(d: &MultisetRelDoc) -> Result<MultisetRel> {
    let source = Arc::new(fin_set_from(&d.source).map_err(at("source"))?);
    let target = match &d.target {
        Some(t) => Arc::new(fin_set_from(t).map_err(at("target"))?),
        None => source.clone(),
    };
    let mut pairs = Vec::new();
    for (m, b) in &d.pairs {
        let counts =
            m.iter().map(|(x, k)| Ok((source.element(x)?, *k))).collect::<Result<Vec<_>>>().map_err(at("pairs"))?;
        let m = Multiset::from_counts(&counts).map_err(at("pairs"))?;
        pairs.push((m, target.element(b).map_err(at("pairs"))?));
    }
    MultisetRel::new(source, target, pairs).map_err(at("pairs"))
}

pub fn preorder_doc(p: &Preorder) -> PreorderDoc {
    PreorderDoc { elements: p.elements().to_vec(), leq: p.order_pairs() }
}

pub fn preorder_from(d: &PreorderDoc) -> Result<Preorder> {
    Preorder::new(&d.elements, &d.leq).map_err(at("preorder"))
}

pub fn ideal_rel_doc(r: &IdealRel) -> IdealRelDoc {
    IdealRelDoc {
        source: preorder_doc(&r.source),
        target: (r.source != r.target).then(|| preorder_doc(&r.target)),
        pairs: r
            .generators()
            .iter()
            .map(|(u, b)| {
                (u.iter().map(|&x| r.source.element_id(x).to_string()).collect(), r.target.element_id(*b).to_string())
            })
            .collect(),
    }
}

pub fn ideal_rel_from(d: &IdealRelDoc) -> Result<IdealRel> {
    let source = Arc::new(preorder_from(&d.source).map_err(at("source"))?);
    let target = match &d.target {
        Some(t) => Arc::new(preorder_from(t).map_err(at("target"))?),
        None => source.clone(),
    };
    IdealRel::from_ids(source, target, &d.pairs).map_err(at("pairs"))
}

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let (objects, arrows, identities, composition) = c.to_parts();
    CategoryDoc { objects, arrows, identities, composition }
}

/// Builds the category without checking the category laws; see
/// [`crate::cat::validate_category`].
pub fn category_from(d: &CategoryDoc) -> Result<FinCategory> {
    FinCategory::new(&d.objects, &d.arrows, &d.identities, &d.composition).map_err(at("category"))
}

fn category_pair(source: &CategoryDoc, target: &Option<CategoryDoc>) -> Result<(Arc<FinCategory>, Arc<FinCategory>)> {
    let s = Arc::new(category_from(source).map_err(at("source"))?);
    let t = match target {
        Some(t) => Arc::new(category_from(t).map_err(at("target"))?),
        None => s.clone(),
    };
    Ok((s, t))
}

fn functor_map_doc(f: &FunctorData) -> FunctorMapDoc {
    let (c, d) = (&f.source, &f.target);
    FunctorMapDoc {
        objects: (0..c.object_count())
            .map(|o| (c.object_id(o).to_string(), d.object_id(f.obj(o)).to_string()))
            .collect(),
        arrows: (0..c.arrow_count()).map(|a| (c.arrow_id(a).to_string(), d.arrow_id(f.arr(a)).to_string())).collect(),
    }
}

fn functor_map_from(s: &Arc<FinCategory>, t: &Arc<FinCategory>, m: &FunctorMapDoc) -> Result<FunctorData> {
    let f = FunctorData::from_ids(s.clone(), t.clone(), &owned(&m.objects), &owned(&m.arrows))?;
    if let Some(v) = f.validate().into_iter().next() {
        return Err(Error::Invalid(format!("not a functor: {}", v.detail)));
    }
    Ok(f)
}

pub fn functor_doc(f: &FunctorData) -> FunctorDoc {
    let m = functor_map_doc(f);
    FunctorDoc {
        source: category_doc(&f.source),
        target: (f.source != f.target).then(|| category_doc(&f.target)),
        objects: m.objects,
        arrows: m.arrows,
    }
}

pub fn functor_from(d: &FunctorDoc) -> Result<FunctorData> {
    let (s, t) = category_pair(&d.source, &d.target)?;
    let m = FunctorMapDoc { objects: d.objects.clone(), arrows: d.arrows.clone() };
    functor_map_from(&s, &t, &m).map_err(at("functor"))
}

pub fn nat_transf_doc(a: &NatTransfData) -> NatTransfDoc {
    let (c, d) = (&a.source.source, &a.source.target);
    NatTransfDoc {
        source: category_doc(c),
        target: (c != d).then(|| category_doc(d)),
        from: functor_map_doc(&a.source),
        to: functor_map_doc(&a.target),
        components: (0..c.object_count())
            .map(|o| (c.object_id(o).to_string(), d.arrow_id(a.component(o)).to_string()))
            .collect(),
    }
}

pub fn nat_transf_from(d: &NatTransfDoc) -> Result<NatTransfData> {
    let (s, t) = category_pair(&d.source, &d.target)?;
    let from = functor_map_from(&s, &t, &d.from).map_err(at("from"))?;
    let to = functor_map_from(&s, &t, &d.to).map_err(at("to"))?;
    let mut comps = vec![None; s.object_count()];
    for (o, a) in &d.components {
        let o = s.object(o).map_err(at("components"))?;
        if comps[o].replace(t.arrow(a).map_err(at("components"))?).is_some() {
            return Err(Error::Invalid(format!("components: `{}` listed twice", s.object_id(o))));
        }
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(o, c)| c.ok_or_else(|| Error::Invalid(format!("components: `{}` missing", s.object_id(o)))))
        .collect::<Result<Vec<_>>>()?;
    NatTransfData::new(from, to, comps).map_err(at("components"))
}

pub fn polynomial_doc(p: &Polynomial) -> PolynomialDoc {
    let table = |m: &[usize], dom: &[String], cod: &[String]| {
        m.iter().enumerate().map(|(x, &y)| (dom[x].clone(), cod[y].clone())).collect()
    };
    PolynomialDoc {
        i: p.i.clone(),
        e: p.e.clone(),
        b: p.b.clone(),
        j: p.j.clone(),
        s: table(&p.s, &p.e, &p.i),
        p: table(&p.p, &p.e, &p.b),
        t: table(&p.t, &p.b, &p.j),
    }
}

pub fn polynomial_from(d: &PolynomialDoc) -> Result<Polynomial> {
    Polynomial::from_ids(&d.i, &d.e, &d.b, &d.j, &d.s, &d.p, &d.t).map_err(at("polynomial"))
}

pub fn coalgebra_doc(c: &CoalgebraSystem) -> CoalgebraDoc {
    CoalgebraDoc {
        polynomial: polynomial_doc(&c.poly),
        states: c
            .structure
            .iter()
            .enumerate()
            .map(|(x, (b, succ))| {
                (c.states[x].clone(), c.poly.b[*b].clone(), succ.iter().map(|&y| c.states[y].clone()).collect())
            })
            .collect(),
    }
}

pub fn coalgebra_from(d: &CoalgebraDoc) -> Result<CoalgebraSystem> {
    let poly = polynomial_from(&d.polynomial)?;
    CoalgebraSystem::from_ids(poly, &d.states).map_err(at("states"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_poset_round_trips() {
        let p = PointedPoset::new(&["⊥", "a", "⊤"], &[("⊥", "a"), ("a", "⊤")], "⊥").unwrap();
        let doc = Document::Poset(poset_doc(&p));
        let text = print(&doc);
        assert!(text.contains("\"kind\": \"poset\""));
        let back = parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(poset_from(&poset_doc(&p)).unwrap(), p);
    }

    #[test]
    fn unknown_kind_is_rejected_with_location() {
        let e = parse("{\n  \"kind\": \"sheaf\"\n}").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }

    #[test]
    fn unknown_field_is_rejected() {
        assert!(parse(r#"{"kind":"finite-set","elements":["a"],"extra":1}"#).is_err());
    }

    #[test]
    fn unresolved_id_names_its_location() {
        let text = r#"{"kind":"multiset-relation","source":{"elements":["a"]},"pairs":[[[["z",1]],"a"]]}"#;
        let Document::MultisetRelation(d) = parse(text).unwrap() else { panic!() };
        let e = mrel_from(&d).unwrap_err();
        assert!(e.to_string().contains("pairs"), "{e}");
    }

    #[test]
    fn suite_config_defaults_fill_in() {
        let Document::SuiteConfig(c) = parse(r#"{"kind":"suite-config","models":["rel"]}"#).unwrap() else { panic!() };
        assert_eq!(c.models, vec!["rel"]);
        assert_eq!(c.random_draws, 1000);
    }
}
