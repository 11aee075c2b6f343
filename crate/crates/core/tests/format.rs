use std::fs;

use fixcat::format::{canonicalize, parse, print, Document};

fn fixtures() -> Vec<(String, String)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn fixtures_are_printed_canonically() {
    let all = fixtures();
    assert!(all.len() >= 20);
    for (name, text) in &all {
        let doc = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&print(&doc), text, "{name} is not in canonical form");
    }
}

#[test]
fn canonicalization_is_idempotent() {
    for (name, text) in fixtures() {
        let doc = parse(&text).unwrap();
        match canonicalize(&doc) {
            Ok(c) => {
                assert_eq!(canonicalize(&c).unwrap(), c, "{name}");
                assert_eq!(parse(&print(&c)).unwrap(), c, "{name}");
            }
            Err(e) => assert_eq!(name, "suite-empty", "{e}"),
        }
    }
}

#[test]
fn fixture_kinds_match_their_names() {
    for (name, text) in fixtures() {
        let kind = parse(&text).unwrap().kind();
        let prefix = match kind {
            "monotone-map" => "poset-chain-",
            "multiset-relation" => "rel-",
            "ideal-relation" => "scott-",
            "suite-config" => "suite-",
            "coalgebra-system" => "coalgebra-",
            "finite-set" => "finite-set",
            "nat-transf" => "nat-transf",
            other => other,
        };
        let ok = name.starts_with(prefix) || (kind == "monotone-map" && name.starts_with("poset-dinat"));
        assert!(ok, "{name} holds a {kind}");
    }
}

#[test]
fn reordered_fields_print_in_canonical_order() {
    let text = r#"{"bottom": "0", "leq": [["0", "1"]], "elements": ["0", "1"], "kind": "poset"}"#;
    let doc = parse(text).unwrap();
    assert!(matches!(doc, Document::Poset(_)));
    let printed = print(&canonicalize(&doc).unwrap());
    assert!(printed.starts_with("{\n  \"kind\": \"poset\",\n  \"elements\": [\"0\", \"1\"]"), "{printed}");
}

#[test]
fn missing_bottom_is_located() {
    let text = "{\n  \"kind\": \"poset\",\n  \"elements\": [\"0\"],\n  \"leq\": []\n}";
    let e = parse(text).unwrap_err().to_string();
    assert!(e.contains("bottom"), "{e}");
}
