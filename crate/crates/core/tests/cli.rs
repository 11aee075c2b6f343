use fixcat::cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn fixcat(args: &[&str]) -> Outcome {
    run(std::iter::once("fixcat").chain(args.iter().copied()))
}

fn lines(o: &Outcome) -> Vec<&str> {
    o.stdout.lines().collect()
}

#[test]
fn star_of_successor_climbs_the_chain() {
    let o = fixcat(&["star", &fixture("poset-chain-successor"), "--trace"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(lines(&o), ["⊤", "trace: ⊥, a, ⊤"]);
}

#[test]
fn star_of_identity_is_bottom() {
    let o = fixcat(&["star", &fixture("poset-chain-identity")]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "⊥\n"));
}

#[test]
fn rel_star_reports_rounds_and_tree_depth() {
    let o = fixcat(&["--model", "rel", "star", &fixture("rel-closure"), "--trace"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(lines(&o), ["{a, b}", "rounds: {}, {a}, {a, b}", "tree depth at stabilization: 1"]);
}

#[test]
fn scott_and_cat_stars() {
    let o = fixcat(&["--model", "scott", "star", &fixture("scott-ideal")]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "{p, q, r}\n"));
    let o = fixcat(&["--model", "cat", "star", &fixture("functor-constant-top")]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "2\n"));
}

#[test]
fn star_rejects_a_document_of_another_model() {
    let o = fixcat(&["star", &fixture("rel-closure")]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("expected a monotone-map document"), "{}", o.stderr);
}

#[test]
fn missing_file_and_bad_flags_are_input_errors() {
    assert_eq!(fixcat(&["star", "/nonexistent/file.json"]).code, EXIT_INPUT);
    assert_eq!(fixcat(&["--model", "sets", "compare"]).code, EXIT_INPUT);
    assert_eq!(fixcat(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(fixcat(&["--help"]).code, EXIT_OK);
}

#[test]
fn lambek_chain_of_a_constant_functor() {
    let o = fixcat(&["lambek", &fixture("functor-constant-top")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(lines(&o).last(), Some(&"stabilized at step 1; carrier 2, structure 2<=2"));
}

#[test]
fn wtype_counts() {
    let o = fixcat(&["wtype", &fixture("polynomial-binary-tree"), "--depth", "4"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("counts: 0, 1, 2, 5, 26\n"));
    assert!(o.stdout.contains("not stabilized by depth 4\n"));
    let o = fixcat(&["wtype", &fixture("polynomial-constant")]);
    assert!(o.stdout.contains("stabilized at depth 1; 2 elements\n"));
}

#[test]
fn long_tree_listings_are_elided_unless_asked() {
    let path = fixture("polynomial-binary-tree");
    let short = fixcat(&["wtype", &path, "--depth", "5"]);
    let long = fixcat(&["wtype", &path, "--depth", "5", "--list"]);
    assert!(long.stdout.lines().count() > short.stdout.lines().count() + 600);
}

#[test]
fn identity_polynomial_has_an_empty_wtype() {
    let o = fixcat(&["wtype", &fixture("polynomial-identity")]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("stabilized at depth 0; 0 elements"), "{}", o.stdout);
}

#[test]
fn bisimulation_across_and_within_systems() {
    let o = fixcat(&["bisim", &fixture("coalgebra-loop-a"), &fixture("coalgebra-loop-b")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(lines(&o).last(), Some(&"bisimilar"));
    let o = fixcat(&["bisim", &fixture("coalgebra-streams")]);
    assert_eq!(lines(&o), ["{s, u}", "{t, v}", "{w}"]);
    let o = fixcat(&["mtype", &fixture("coalgebra-streams")]);
    assert!(o.stdout.ends_with("5 states, 3 bisimilarity classes\n"));
}

#[test]
fn chosen_states_get_a_verdict() {
    let streams = fixture("coalgebra-streams");
    let o = fixcat(&["bisim", &streams, &streams, "--states", "s", "t"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(lines(&o).last(), Some(&"not bisimilar"));
    let o = fixcat(&["bisim", &streams, &streams, "--states", "s", "u"]);
    assert_eq!(lines(&o), ["s ~ u: bisimilar", "bisimilar"]);
    let o = fixcat(&["bisim", &streams, &streams, "--states", "s", "nope"]);
    assert_eq!(o.code, EXIT_INPUT);
}

#[test]
fn dinat_through_products() {
    let o = fixcat(&["dinat-product", &fixture("poset-dinat-f"), &fixture("poset-dinat-g")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(lines(&o).last(), Some(&"agreement"));
    let o = fixcat(&["--model", "rel", "dinat-product", &fixture("rel-dinat-f"), &fixture("rel-dinat-g")]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("(fg)*     = {x, y}"));
    let id = fixture("functor-identity");
    assert_eq!(fixcat(&["--model", "cat", "dinat-product", &id, &id]).code, EXIT_INPUT);
}

#[test]
fn compare_finds_the_identity() {
    for model in ["poset", "rel"] {
        let o = fixcat(&["--model", model, "compare"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert!(o.stdout.contains("comparison is the identity: true"));
        assert!(o.stdout.contains("coherent with unif on every square"));
    }
}

#[test]
fn laws_exit_codes() {
    assert_eq!(fixcat(&["laws", &fixture("suite-empty")]).code, EXIT_INPUT);
    let ok = fixcat(&["laws", &fixture("category-chain2")]);
    assert_eq!(ok.code, EXIT_OK);
    let bad = fixcat(&["laws", &fixture("category-corrupted")]);
    assert_eq!(bad.code, EXIT_VIOLATION);
}

#[test]
fn broken_suite_prints_a_fix_counterexample() {
    let o = fixcat(&["laws", &fixture("suite-broken"), "--seed", "7"]);
    assert_eq!(o.code, EXIT_VIOLATION);
    assert_eq!(lines(&o)[0], "seed: 7");
    let fix = o.stdout.lines().find(|l| l.split_whitespace().take(3).eq(["FAIL", "poset-broken", "fix"]));
    assert!(fix.is_some(), "{}", o.stdout);
    assert!(o.stdout.contains("counterexample"), "{}", o.stdout);
}

#[test]
fn same_seed_same_report() {
    let a = fixcat(&["laws", &fixture("suite-broken"), "--seed", "3"]);
    let b = fixcat(&["laws", &fixture("suite-broken"), "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
