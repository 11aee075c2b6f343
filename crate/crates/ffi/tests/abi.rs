use std::ffi::{CStr, CString};
use std::ptr;

use fixcat_ffi::*;

fn fixture(name: &str) -> CString {
    let path = format!("{}/../core/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    fixcat_string_free(s);
    out
}

fn parse(text: &CString) -> *mut FixcatDocument {
    let mut doc = ptr::null_mut();
    let status = unsafe { fixcat_document_parse(text.as_ptr(), &mut doc) };
    assert_eq!(status, FixcatStatus::Ok);
    doc
}

#[test]
fn star_of_the_chain_successor_is_top() {
    let doc = parse(&fixture("poset-chain-successor"));
    unsafe {
        assert_eq!(take(fixcat_document_kind(doc)), "monotone-map");
        let mut out = ptr::null_mut();
        assert_eq!(fixcat_star(doc, 16, &mut out), FixcatStatus::Ok);
        assert_eq!(take(out), "⊤");
        fixcat_document_free(doc);
    }
}

#[test]
fn closure_star_through_the_abi() {
    let doc = parse(&fixture("rel-closure"));
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(fixcat_star(doc, 16, &mut out), FixcatStatus::Ok);
        assert_eq!(take(out), "{a, b}");
        fixcat_document_free(doc);
    }
}

#[test]
fn printing_is_canonical() {
    let text = fixture("category-pointed-iso");
    let doc = parse(&text);
    unsafe {
        assert_eq!(take(fixcat_document_print(doc)), text.to_str().unwrap());
        fixcat_document_free(doc);
    }
}

#[test]
fn malformed_input_sets_the_last_error() {
    let bad = CString::new("{\"kind\": \"poset\",\n  \"elements\": [}").unwrap();
    let mut doc = ptr::null_mut();
    unsafe {
        assert_eq!(fixcat_document_parse(bad.as_ptr(), &mut doc), FixcatStatus::InvalidInput);
        assert!(doc.is_null());
        let msg = CStr::from_ptr(fixcat_last_error()).to_str().unwrap();
        assert!(msg.contains("line 2"), "{msg}");
    }
}

#[test]
fn wrongly_typed_field_is_invalid() {
    let bad = CString::new(r#"{"kind": "poset", "elements": 3}"#).unwrap();
    let mut doc = ptr::null_mut();
    unsafe {
        assert_eq!(fixcat_document_parse(bad.as_ptr(), &mut doc), FixcatStatus::InvalidInput);
        let msg = CStr::from_ptr(fixcat_last_error()).to_str().unwrap();
        assert!(msg.contains("expected a sequence"), "{msg}");
        assert!(!msg.contains("line 0"), "{msg}");
    }
}

#[test]
fn null_arguments_are_reported() {
    let mut doc = ptr::null_mut();
    unsafe {
        assert_eq!(fixcat_document_parse(ptr::null(), &mut doc), FixcatStatus::NullPointer);
        let text = fixture("poset-chain");
        assert_eq!(fixcat_document_parse(text.as_ptr(), ptr::null_mut()), FixcatStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(fixcat_star(ptr::null(), 16, &mut out), FixcatStatus::NullPointer);
        assert!(fixcat_document_kind(ptr::null()).is_null());
        assert_eq!(fixcat_report_len(ptr::null()), 0);
        fixcat_string_free(ptr::null_mut());
        fixcat_document_free(ptr::null_mut());
        fixcat_report_free(ptr::null_mut());
    }
}

#[test]
fn star_of_a_non_endomorphism_is_invalid() {
    let doc = parse(&fixture("poset-dinat-f"));
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(fixcat_star(doc, 16, &mut out), FixcatStatus::InvalidInput);
        assert!(out.is_null());
        fixcat_document_free(doc);
    }
}

#[test]
fn broken_adapter_reports_a_violation() {
    let text = CString::new(
        r#"{"kind": "suite-config", "models": ["poset-broken"], "random_draws": 20, "product_draws": 10}"#,
    )
    .unwrap();
    let cfg = parse(&text);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(fixcat_run_laws(cfg, &mut report), FixcatStatus::LawViolation);
        assert!(!fixcat_report_passed(report));
        assert!(fixcat_report_len(report) > 0);
        let json = take(fixcat_report_json(report));
        assert!(json.contains("\"law\":\"fix\""));
        fixcat_report_free(report);
        fixcat_document_free(cfg);
    }
}

#[test]
fn small_suite_passes() {
    let text = CString::new(
        r#"{"kind": "suite-config", "models": ["poset", "scott"], "exhaustive_max": 2, "random_draws": 10, "product_draws": 5}"#,
    )
    .unwrap();
    let cfg = parse(&text);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(fixcat_run_laws(cfg, &mut report), FixcatStatus::Ok);
        assert!(fixcat_report_passed(report));
        fixcat_report_free(report);
        fixcat_document_free(cfg);
    }
}

#[test]
fn empty_model_list_is_rejected_at_parse_time() {
    let text = fixture("suite-empty");
    let mut doc = ptr::null_mut();
    unsafe {
        assert_eq!(fixcat_document_parse(text.as_ptr(), &mut doc), FixcatStatus::InvalidInput);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fixcat.h")).unwrap();
    for name in [
        "fixcat_last_error",
        "fixcat_string_free",
        "fixcat_document_parse",
        "fixcat_document_free",
        "fixcat_document_kind",
        "fixcat_document_print",
        "fixcat_star",
        "fixcat_run_laws",
        "fixcat_report_len",
        "fixcat_report_passed",
        "fixcat_report_json",
        "fixcat_report_free",
        "FIXCAT_STATUS_LAW_VIOLATION",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}
