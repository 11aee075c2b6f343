//! C interface to `fixcat`.
//!
//! Every function returns a [`FixcatStatus`]; on anything but `FIXCAT_STATUS_OK`
//! and `FIXCAT_STATUS_LAW_VIOLATION` a message is available from
//! [`fixcat_last_error`]. Strings handed out by this library must be released
//! with [`fixcat_string_free`]; handles with their own `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fixcat::format::{self, Document};
use fixcat::laws::{run_suite, SuiteReport};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixcatStatus {
    Ok = 0,
    /// A law or axiom failed; the result is still produced.
    LawViolation = 1,
    /// Malformed input, schema errors, unresolved ids, bad configs.
    InvalidInput = 2,
    NullPointer = 3,
    /// An internal panic was caught at the boundary.
    Internal = 4,
}

/// A parsed input document.
pub struct FixcatDocument(Document);

/// The outcome of a law-suite run.
pub struct FixcatSuiteReport(SuiteReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// Runs `f`, turning panics into `FIXCAT_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> FixcatStatus) -> FixcatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            FixcatStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FixcatStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(FixcatStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FixcatStatus::InvalidInput
    })
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fixcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fixcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON document into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fixcat_document_parse(text: *const c_char, out: *mut *mut FixcatDocument) -> FixcatStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FixcatStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match format::parse(text).and_then(|d| format::canonicalize(&d).map(|_| d)) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(FixcatDocument(d)));
                FixcatStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                FixcatStatus::InvalidInput
            }
        }
    })
}

/// # Safety
/// `doc` must come from [`fixcat_document_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fixcat_document_free(doc: *mut FixcatDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// The `"kind"` of a document, as a new string; NULL on a null handle.
///
/// # Safety
/// `doc` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fixcat_document_kind(doc: *const FixcatDocument) -> *mut c_char {
    match doc.as_ref() {
        Some(d) => to_c(d.0.kind().to_string()),
        None => ptr::null_mut(),
    }
}

/// The canonical text of a document, as a new string; NULL on a null handle.
///
/// # Safety
/// `doc` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fixcat_document_print(doc: *const FixcatDocument) -> *mut c_char {
    match doc.as_ref() {
        Some(d) => to_c(format::print(&d.0)),
        None => ptr::null_mut(),
    }
}

/// The fixpoint of the endomorphism in `doc` (a monotone map, multiset
/// relation, ideal relation or endofunctor), written to `*out` as a new string.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fixcat_star(
    doc: *const FixcatDocument,
    max_steps: usize,
    out: *mut *mut c_char,
) -> FixcatStatus {
    guard(|| {
        let (Some(d), false) = (doc.as_ref(), out.is_null()) else {
            set_error("null argument");
            return FixcatStatus::NullPointer;
        };
        *out = ptr::null_mut();
        match fixcat::cli::fixpoint_of(&d.0, max_steps) {
            Ok(s) => {
                *out = to_c(s);
                FixcatStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                FixcatStatus::InvalidInput
            }
        }
    })
}

/// Runs the law suite described by a `suite-config` document (NULL for the
/// default suite). Returns `FIXCAT_STATUS_LAW_VIOLATION` if some law failed;
/// the report is written to `*out` in that case too.
///
/// # Safety
/// `config` must be a live handle or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fixcat_run_laws(
    config: *const FixcatDocument,
    out: *mut *mut FixcatSuiteReport,
) -> FixcatStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FixcatStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let cfg = match config.as_ref() {
            None => fixcat::laws::SuiteConfig::default(),
            Some(FixcatDocument(Document::SuiteConfig(c))) => c.clone(),
            Some(FixcatDocument(d)) => {
                set_error(format!("expected a suite-config document, got {}", d.kind()));
                return FixcatStatus::InvalidInput;
            }
        };
        match run_suite(&cfg) {
            Ok(r) => {
                let passed = r.passes();
                *out = Box::into_raw(Box::new(FixcatSuiteReport(r)));
                if passed {
                    FixcatStatus::Ok
                } else {
                    FixcatStatus::LawViolation
                }
            }
            Err(e) => {
                set_error(e.to_string());
                FixcatStatus::InvalidInput
            }
        }
    })
}

/// Number of law reports; 0 on a null handle.
///
/// # Safety
/// `r` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fixcat_report_len(r: *const FixcatSuiteReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.reports.len())
}

/// Whether every law passed; false on a null handle.
///
/// # Safety
/// `r` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fixcat_report_passed(r: *const FixcatSuiteReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.passes())
}

/// The whole report as JSON, as a new string; NULL on a null handle.
///
/// # Safety
/// `r` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fixcat_report_json(r: *const FixcatSuiteReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => to_c(serde_json::to_string(&r.0).expect("reports serialize")),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must come from [`fixcat_run_laws`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fixcat_report_free(r: *mut FixcatSuiteReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
