//! C interface to tricert.
//!
//! Graphs and certification results are opaque handles owned by the caller
//! and released with the matching `_free` function. Every call returns a
//! [`TricertStatus`]; on failure [`tricert_last_error`] describes why.
//! Strings returned through out-parameters are released with
//! [`tricert_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tricert::document::{convert_document, verify_document, Target};
use tricert::format::{parse_document, parse_graph_auto, write_certificate, write_edge_rep, write_witness};
use tricert::transforms::path_to_edge;
use tricert::{certify, CertifyOptions, CertifyResult, MultiGraph, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TricertStatus {
    Ok = 0,
    /// The graph is not 3-connected, or a certificate was rejected.
    No = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    ParseFailed = 4,
    InvalidArgument = 5,
    Internal = 6,
}

/// Opaque graph.
pub struct TricertGraph(MultiGraph);

/// Opaque outcome of [`tricert_certify`].
pub struct TricertResult(CertifyResult);

/// Bit flags for [`tricert_certify`].
pub const TRICERT_BASIC: u32 = 1;
pub const TRICERT_NO_SPARSIFY: u32 = 2;

/// Targets for [`tricert_transform`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TricertTarget {
    Basic = 0,
    Nonbasic = 1,
    Edge = 2,
    Path = 3,
    Contractions = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TricertStatus, msg: impl Into<Vec<u8>>) -> TricertStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> TricertStatus) -> TricertStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TricertStatus::Internal, "internal panic"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, TricertStatus> {
    if p.is_null() {
        return Err(fail(TricertStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TricertStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("formats never contain NUL").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn tricert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an edge list or DIMACS text.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricert_graph_parse(src: *const c_char, out: *mut *mut TricertGraph) -> TricertStatus {
    guard(|| {
        if out.is_null() {
            return fail(TricertStatus::NullArgument, "null out pointer");
        }
        *out = ptr::null_mut();
        let s = match text(src) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_graph_auto(s.as_bytes()) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TricertGraph(g)));
                TricertStatus::Ok
            }
            Err(e) => fail(TricertStatus::ParseFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from [`tricert_graph_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tricert_graph_free(g: *mut TricertGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tricert_graph_node_count(g: *const TricertGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tricert_graph_edge_count(g: *const TricertGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Certifies `g`. Returns `Ok` with a certificate or `No` with a witness;
/// either way `out` receives a result handle.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricert_certify(g: *const TricertGraph, flags: u32, out: *mut *mut TricertResult) -> TricertStatus {
    guard(|| {
        if out.is_null() || g.is_null() {
            return fail(TricertStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let opts = CertifyOptions {
            prescribed_s0: None,
            want_basic: flags & TRICERT_BASIC != 0,
            sparsify: flags & TRICERT_NO_SPARSIFY == 0,
        };
        match certify(&(*g).0, &opts) {
            Ok(res) => {
                let status =
                    if matches!(res.verdict, Verdict::Certified(_)) { TricertStatus::Ok } else { TricertStatus::No };
                *out = Box::into_raw(Box::new(TricertResult(res)));
                status
            }
            Err(e) => fail(TricertStatus::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn tricert_result_free(r: *mut TricertResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// 1 if the result is a certificate, 0 if it is a witness.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn tricert_result_is_certified(r: *const TricertResult) -> i32 {
    r.as_ref().map_or(0, |r| matches!(r.0.verdict, Verdict::Certified(_)) as i32)
}

/// Text of the certificate or witness. With `edge_rep` nonzero a
/// certificate is written as an edge representation.
///
/// # Safety
/// `r` must be a live result handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricert_result_text(r: *const TricertResult, edge_rep: i32, out: *mut *mut c_char) -> TricertStatus {
    guard(|| {
        if out.is_null() || r.is_null() {
            return fail(TricertStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let res = &(*r).0;
        let s = match &res.verdict {
            Verdict::Refuted(w) => write_witness(&res.graph, w),
            Verdict::Certified(pr) if edge_rep != 0 => match path_to_edge(&res.graph, pr) {
                Ok(er) => write_edge_rep(&er),
                Err(e) => return fail(TricertStatus::Internal, e.to_string()),
            },
            Verdict::Certified(pr) => write_certificate(&res.graph, pr),
        };
        *out = into_c(s);
        TricertStatus::Ok
    })
}

/// Checks a certificate, edge representation or witness against `g`.
/// Returns `Ok` if accepted, `No` if rejected with the reason in
/// [`tricert_last_error`], `ParseFailed` if the document is malformed.
///
/// # Safety
/// `g` must be a live graph handle and `doc` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tricert_verify(g: *const TricertGraph, doc: *const c_char, basic: i32) -> TricertStatus {
    guard(|| {
        if g.is_null() {
            return fail(TricertStatus::NullArgument, "null graph");
        }
        let s = match text(doc) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let doc = match parse_document(s) {
            Ok(d) => d,
            Err(e) => return fail(TricertStatus::ParseFailed, e.to_string()),
        };
        match verify_document(&(*g).0, &doc, basic != 0) {
            Ok(()) => TricertStatus::Ok,
            Err(msg) => fail(TricertStatus::No, msg),
        }
    })
}

/// Converts a certificate to another form. `g` may be null, in which case
/// a path certificate refers to the graph its own edges span.
///
/// # Safety
/// `g` must be null or a live graph handle, `doc` a NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tricert_transform(
    g: *const TricertGraph,
    doc: *const c_char,
    target: TricertTarget,
    out: *mut *mut c_char,
) -> TricertStatus {
    guard(|| {
        if out.is_null() {
            return fail(TricertStatus::NullArgument, "null out pointer");
        }
        *out = ptr::null_mut();
        let s = match text(doc) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let doc = match parse_document(s) {
            Ok(d) => d,
            Err(e) => return fail(TricertStatus::ParseFailed, e.to_string()),
        };
        let to = match target {
            TricertTarget::Basic => Target::Basic,
            TricertTarget::Nonbasic => Target::Nonbasic,
            TricertTarget::Edge => Target::Edge,
            TricertTarget::Path => Target::Path,
            TricertTarget::Contractions => Target::Contractions,
        };
        match convert_document(&doc, g.as_ref().map(|g| &g.0), to) {
            Ok(text) => {
                *out = into_c(text);
                TricertStatus::Ok
            }
            Err(msg) => fail(TricertStatus::InvalidArgument, msg),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tricert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
