//! C interface to `dartjac`.
//!
//! Graphs and Jacobians cross the boundary as opaque handles. Every call
//! returns a [`DjStatus`]; on failure the message is available from
//! [`dj_last_error`] on the same thread. Big integers are returned as
//! decimal strings owned by the caller and released with [`dj_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dartjac::dartgraph::{spanning_tree_count, DartGraph};
use dartjac::jacobian::{jacobian, Jacobian};
use dartjac::symmetry::automorphisms;
use dartjac::verify::{run_suite, Suite};
use dartjac::Error;

/// Call status. Values 0 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DjStatus {
    Ok = 0,
    /// A verification suite reported a failing case.
    VerificationFailed = 1,
    /// Malformed input: parse errors, invalid graphs, groups or arguments.
    InvalidInput = 2,
    /// Input is well formed but violates a precondition, such as connectivity.
    Precondition = 3,
    /// A configured scale cap was exceeded.
    ScaleExceeded = 4,
    NullPointer = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Opaque graph handle.
pub struct DjGraph(DartGraph);

/// Opaque Jacobian handle.
pub struct DjJacobian(Jacobian);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DjStatus {
    match e.exit_code() {
        2 => DjStatus::InvalidInput,
        4 => DjStatus::ScaleExceeded,
        _ => DjStatus::Precondition,
    }
}

/// Run `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<DjStatus, (DjStatus, String)>) -> DjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == DjStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error: panic caught at the C boundary");
            DjStatus::Internal
        }
    }
}

fn fail(e: Error) -> (DjStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DjStatus, String) {
    (DjStatus::NullPointer, format!("{what} is null"))
}

unsafe fn input_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DjStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DjStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<DjStatus, (DjStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(DjStatus::Ok)
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph from its JSON form `{"darts", "lambda", "vertices"}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_graph_from_json(json: *const c_char, out: *mut *mut DjGraph) -> DjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let g = dartjac::io::parse_graph(input_str(json, "json")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(DjGraph(g)));
        Ok(DjStatus::Ok)
    })
}

/// Release a graph. Null is ignored.
///
/// # Safety
/// `g` must come from [`dj_graph_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dj_graph_free(g: *mut DjGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn dj_graph_vertex_count(g: *const DjGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of darts, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn dj_graph_dart_count(g: *const DjGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.dart_count())
}

/// Spanning tree count as a decimal string.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_spanning_tree_count(g: *const DjGraph, out: *mut *mut c_char) -> DjStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let tau = spanning_tree_count(&g.0).map_err(fail)?;
        write_string(out, tau.to_string())
    })
}

/// Order of the automorphism group, searching graphs of at most
/// `max_vertices` vertices.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_automorphism_order(
    g: *const DjGraph,
    max_vertices: usize,
    out: *mut usize,
) -> DjStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = automorphisms(&g.0, max_vertices).map_err(fail)?.order();
        Ok(DjStatus::Ok)
    })
}

/// Compute the Jacobian and its J-flow.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian(g: *const DjGraph, out: *mut *mut DjJacobian) -> DjStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let j = jacobian(&g.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(DjJacobian(j)));
        Ok(DjStatus::Ok)
    })
}

/// Release a Jacobian. Null is ignored.
///
/// # Safety
/// `j` must come from [`dj_jacobian`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian_free(j: *mut DjJacobian) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Number of invariant factors, or 0 for a null handle.
///
/// # Safety
/// `j` must be null or a live Jacobian handle.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian_rank(j: *const DjJacobian) -> usize {
    j.as_ref().map_or(0, |j| j.0.group.rank())
}

/// Invariant factor `index` as a decimal string.
///
/// # Safety
/// `j` must be a live Jacobian handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian_factor(
    j: *const DjJacobian,
    index: usize,
    out: *mut *mut c_char,
) -> DjStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| null("jacobian"))?;
        let d = j.0.group.factors().get(index).ok_or_else(|| {
            (
                DjStatus::InvalidInput,
                format!("factor {index} out of range for rank {}", j.0.group.rank()),
            )
        })?;
        write_string(out, d.to_string())
    })
}

/// Group order as a decimal string.
///
/// # Safety
/// `j` must be a live Jacobian handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian_order(j: *const DjJacobian, out: *mut *mut c_char) -> DjStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| null("jacobian"))?;
        write_string(out, j.0.group.order().to_string())
    })
}

/// Full report as JSON: factors, order, rank and the flow value of each
/// positive dart.
///
/// # Safety
/// `j` must be a live Jacobian handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_jacobian_json(j: *const DjJacobian, out: *mut *mut c_char) -> DjStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| null("jacobian"))?;
        write_string(out, dartjac::io::jacobian_report(&j.0).to_string())
    })
}

/// Run a verification suite by name and write its JSON report. A `count` of
/// 0 uses the suite default. Returns `VerificationFailed` when a case fails;
/// the report is written either way.
///
/// # Safety
/// `suite` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dj_verify_suite(
    suite: *const c_char,
    seed: u64,
    count: usize,
    out: *mut *mut c_char,
) -> DjStatus {
    guard(|| {
        let s: Suite = input_str(suite, "suite")?.parse().map_err(fail)?;
        let rep = run_suite(s, seed, (count > 0).then_some(count));
        let passed = rep.all_passed();
        let json = serde_json::to_string(&rep).expect("reports serialize");
        write_string(out, json)?;
        if passed {
            Ok(DjStatus::Ok)
        } else {
            Err((DjStatus::VerificationFailed, format!("suite {s} has failing cases")))
        }
    })
}
