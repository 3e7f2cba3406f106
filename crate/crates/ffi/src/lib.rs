//! C ABI for `cayley-lines`.
//!
//! Graphs are opaque `ClGraph` handles created by `cl_graph_sample` or
//! `cl_graph_from_json` and released with `cl_graph_free`. Every fallible
//! call returns a `ClStatus`; on failure `cl_last_error` describes the
//! problem. Strings returned through out-parameters are owned by the caller
//! and must be released with `cl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cayley_lines::autsolver::{automorphism_group, equals_k, solver_report};
use cayley_lines::cayley::{trial_rng, CayleyGraph, ConnectionSet};
use cayley_lines::colorings::exact_chromatic_number;
use cayley_lines::distinguishing::chi_d_upper_certificate;
use cayley_lines::{Error, Space};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    BudgetExceeded = 3,
    Internal = 4,
    Panic = 5,
}

/// Opaque graph handle.
pub struct ClGraph {
    inner: CayleyGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> ClStatus {
    match e {
        Error::BudgetExceeded(_) => ClStatus::BudgetExceeded,
        Error::Invariant(_) => ClStatus::Internal,
        _ => ClStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ClStatus>) -> ClStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside cayley-lines");
            ClStatus::Panic
        }
    }
}

fn fail(e: Error) -> ClStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> ClStatus {
    set_error(format!("{what} is null"));
    ClStatus::NullPointer
}

unsafe fn graph<'a>(g: *const ClGraph) -> Result<&'a CayleyGraph, ClStatus> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), ClStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), ClStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::Invariant("string contains NUL".into())))?;
    write_out(out, c.into_raw())
}

fn publish(out: *mut *mut ClGraph, g: CayleyGraph) -> Result<(), ClStatus> {
    let handle = Box::into_raw(Box::new(ClGraph { inner: g }));
    unsafe { write_out(out, handle) }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Samples a connection set with line probability `p` from `seed` and builds its graph.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_sample(q: u32, n: u32, p: f64, seed: u64, out: *mut *mut ClGraph) -> ClStatus {
    guard(|| {
        let space = Space::new(q, n as usize).map_err(fail)?;
        let conn = ConnectionSet::sample(&space, p, &mut trial_rng(seed, 0)).map_err(fail)?;
        publish(out, CayleyGraph::new(conn))
    })
}

/// Builds a graph from connection-set JSON `{"q":..,"n":..,"lines":[..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_from_json(json: *const c_char, out: *mut *mut ClGraph) -> ClStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let s = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| fail(Error::InvalidParameter("json is not UTF-8".into())))?;
        let conn = ConnectionSet::from_json(s).map_err(fail)?;
        publish(out, CayleyGraph::new(conn))
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_free(g: *mut ClGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Connection set JSON for the graph.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_to_json(g: *const ClGraph, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let g = graph(g)?;
        write_string(out, g.connection().to_json().map_err(fail)?)
    })
}

/// Number of vertices `q^n`.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_vertex_count(g: *const ClGraph, out: *mut usize) -> ClStatus {
    guard(|| write_out(out, graph(g)?.vertex_count()))
}

/// Degree `|S|` of every vertex.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_degree(g: *const ClGraph, out: *mut usize) -> ClStatus {
    guard(|| write_out(out, graph(g)?.degree()))
}

/// Adjacency of vertices `u` and `v` (0-indexed).
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_is_edge(g: *const ClGraph, u: usize, v: usize, out: *mut bool) -> ClStatus {
    guard(|| {
        let e = graph(g)?.is_edge(u, v).map_err(fail)?;
        write_out(out, e)
    })
}

/// Lower and upper bounds on the chromatic number; they are equal when proved.
///
/// # Safety
/// `g` must be a live handle; `lower` and `upper` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_chromatic_number(
    g: *const ClGraph,
    budget_nodes: u64,
    lower: *mut usize,
    upper: *mut usize,
) -> ClStatus {
    guard(|| {
        let c = exact_chromatic_number(graph(g)?, budget_nodes).map_err(fail)?;
        write_out(lower, c.lower)?;
        write_out(upper, c.upper)?;
        if c.proved {
            Ok(())
        } else {
            Err(fail(Error::BudgetExceeded("chromatic search".into())))
        }
    })
}

/// Automorphism solver report as JSON. Returns `BudgetExceeded` (with the
/// partial report still written) when the search did not finish.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_aut_report_json(
    g: *const ClGraph,
    budget_nodes: u64,
    budget_enum: u64,
    out: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let (aut, report) = solver_report(graph(g)?, budget_nodes, budget_enum).map_err(fail)?;
        let text = serde_json_string(&report)?;
        write_string(out, text)?;
        if aut.complete {
            Ok(())
        } else {
            Err(fail(Error::BudgetExceeded("automorphism search".into())))
        }
    })
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> Result<String, ClStatus> {
    serde_json::to_string(v).map_err(|e| fail(e.into()))
}

/// Whether the automorphism group equals the affine group of translations and scalings.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_equals_k(g: *const ClGraph, budget_nodes: u64, out: *mut bool) -> ClStatus {
    guard(|| {
        let g = graph(g)?;
        let aut = automorphism_group(g, budget_nodes).map_err(fail)?;
        write_out(out, equals_k(&aut, g.space()).map_err(fail)?)
    })
}

/// The proper distinguishing `(q+1)`-coloring as JSON, or null when it does
/// not certify (for example when `S` is empty).
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cl_graph_certificate_json(
    g: *const ClGraph,
    budget_nodes: u64,
    out: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let g = graph(g)?;
        let aut = automorphism_group(g, budget_nodes).map_err(fail)?;
        match chi_d_upper_certificate(g, &aut).map_err(fail)? {
            Some(c) => write_string(out, c.to_json().map_err(fail)?),
            None => write_out(out, ptr::null_mut()),
        }
    })
}
