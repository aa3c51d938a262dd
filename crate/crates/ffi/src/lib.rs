//! C ABI over the `acyclic-matching` library.
//!
//! Graphs and solve reports are opaque handles created and released through
//! this interface. Every fallible call returns an [`AmStatus`]; on failure,
//! [`am_last_error`] describes the problem until the next call on the same
//! thread. Strings returned to the caller are released with
//! [`am_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use acyclic_matching::bounds::meets_thm1;
use acyclic_matching::graph::{Edge, Graph};
use acyclic_matching::io::parse_edge_list;
use acyclic_matching::oracle::{exact_max_capped, OracleError};
use acyclic_matching::reducer::{solve_with, SolveOptions, SolveReport};
use acyclic_matching::verify::{check, check_corona, Kind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    ParseError = 3,
    InvalidArgument = 4,
    TooLarge = 5,
    /// A self-check of the solver failed.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmKind {
    Plain = 0,
    Acyclic = 1,
    Induced = 2,
    /// Uses the `k` argument.
    Degenerate = 3,
    /// Acyclic, and the matched vertices induce a corona of a forest.
    Corona = 4,
}

/// An immutable simple graph.
pub struct AmGraph(Graph);

/// The outcome of [`am_solve`].
pub struct AmReport(SolveReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: AmStatus, msg: impl Into<String>) -> AmStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> AmStatus) -> AmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(AmStatus::Internal, "panic inside the library"))
}

unsafe fn pairs<'a>(edges: *const usize, count: usize) -> Option<&'a [usize]> {
    if count == 0 {
        Some(&[])
    } else if edges.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(edges, 2 * count))
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn am_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn am_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut AmGraph,
) -> AmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AmStatus::NullPointer, "out is null");
        }
        let Some(flat) = pairs(edges, edge_count) else {
            return fail(AmStatus::NullPointer, "edges is null");
        };
        let list: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        match Graph::new(n, &list) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(AmGraph(g)));
                AmStatus::Ok
            }
            Err(e) => fail(AmStatus::InvalidGraph, e.to_string()),
        }
    })
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn am_graph_parse(text: *const c_char, out: *mut *mut AmGraph) -> AmStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(AmStatus::NullPointer, "text or out is null");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(AmStatus::ParseError, "input is not UTF-8");
        };
        match parse_edge_list(s) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(AmGraph(g)));
                AmStatus::Ok
            }
            Err(e) => fail(AmStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn am_graph_free(graph: *mut AmGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn am_graph_vertex_count(graph: *const AmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn am_graph_edge_count(graph: *const AmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn am_graph_max_degree(graph: *const AmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.max_degree())
}

/// Runs the reducer. With `analyze` set, local-search stages carry their
/// partition accounting in the JSON trace.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn am_solve(
    graph: *const AmGraph,
    analyze: bool,
    out: *mut *mut AmReport,
) -> AmStatus {
    guarded(|| {
        let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
            return fail(AmStatus::NullPointer, "graph or out is null");
        };
        match solve_with(&g.0, SolveOptions { analyze }) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(AmReport(r)));
                AmStatus::Ok
            }
            Err(e) => fail(AmStatus::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn am_report_free(report: *mut AmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of matched edges.
///
/// # Safety
/// `report` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn am_report_size(report: *const AmReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.size())
}

/// Copies up to `capacity` matched edges into `buf` as flat pairs and
/// returns how many were copied. `buf` must hold `2 * capacity` values.
///
/// # Safety
/// `report` must be a live handle; `buf` must be writable for
/// `2 * capacity` values or null when `capacity` is 0.
#[no_mangle]
pub unsafe extern "C" fn am_report_edges(
    report: *const AmReport,
    buf: *mut usize,
    capacity: usize,
) -> usize {
    let Some(r) = report.as_ref() else { return 0 };
    if buf.is_null() {
        return 0;
    }
    let edges = r.0.matching.edges();
    let count = edges.len().min(capacity);
    for (i, e) in edges[..count].iter().enumerate() {
        *buf.add(2 * i) = e.u();
        *buf.add(2 * i + 1) = e.v();
    }
    count
}

/// The size bound holds for this run, decided exactly.
///
/// # Safety
/// `report` must be a live handle or null (which yields false).
#[no_mangle]
pub unsafe extern "C" fn am_report_bound_ok(report: *const AmReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.bound_ok)
}

/// The size bound and every per-stage check hold.
///
/// # Safety
/// `report` must be a live handle or null (which yields false).
#[no_mangle]
pub unsafe extern "C" fn am_report_certified(report: *const AmReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.certified())
}

/// The run's JSON trace, or null on a null handle. Release with
/// [`am_string_free`].
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn am_report_to_json(report: *const AmReport) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        return ptr::null_mut();
    };
    let json = serde_json::to_string(&r.0.trace()).expect("serializable");
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn am_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn to_kind(kind: AmKind, k: usize) -> Kind {
    match kind {
        AmKind::Plain => Kind::Plain,
        AmKind::Acyclic | AmKind::Corona => Kind::Acyclic,
        AmKind::Induced => Kind::Induced,
        AmKind::Degenerate => Kind::Degenerate(k),
    }
}

/// Checks `edge_count` flat pairs against `kind`. Writes the verdict to
/// `out_ok`; when it is false, [`am_last_error`] names the violation.
///
/// # Safety
/// `graph` must be a live handle, `edges` readable for `2 * edge_count`
/// values (or null when 0), and `out_ok` writable.
#[no_mangle]
pub unsafe extern "C" fn am_verify(
    graph: *const AmGraph,
    kind: AmKind,
    k: usize,
    edges: *const usize,
    edge_count: usize,
    out_ok: *mut bool,
) -> AmStatus {
    guarded(|| {
        let (Some(g), false) = (graph.as_ref(), out_ok.is_null()) else {
            return fail(AmStatus::NullPointer, "graph or out_ok is null");
        };
        let Some(flat) = pairs(edges, edge_count) else {
            return fail(AmStatus::NullPointer, "edges is null");
        };
        let list = match flat
            .chunks_exact(2)
            .map(|p| Edge::new(p[0], p[1]))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(list) => list,
            Err(e) => return fail(AmStatus::InvalidArgument, e.to_string()),
        };
        let verdict = if kind == AmKind::Corona {
            check_corona(&g.0, &list)
        } else {
            check(to_kind(kind, k), &g.0, &list)
        };
        *out_ok = verdict.is_ok();
        if let Err(v) = verdict {
            set_error(v.to_string());
        }
        AmStatus::Ok
    })
}

/// Exact maximum matching size of the given kind for graphs with at most
/// `cap` vertices.
///
/// # Safety
/// `graph` must be a live handle and `out_optimum` writable.
#[no_mangle]
pub unsafe extern "C" fn am_exact(
    graph: *const AmGraph,
    kind: AmKind,
    k: usize,
    cap: usize,
    out_optimum: *mut usize,
) -> AmStatus {
    guarded(|| {
        let (Some(g), false) = (graph.as_ref(), out_optimum.is_null()) else {
            return fail(AmStatus::NullPointer, "graph or out_optimum is null");
        };
        if kind == AmKind::Corona {
            return fail(AmStatus::InvalidArgument, "no exact search for corona");
        }
        match exact_max_capped(&g.0, to_kind(kind, k), cap) {
            Ok(r) => {
                *out_optimum = r.optimum;
                AmStatus::Ok
            }
            Err(e @ OracleError::TooLarge { .. }) => fail(AmStatus::TooLarge, e.to_string()),
            Err(e) => fail(AmStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Writes whether `size·(Δ² + 12Δ^{3/2}) ≥ 6n` to `out`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn am_meets_thm1(size: u64, n: u64, delta: u64, out: *mut bool) -> AmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AmStatus::NullPointer, "out is null");
        }
        match meets_thm1(size, n, delta) {
            Ok(b) => {
                *out = b;
                AmStatus::Ok
            }
            Err(e) => fail(AmStatus::InvalidArgument, e.to_string()),
        }
    })
}
