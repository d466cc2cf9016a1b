//! C ABI over the `motifspectra` core.
//!
//! Every fallible call returns an [`MsStatus`] and writes its result through an
//! out-pointer. On failure the message is available from [`ms_last_error`] on
//! the same thread. Handles are opaque and must be released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use motifspectra::estimators::estimate_delta;
use motifspectra::evaluation::misclustering_rate;
use motifspectra::generators::{gen_hypergraph_3uniform, gen_sbm, gen_supsbm};
use motifspectra::spectral::{cluster, ClusterMethod};
use motifspectra::{BlockParams, CommunityAssignment, Error, SuperimposedGraph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    InvalidInput = 3,
    DimensionMismatch = 4,
    SolverFailure = 5,
    UndefinedEstimate = 6,
    Io = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Values accepted as the `model` argument of [`ms_graph_generate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsModel {
    /// Dyadic edges only.
    Sbm = 0,
    /// Hyperedges only.
    Hypergraph = 1,
    /// Both layers, drawn independently.
    Supsbm = 2,
}

/// Opaque superimposed graph.
pub struct MsGraph(SuperimposedGraph);

/// Opaque community assignment.
pub struct MsAssignment(CommunityAssignment);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MsStatus {
    match e {
        Error::InvalidParams(_) => MsStatus::InvalidParams,
        Error::InvalidInput(_) | Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => MsStatus::InvalidInput,
        Error::DimensionMismatch { .. } => MsStatus::DimensionMismatch,
        Error::SolverFailure { .. } => MsStatus::SolverFailure,
        Error::UndefinedEstimate(_) => MsStatus::UndefinedEstimate,
        Error::Io { .. } => MsStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, converting errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MsStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            MsStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            MsStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

/// A null pointer is accepted only when the length is zero.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from `n_edges` vertex pairs and `n_hyperedges` vertex triples,
/// both flattened. Duplicates are merged.
///
/// # Safety
/// `edges` must point to `2 * n_edges` values and `hyperedges` to
/// `3 * n_hyperedges` values. `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_graph_new(
    n: usize,
    edges: *const u32,
    n_edges: usize,
    hyperedges: *const u32,
    n_hyperedges: usize,
    out_graph: *mut *mut MsGraph,
) -> MsStatus {
    guard(|| {
        let dst = out(out_graph, "out_graph")?;
        let too_many = || Error::InvalidInput("edge count overflows".into());
        let e = slice(edges, n_edges.checked_mul(2).ok_or_else(too_many)?, "edges")?;
        let h = slice(hyperedges, n_hyperedges.checked_mul(3).ok_or_else(too_many)?, "hyperedges")?;
        let g = SuperimposedGraph::new(
            n,
            e.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize)),
            h.chunks_exact(3).map(|t| [t[0] as usize, t[1] as usize, t[2] as usize]),
        )?;
        *dst = boxed(MsGraph(g));
        Ok(())
    })
}

/// Draws a graph from a block model with `k` equal contiguous communities.
/// `model` is an [`MsModel`] value.
/// The planted assignment is returned through `out_truth` unless it is null.
///
/// # Safety
/// `out_graph` must be writable; `out_truth` must be writable or null.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn ms_graph_generate(
    model: u32,
    n: usize,
    k: usize,
    a_e: f64,
    b_e: f64,
    a_t: f64,
    b_t: f64,
    seed: u64,
    out_graph: *mut *mut MsGraph,
    out_truth: *mut *mut MsAssignment,
) -> MsStatus {
    guard(|| {
        let dst = out(out_graph, "out_graph")?;
        let p = BlockParams::new(n, k, a_e, b_e, a_t, b_t)?;
        let c = CommunityAssignment::balanced(n, k)?;
        let g = match model {
            m if m == MsModel::Sbm as u32 => gen_sbm(&p, &c, seed)?,
            m if m == MsModel::Hypergraph as u32 => gen_hypergraph_3uniform(&p, &c, seed)?,
            m if m == MsModel::Supsbm as u32 => gen_supsbm(&p, &c, seed)?,
            m => return Err(Error::InvalidParams(format!("unknown model {m}")).into()),
        };
        *dst = boxed(MsGraph(g));
        if let Some(t) = out_truth.as_mut() {
            *t = boxed(MsAssignment(c));
        }
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ms_graph_free(g: *mut MsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ms_graph_n(g: *const MsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ms_graph_edge_count(g: *const MsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.dyadic_edges().len())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ms_graph_hyperedge_count(g: *const MsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.hyperedges().len())
}

/// Wraps `n` labels, each below `k`.
///
/// # Safety
/// `labels` must point to `n` values; `out_assignment` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_assignment_new(
    labels: *const u32,
    n: usize,
    k: usize,
    out_assignment: *mut *mut MsAssignment,
) -> MsStatus {
    guard(|| {
        let dst = out(out_assignment, "out_assignment")?;
        let l = slice(labels, n, "labels")?;
        let a = CommunityAssignment::new(l.iter().map(|&x| x as usize).collect(), k)?;
        *dst = boxed(MsAssignment(a));
        Ok(())
    })
}

/// # Safety
/// `a` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ms_assignment_free(a: *mut MsAssignment) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ms_assignment_n(a: *const MsAssignment) -> usize {
    a.as_ref().map_or(0, |a| a.0.n())
}

/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ms_assignment_k(a: *const MsAssignment) -> usize {
    a.as_ref().map_or(0, |a| a.0.k())
}

/// Copies the labels into `buf`, which must hold at least `ms_assignment_n(a)` values.
///
/// # Safety
/// `a` must be a live handle; `buf` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn ms_assignment_labels(a: *const MsAssignment, buf: *mut u32, len: usize) -> MsStatus {
    guard(|| {
        let a = &deref(a, "assignment")?.0;
        if len < a.n() {
            return Err(Error::DimensionMismatch {
                expected: a.n(),
                found: len,
            }
            .into());
        }
        if a.n() == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        let dst = std::slice::from_raw_parts_mut(buf, a.n());
        for (d, &l) in dst.iter_mut().zip(a.labels()) {
            *d = l as u32;
        }
        Ok(())
    })
}

/// Spectral clustering into `k` communities. `method` is one of
/// `spA`, `hospA`, `spL`, `hospL`, `rspL`, `horspL` (case-insensitive).
///
/// # Safety
/// `g` must be a live handle, `method` a NUL-terminated string and
/// `out_assignment` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_cluster(
    g: *const MsGraph,
    method: *const c_char,
    k: usize,
    seed: u64,
    out_assignment: *mut *mut MsAssignment,
) -> MsStatus {
    guard(|| {
        let dst = out(out_assignment, "out_assignment")?;
        let g = &deref(g, "graph")?.0;
        if method.is_null() {
            return Err(Failure::Null("method"));
        }
        let name = CStr::from_ptr(method)
            .to_str()
            .map_err(|_| Error::InvalidParams("method name is not UTF-8".into()))?;
        let m: ClusterMethod = name.parse()?;
        *dst = boxed(MsAssignment(cluster(g, &m, k, seed)?));
        Ok(())
    })
}

/// Fraction of vertices misclustered under the best relabeling of `est`.
///
/// # Safety
/// Both handles must be live; `out_rate` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_misclustering_rate(
    truth: *const MsAssignment,
    est: *const MsAssignment,
    out_rate: *mut f64,
) -> MsStatus {
    guard(|| {
        let dst = out(out_rate, "out_rate")?;
        *dst = misclustering_rate(&deref(truth, "truth")?.0, &deref(est, "est")?.0)?;
        Ok(())
    })
}

/// Edge-to-triangle density ratio estimated from a single graph.
///
/// # Safety
/// `g` must be a live handle; `out_delta` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_estimate_delta(g: *const MsGraph, out_delta: *mut f64) -> MsStatus {
    guard(|| {
        let dst = out(out_delta, "out_delta")?;
        *dst = estimate_delta(&deref(g, "graph")?.0)?;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping_covers_core_errors() {
        assert_eq!(status_of(&Error::InvalidParams("x".into())), MsStatus::InvalidParams);
        assert_eq!(
            status_of(&Error::DimensionMismatch { expected: 1, found: 2 }),
            MsStatus::DimensionMismatch
        );
        assert_eq!(status_of(&Error::UndefinedEstimate("x".into())), MsStatus::UndefinedEstimate);
    }

    #[test]
    fn panics_become_internal() {
        assert_eq!(guard(|| panic!("boom")), MsStatus::Internal);
        let msg = unsafe { CStr::from_ptr(ms_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal error: boom");
    }
}
