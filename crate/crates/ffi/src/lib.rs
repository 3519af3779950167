//! C interface to `bihole`.
//!
//! Every fallible call returns a [`BhStatus`] and writes results through out
//! pointers. On failure `bh_last_error` holds a message for the calling
//! thread. Handles are owned by the caller and released with the matching
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bihole::constructive::{
    bihole_avg2, bihole_avg_degree, bihole_delta1, bihole_profile012, bounded_degree_solve,
    BoundedDegreeSolver,
};
use bihole::exact::{max_bihole_with, ExactOptions};
use bihole::generate::{gen_extremal_paths, gen_random_bounded, gen_random_edges};
use bihole::harness::{parse_graph, serialize_graph};
use bihole::randomized::{bihole_random3, SamplingParams};
use bihole::{Bihole, BipartiteGraph, Error, Rational};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    Precondition = 4,
    CapExceeded = 5,
    RetriesExhausted = 6,
    GuaranteeViolated = 7,
    Internal = 8,
}

/// Construction selector for `bh_construct`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhAlgorithm {
    Delta1 = 0,
    Profile012 = 1,
    Avg = 2,
    Avg2 = 3,
    Bounded = 4,
}

/// Base solver for the constructions that recurse into one.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhBase {
    Auto = 0,
    Certified = 1,
    Heuristic = 2,
}

/// Opaque graph handle.
pub struct BhGraph(BipartiteGraph);

/// Opaque bihole handle.
pub struct BhBihole(Bihole);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BhStatus {
    match e {
        Error::InvalidInput(_) | Error::Config(_) | Error::Io(_) => BhStatus::InvalidInput,
        Error::Parse { .. } => BhStatus::Parse,
        Error::Precondition { .. } => BhStatus::Precondition,
        Error::CapExceeded { .. } => BhStatus::CapExceeded,
        Error::RetriesExhausted(_) => BhStatus::RetriesExhausted,
        Error::GuaranteeViolated { .. } => BhStatus::GuaranteeViolated,
    }
}

struct Fail(BhStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BhStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, turning errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BhStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BhStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const BhGraph) -> Result<&'a BipartiteGraph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut BhGraph, g: BipartiteGraph) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(BhGraph(g))));
    Ok(())
}

unsafe fn put_bihole(out: *mut *mut BhBihole, b: Bihole) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(BhBihole(b))));
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null("array"))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn ratio(num: i64, den: i64) -> Result<Rational, Fail> {
    if den == 0 {
        return Err(Fail(BhStatus::InvalidInput, "zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

fn solver(base: BhBase) -> BoundedDegreeSolver {
    match base {
        BhBase::Auto => BoundedDegreeSolver::default(),
        BhBase::Certified => BoundedDegreeSolver::certified(),
        BhBase::Heuristic => BoundedDegreeSolver::heuristic(),
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn bh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph from `m` edges stored as `a0, b0, a1, b1, ...`.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be NULL when `m` is 0)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_graph_new(
    n_a: usize,
    n_b: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut BhGraph,
) -> BhStatus {
    guard(|| {
        let flat = slice(edges, 2 * m)?;
        let g = BipartiteGraph::new(n_a, n_b, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        put_graph(out, g)
    })
}

/// Parses the text graph format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_graph_parse(text: *const c_char, out: *mut *mut BhGraph) -> BhStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(BhStatus::Parse, "text is not UTF-8".into()))?;
        put_graph(out, parse_graph(text)?)
    })
}

/// Writes the text form of `g` to `*out`; release it with `bh_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_graph_serialize(g: *const BhGraph, out: *mut *mut c_char) -> BhStatus {
    guard(|| {
        let text = CString::new(serialize_graph(graph_ref(g)?)).expect("graph text has no nul");
        put(out, text.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bh_graph_free(g: *mut BhGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Side sizes and edge count; any out pointer may be NULL.
///
/// # Safety
/// `g` must be a live handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_graph_size(
    g: *const BhGraph,
    n_a: *mut usize,
    n_b: *mut usize,
    m: *mut usize,
) -> BhStatus {
    guard(|| {
        let g = graph_ref(g)?;
        for (p, v) in [(n_a, g.n_a()), (n_b, g.n_b()), (m, g.m())] {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_gen_extremal_paths(i: usize, out: *mut *mut BhGraph) -> BhStatus {
    guard(|| put_graph(out, gen_extremal_paths(i)?))
}

/// Random balanced graph with A-degrees at most `delta`, each edge kept
/// with probability `p_num / p_den`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_gen_random_bounded(
    n: usize,
    delta: usize,
    p_num: i64,
    p_den: i64,
    seed: u64,
    out: *mut *mut BhGraph,
) -> BhStatus {
    guard(|| {
        put_graph(
            out,
            gen_random_bounded(n, delta, ratio(p_num, p_den)?, seed)?,
        )
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_gen_random_edges(
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut BhGraph,
) -> BhStatus {
    guard(|| put_graph(out, gen_random_edges(n, m, seed)?))
}

/// Whether `(s, t)` is a bihole of `g`.
///
/// # Safety
/// `g` must be live, `s` and `t` readable for their lengths, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_is_bihole(
    g: *const BhGraph,
    s: *const usize,
    s_len: usize,
    t: *const usize,
    t_len: usize,
    out: *mut bool,
) -> BhStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let (s, t) = (slice(s, s_len)?, slice(t, t_len)?);
        put(out, g.is_bihole(s, t))
    })
}

/// Maximum bihole by branch and bound. `node_budget` 0 means unlimited;
/// `optimal` reports whether the search finished.
///
/// # Safety
/// `g` must be live and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn bh_max_bihole(
    g: *const BhGraph,
    node_budget: u64,
    out: *mut *mut BhBihole,
    optimal: *mut bool,
) -> BhStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let opts = ExactOptions {
            budget: if node_budget == 0 {
                u64::MAX
            } else {
                node_budget
            },
            ..Default::default()
        };
        let r = max_bihole_with(g, &opts);
        put(optimal, r.optimal)?;
        put_bihole(out, r.witness)
    })
}

/// Runs one construction. The proven lower bound is written as a fraction.
///
/// # Safety
/// `g` must be live and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn bh_construct(
    g: *const BhGraph,
    algorithm: BhAlgorithm,
    base: BhBase,
    out: *mut *mut BhBihole,
    guarantee_num: *mut i64,
    guarantee_den: *mut i64,
) -> BhStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let base = solver(base);
        let r = match algorithm {
            BhAlgorithm::Delta1 => bihole_delta1(g)?,
            BhAlgorithm::Profile012 => bihole_profile012(g, &base)?,
            BhAlgorithm::Avg => bihole_avg_degree(g, &base)?,
            BhAlgorithm::Avg2 => bihole_avg2(g, &base)?,
            BhAlgorithm::Bounded => bounded_degree_solve(g, &base)?,
        };
        put(guarantee_num, *r.guarantee.numer())?;
        put(guarantee_den, *r.guarantee.denom())?;
        put_bihole(out, r.bihole)
    })
}

/// Randomized pipeline for A-degrees at most 3. `retries` may be NULL.
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_random3(
    g: *const BhGraph,
    eps_num: i64,
    eps_den: i64,
    seed: u64,
    max_retries: usize,
    out: *mut *mut BhBihole,
    retries: *mut usize,
) -> BhStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let mut params = SamplingParams::new(ratio(eps_num, eps_den)?, seed)?;
        params.max_retries = max_retries;
        let (r, t) = bihole_random3(g, &params, &BoundedDegreeSolver::default())?;
        if !retries.is_null() {
            retries.write(t.retries_used);
        }
        put_bihole(out, r.bihole)
    })
}

/// # Safety
/// `b` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bh_bihole_order(b: *const BhBihole) -> usize {
    b.as_ref().map_or(0, |b| b.0.order())
}

/// Copies up to `cap` A-side vertices into `buf`; returns the full count.
///
/// # Safety
/// `b` must be live or NULL; `buf` writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn bh_bihole_s(b: *const BhBihole, buf: *mut usize, cap: usize) -> usize {
    copy_out(b.as_ref().map(|b| b.0.s()), buf, cap)
}

/// Copies up to `cap` B-side vertices into `buf`; returns the full count.
///
/// # Safety
/// `b` must be live or NULL; `buf` writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn bh_bihole_t(b: *const BhBihole, buf: *mut usize, cap: usize) -> usize {
    copy_out(b.as_ref().map(|b| b.0.t()), buf, cap)
}

unsafe fn copy_out(src: Option<&[usize]>, buf: *mut usize, cap: usize) -> usize {
    let src = src.unwrap_or(&[]);
    if !buf.is_null() {
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len().min(cap));
    }
    src.len()
}

/// # Safety
/// `b` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bh_bihole_free(b: *mut BhBihole) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}
