//! C ABI over the `mmdc` solver.
//!
//! Every function returns an [`MmdcStatus`] (or a plain value for simple
//! getters) and never unwinds across the boundary. After a non-OK status,
//! [`mmdc_last_error_message`] describes the failure on the calling thread.
//! Handles are opaque and must be released with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use mmdc::{Instance, MmdcError, Solution};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmdcStatus {
    Ok = 0,
    NullArgument = 1,
    /// Malformed text, inconsistent sizes or out-of-range values.
    InvalidInput = 2,
    /// The instance failed a necessary feasibility check.
    Rejected = 3,
    /// No saturating matching exists.
    Infeasible = 4,
    OutOfRange = 5,
    Internal = 6,
}

/// Opaque problem instance.
pub struct MmdcInstance {
    inner: Instance,
}

/// Opaque solve result.
pub struct MmdcSolution {
    inner: Solution,
    pairs: Vec<(usize, usize, u32)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: MmdcStatus, msg: impl Into<String>) -> MmdcStatus {
    set_error(msg);
    status
}

fn status_of(e: &MmdcError) -> MmdcStatus {
    match e {
        MmdcError::Rejected(_) => MmdcStatus::Rejected,
        MmdcError::Infeasible(_) => MmdcStatus::Infeasible,
        MmdcError::Parse(_) | MmdcError::MalformedSolution { .. } => MmdcStatus::InvalidInput,
        MmdcError::Contract(_) => MmdcStatus::InvalidInput,
        _ => MmdcStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> MmdcStatus) -> MmdcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == MmdcStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Err(_) => fail(MmdcStatus::Internal, "internal panic"),
    }
}

unsafe fn array<'a, T>(p: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(p, len))
    }
}

/// Builds an instance from a row-major `s × t` weight array and the four
/// bound arrays (`s`, `s`, `t`, `t` entries).
///
/// # Safety
/// Every array must hold the stated number of elements and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mmdc_instance_new(
    s: usize,
    t: usize,
    weights: *const u64,
    demand_a: *const u32,
    cap_a: *const u32,
    demand_b: *const u32,
    cap_b: *const u32,
    out: *mut *mut MmdcInstance,
) -> MmdcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MmdcStatus::NullArgument, "out is null");
        }
        let Some(n) = s.checked_mul(t) else {
            return fail(MmdcStatus::InvalidInput, "s * t overflows");
        };
        let parts = (
            array(weights, n),
            array(demand_a, s),
            array(cap_a, s),
            array(demand_b, t),
            array(cap_b, t),
        );
        let (Some(w), Some(da), Some(ca), Some(db), Some(cb)) = parts else {
            return fail(MmdcStatus::NullArgument, "null array with non-zero length");
        };
        match Instance::from_flat(
            s,
            t,
            w.to_vec(),
            da.to_vec(),
            ca.to_vec(),
            db.to_vec(),
            cb.to_vec(),
        ) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MmdcInstance { inner }));
                MmdcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Parses an instance in the text format read by the `mmdc` tool.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mmdc_instance_parse(
    text: *const c_char,
    out: *mut *mut MmdcInstance,
) -> MmdcStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(MmdcStatus::NullArgument, "text or out is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(MmdcStatus::InvalidInput, "text is not UTF-8");
        };
        match mmdc::parse_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MmdcInstance { inner }));
                MmdcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Runs the necessary feasibility checks without solving.
///
/// # Safety
/// `inst` must come from `mmdc_instance_new` or `mmdc_instance_parse`.
#[no_mangle]
pub unsafe extern "C" fn mmdc_instance_validate(inst: *const MmdcInstance) -> MmdcStatus {
    guarded(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(MmdcStatus::NullArgument, "inst is null");
        };
        let report = mmdc::validate_instance(&inst.inner);
        if report.passed() {
            MmdcStatus::Ok
        } else {
            fail(MmdcStatus::Rejected, report.to_string())
        }
    })
}

/// # Safety
/// `inst` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mmdc_instance_free(inst: *mut MmdcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Solves `inst` at minimum cost.
///
/// # Safety
/// `inst` must be a live instance handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solve(
    inst: *const MmdcInstance,
    out: *mut *mut MmdcSolution,
) -> MmdcStatus {
    guarded(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(MmdcStatus::NullArgument, "inst or out is null");
        };
        match mmdc::solve_mmdc(&inst.inner) {
            Ok(inner) => {
                let pairs = inner
                    .multiplicities
                    .iter()
                    .map(|(&(i, j), &m)| (i, j, m))
                    .collect();
                *out = Box::into_raw(Box::new(MmdcSolution { inner, pairs }));
                MmdcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Total cost, or 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solution_cost(sol: *const MmdcSolution) -> u64 {
    sol.as_ref().map_or(0, |s| s.inner.total_cost)
}

/// Number of distinct matched pairs, or 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solution_pair_count(sol: *const MmdcSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.pairs.len())
}

/// Reads matched pair `k` (0-based, ordered by row then column). Indices
/// written to `i` and `j` are 0-based.
///
/// # Safety
/// `sol` must be a live solution handle and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solution_pair(
    sol: *const MmdcSolution,
    k: usize,
    i: *mut usize,
    j: *mut usize,
    multiplicity: *mut u32,
) -> MmdcStatus {
    guarded(|| {
        let Some(sol) = sol.as_ref() else {
            return fail(MmdcStatus::NullArgument, "sol is null");
        };
        if i.is_null() || j.is_null() || multiplicity.is_null() {
            return fail(MmdcStatus::NullArgument, "output pointer is null");
        }
        let Some(&(pi, pj, m)) = sol.pairs.get(k) else {
            return fail(
                MmdcStatus::OutOfRange,
                format!("pair {k} of {}", sol.pairs.len()),
            );
        };
        *i = pi;
        *j = pj;
        *multiplicity = m;
        MmdcStatus::Ok
    })
}

/// Renders the solution in the text format written by `mmdc solve`. The
/// string must be released with [`mmdc_string_free`].
///
/// # Safety
/// `sol` must be a live solution handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solution_write(
    sol: *const MmdcSolution,
    out: *mut *mut c_char,
) -> MmdcStatus {
    guarded(|| {
        let (Some(sol), false) = (sol.as_ref(), out.is_null()) else {
            return fail(MmdcStatus::NullArgument, "sol or out is null");
        };
        match CString::new(mmdc::write_solution(&sol.inner)) {
            Ok(s) => {
                *out = s.into_raw();
                MmdcStatus::Ok
            }
            Err(_) => fail(MmdcStatus::Internal, "solution text contains NUL"),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mmdc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `sol` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mmdc_solution_free(sol: *mut MmdcSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn mmdc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
