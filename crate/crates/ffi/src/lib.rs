//! C ABI over `nkp-core`.
//!
//! Instances and solutions are opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns
//! an [`NkpStatus`]; the message of the last failure on the calling thread
//! is available from [`nkp_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nkp_core::io::{parse, serialize};
use nkp_core::solve::check_set;
use nkp_core::{
    solve, Algorithm, Constraint, Epsilon, Error, Instance, Solution, SolveOptions, VertexSet,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkpStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    Unsupported = 3,
    ScaleExceeded = 4,
    Panic = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkpConstraint {
    One = 0,
    All = 1,
}

/// Opaque instance handle.
pub struct NkpInstance {
    inner: Instance,
}

/// Opaque solution handle.
pub struct NkpSolution {
    inner: Solution,
    algorithm: CString,
    guarantee: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NkpStatus {
    match e {
        Error::Parse { .. } | Error::Validation(_) => NkpStatus::ParseError,
        Error::InvalidArgument(_) | Error::InvalidEpsilon(_) => NkpStatus::InvalidArgument,
        Error::Unsupported(_) | Error::Hardness(_) => NkpStatus::Unsupported,
        Error::OracleScaleExceeded { .. } | Error::TableBound { .. } => NkpStatus::ScaleExceeded,
        Error::Internal(_) => NkpStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), (NkpStatus, String)>) -> NkpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NkpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside nkp");
            NkpStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (NkpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (NkpStatus, String) {
    (NkpStatus::InvalidArgument, format!("{name} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (NkpStatus, String)> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (NkpStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

/// Parses an instance from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nkp_instance_parse(
    text: *const c_char,
    out: *mut *mut NkpInstance,
) -> NkpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = ptr::null_mut();
        let inner = parse(c_str(text, "text")?).map_err(core_err)?;
        *out = Box::into_raw(Box::new(NkpInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `instance` must come from [`nkp_instance_parse`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn nkp_instance_free(instance: *mut NkpInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_instance_vertex_count(instance: *const NkpInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.n())
}

/// Budget stored in the instance, 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_instance_budget(instance: *const NkpInstance) -> u64 {
    instance.as_ref().map_or(0, |i| i.inner.budget())
}

/// Canonical text of the instance; release with [`nkp_string_free`].
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nkp_instance_serialize(
    instance: *const NkpInstance,
    out: *mut *mut c_char,
) -> NkpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = ptr::null_mut();
        let inst = instance.as_ref().ok_or_else(|| null_arg("instance"))?;
        let text = CString::new(serialize(&inst.inner))
            .map_err(|e| (NkpStatus::Internal, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nkp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Solves with the instance budget. `variant` is an algorithm name, or
/// null / `"auto"` for automatic routing.
///
/// # Safety
/// `instance` must be a live handle, `variant` null or a valid C string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nkp_solve(
    instance: *const NkpInstance,
    constraint: NkpConstraint,
    variant: *const c_char,
    epsilon: f64,
    out: *mut *mut NkpSolution,
) -> NkpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = ptr::null_mut();
        let inst = instance.as_ref().ok_or_else(|| null_arg("instance"))?;
        let mut opts = SolveOptions::new(match constraint {
            NkpConstraint::One => Constraint::OneNeighbour,
            NkpConstraint::All => Constraint::AllNeighbour,
        });
        opts.eps = Epsilon::new(epsilon).map_err(core_err)?;
        if !variant.is_null() {
            let name = c_str(variant, "variant")?;
            if name != "auto" {
                opts.variant = Some(Algorithm::from_name(name).ok_or_else(|| {
                    (NkpStatus::Unsupported, format!("unknown variant {name:?}"))
                })?);
            }
        }
        let inner = solve(&inst.inner, &opts).map_err(core_err)?;
        let algorithm = CString::new(inner.algorithm.name()).unwrap_or_default();
        let guarantee = CString::new(inner.guarantee.to_string()).unwrap_or_default();
        *out = Box::into_raw(Box::new(NkpSolution {
            inner,
            algorithm,
            guarantee,
        }));
        Ok(())
    })
}

/// # Safety
/// `solution` must come from [`nkp_solve`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_free(solution: *mut NkpSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_profit(solution: *const NkpSolution) -> u64 {
    solution.as_ref().map_or(0, |s| s.inner.total_profit)
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_weight(solution: *const NkpSolution) -> u64 {
    solution.as_ref().map_or(0, |s| s.inner.total_weight)
}

/// Number of chosen vertices.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_len(solution: *const NkpSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.inner.chosen.len())
}

/// Chosen vertex ids in increasing order; valid while the handle lives.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_vertices(solution: *const NkpSolution) -> *const usize {
    solution
        .as_ref()
        .map_or(ptr::null(), |s| s.inner.chosen.as_slice().as_ptr())
}

/// Algorithm name; valid while the handle lives.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_algorithm(solution: *const NkpSolution) -> *const c_char {
    solution
        .as_ref()
        .map_or(ptr::null(), |s| s.algorithm.as_ptr())
}

/// Guarantee label; valid while the handle lives.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nkp_solution_guarantee(solution: *const NkpSolution) -> *const c_char {
    solution
        .as_ref()
        .map_or(ptr::null(), |s| s.guarantee.as_ptr())
}

/// Checks a vertex set. `violation` receives the smallest violating vertex
/// or -1.
///
/// # Safety
/// `instance` must be a live handle, `ids` must point to `len` values (or
/// be null when `len` is 0), and the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nkp_check(
    instance: *const NkpInstance,
    constraint: NkpConstraint,
    ids: *const usize,
    len: usize,
    feasible: *mut bool,
    violation: *mut i64,
) -> NkpStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null_arg("instance"))?;
        if feasible.is_null() || violation.is_null() {
            return Err(null_arg("out"));
        }
        let ids = if len == 0 {
            Vec::new()
        } else if ids.is_null() {
            return Err(null_arg("ids"));
        } else {
            std::slice::from_raw_parts(ids, len).to_vec()
        };
        let set = VertexSet::for_instance(&inst.inner, ids).map_err(core_err)?;
        let c = match constraint {
            NkpConstraint::One => Constraint::OneNeighbour,
            NkpConstraint::All => Constraint::AllNeighbour,
        };
        let r = check_set(&inst.inner, c, &set, inst.inner.budget());
        *feasible = r.feasible;
        *violation = r.violation.map_or(-1, |v| v as i64);
        Ok(())
    })
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn nkp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
