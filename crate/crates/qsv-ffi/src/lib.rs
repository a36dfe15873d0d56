//! C ABI over the `qsv` engine.
//!
//! Series are opaque `QsvSeries` handles owned by the caller and released
//! with [`qsv_series_free`]. Every fallible call returns a [`QsvStatus`];
//! the message of the most recent failure on the calling thread is
//! available from [`qsv_last_error`]. Strings handed out by this library
//! are exact ("num/den", "a+bi") and must be released with
//! [`qsv_string_free`]. Panics never cross the boundary.

use qsv::hecke::{character, string_coeff, StringFnId};
use qsv::registry::report::canonical_json;
use qsv::registry::{builtin, lookup, run_check, run_suite, CheckStatus};
use qsv::{Exponent, QZSeries, QsvError};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameters = 2,
    InvalidUtf8 = 3,
    UnknownCheck = 4,
    IndexOutOfRange = 5,
    EvaluationFailed = 6,
    Panic = 7,
}

/// Outcome of a single identity check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsvCheckStatus {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// Opaque truncated series.
pub struct QsvSeries {
    inner: QZSeries,
    /// Terms in storage order, rendered once for indexed access.
    terms: Vec<(Exponent, Exponent, String)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QsvStatus, msg: impl Into<String>) -> QsvStatus {
    set_error(msg);
    status
}

fn from_engine(e: QsvError) -> QsvStatus {
    let status = match e {
        QsvError::InvalidParameters(_) => QsvStatus::InvalidParameters,
        _ => QsvStatus::EvaluationFailed,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting a panic into `QsvStatus::Panic`.
fn guarded(f: impl FnOnce() -> QsvStatus) -> QsvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QsvStatus::Panic, "internal panic"),
    }
}

fn order(num: i64, den: i64) -> Result<Exponent, QsvStatus> {
    if den <= 0 || num <= 0 {
        return Err(fail(QsvStatus::InvalidParameters, format!("order must be a positive fraction, got {num}/{den}")));
    }
    Ok(Exponent::new(num, den))
}

fn into_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QsvStatus> {
    if s.is_null() {
        return Err(fail(QsvStatus::NullPointer, "null string argument"));
    }
    // SAFETY: caller passes a NUL-terminated string valid for this call.
    CStr::from_ptr(s).to_str().map_err(|_| fail(QsvStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn handle(s: QZSeries) -> *mut QsvSeries {
    let terms = s.terms().map(|(q, z, c)| (q, z, c.to_string())).collect();
    Box::into_raw(Box::new(QsvSeries { inner: s, terms }))
}

/// Copy of the last error message on this thread, or NULL if none.
/// Release with [`qsv_string_free`].
#[no_mangle]
pub extern "C" fn qsv_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsv_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw` in this library.
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `s` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsv_series_free(s: *mut QsvSeries) {
    if !s.is_null() {
        // SAFETY: `s` came from `Box::into_raw` in `handle`.
        drop(Box::from_raw(s));
    }
}

/// String function `C_{m,ℓ}` at `(p, p')` (or its normalized form) below
/// the q-order `order_num/order_den`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qsv_string_coeff(
    p: i64,
    pprime: i64,
    m: i64,
    ell: i64,
    normalized: bool,
    order_num: i64,
    order_den: i64,
    out: *mut *mut QsvSeries,
) -> QsvStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QsvStatus::NullPointer, "out is null");
        }
        let trunc = match order(order_num, order_den) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let series = StringFnId::new(p, pprime, m, ell).and_then(|id| string_coeff(&id, normalized, &trunc));
        match series {
            Ok(s) => {
                // SAFETY: checked non-null above.
                *out = handle(s);
                QsvStatus::Ok
            }
            Err(e) => from_engine(e),
        }
    })
}

/// Character `χ_ℓ(z;q)` at `(p, p')` below `order_num/order_den`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qsv_character(
    p: i64,
    pprime: i64,
    ell: i64,
    order_num: i64,
    order_den: i64,
    out: *mut *mut QsvSeries,
) -> QsvStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QsvStatus::NullPointer, "out is null");
        }
        let trunc = match order(order_num, order_den) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match character(p, pprime, ell, &trunc) {
            Ok(s) => {
                // SAFETY: checked non-null above.
                *out = handle(s);
                QsvStatus::Ok
            }
            Err(e) => from_engine(e),
        }
    })
}

/// Number of nonzero terms; 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsv_series_len(s: *const QsvSeries) -> usize {
    // SAFETY: caller guarantees `s` is NULL or live.
    s.as_ref().map_or(0, |s| s.terms.len())
}

/// Truncation order as an exact string.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qsv_series_order(s: *const QsvSeries, out: *mut *mut c_char) -> QsvStatus {
    guarded(|| {
        // SAFETY: caller guarantees `s` is NULL or live.
        let Some(s) = s.as_ref() else { return fail(QsvStatus::NullPointer, "series is null") };
        if out.is_null() {
            return fail(QsvStatus::NullPointer, "out is null");
        }
        *out = into_string(s.inner.trunc().to_string());
        QsvStatus::Ok
    })
}

/// Term `index` (in increasing q, then z order) as exact strings.
///
/// # Safety
/// `s` must be a live handle; each out pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn qsv_series_term(
    s: *const QsvSeries,
    index: usize,
    out_q: *mut *mut c_char,
    out_z: *mut *mut c_char,
    out_coeff: *mut *mut c_char,
) -> QsvStatus {
    guarded(|| {
        // SAFETY: caller guarantees `s` is NULL or live.
        let Some(s) = s.as_ref() else { return fail(QsvStatus::NullPointer, "series is null") };
        if out_q.is_null() || out_z.is_null() || out_coeff.is_null() {
            return fail(QsvStatus::NullPointer, "output pointer is null");
        }
        let Some((q, z, c)) = s.terms.get(index) else {
            return fail(QsvStatus::IndexOutOfRange, format!("term {index} of {}", s.terms.len()));
        };
        *out_q = into_string(q.to_string());
        *out_z = into_string(z.to_string());
        *out_coeff = into_string(c.clone());
        QsvStatus::Ok
    })
}

/// Number of builtin identity checks.
#[no_mangle]
pub extern "C" fn qsv_check_count() -> usize {
    builtin().len()
}

/// Id of builtin check `index`, or NULL when out of range.
/// Release with [`qsv_string_free`].
#[no_mangle]
pub extern "C" fn qsv_check_id(index: usize) -> *mut c_char {
    builtin().get(index).map_or(ptr::null_mut(), |c| into_string(c.id.clone()))
}

/// Runs one builtin check. `order_den == 0` selects the check's default
/// order. `out_verified_order` may be NULL.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out_status` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qsv_run_check(
    id: *const c_char,
    order_num: i64,
    order_den: i64,
    out_status: *mut QsvCheckStatus,
    out_verified_order: *mut *mut c_char,
) -> QsvStatus {
    guarded(|| {
        let id = match read_str(id) {
            Ok(s) => s,
            Err(s) => return s,
        };
        if out_status.is_null() {
            return fail(QsvStatus::NullPointer, "out_status is null");
        }
        let Some(check) = lookup(id) else { return fail(QsvStatus::UnknownCheck, format!("no check `{id}`")) };
        let trunc = if order_den == 0 {
            None
        } else {
            match order(order_num, order_den) {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        let rep = run_check(check, trunc.as_ref());
        *out_status = match rep.status {
            CheckStatus::Pass => QsvCheckStatus::Pass,
            CheckStatus::Fail => QsvCheckStatus::Fail,
            CheckStatus::Skipped => QsvCheckStatus::Skipped,
        };
        if !out_verified_order.is_null() {
            *out_verified_order = into_string(rep.verified_order.to_string());
        }
        if let Some(r) = rep.reason {
            set_error(r);
        }
        QsvStatus::Ok
    })
}

/// Runs every builtin check matching the glob `filter` (empty: all) at
/// default orders on `threads` workers and returns the canonical
/// timing-free JSON report.
///
/// # Safety
/// `filter` must be a NUL-terminated string; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qsv_verify_json(filter: *const c_char, threads: usize, out_json: *mut *mut c_char) -> QsvStatus {
    guarded(|| {
        let filter = match read_str(filter) {
            Ok(s) => s,
            Err(s) => return s,
        };
        if out_json.is_null() {
            return fail(QsvStatus::NullPointer, "out_json is null");
        }
        match run_suite(builtin(), filter, None, threads.max(1)) {
            Ok(rep) => {
                *out_json = into_string(canonical_json(&rep, "builtin", "default"));
                QsvStatus::Ok
            }
            Err(e) => from_engine(e),
        }
    })
}
