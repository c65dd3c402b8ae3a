//! C ABI over the core computations.
//!
//! Conventions, mirrored in the generated `include/xnpr.h`:
//!
//! * every fallible call returns an [`XnprStatus`] and writes its result
//!   through an out-pointer, touched only on `XNPR_STATUS_OK`;
//! * heap results cross the boundary either as opaque handles
//!   ([`XnprExponent`], [`XnprMatrix`]) with dedicated `_free` functions, or
//!   as NUL-terminated strings freed by [`xnpr_string_free`];
//! * unbounded rationals are passed as `"num/den"` strings, never doubles;
//! * on any non-OK status a thread-local message is available through
//!   [`xnpr_last_error_message`];
//! * panics never unwind across the boundary (they become
//!   `XNPR_STATUS_PANIC`).

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::c_char;

use xnpr::arith::{is_prime, upow};
use xnpr::invariants::{exponent_exact, ExponentReport};
use xnpr::linalg::Mat;
use xnpr::{klein, verify, xcurve, Error};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XnprStatus {
    /// Success; out-parameters are populated.
    Ok = 0,
    /// A parameter was rejected (non-prime p, p | N, bad label, bad UTF-8…).
    InvalidArgument = 1,
    /// The computation itself has no defined answer here.
    MathDomain = 2,
    /// A required pointer was NULL.
    NullPointer = 3,
    /// The requested value is not available (e.g. no certificate family
    /// is known for p^r <= 3, so no lower bound exists).
    Unavailable = 4,
    /// An internal invariant failed; the library caught a panic.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> XnprStatus {
    match err {
        Error::NotPrime(_)
        | Error::InvalidParams(_)
        | Error::InvalidLabel(_)
        | Error::IndexOutOfRange(_)
        | Error::Parse(_) => XnprStatus::InvalidArgument,
        Error::NoConstructionKnown(_) | Error::SearchSpaceExceeded(_) => XnprStatus::Unavailable,
        _ => XnprStatus::MathDomain,
    }
}

fn fail(err: &Error) -> XnprStatus {
    let status = status_of(err);
    set_error(err.to_string());
    status
}

/// Runs `f` with panics converted to `XNPR_STATUS_PANIC` and the error slot
/// cleared on entry.
fn guarded(f: impl FnOnce() -> XnprStatus) -> XnprStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".to_string());
            XnprStatus::Panic
        }
    }
}

/// Reads a required C string argument.
///
/// # Safety
/// `ptr` must be NULL or point to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, XnprStatus> {
    if ptr.is_null() {
        set_error("string argument is NULL".to_string());
        return Err(XnprStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".to_string());
        XnprStatus::InvalidArgument
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> XnprStatus {
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            XnprStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte".to_string());
            XnprStatus::Panic
        }
    }
}

// ---------------------------------------------------------------------------
// strings and errors
// ---------------------------------------------------------------------------

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by one of the
/// string-producing functions of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xnpr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A copy of the message of the most recent error on this thread, or NULL
/// when the last call succeeded. Free with [`xnpr_string_free`].
#[no_mangle]
pub extern "C" fn xnpr_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// The library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn xnpr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

// ---------------------------------------------------------------------------
// exponent
// ---------------------------------------------------------------------------

/// Opaque result of an exponent computation.
pub struct XnprExponent {
    report: ExponentReport,
}

/// Computes the annihilating exponent for (p, r, N, k) and hands back an
/// opaque report. Free with [`xnpr_exponent_free`].
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_compute(
    p: u64,
    r: u32,
    n: u64,
    k: u64,
    out: *mut *mut XnprExponent,
) -> XnprStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        match exponent_exact(p, r, n, k) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(XnprExponent { report }));
                XnprStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees an exponent handle. NULL is ignored.
///
/// # Safety
/// `handle` must be NULL or a pointer from [`xnpr_exponent_compute`], not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_free(handle: *mut XnprExponent) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// The proven upper bound 2k·p^(r-1)·(pr-r+1).
///
/// # Safety
/// `handle` must be a live pointer from [`xnpr_exponent_compute`]; `out`
/// must point to writable storage for one int64_t.
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_upper(
    handle: *const XnprExponent,
    out: *mut i64,
) -> XnprStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("handle or out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        *out = (*handle).report.upper;
        XnprStatus::Ok
    })
}

/// The certified lower bound, when a certificate family is known
/// (`XNPR_STATUS_UNAVAILABLE` otherwise).
///
/// # Safety
/// Same contract as [`xnpr_exponent_upper`].
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_lower(
    handle: *const XnprExponent,
    out: *mut i64,
) -> XnprStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("handle or out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        match (*handle).report.lower {
            Some(lower) => {
                *out = lower;
                XnprStatus::Ok
            }
            None => {
                set_error("no lower bound: no certificate family is known here".to_string());
                XnprStatus::Unavailable
            }
        }
    })
}

/// The exact exponent, when the two bounds meet
/// (`XNPR_STATUS_UNAVAILABLE` otherwise).
///
/// # Safety
/// Same contract as [`xnpr_exponent_upper`].
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_exact(
    handle: *const XnprExponent,
    out: *mut i64,
) -> XnprStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("handle or out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        match (*handle).report.exact {
            Some(exact) => {
                *out = exact;
                XnprStatus::Ok
            }
            None => {
                set_error("bounds do not meet: the exact exponent is undetermined".to_string());
                XnprStatus::Unavailable
            }
        }
    })
}

/// The full report as a deterministic JSON string. Free with
/// [`xnpr_string_free`].
///
/// # Safety
/// `handle` must be a live pointer from [`xnpr_exponent_compute`]; `out`
/// must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_exponent_to_json(
    handle: *const XnprExponent,
    out: *mut *mut c_char,
) -> XnprStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("handle or out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let json = serde_json::to_string(&(*handle).report)
            .expect("report serialization is infallible");
        write_string(out, json)
    })
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

/// Opaque exact rational matrix.
pub struct XnprMatrix {
    mat: Mat,
}

/// Builds the intersection matrix `"M"`, its truncation `"T"`, or the
/// closed-form inverse `"Tinv"` for (p, r). Free with [`xnpr_matrix_free`].
///
/// # Safety
/// `which` must be NULL-terminated; `out` must point to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_matrix_compute(
    p: u64,
    r: u32,
    which: *const c_char,
    out: *mut *mut XnprMatrix,
) -> XnprStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let which = match read_str(which) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let built = match which {
            "M" => xcurve::build_m(p, r),
            "T" => xcurve::build_t(p, r),
            "Tinv" => xcurve::tinv_closed_matrix(p, r),
            other => {
                set_error(format!("unknown matrix '{other}' (expected M, T or Tinv)"));
                return XnprStatus::InvalidArgument;
            }
        };
        match built {
            Ok(mat) => {
                *out = Box::into_raw(Box::new(XnprMatrix { mat }));
                XnprStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a matrix handle. NULL is ignored.
///
/// # Safety
/// `handle` must be NULL or a pointer from [`xnpr_matrix_compute`], not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn xnpr_matrix_free(handle: *mut XnprMatrix) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of rows; 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live pointer from [`xnpr_matrix_compute`].
#[no_mangle]
pub unsafe extern "C" fn xnpr_matrix_rows(handle: *const XnprMatrix) -> usize {
    if handle.is_null() {
        0
    } else {
        (*handle).mat.rows()
    }
}

/// Number of columns; 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live pointer from [`xnpr_matrix_compute`].
#[no_mangle]
pub unsafe extern "C" fn xnpr_matrix_cols(handle: *const XnprMatrix) -> usize {
    if handle.is_null() {
        0
    } else {
        (*handle).mat.cols()
    }
}

/// Entry (i, j), 0-based, rendered exactly as `"num/den"` (or a plain
/// integer). Free with [`xnpr_string_free`].
///
/// # Safety
/// `handle` must be a live pointer from [`xnpr_matrix_compute`]; `out`
/// must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_matrix_entry(
    handle: *const XnprMatrix,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> XnprStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("handle or out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let mat = &(*handle).mat;
        if i >= mat.rows() || j >= mat.cols() {
            set_error(format!(
                "entry ({i}, {j}) outside a {} x {} matrix",
                mat.rows(),
                mat.cols()
            ));
            return XnprStatus::InvalidArgument;
        }
        write_string(out, mat.get(i, j).to_string())
    })
}

// ---------------------------------------------------------------------------
// klein families
// ---------------------------------------------------------------------------

unsafe fn family_from_args(
    p: u64,
    r: u32,
    family: *const c_char,
) -> Result<klein::KleinFamily, XnprStatus> {
    if !is_prime(p) {
        set_error(format!("{p} is not prime"));
        return Err(XnprStatus::InvalidArgument);
    }
    if r == 0 {
        set_error("r must be >= 1".to_string());
        return Err(XnprStatus::InvalidArgument);
    }
    if family.is_null() {
        return klein::standard_family(p, r).map_err(|e| fail(&e));
    }
    let text = read_str(family)?;
    let pairs = klein::KleinFamily::parse_pairs(text).map_err(|e| fail(&e))?;
    klein::KleinFamily::new(upow(p, r), pairs).map_err(|e| fail(&e))
}

/// Valuation at the cusp 0 of the Klein-form product at level p^r, for the
/// coefficient table `family` ("t:m,t:m,…"), or for the standard family
/// when `family` is NULL.
///
/// # Safety
/// `family` must be NULL or NUL-terminated; `out` must point to writable
/// storage for one int64_t.
#[no_mangle]
pub unsafe extern "C" fn xnpr_klein_valuation(
    p: u64,
    r: u32,
    family: *const c_char,
    out: *mut i64,
) -> XnprStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let fam = match family_from_args(p, r, family) {
            Ok(fam) => fam,
            Err(status) => return status,
        };
        match klein::valuation_at_zero(&fam) {
            Ok(v) => {
                *out = v;
                XnprStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// q-expansion at infinity of the Klein-form product, as the JSON
/// serialization of the series (exact rational coefficients). `family` as
/// in [`xnpr_klein_valuation`]. Free with [`xnpr_string_free`].
///
/// # Safety
/// `family` must be NULL or NUL-terminated; `out` must point to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_klein_qexp_json(
    p: u64,
    r: u32,
    family: *const c_char,
    trunc: usize,
    out: *mut *mut c_char,
) -> XnprStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let fam = match family_from_args(p, r, family) {
            Ok(fam) => fam,
            Err(status) => return status,
        };
        match klein::qexp_infinity(&fam, trunc) {
            Ok(series) => write_string(
                out,
                serde_json::to_string(&series).expect("series serialization is infallible"),
            ),
            Err(e) => fail(&e),
        }
    })
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Runs a verification suite ("all", "arith", "linalg", "xcurve" or
/// "klein"). `passed` receives the conjunction of all checks;
/// `report_json` (optional, may be NULL) receives the full deterministic
/// JSON report, freed with [`xnpr_string_free`].
///
/// # Safety
/// `suite` must be NUL-terminated; `passed` must point to writable storage
/// for one bool; `report_json` must be NULL or point to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn xnpr_verify(
    suite: *const c_char,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> XnprStatus {
    guarded(|| {
        if passed.is_null() {
            set_error("passed pointer is NULL".to_string());
            return XnprStatus::NullPointer;
        }
        let suite = match read_str(suite) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match verify::run_suite(suite) {
            Ok(reports) => {
                *passed = verify::all_passed(&reports);
                if !report_json.is_null() {
                    let json = serde_json::to_string(&reports)
                        .expect("report serialization is infallible");
                    return write_string(report_json, json);
                }
                XnprStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}
