//! C ABI for the xsign engine.
//!
//! Conventions: every fallible call returns an [`XsignStatus`] and writes
//! its result through out-pointers, which are left untouched on failure.
//! Heap-allocated results (certificates, strings) are owned by the caller
//! and must be released with the matching `xsign_*_free` function. A
//! thread-local message with the detail of the most recent failure on the
//! calling thread is available via [`xsign_last_error_message`].
//!
//! The generated header lives at `include/xsign.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;

use xsign::certifier::{build_certificate, check_certificate, Certificate};
use xsign::{eval_row, find_exceeding, scan_summary, sign_of, x_of, Error, Sign};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XsignStatus {
    Ok = 0,
    NullPointer = 1,
    DomainError = 2,
    PreconditionError = 3,
    ParseError = 4,
    CertificationFailure = 5,
    InvalidUtf8 = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: XsignStatus, message: String) -> XsignStatus {
    set_error(message);
    status
}

fn fail_with(err: Error) -> XsignStatus {
    let status = match err {
        Error::Domain(_) => XsignStatus::DomainError,
        Error::Precondition(_) => XsignStatus::PreconditionError,
        Error::Parse(_) => XsignStatus::ParseError,
        Error::Certification(_) => XsignStatus::CertificationFailure,
    };
    fail(status, err.to_string())
}

/// Detail text for the most recent failure on this thread, or NULL if the
/// last call succeeded. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn xsign_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn xsign_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// One evaluated row.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XsignEvalRow {
    pub n: u64,
    pub z: u64,
    pub m: u64,
    pub r: u32,
    pub x: i64,
}

/// Evaluate z, m, r and x at `n` (word tier: `1 <= n <= 2^62`).
///
/// # Safety
/// `out` must be a valid pointer to an `XsignEvalRow`.
#[no_mangle]
pub unsafe extern "C" fn xsign_eval_row(n: u64, out: *mut XsignEvalRow) -> XsignStatus {
    if out.is_null() {
        return fail(XsignStatus::NullPointer, "out pointer is null".into());
    }
    match eval_row(n) {
        Ok(row) => {
            *out = XsignEvalRow {
                n: row.n,
                z: row.z,
                m: row.m,
                r: row.r,
                x: row.x,
            };
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// `x(n)`, exact.
///
/// # Safety
/// `out` must be a valid pointer to an `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn xsign_x(n: u64, out: *mut i64) -> XsignStatus {
    if out.is_null() {
        return fail(XsignStatus::NullPointer, "out pointer is null".into());
    }
    match x_of(n) {
        Ok(x) => {
            *out = x;
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Sign of `x(n)` as -1, 0 or 1.
///
/// # Safety
/// `out` must be a valid pointer to an `int32_t`.
#[no_mangle]
pub unsafe extern "C" fn xsign_sign(n: u64, out: *mut i32) -> XsignStatus {
    if out.is_null() {
        return fail(XsignStatus::NullPointer, "out pointer is null".into());
    }
    match sign_of(n) {
        Ok(sign) => {
            *out = match sign {
                Sign::Negative => -1,
                Sign::Zero => 0,
                Sign::Positive => 1,
            };
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Zeros and extrema of `x` over a scanned range. `zeros` holds the first
/// `min(zero_count, 8)` zero positions in ascending order.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XsignScanSummary {
    pub lo: u64,
    pub hi: u64,
    pub zero_count: u64,
    pub zeros: [u64; 8],
    pub min_at: u64,
    pub min_value: i64,
    pub max_at: u64,
    pub max_value: i64,
    pub has_last_nonpositive: bool,
    pub last_nonpositive: u64,
}

/// Exhaustive scan of `[lo, hi]`; ties in the extrema break toward the
/// smallest index.
///
/// # Safety
/// `out` must be a valid pointer to an `XsignScanSummary`.
#[no_mangle]
pub unsafe extern "C" fn xsign_scan_summary(
    lo: u64,
    hi: u64,
    out: *mut XsignScanSummary,
) -> XsignStatus {
    if out.is_null() {
        return fail(XsignStatus::NullPointer, "out pointer is null".into());
    }
    match scan_summary(lo, hi) {
        Ok(summary) => {
            let mut zeros = [0u64; 8];
            for (slot, z) in zeros.iter_mut().zip(summary.zeros.iter()) {
                *slot = *z;
            }
            *out = XsignScanSummary {
                lo: summary.lo,
                hi: summary.hi,
                zero_count: summary.zeros.len() as u64,
                zeros,
                min_at: summary.min_at,
                min_value: summary.min_value,
                max_at: summary.max_at,
                max_value: summary.max_value,
                has_last_nonpositive: summary.last_nonpositive.is_some(),
                last_nonpositive: summary.last_nonpositive.unwrap_or(0),
            };
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Witness that `x` exceeds `bound` (a decimal string of any size): writes
/// `n` and `x(n)` as newly allocated decimal strings. Free both with
/// `xsign_string_free`.
///
/// # Safety
/// `bound` must be a NUL-terminated string; `n_out` and `x_out` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn xsign_exceed(
    bound: *const c_char,
    n_out: *mut *mut c_char,
    x_out: *mut *mut c_char,
) -> XsignStatus {
    if bound.is_null() || n_out.is_null() || x_out.is_null() {
        return fail(XsignStatus::NullPointer, "null argument".into());
    }
    let text = match CStr::from_ptr(bound).to_str() {
        Ok(t) => t,
        Err(_) => return fail(XsignStatus::InvalidUtf8, "bound is not UTF-8".into()),
    };
    let bound = match text.parse::<num_bigint::BigUint>() {
        Ok(b) => b,
        Err(_) => {
            return fail(
                XsignStatus::ParseError,
                format!("bound must be a non-negative decimal integer, got {text:?}"),
            )
        }
    };
    let witness = find_exceeding(&bound);
    *n_out = to_c_string(witness.n.to_string());
    *x_out = to_c_string(witness.x.to_string());
    XsignStatus::Ok
}

/// Opaque certificate handle.
pub struct XsignCertificate {
    inner: Certificate,
}

/// Build a certificate with exact tail margins up to `tail_s_max`
/// (must be at least 12). On success writes an owned handle; free it with
/// `xsign_certificate_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_build(
    tail_s_max: u64,
    out: *mut *mut XsignCertificate,
) -> XsignStatus {
    if out.is_null() {
        return fail(XsignStatus::NullPointer, "out pointer is null".into());
    }
    match build_certificate(tail_s_max) {
        Ok(cert) => {
            *out = Box::into_raw(Box::new(XsignCertificate { inner: cert }));
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Parse a certificate from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_parse(
    json: *const c_char,
    out: *mut *mut XsignCertificate,
) -> XsignStatus {
    if json.is_null() || out.is_null() {
        return fail(XsignStatus::NullPointer, "null argument".into());
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return fail(XsignStatus::InvalidUtf8, "document is not UTF-8".into()),
    };
    match Certificate::from_json(text) {
        Ok(cert) => {
            *out = Box::into_raw(Box::new(XsignCertificate { inner: cert }));
            XsignStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Serialize a certificate to its JSON document as a newly allocated
/// string; free it with `xsign_string_free`.
///
/// # Safety
/// `cert` must be a handle from `xsign_certificate_build`/`_parse`;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_to_json(
    cert: *const XsignCertificate,
    out: *mut *mut c_char,
) -> XsignStatus {
    if cert.is_null() || out.is_null() {
        return fail(XsignStatus::NullPointer, "null argument".into());
    }
    *out = to_c_string((*cert).inner.to_json());
    XsignStatus::Ok
}

/// Re-verify every claim in the certificate. Returns `Ok` when the
/// certificate is sound; `CertificationFailure` (with detail via
/// `xsign_last_error_message`) when any re-derivation fails.
///
/// # Safety
/// `cert` must be a handle from `xsign_certificate_build`/`_parse`.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_check(cert: *const XsignCertificate) -> XsignStatus {
    if cert.is_null() {
        return fail(XsignStatus::NullPointer, "certificate is null".into());
    }
    match check_certificate(&(*cert).inner) {
        Ok(_) => XsignStatus::Ok,
        Err(failure) => fail(XsignStatus::CertificationFailure, failure.to_string()),
    }
}

/// Number of segments in the certificate (0 for a null handle).
///
/// # Safety
/// `cert` must be null or a handle from `xsign_certificate_build`/`_parse`.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_segment_count(cert: *const XsignCertificate) -> usize {
    if cert.is_null() {
        return 0;
    }
    (*cert).inner.segments.len()
}

/// Release a certificate handle. Null is a no-op.
///
/// # Safety
/// `cert` must be null or an unreleased handle from
/// `xsign_certificate_build`/`_parse`.
#[no_mangle]
pub unsafe extern "C" fn xsign_certificate_free(cert: *mut XsignCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or an unreleased string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn xsign_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
