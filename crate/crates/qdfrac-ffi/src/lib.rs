#![allow(clippy::missing_safety_doc)] // pointer contracts are stated on each function

//! C ABI for the qdfrac engine: status codes, opaque curve handles, and
//! string results written into caller-provided buffers.
//!
//! Every function is panic-safe (unwinding is caught and reported as
//! `InternalError`) and NUL-terminates whatever it writes. Strings are
//! UTF-8; rationals are rendered as `p/q`, reals as decimal with a
//! precision-determined digit count. The header is generated into
//! `include/qdfrac.h` at build time.

use std::ffi::{c_char, c_int, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qdfrac::lfunction::{an_table, ap, load_curve, lprime_approx, CurveConfig, CurveError};
use qdfrac::numeval::{e1_cf, e1_quadrature, e1_series, BigReal, NumError};
use qdfrac::seriesqd::{cf_coeffs, hankel_det, CoeffSeq};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdfracStatus {
    Ok = 0,
    /// A pointer was null, a string was not UTF-8, or a value was out of range.
    InvalidArgument = 1,
    /// The output buffer is too small for the result.
    BufferTooSmall = 2,
    /// Quotient-difference breakdown (vanishing Hankel determinant).
    Breakdown = 3,
    /// The continued fraction did not stabilize below the depth cap.
    NoConvergence = 4,
    /// An iteration subtraction lost all significant bits.
    PrecisionExhausted = 5,
    /// The argument is outside the supported domain (x > 0).
    DomainError = 6,
    /// The curve file did not parse.
    ParseError = 7,
    /// The curve has discriminant zero.
    SingularCurve = 8,
    /// A prime exceeded the point-counting cap.
    PrimeTooLarge = 9,
    /// The derivative formula requires functional-equation sign -1.
    EvenSign = 10,
    /// An exact identity failed (engine defect; should never happen).
    IdentityFailure = 11,
    /// A panic was caught at the boundary.
    InternalError = 12,
}

/// E1 evaluation method selector for `qdfrac_e1`.
pub const QDFRAC_E1_SERIES: c_int = 0;
pub const QDFRAC_E1_CF: c_int = 1;
pub const QDFRAC_E1_QUADRATURE: c_int = 2;

/// Opaque elliptic-curve handle created by `qdfrac_curve_load`.
pub struct QdfracCurve {
    inner: CurveConfig,
}

fn status_of_num(e: &NumError) -> QdfracStatus {
    match e {
        NumError::Domain(_) => QdfracStatus::DomainError,
        NumError::NoConvergence { .. } => QdfracStatus::NoConvergence,
        NumError::PrecisionExhausted { .. } => QdfracStatus::PrecisionExhausted,
    }
}

fn status_of_curve(e: &CurveError) -> QdfracStatus {
    match e {
        CurveError::Parse { .. } | CurveError::Io(_) => QdfracStatus::ParseError,
        CurveError::SingularCurve => QdfracStatus::SingularCurve,
        CurveError::PrimeTooLarge { .. } => QdfracStatus::PrimeTooLarge,
        CurveError::EvenFunctionalEquation => QdfracStatus::EvenSign,
        CurveError::Num(e) => status_of_num(e),
    }
}

/// Writes `s` NUL-terminated into `buf` of length `len`.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize) -> QdfracStatus {
    if buf.is_null() {
        return QdfracStatus::InvalidArgument;
    }
    let bytes = s.as_bytes();
    if bytes.len() + 1 > len {
        return QdfracStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
        *buf.add(bytes.len()) = 0;
    }
    QdfracStatus::Ok
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn guard(f: impl FnOnce() -> QdfracStatus) -> QdfracStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QdfracStatus::InternalError)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qdfrac_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Continued-fraction coefficients d_0 ... d_2k of the factorial series,
/// space-separated rationals.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_cf_coeffs(
    k: usize,
    buf: *mut c_char,
    buf_len: usize,
) -> QdfracStatus {
    guard(|| {
        if k == 0 {
            return QdfracStatus::InvalidArgument;
        }
        match cf_coeffs(&CoeffSeq::factorial(), k) {
            Ok(cf) => {
                let parts: Vec<String> = cf.d().iter().map(|d| d.to_string()).collect();
                unsafe { write_str(&parts.join(" "), buf, buf_len) }
            }
            Err(_) => QdfracStatus::Breakdown,
        }
    })
}

/// Hankel determinant H_k^(n) of the factorial series as a `p/q` string.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_hankel_det(
    n: i64,
    k: usize,
    buf: *mut c_char,
    buf_len: usize,
) -> QdfracStatus {
    guard(|| {
        let d = hankel_det(&CoeffSeq::factorial(), n, k);
        unsafe { write_str(&d.to_string(), buf, buf_len) }
    })
}

/// Runs the exact identity sweep up to `kmax`; Ok when everything holds.
#[no_mangle]
pub extern "C" fn qdfrac_identities(kmax: usize) -> QdfracStatus {
    guard(|| {
        if kmax == 0 {
            return QdfracStatus::InvalidArgument;
        }
        let c = CoeffSeq::factorial();
        let ratios = match qdfrac::seriesqd::verify_hankel_ratios(&c, kmax, 4) {
            Ok(list) => list,
            Err(_) => return QdfracStatus::Breakdown,
        };
        if !ratios.is_empty() {
            return QdfracStatus::IdentityFailure;
        }
        for k in 1..=kmax {
            let want = qdfrac::poly::RatPoly::constant(qdfrac::rational::factorial_rat(k));
            if qdfrac::convergents::fm_denominator_congruence(k).polynomial_part() != want
                || qdfrac::convergents::fm_numerator_congruence(k).polynomial_part() != want
            {
                return QdfracStatus::IdentityFailure;
            }
            if k >= 2 && !qdfrac::convergents::s_coefficient_identities(k).is_empty() {
                return QdfracStatus::IdentityFailure;
            }
            if !qdfrac::convergents::bridge_q_s(k).is_empty() {
                return QdfracStatus::IdentityFailure;
            }
        }
        QdfracStatus::Ok
    })
}

/// Evaluates E1(x) with the chosen method; writes the decimal value.
/// `x` is an integer, decimal, or `p/q` literal.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_e1(
    method: c_int,
    x: *const c_char,
    prec_bits: u32,
    buf: *mut c_char,
    buf_len: usize,
) -> QdfracStatus {
    guard(|| {
        let Some(xs) = (unsafe { read_str(x) }) else {
            return QdfracStatus::InvalidArgument;
        };
        let prec = prec_bits as usize;
        let Ok(xv) = BigReal::parse(xs, prec) else {
            return QdfracStatus::InvalidArgument;
        };
        let report = match method {
            QDFRAC_E1_SERIES => e1_series(&xv, prec),
            QDFRAC_E1_CF => e1_cf(&xv, 1, prec),
            QDFRAC_E1_QUADRATURE => e1_quadrature(&xv, prec),
            _ => return QdfracStatus::InvalidArgument,
        };
        match report {
            Ok(r) => {
                let digits = ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
                unsafe { write_str(&r.value.to_decimal(digits), buf, buf_len) }
            }
            Err(e) => status_of_num(&e),
        }
    })
}

/// Loads a curve file and hands back an owned opaque handle.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_curve_load(
    path: *const c_char,
    out: *mut *mut QdfracCurve,
) -> QdfracStatus {
    guard(|| {
        if out.is_null() {
            return QdfracStatus::InvalidArgument;
        }
        let Some(p) = (unsafe { read_str(path) }) else {
            return QdfracStatus::InvalidArgument;
        };
        match load_curve(p) {
            Ok(curve) => {
                let handle = Box::new(QdfracCurve { inner: curve });
                unsafe { *out = Box::into_raw(handle) };
                QdfracStatus::Ok
            }
            Err(e) => status_of_curve(&e),
        }
    })
}

/// Frees a handle from `qdfrac_curve_load`. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_curve_free(curve: *mut QdfracCurve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Curve label, NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_curve_label(
    curve: *const QdfracCurve,
    buf: *mut c_char,
    buf_len: usize,
) -> QdfracStatus {
    guard(|| {
        let Some(c) = (unsafe { curve.as_ref() }) else {
            return QdfracStatus::InvalidArgument;
        };
        unsafe { write_str(&c.inner.label, buf, buf_len) }
    })
}

/// Fourier coefficient a_p at a prime p (point count).
#[no_mangle]
pub unsafe extern "C" fn qdfrac_curve_ap(
    curve: *const QdfracCurve,
    p: u64,
    out: *mut i64,
) -> QdfracStatus {
    guard(|| {
        let Some(c) = (unsafe { curve.as_ref() }) else {
            return QdfracStatus::InvalidArgument;
        };
        if out.is_null() {
            return QdfracStatus::InvalidArgument;
        }
        match ap(&c.inner, p) {
            Ok(v) => {
                unsafe { *out = v };
                QdfracStatus::Ok
            }
            Err(e) => status_of_curve(&e),
        }
    })
}

/// Fills `out[0..upper]` with a_1 ... a_upper. `out_len` must be >= upper.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_curve_an(
    curve: *const QdfracCurve,
    upper: usize,
    out: *mut i64,
    out_len: usize,
) -> QdfracStatus {
    guard(|| {
        let Some(c) = (unsafe { curve.as_ref() }) else {
            return QdfracStatus::InvalidArgument;
        };
        if out.is_null() || upper == 0 {
            return QdfracStatus::InvalidArgument;
        }
        if out_len < upper {
            return QdfracStatus::BufferTooSmall;
        }
        match an_table(&c.inner, upper) {
            Ok(t) => {
                for n in 1..=upper {
                    unsafe { *out.add(n - 1) = t.an(n) };
                }
                QdfracStatus::Ok
            }
            Err(e) => status_of_curve(&e),
        }
    })
}

/// L'(E, 1) truncated at `terms`; writes the value and the tail envelope
/// as decimal strings.
#[no_mangle]
pub unsafe extern "C" fn qdfrac_lprime(
    curve: *const QdfracCurve,
    terms: usize,
    prec_bits: u32,
    value_buf: *mut c_char,
    value_len: usize,
    tail_buf: *mut c_char,
    tail_len: usize,
) -> QdfracStatus {
    guard(|| {
        let Some(c) = (unsafe { curve.as_ref() }) else {
            return QdfracStatus::InvalidArgument;
        };
        if terms == 0 {
            return QdfracStatus::InvalidArgument;
        }
        match lprime_approx(&c.inner, terms, prec_bits as usize) {
            Ok(r) => {
                let digits =
                    ((prec_bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
                let st = unsafe { write_str(&r.value.to_decimal(digits), value_buf, value_len) };
                if st != QdfracStatus::Ok {
                    return st;
                }
                unsafe { write_str(&r.tail.to_decimal(6), tail_buf, tail_len) }
            }
            Err(e) => status_of_curve(&e),
        }
    })
}
