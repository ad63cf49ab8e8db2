//! C interface to `cartier-covers`.
//!
//! Curves are opaque handles created by [`cc_curve_new`] and released with
//! [`cc_curve_free`]. Every fallible call returns a [`CcStatus`]; on failure a
//! message is available from [`cc_last_error_message`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cartier_covers::algebra::parse_poly;
use cartier_covers::cartier::{cartier_matrix, classify, coker_dim, cover_exists, minimal_degree_linalg, p_rank};
use cartier_covers::covers::{build_cover, build_cover_of_degree};
use cartier_covers::curve::{AffineFunction, CoverVerdict, HyperellipticCurve};
use cartier_covers::{report, Error};
use serde_json::json;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    /// The curve admits no etale cover of the affine line.
    NoCover = 1,
    /// The proposed function is not an etale cover.
    Rejected = 2,
    /// The requested degree is not realized by any cover.
    NotAdmissible = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    ParseError = 6,
    /// The model is not a smooth odd-degree hyperelliptic curve.
    InvalidCurve = 7,
    InvalidArgument = 8,
    Panic = 9,
}

/// Opaque curve handle.
pub struct CcCurve {
    curve: HyperellipticCurve,
}

struct Failure {
    status: CcStatus,
    message: String,
}

impl Failure {
    fn new(status: CcStatus, message: impl Into<String>) -> Failure {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::NoCover(_) => CcStatus::NoCover,
            Error::NotAdmissible { .. } => CcStatus::NotAdmissible,
            Error::Syntax { .. } | Error::WrongVariable { .. } => CcStatus::ParseError,
            Error::NotSquarefree
            | Error::EvenDegree(_)
            | Error::DegreeTooSmall(_)
            | Error::NotMonic
            | Error::CharTwo
            | Error::NotPrime(_)
            | Error::FieldTooLarge { .. } => CcStatus::InvalidCurve,
            _ => CcStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CcStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|payload| {
        let text = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::new(CcStatus::Panic, format!("internal error: {text}")))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            CcStatus::Ok
        }
        Err(f) => {
            set_last_error(&f.message);
            f.status
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(CcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(CcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(curve: *const CcCurve) -> Result<&'a HyperellipticCurve, Failure> {
    curve
        .as_ref()
        .map(|c| &c.curve)
        .ok_or_else(|| Failure::new(CcStatus::NullPointer, "curve handle is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(CcStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(CcStatus::InvalidArgument, "string contains NUL"))?;
    write(out, c.into_raw())
}

/// Parses `y^2 = f(x)` over `F_{p^m}` and stores a new handle in `*out`.
///
/// # Safety
/// `f` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_curve_new(p: u64, m: u32, f: *const c_char, out: *mut *mut CcCurve) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::new(CcStatus::NullPointer, "output pointer is null"));
        }
        let f = text(f, "f")?;
        let curve = HyperellipticCurve::parse(p, m, f)?;
        write(out, Box::into_raw(Box::new(CcCurve { curve })))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `curve` must come from [`cc_curve_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_curve_free(curve: *mut CcCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_curve_genus(curve: *const CcCurve, out: *mut u32) -> CcStatus {
    guard(|| write(out, handle(curve)?.genus() as u32))
}

/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_exists(curve: *const CcCurve, out: *mut bool) -> CcStatus {
    guard(|| write(out, cover_exists(handle(curve)?)))
}

/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_p_rank(curve: *const CcCurve, out: *mut u32) -> CcStatus {
    guard(|| write(out, p_rank(handle(curve)?) as u32))
}

/// Minimal cover degree; `CC_STATUS_NO_COVER` if none exists.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_minimal_degree(curve: *const CcCurve, out: *mut u64) -> CcStatus {
    guard(|| {
        write(out, minimal_degree_linalg(handle(curve)?)?)
    })
}

/// Cover certificate as JSON; `degree = 0` asks for the minimal cover.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_build_cover_json(curve: *const CcCurve, degree: u64, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let c = handle(curve)?;
        let cert = if degree == 0 { build_cover(c)? } else { build_cover_of_degree(c, degree)? };
        let doc = report::document("cover", report::certificate(&cert));
        write_string(out, format!("{doc:#}"))
    })
}

/// Cartier matrix on `Omega(mP)`, `m <= 0`, with classification and p-rank, as JSON.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_cartier_matrix_json(curve: *const CcCurve, m: i64, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let c = handle(curve)?;
        let map = cartier_matrix(c, m)?;
        let body = json!({
            "curve": report::curve(c),
            "matrix": report::matrix(&map),
            "coker_dim": coker_dim(c, m)?,
            "classification": report::classification(classify(c)),
            "p_rank": p_rank(c),
        });
        let doc = report::document("cartier", body);
        write_string(out, format!("{doc:#}"))
    })
}

/// Checks `t = a(x) + b(x) y`. On acceptance writes the degree to
/// `*degree_out` (which may be null); otherwise returns `CC_STATUS_REJECTED`.
///
/// # Safety
/// `curve` must be a live handle; `a` and `b` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_cover(
    curve: *const CcCurve,
    a: *const c_char,
    b: *const c_char,
    degree_out: *mut u64,
) -> CcStatus {
    guard(|| {
        let c = handle(curve)?;
        let k = c.field();
        let t = AffineFunction::new(parse_poly(text(a, "a")?, k, 'x')?, parse_poly(text(b, "b")?, k, 'x')?);
        match c.verify_etale_cover(&t) {
            CoverVerdict::Accepted { degree, .. } => {
                if !degree_out.is_null() {
                    degree_out.write(degree);
                }
                Ok(())
            }
            CoverVerdict::Rejected(r) => Err(Failure::new(CcStatus::Rejected, r.describe())),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or the empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
