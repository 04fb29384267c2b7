//! C ABI for torsion-forge.
//!
//! Certificates cross the boundary as opaque `TfCertificate` handles. Every
//! function returns a `TfStatus`; on failure `tf_last_error_message` holds a
//! description for the calling thread. Strings returned through `out`
//! parameters are owned by the caller and released with `tf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torsion_forge::certify::{reachability_verdict, verify_certificate, TorsionCertificate};
use torsion_forge::cli::oracle_order;
use torsion_forge::constructors::{
    construct, construct_for, search_limit_from_env, ConstructionRequest,
};
use torsion_forge::Error;

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed text, JSON or UTF-8.
    Parse = 2,
    /// Invalid (n, d, m) or other argument values.
    InvalidInput = 3,
    /// The request is outside what the constructors or oracle support.
    Precondition = 4,
    SearchExhausted = 5,
    /// The certificate did not verify.
    VerifyFailed = 6,
    /// The oracle found no order within the bound.
    NotFound = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque certificate handle.
pub struct TfCertificate {
    inner: TorsionCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> TfStatus {
    match err {
        Error::InvalidInput(_) | Error::Gcd { .. } | Error::Order { .. } => TfStatus::InvalidInput,
        Error::Parse(_) => TfStatus::Parse,
        Error::SearchExhausted { .. } => TfStatus::SearchExhausted,
        Error::Internal(_) | Error::Divisibility(_) => TfStatus::Internal,
        Error::Degree { .. }
        | Error::RepeatedRoot
        | Error::ZeroOrdinate(_)
        | Error::Hypothesis(_)
        | Error::Precondition(_)
        | Error::UnsupportedField(_)
        | Error::UnsupportedDegree(_) => TfStatus::Precondition,
    }
}

struct Fail(TfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), format!("{}: {e}", e.kind()))
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            TfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside torsion-forge");
            TfStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(TfStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(TfStatus::Parse, format!("{name} is not UTF-8: {e}")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(TfStatus::Internal, "output contains a NUL byte".into()))
}

unsafe fn write_handle(out: *mut *mut TfCertificate, cert: TorsionCertificate) {
    *out = Box::into_raw(Box::new(TfCertificate { inner: cert }));
}

/// Writes the verdict for `(n, d, m)` as a JSON string to `*out_json`.
///
/// # Safety
/// `out_json` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn tf_verdict(
    n: u64,
    d: u64,
    m: u64,
    out_json: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        non_null(out_json, "out_json")?;
        let verdict = reachability_verdict(n, d, m)?;
        let text =
            serde_json::to_string(&verdict).map_err(|e| Fail(TfStatus::Internal, e.to_string()))?;
        *out_json = into_c_string(text)?;
        Ok(())
    })
}

/// Builds a curve with a point of order `m` using the family the verdict
/// engine selects. The search limit comes from `TORSION_FORGE_SEARCH_LIMIT`
/// or the default.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn tf_construct(
    n: u64,
    d: u64,
    m: u64,
    out: *mut *mut TfCertificate,
) -> TfStatus {
    guard(|| {
        non_null(out, "out")?;
        let built = construct_for(n, d, m, search_limit_from_env()?)?;
        write_handle(out, built.certificate);
        Ok(())
    })
}

/// Builds a certificate from a JSON construction request such as
/// `{"n":5,"d":2,"style":"n-plus-ed","e":1}`.
///
/// # Safety
/// `request_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_construct_request(
    request_json: *const c_char,
    out: *mut *mut TfCertificate,
) -> TfStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(request_json, "request_json")?;
        let req: ConstructionRequest =
            serde_json::from_str(text).map_err(|e| Fail(TfStatus::Parse, e.to_string()))?;
        let built = construct(&req)?;
        write_handle(out, built.certificate);
        Ok(())
    })
}

/// Parses a certificate. Parsing does not verify it.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_from_json(
    json: *const c_char,
    out: *mut *mut TfCertificate,
) -> TfStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(json, "json")?;
        let cert = TorsionCertificate::from_json(text)?;
        write_handle(out, cert);
        Ok(())
    })
}

/// Serializes a certificate to JSON.
///
/// # Safety
/// `cert` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_to_json(
    cert: *const TfCertificate,
    out_json: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out_json, "out_json")?;
        *out_json = into_c_string((*cert).inner.to_json())?;
        Ok(())
    })
}

/// Returns `TF_STATUS_OK` if the certificate verifies and
/// `TF_STATUS_VERIFY_FAILED` otherwise, with the failed check in the last
/// error message.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_verify(cert: *const TfCertificate) -> TfStatus {
    guard(|| {
        non_null(cert, "cert")?;
        let report = verify_certificate(&(*cert).inner);
        if report.valid {
            Ok(())
        } else {
            Err(Fail(TfStatus::VerifyFailed, report.failure_summary()))
        }
    })
}

/// Writes the claimed order `m` of the certificate's point.
///
/// # Safety
/// `cert` must be a live handle and `out_m` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_order(
    cert: *const TfCertificate,
    out_m: *mut u64,
) -> TfStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out_m, "out_m")?;
        *out_m = (*cert).inner.m;
        Ok(())
    })
}

/// Computes the order of the point with divisor arithmetic (d = 2 only),
/// trying multiples up to `bound`. Returns `TF_STATUS_NOT_FOUND` when no
/// multiple up to `bound` is the identity.
///
/// # Safety
/// `cert` must be a live handle and `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_oracle_order(
    cert: *const TfCertificate,
    bound: u64,
    out_order: *mut u64,
) -> TfStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out_order, "out_order")?;
        match oracle_order(&(*cert).inner, bound)? {
            Some(k) => {
                *out_order = k;
                Ok(())
            }
            None => Err(Fail(TfStatus::NotFound, format!("no order up to {bound}"))),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `cert` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_certificate_free(cert: *mut TfCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(
            status_of(&Error::Gcd { n: 4, d: 2, gcd: 2 }),
            TfStatus::InvalidInput
        );
        assert_eq!(
            status_of(&Error::Hypothesis("x".into())),
            TfStatus::Precondition
        );
        assert_eq!(
            status_of(&Error::SearchExhausted { tried: 3 }),
            TfStatus::SearchExhausted
        );
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, TfStatus::Panic);
        assert!(!tf_last_error_message().is_null());
    }

    #[test]
    fn success_clears_error() {
        set_error("stale");
        assert_eq!(guard(|| Ok(())), TfStatus::Ok);
        assert!(tf_last_error_message().is_null());
    }
}
