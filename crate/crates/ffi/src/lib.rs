//! C ABI over the verification engine.
//!
//! Conventions:
//! - every function returns a [`KsfStatus`]; results come back through out
//!   pointers;
//! - strings handed out are NUL terminated UTF-8 owned by the caller, who
//!   releases them with [`ksf_string_free`];
//! - after a non-OK status, [`ksf_last_error`] describes the failure on the
//!   calling thread;
//! - panics never cross the boundary, they surface as `KSF_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ksforms::clifford::{CliffordRep, Signature};
use ksforms::suite::{self, SuiteConfig};
use ksforms::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsfStatus {
    Ok = 0,
    /// At least one check failed; the report was still produced.
    ChecksFailed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    InvalidJson = 4,
    /// Invalid configuration: signature, degree, spinor cap, unknown name.
    Usage = 5,
    Signature = 6,
    Domain = 7,
    Degree = 8,
    Arithmetic = 9,
    Internal = 10,
}

impl From<&Error> for KsfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Usage(_) => KsfStatus::Usage,
            Error::Signature(_) => KsfStatus::Signature,
            Error::Domain(_) | Error::NotApplicable(_) => KsfStatus::Domain,
            Error::Degree(_) => KsfStatus::Degree,
            Error::DivisionByZero | Error::Shape(_) | Error::Parse(_) => KsfStatus::Arithmetic,
        }
    }
}

/// Opaque handle to a Clifford module representation.
pub struct KsfRep {
    rep: CliffordRep,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(KsfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(KsfStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<KsfStatus, Failure>) -> KsfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            KsfStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(KsfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(KsfStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn out_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(KsfStatus::Internal, "output contains NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(KsfStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn parse_config(json: &str) -> Result<SuiteConfig, Failure> {
    serde_json::from_str(json).map_err(|e| Failure(KsfStatus::InvalidJson, e.to_string()))
}

/// Builds the representation for signature `(n_plus, n_minus)` and `eps`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ksf_rep_new(n_plus: usize, n_minus: usize, eps: i8, out: *mut *mut KsfRep) -> KsfStatus {
    guard(|| {
        check_out(out)?;
        let sig = Signature::new(n_plus, n_minus, eps)?;
        let h = Box::new(KsfRep { rep: CliffordRep::build(sig) });
        *out = Box::into_raw(h);
        Ok(KsfStatus::Ok)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `rep` must come from [`ksf_rep_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ksf_rep_free(rep: *mut KsfRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Complex dimension of the spinor module.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ksf_rep_spinor_dim(rep: *const KsfRep, out: *mut usize) -> KsfStatus {
    guard(|| {
        check_out(out)?;
        let r = rep.as_ref().ok_or_else(|| Failure(KsfStatus::NullPointer, "null handle".into()))?;
        *out = r.rep.spinor_dim();
        Ok(KsfStatus::Ok)
    })
}

/// Dimension `n + 1` of the ambient space.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ksf_rep_ambient_dim(rep: *const KsfRep, out: *mut usize) -> KsfStatus {
    guard(|| {
        check_out(out)?;
        let r = rep.as_ref().ok_or_else(|| Failure(KsfStatus::NullPointer, "null handle".into()))?;
        *out = r.rep.ambient_dim();
        Ok(KsfStatus::Ok)
    })
}

/// Runs the suites described by a JSON configuration; missing fields take
/// their defaults. Writes the JSON report to `out_json`. Returns
/// `KSF_STATUS_CHECKS_FAILED` when the report contains failures.
///
/// # Safety
/// `config_json` must be a NUL terminated string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ksf_verify(config_json: *const c_char, out_json: *mut *mut c_char) -> KsfStatus {
    guard(|| {
        check_out(out_json)?;
        let cfg = parse_config(read_str(config_json)?)?;
        let report = suite::run(&cfg)?;
        out_string(out_json, report.to_json())?;
        Ok(if report.all_pass() { KsfStatus::Ok } else { KsfStatus::ChecksFailed })
    })
}

/// Dimension table rows for a JSON configuration, as a JSON array.
///
/// # Safety
/// `config_json` must be a NUL terminated string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ksf_dimensions(config_json: *const c_char, out_json: *mut *mut c_char) -> KsfStatus {
    guard(|| {
        check_out(out_json)?;
        let cfg = parse_config(read_str(config_json)?)?;
        let rows = suite::table_dimensions(&cfg)?;
        out_string(out_json, serde_json::to_string(&rows).expect("rows serialize"))?;
        Ok(KsfStatus::Ok)
    })
}

/// Anchor and formula of a check key or record name.
///
/// # Safety
/// `name` must be a NUL terminated string, `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn ksf_explain(name: *const c_char, out_text: *mut *mut c_char) -> KsfStatus {
    guard(|| {
        check_out(out_text)?;
        out_string(out_text, suite::explain(read_str(name)?)?)?;
        Ok(KsfStatus::Ok)
    })
}

/// Releases a string produced by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ksf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ksf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
