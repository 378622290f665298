//! C ABI over the crtool library: opaque model handles, string-based
//! reports, and integer status codes, so other languages can bind without
//! seeing any Rust types.
//!
//! Every returned string is allocated by this library and must be released
//! with `crt_string_free`. Errors set a thread-local message retrievable
//! with `crt_last_error`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};

use crtool::cli::{run_command, RunOpts, Verdict};
use crtool::hypersurface::HSModel;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Schema, parse, or computation error; see `crt_last_error`.
    Error = 3,
    /// A panic was caught at the boundary; see `crt_last_error`.
    Panic = 4,
}

/// Opaque hypersurface model handle.
pub struct CrtModel {
    inner: HSModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CrtStatus> {
    if ptr.is_null() {
        return Err(CrtStatus::NullPointer);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| CrtStatus::InvalidUtf8)
}

fn out_string(s: String, out: *mut *mut c_char) -> CrtStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CrtStatus::Ok
        }
        Err(_) => {
            set_error("report contained an interior NUL byte".into());
            CrtStatus::Error
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn crt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent error on this thread, or NULL. The caller
/// frees the returned string with `crt_string_free`.
#[no_mangle]
pub extern "C" fn crt_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned by a crt_ function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn crt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a model from its JSON spec. On success writes an owned handle to
/// `out`; release it with `crt_model_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crt_model_parse(
    json: *const c_char,
    out: *mut *mut CrtModel,
) -> CrtStatus {
    clear_error();
    if out.is_null() {
        return CrtStatus::NullPointer;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let result = catch_unwind(|| -> Result<HSModel, String> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        HSModel::from_json(&value).map_err(|e| e.to_string())
    });
    match result {
        Ok(Ok(model)) => {
            *out = Box::into_raw(Box::new(CrtModel { inner: model }));
            CrtStatus::Ok
        }
        Ok(Err(msg)) => {
            set_error(msg);
            CrtStatus::Error
        }
        Err(_) => {
            set_error("panic in crt_model_parse".into());
            CrtStatus::Panic
        }
    }
}

/// Releases a model handle. NULL is ignored.
///
/// # Safety
/// `model` must come from `crt_model_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn crt_model_free(model: *mut CrtModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Serializes a model back to its canonical JSON spec.
///
/// # Safety
/// `model` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn crt_model_to_json(
    model: *const CrtModel,
    out: *mut *mut c_char,
) -> CrtStatus {
    clear_error();
    if model.is_null() || out.is_null() {
        return CrtStatus::NullPointer;
    }
    let m = &(*model).inner;
    match catch_unwind(AssertUnwindSafe(|| m.to_json().to_string())) {
        Ok(json) => out_string(json, out),
        Err(_) => {
            set_error("panic in crt_model_to_json".into());
            CrtStatus::Panic
        }
    }
}

/// Runs the 2-nondegeneracy check on a model. `out_pass` receives 1 when
/// all three certificates hold, else 0; `out_json` the full report.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crt_model_check2nd(
    model: *const CrtModel,
    out_json: *mut *mut c_char,
    out_pass: *mut c_int,
) -> CrtStatus {
    clear_error();
    if model.is_null() || out_json.is_null() || out_pass.is_null() {
        return CrtStatus::NullPointer;
    }
    let m = &(*model).inner;
    let result = catch_unwind(AssertUnwindSafe(|| {
        crtool::levi::check_2nondegeneracy(m).map(|rep| (rep.to_json().to_string(), rep.passed()))
    }));
    match result {
        Ok(Ok((json, passed))) => {
            *out_pass = passed as c_int;
            out_string(json, out_json)
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            CrtStatus::Error
        }
        Err(_) => {
            set_error("panic in crt_model_check2nd".into());
            CrtStatus::Panic
        }
    }
}

/// Runs any CLI command against a JSON task spec. `degree < 0` selects the
/// default bound; `out_verdict` receives 0 for pass, 1 for fail, 2 for
/// informational reports.
///
/// # Safety
/// `command` and `spec_json` must be NUL-terminated strings; the out
/// pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crt_run(
    command: *const c_char,
    spec_json: *const c_char,
    degree: c_int,
    seed: u64,
    out_json: *mut *mut c_char,
    out_verdict: *mut c_int,
) -> CrtStatus {
    clear_error();
    if out_json.is_null() || out_verdict.is_null() {
        return CrtStatus::NullPointer;
    }
    let cmd = match read_str(command) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spec_text = match read_str(spec_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let result = catch_unwind(|| -> Result<(String, Verdict), String> {
        let spec: serde_json::Value =
            serde_json::from_str(spec_text).map_err(|e| format!("invalid JSON: {e}"))?;
        let opts = RunOpts {
            degree: if degree < 0 {
                None
            } else {
                Some(degree as usize)
            },
            seed,
        };
        let (report, verdict) = run_command(cmd, &spec, &opts).map_err(|e| e.to_string())?;
        Ok((
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?,
            verdict,
        ))
    });
    match result {
        Ok(Ok((json, verdict))) => {
            *out_verdict = match verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Info => 2,
            };
            out_string(json, out_json)
        }
        Ok(Err(msg)) => {
            set_error(msg);
            CrtStatus::Error
        }
        Err(_) => {
            set_error("panic in crt_run".into());
            CrtStatus::Panic
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        crt_string_free(ptr);
        s
    }

    #[test]
    fn model_parse_round_trip() {
        let spec = cstr(
            r#"{"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "Zero", "order": 4}}]}"#,
        );
        unsafe {
            let mut handle: *mut CrtModel = std::ptr::null_mut();
            assert_eq!(crt_model_parse(spec.as_ptr(), &mut handle), CrtStatus::Ok);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(crt_model_to_json(handle, &mut out), CrtStatus::Ok);
            let json = take_string(out);
            assert!(json.contains("\"n\":5"));
            crt_model_free(handle);
        }
    }

    #[test]
    fn parse_errors_set_message() {
        let bad = cstr(r#"{"n": 4, "blocks": [{"size": 2, "sign": 1}, {"size": 2, "sign": 1}]}"#);
        unsafe {
            let mut handle: *mut CrtModel = std::ptr::null_mut();
            assert_eq!(crt_model_parse(bad.as_ptr(), &mut handle), CrtStatus::Error);
            let err = crt_last_error();
            assert!(!err.is_null());
            let msg = take_string(err);
            assert!(msg.contains("block sizes"), "{msg}");
        }
    }

    #[test]
    fn null_pointers_rejected() {
        unsafe {
            let mut handle: *mut CrtModel = std::ptr::null_mut();
            assert_eq!(
                crt_model_parse(std::ptr::null(), &mut handle),
                CrtStatus::NullPointer
            );
            assert_eq!(
                crt_model_parse(cstr("{}").as_ptr(), std::ptr::null_mut()),
                CrtStatus::NullPointer
            );
        }
    }

    #[test]
    fn check2nd_through_the_boundary() {
        let spec = cstr(
            r#"{"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "Zero", "order": 4}}]}"#,
        );
        unsafe {
            let mut handle: *mut CrtModel = std::ptr::null_mut();
            assert_eq!(crt_model_parse(spec.as_ptr(), &mut handle), CrtStatus::Ok);
            let mut out: *mut c_char = std::ptr::null_mut();
            let mut pass: c_int = -1;
            assert_eq!(
                crt_model_check2nd(handle, &mut out, &mut pass),
                CrtStatus::Ok
            );
            assert_eq!(pass, 1);
            let json = take_string(out);
            assert!(json.contains("\"levi_degenerate\":true"));
            crt_model_free(handle);
        }
    }

    #[test]
    fn run_command_verdicts() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            let mut verdict: c_int = -1;
            let status = crt_run(
                cstr("homogeneous").as_ptr(),
                cstr(r#"{"f": {"family": "TypeV", "order": 12}}"#).as_ptr(),
                -1,
                0,
                &mut out,
                &mut verdict,
            );
            assert_eq!(status, CrtStatus::Ok);
            assert_eq!(verdict, 0);
            let json = take_string(out);
            assert!(json.contains("\"c\": \"3/2\""), "{json}");

            let status = crt_run(
                cstr("enumerate").as_ptr(),
                cstr(r#"{"n": 7}"#).as_ptr(),
                -1,
                0,
                &mut out,
                &mut verdict,
            );
            assert_eq!(status, CrtStatus::Ok);
            assert_eq!(verdict, 2);
            take_string(out);

            let status = crt_run(
                cstr("nope").as_ptr(),
                cstr("{}").as_ptr(),
                -1,
                0,
                &mut out,
                &mut verdict,
            );
            assert_eq!(status, CrtStatus::Error);
            let err = take_string(crt_last_error());
            assert!(err.contains("unknown command"), "{err}");
        }
    }

    #[test]
    fn version_is_static() {
        unsafe {
            let v = CStr::from_ptr(crt_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
    }
}
