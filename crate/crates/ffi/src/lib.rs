//! C ABI for permod.
//!
//! Fields and groups are opaque handles created by `*_new`/`*_parse` and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PermodStatus`]; on failure the message is available from
//! [`permod_last_error`] on the same thread. Reports come back as
//! NUL-terminated JSON strings owned by the caller and released with
//! [`permod_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use permod_core::cli::{parse_elems, parse_field, parse_poly, FieldSpec, ParseElem};
use permod_core::ff::FiniteField;
use permod_core::permgrp::{parse_group, PermGroup};
use permod_core::permod::{verify_inequalities, ModVector};
use permod_core::uncertainty::{
    chebotarev_verify, gcd_criterion_checked, minimal_table, SearchMode,
};
use permod_core::{Error, Rationals};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermodStatus {
    Ok = 0,
    /// A proven bound or internal invariant failed.
    InvariantViolation = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// Input is well formed but a precondition of the operation fails.
    Precondition = 4,
    NullPointer = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermodSearchMode {
    Factors = 0,
    Divisors = 1,
    Multiples = 2,
}

/// A coefficient field: GF(q) or Q.
pub struct PermodField(FieldSpec);

/// A permutation group on {0, ..., n-1}.
pub struct PermodGroup(Arc<PermGroup>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PermodStatus {
    match e {
        Error::InvariantViolation(_) => PermodStatus::InvariantViolation,
        Error::Parse(_) => PermodStatus::Parse,
        Error::Io(_) => PermodStatus::Io,
        Error::Precondition(_) | Error::Intransitive | Error::CapExceeded(_) => {
            PermodStatus::Precondition
        }
        _ => PermodStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (PermodStatus, String)>) -> PermodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PermodStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PermodStatus::Panic
        }
    }
}

fn core<T>(r: permod_core::Result<T>) -> Result<T, (PermodStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PermodStatus, String) {
    (PermodStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PermodStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PermodStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (PermodStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, json: String) -> Result<(), (PermodStatus, String)> {
    let s = CString::new(json).expect("JSON has no NUL");
    write_out(out, s.into_raw())
}

fn finite(f: &PermodField) -> Result<&FiniteField, (PermodStatus, String)> {
    match &f.0 {
        FieldSpec::Finite(f) => Ok(f),
        FieldSpec::Rational => Err((
            PermodStatus::InvalidArgument,
            "a finite field is required".into(),
        )),
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn permod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn permod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn permod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a field spec: `p`, `q`, `p^k` or `Q`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_field_new(
    spec: *const c_char,
    out: *mut *mut PermodField,
) -> PermodStatus {
    guard(|| {
        let f = core(parse_field(str_arg(spec, "spec")?))?;
        write_out(out, Box::into_raw(Box::new(PermodField(f))))
    })
}

/// Field order, or 0 for Q.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn permod_field_order(field: *const PermodField) -> u64 {
    match field.as_ref().map(|f| &f.0) {
        Some(FieldSpec::Finite(f)) => f.order() as u64,
        _ => 0,
    }
}

/// # Safety
/// `field` must be NULL or a handle from [`permod_field_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn permod_field_free(field: *mut PermodField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parses a group in the text format: the degree on the first line, then
/// one generator per line as the list of images.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_group_parse(
    text: *const c_char,
    out: *mut *mut PermodGroup,
) -> PermodStatus {
    guard(|| {
        let g = core(parse_group(str_arg(text, "text")?))?;
        write_out(out, Box::into_raw(Box::new(PermodGroup(Arc::new(g)))))
    })
}

/// Number of points, or 0 for NULL.
///
/// # Safety
/// `group` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn permod_group_degree(group: *const PermodGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.degree())
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_group_order(
    group: *const PermodGroup,
    out: *mut u64,
) -> PermodStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        write_out(out, core(g.0.order())? as u64)
    })
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_group_is_primitive(
    group: *const PermodGroup,
    out: *mut bool,
) -> PermodStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        write_out(out, g.0.is_transitive() && core(g.0.is_primitive())?)
    })
}

/// # Safety
/// `group` must be NULL or a handle from [`permod_group_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn permod_group_free(group: *mut PermodGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

fn verify_json<F: ParseElem>(
    g: &Arc<PermGroup>,
    field: F,
    vector: &str,
) -> Result<String, (PermodStatus, String)> {
    let coeffs = core(parse_elems(&field, vector))?;
    let v = core(ModVector::new(g.clone(), field, coeffs))?;
    let r = core(verify_inequalities(&v))?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

/// Evaluates both inequalities for the comma-separated `vector` and writes
/// the report as JSON. A broken bound is reported in the JSON, not as a
/// status.
///
/// # Safety
/// Handles must be live, `vector` NUL-terminated and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn permod_verify(
    group: *const PermodGroup,
    field: *const PermodField,
    vector: *const c_char,
    out_json: *mut *mut c_char,
) -> PermodStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let f = field.as_ref().ok_or_else(|| null("field"))?;
        let vector = str_arg(vector, "vector")?;
        let json = match &f.0 {
            FieldSpec::Finite(f) => verify_json(&g.0, f.clone(), vector)?,
            FieldSpec::Rational => verify_json(&g.0, Rationals, vector)?,
        };
        write_json(out_json, json)
    })
}

/// The gcd criterion for `poly` (ascending coefficients) in GF(q)[Z_p].
///
/// # Safety
/// `field` must be live, `poly` NUL-terminated and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn permod_criterion(
    p: u64,
    field: *const PermodField,
    poly: *const c_char,
    out_json: *mut *mut c_char,
) -> PermodStatus {
    guard(|| {
        let f = finite(field.as_ref().ok_or_else(|| null("field"))?)?;
        let poly = core(parse_poly(str_arg(poly, "poly")?, f))?;
        let r = core(gcd_criterion_checked(&poly, p))?;
        write_json(out_json, serde_json::to_string(&r).expect("serializable"))
    })
}

/// Checks every minor of size at most `max_minor` (0 for all) of the
/// p x p Fourier matrix over Q(zeta_p). A vanishing minor yields
/// `PERMOD_STATUS_INVARIANT_VIOLATION` with the report still written.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_chebotarev(
    p: u64,
    max_minor: usize,
    jobs: usize,
    out_json: *mut *mut c_char,
) -> PermodStatus {
    guard(|| {
        let max = (max_minor > 0).then_some(max_minor);
        let r = core(chebotarev_verify(p, max, jobs.max(1)))?;
        write_json(out_json, serde_json::to_string(&r).expect("serializable"))?;
        if r.failures.is_empty() {
            Ok(())
        } else {
            Err((PermodStatus::InvariantViolation, "a minor vanishes".into()))
        }
    })
}

/// Minimal fields GF(q), q <= `q_max`, with t(f) + d(f) <= p, for each of
/// the `len` primes.
///
/// # Safety
/// `primes` must point to `len` values; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn permod_table(
    primes: *const u64,
    len: usize,
    q_max: u64,
    mode: PermodSearchMode,
    out_json: *mut *mut c_char,
) -> PermodStatus {
    guard(|| {
        if primes.is_null() && len > 0 {
            return Err(null("primes"));
        }
        let primes = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(primes, len)
        };
        let mode = match mode {
            PermodSearchMode::Factors => SearchMode::Factors,
            PermodSearchMode::Divisors => SearchMode::Divisors,
            PermodSearchMode::Multiples => SearchMode::Multiples,
        };
        let rows = core(minimal_table(primes, q_max, mode))?;
        write_json(
            out_json,
            serde_json::to_string(&rows).expect("serializable"),
        )
    })
}
