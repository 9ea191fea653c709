use std::ffi::{CStr, CString};
use std::ptr;

use permod::*;

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { permod_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

fn last_error() -> String {
    let p = permod_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn field(spec: &str) -> *mut PermodField {
    let spec = CString::new(spec).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { permod_field_new(spec.as_ptr(), &mut f) },
        PermodStatus::Ok
    );
    f
}

fn group(text: &str) -> *mut PermodGroup {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { permod_group_parse(text.as_ptr(), &mut g) },
        PermodStatus::Ok
    );
    g
}

#[test]
fn field_handles() {
    let f = field("2^3");
    assert_eq!(unsafe { permod_field_order(f) }, 8);
    unsafe { permod_field_free(f) };
    let q = field("Q");
    assert_eq!(unsafe { permod_field_order(q) }, 0);
    unsafe { permod_field_free(q) };

    let bad = CString::new("6").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { permod_field_new(bad.as_ptr(), &mut out) },
        PermodStatus::Parse
    );
    assert!(out.is_null());
    assert!(last_error().contains('6'));
}

#[test]
fn group_handles() {
    let g = group("6\n1 2 3 4 5 0\n");
    assert_eq!(unsafe { permod_group_degree(g) }, 6);
    let mut order = 0u64;
    assert_eq!(
        unsafe { permod_group_order(g, &mut order) },
        PermodStatus::Ok
    );
    assert_eq!(order, 6);
    let mut prim = true;
    assert_eq!(
        unsafe { permod_group_is_primitive(g, &mut prim) },
        PermodStatus::Ok
    );
    assert!(!prim);
    unsafe { permod_group_free(g) };

    let text = CString::new("3\n0 0 1\n").unwrap();
    let mut out = ptr::null_mut();
    assert_ne!(
        unsafe { permod_group_parse(text.as_ptr(), &mut out) },
        PermodStatus::Ok
    );
    assert!(out.is_null());
}

#[test]
fn verify_block_vector() {
    let g = group("6\n1 2 3 4 5 0\n");
    let f = field("2");
    let v = CString::new("1,0,0,1,0,0").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_verify(g, f, v.as_ptr(), &mut json) },
        PermodStatus::Ok
    );
    let r = take(json);
    assert_eq!(r["t"], 2);
    assert_eq!(r["d"], 3);
    assert_eq!(r["holds_B"], true);
    assert_eq!(r["case"], "block-equality");

    let zero = CString::new("0,0,0,0,0,0").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_verify(g, f, zero.as_ptr(), &mut json) },
        PermodStatus::InvalidArgument
    );
    unsafe {
        permod_field_free(f);
        permod_group_free(g);
    }
}

#[test]
fn criterion_worked_example() {
    let f = field("5");
    let poly = CString::new("2,2,4,3,0,0,1").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_criterion(11, f, poly.as_ptr(), &mut json) },
        PermodStatus::Ok
    );
    let r = take(json);
    assert_eq!(r["h"], "X^5 + 2X^4 + 4X^3 + X^2 + X + 4");
    assert_eq!(r["t_f"], 5);
    assert_eq!(r["fails"], true);
    unsafe { permod_field_free(f) };
}

#[test]
fn chebotarev_and_table() {
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_chebotarev(7, 0, 2, &mut json) },
        PermodStatus::Ok
    );
    let r = take(json);
    assert_eq!(r["minors_checked"], 3431);
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);

    let primes = [7u64, 11];
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_table(primes.as_ptr(), 2, 16, PermodSearchMode::Factors, &mut json) },
        PermodStatus::Ok
    );
    let r = take(json);
    assert_eq!(r[0]["fields"], serde_json::json!([2]));
    assert_eq!(r[1]["fields"], serde_json::json!([3]));
}

#[test]
fn null_arguments() {
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { permod_verify(ptr::null(), ptr::null(), ptr::null(), &mut json) },
        PermodStatus::NullPointer
    );
    assert!(last_error().contains("null"));
    unsafe { permod_string_free(ptr::null_mut()) };
    let v = unsafe { CStr::from_ptr(permod_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
