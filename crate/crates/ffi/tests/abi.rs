use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ksforms_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ksf_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = ksf_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

#[test]
fn rep_handle_lifecycle() {
    unsafe {
        let mut h: *mut KsfRep = ptr::null_mut();
        assert_eq!(ksf_rep_new(3, 0, 1, &mut h), KsfStatus::Ok);
        let (mut s, mut m) = (0usize, 0usize);
        assert_eq!(ksf_rep_spinor_dim(h, &mut s), KsfStatus::Ok);
        assert_eq!(ksf_rep_ambient_dim(h, &mut m), KsfStatus::Ok);
        assert_eq!((s, m), (4, 4));
        ksf_rep_free(h);
        ksf_rep_free(ptr::null_mut());
    }
}

#[test]
fn bad_signature_sets_error() {
    unsafe {
        let mut h: *mut KsfRep = ptr::null_mut();
        assert_eq!(ksf_rep_new(3, 0, 2, &mut h), KsfStatus::Signature);
        assert!(h.is_null());
        assert!(last_error().is_some());
        assert_eq!(ksf_rep_spinor_dim(ptr::null(), &mut 0), KsfStatus::NullPointer);
    }
}

#[test]
fn verify_round_trip() {
    let cfg = CString::new(r#"{"n_plus":2,"eps":-1,"degrees":[1],"suites":["clifford","solutions"],"seed":5}"#).unwrap();
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ksf_verify(cfg.as_ptr(), &mut out), KsfStatus::Ok);
        assert!(last_error().is_none());
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["spec_version"], "1");
        assert_eq!(v["failed"], 0);
        assert!(!v["records"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_rejects_bad_input() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        let junk = CString::new("{not json").unwrap();
        assert_eq!(ksf_verify(junk.as_ptr(), &mut out), KsfStatus::InvalidJson);
        let bad = CString::new(r#"{"n_plus":1}"#).unwrap();
        assert_eq!(ksf_verify(bad.as_ptr(), &mut out), KsfStatus::Usage);
        assert!(last_error().unwrap().contains("usage"));
        assert_eq!(ksf_verify(ptr::null(), &mut out), KsfStatus::NullPointer);
        assert_eq!(ksf_verify(bad.as_ptr(), ptr::null_mut()), KsfStatus::NullPointer);
        assert!(out.is_null());
    }
}

#[test]
fn dimensions_and_explain() {
    unsafe {
        let cfg = CString::new(r#"{"n_plus":2,"degrees":[0]}"#).unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ksf_dimensions(cfg.as_ptr(), &mut out), KsfStatus::Ok);
        let rows: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        for r in rows.as_array().unwrap() {
            assert_eq!(r["rank"], r["bound"]);
        }
        let name = CString::new("clfclv").unwrap();
        assert_eq!(ksf_explain(name.as_ptr(), &mut out), KsfStatus::Ok);
        assert!(take(out).contains("(2p − n)Φ"));
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(ksf_explain(bogus.as_ptr(), &mut out), KsfStatus::Usage);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ksforms.h")).unwrap();
    for f in [
        "ksf_rep_new",
        "ksf_rep_free",
        "ksf_rep_spinor_dim",
        "ksf_rep_ambient_dim",
        "ksf_verify",
        "ksf_dimensions",
        "ksf_explain",
        "ksf_string_free",
        "ksf_last_error",
        "KSF_STATUS_CHECKS_FAILED",
        "typedef struct KsfRep KsfRep",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
}
