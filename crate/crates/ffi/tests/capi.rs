use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use cdgl_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    cdgl_string_free(s);
    out
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn model(json: &str, trunc: usize) -> *mut CdglModel {
    let mut m = ptr::null_mut();
    assert_eq!(cdgl_model_build(c(json).as_ptr(), trunc, &mut m), CdglStatus::Ok);
    m
}

unsafe fn element(m: *const CdglModel, expr: &str) -> *mut CdglElement {
    let mut e = ptr::null_mut();
    assert_eq!(cdgl_element_parse(m, c(expr).as_ptr(), &mut e), CdglStatus::Ok);
    e
}

#[test]
fn build_inspect_roundtrip() {
    unsafe {
        let m = model(r#"{"vertices":[0,1,2],"facets":[[0,1],[1,2]]}"#, 4);
        let mut n = 0usize;
        assert_eq!(cdgl_model_generator_count(m, &mut n), CdglStatus::Ok);
        assert_eq!(n, 5);
        let mut clean = false;
        assert_eq!(cdgl_model_d_squared_clean(m, &mut clean), CdglStatus::Ok);
        assert!(clean);

        let mut json = ptr::null_mut();
        assert_eq!(cdgl_model_to_json(m, &mut json), CdglStatus::Ok);
        let json = take(json);
        let mut back = ptr::null_mut();
        assert_eq!(cdgl_model_load(c(&json).as_ptr(), &mut back), CdglStatus::Ok);
        let mut again = ptr::null_mut();
        cdgl_model_to_json(back, &mut again);
        assert_eq!(take(again), json);
        cdgl_model_free(back);
        cdgl_model_free(m);
    }
}

#[test]
fn elements_gauge_and_classify() {
    unsafe {
        let m = model(r#"{"vertices":[0,1],"facets":[[0,1]]}"#, 4);
        let a = element(m, "s1");
        let mut is_mc = false;
        assert_eq!(cdgl_element_is_mc(m, a, &mut is_mc), CdglStatus::Ok);
        assert!(is_mc);

        let g = element(m, "s0_1");
        let mut moved = ptr::null_mut();
        assert_eq!(cdgl_gauge(m, g, a, &mut moved), CdglStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(cdgl_classify(m, moved, -1, &mut report), CdglStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["verdict"]["component"], 0);
        assert_eq!(report["verified"], true);

        let mut pi0 = ptr::null_mut();
        assert_eq!(cdgl_pi0(m, &mut pi0), CdglStatus::Ok);
        let pi0: serde_json::Value = serde_json::from_str(&take(pi0)).unwrap();
        assert_eq!(pi0["components"], 1);
        assert_eq!(pi0["classes"], 2);
        assert_eq!(pi0["pass"], true);

        for e in [a, g, moved] {
            cdgl_element_free(e);
        }
        cdgl_model_free(m);
    }
}

#[test]
fn bch_and_bernoulli() {
    unsafe {
        let m = model(r#"{"vertices":[0,1,2],"facets":[[0,1],[1,2]]}"#, 2);
        let x = element(m, "s0_1");
        let y = element(m, "s1_2");
        let mut z = ptr::null_mut();
        assert_eq!(cdgl_bch(x, y, &mut z), CdglStatus::Ok);
        let mut s = ptr::null_mut();
        cdgl_element_to_string(z, &mut s);
        assert_eq!(take(s), "s0_1 + s1_2 + 1/2*[s0_1,s1_2]");
        for e in [x, y, z] {
            cdgl_element_free(e);
        }
        cdgl_model_free(m);

        let mut b = ptr::null_mut();
        assert_eq!(cdgl_bernoulli(12, &mut b), CdglStatus::Ok);
        assert_eq!(take(b), "-691/2730");
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        let status = cdgl_model_build(c(r#"{"vertices":[0],"facets":[[0,3]]}"#).as_ptr(), 3, &mut m);
        assert_eq!(status, CdglStatus::InvalidInput);
        assert!(m.is_null());
        assert!(take(cdgl_last_error_message()).contains("invalid complex"));

        assert_eq!(cdgl_model_build(ptr::null(), 3, &mut m), CdglStatus::NullPointer);
        assert_eq!(cdgl_model_build(c("{}").as_ptr(), 3, ptr::null_mut()), CdglStatus::InvalidInput);

        let m = model(r#"{"vertices":[0],"facets":[[0]]}"#, 3);
        let mut e = ptr::null_mut();
        assert_eq!(cdgl_element_parse(m, c("s0 + nope").as_ptr(), &mut e), CdglStatus::Parse);
        assert_eq!(cdgl_element_parse(m, c("[s0").as_ptr(), &mut e), CdglStatus::Parse);

        let twice = element(m, "2*s0");
        let mut report = ptr::null_mut();
        let status = cdgl_classify(m, twice, -1, &mut report);
        assert_eq!(status, CdglStatus::NotMaurerCartan);

        // success clears the message
        let ok = element(m, "s0");
        assert!(cdgl_last_error_message().is_null());
        cdgl_element_free(ok);
        cdgl_element_free(twice);
        cdgl_model_free(m);

        cdgl_model_free(ptr::null_mut());
        cdgl_element_free(ptr::null_mut());
        cdgl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/cdgl.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["cdgl_model_build", "cdgl_classify", "cdgl_last_error_message", "CDGL_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-std=c99", "-x", "c", header]).output() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
