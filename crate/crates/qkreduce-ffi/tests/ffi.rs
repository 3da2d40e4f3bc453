use std::ffi::{CStr, CString};
use std::ptr;

use qkreduce_ffi::*;

const THETA_EX: &str = "1,0,1,1/0,1,1,1/1,1,0,1";
const OMEGA_EX: &str = "1,2,3/1,3,6";

fn parse(lit: &str) -> *mut QkMatrix {
    let c = CString::new(lit).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qk_matrix_parse(c.as_ptr(), &mut m) }, QkStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qk_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn determinants_of_theta_example() {
    let m = parse(THETA_EX);
    let mut fam = QkFamily::Omega;
    assert_eq!(unsafe { qk_matrix_family(m, &mut fam) }, QkStatus::Ok);
    assert_eq!(fam, QkFamily::Theta);

    let mut vals = [0i64; 12];
    let mut len = 0usize;
    let mut adm = false;
    let st = unsafe { qk_matrix_determinants(m, vals.as_mut_ptr(), vals.len(), &mut len, &mut adm) };
    assert_eq!(st, QkStatus::Ok);
    assert_eq!(len, 12);
    assert!(adm);
    assert_eq!(&vals[..4], &[-2, -1, 1, -1]);
    unsafe { qk_matrix_free(m) };
}

#[test]
fn short_buffer_reports_needed_length() {
    let m = parse(OMEGA_EX);
    let mut vals = [0i64; 2];
    let mut len = 0usize;
    let mut adm = false;
    let st = unsafe { qk_matrix_determinants(m, vals.as_mut_ptr(), vals.len(), &mut len, &mut adm) };
    assert_eq!(st, QkStatus::BufferTooSmall);
    assert_eq!(len, 11);
    assert_eq!(vals, [0, 0]);
    unsafe { qk_matrix_free(m) };
}

#[test]
fn parse_errors_set_status_and_message() {
    let c = CString::new("1,2/x").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qk_matrix_parse(c.as_ptr(), &mut m) }, QkStatus::Parse);
    assert!(m.is_null());
    assert!(last_error().contains("parse"));
    assert_eq!(unsafe { qk_matrix_parse(ptr::null(), &mut m) }, QkStatus::NullPointer);
}

#[test]
fn isotropy_order_is_abs_det() {
    let rows = [2i64, 1, 0, 0, 3, 1, 1, 0, 4];
    let mut order = 0u64;
    assert_eq!(unsafe { qk_isotropy_order(rows.as_ptr(), 3, &mut order) }, QkStatus::Ok);
    assert_eq!(order, 25);
    let singular = [1i64, 2, 2, 4];
    assert_eq!(unsafe { qk_isotropy_order(singular.as_ptr(), 2, &mut order) }, QkStatus::Singular);
}

#[test]
fn inadmissible_catalog_is_rejected() {
    let m = parse("1,1,1/1,1,1");
    let mut c = ptr::null_mut();
    let st = unsafe { qk_catalog_build(m, QkLevel::Twistor, 1, 4, &mut c) };
    assert_eq!(st, QkStatus::Inadmissible);
    assert!(c.is_null());
    unsafe { qk_matrix_free(m) };
}

#[test]
fn omega_catalog_roundtrip() {
    let m = parse(OMEGA_EX);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { qk_catalog_build(m, QkLevel::Twistor, 3, 8, &mut c) }, QkStatus::Ok);
    let mut s = QkCatalogSummary::default();
    assert_eq!(unsafe { qk_catalog_summary(c, &mut s) }, QkStatus::Ok);
    assert_eq!(s.entries, 7);
    assert_eq!(s.points, 1);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qk_catalog_json(c, &mut json) }, QkStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["strata"].as_array().unwrap().len(), 7);
    unsafe {
        qk_string_free(json);
        qk_catalog_free(c);
        qk_matrix_free(m);
    }
}

#[test]
fn compare_json_flags_distinct_families() {
    let a = parse(THETA_EX);
    let b = parse(OMEGA_EX);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qk_compare_json(a, b, 0, &mut json) }, QkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(v["structurally_distinct"], true);
    unsafe {
        qk_string_free(json);
        qk_matrix_free(a);
        qk_matrix_free(b);
    }
}

#[test]
fn free_accepts_null() {
    unsafe {
        qk_matrix_free(ptr::null_mut());
        qk_catalog_free(ptr::null_mut());
        qk_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qkreduce.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["qk_matrix_parse", "qk_catalog_build", "qk_compare_json", "qk_last_error"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ QkMatrix *m = 0; return (int)qk_matrix_parse(\"1,2,3/1,3,6\", &m); }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).status() {
        Ok(st) => assert!(st.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler; syntax check skipped"),
    }
}
