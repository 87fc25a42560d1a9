use std::ffi::{c_char, CStr, CString};
use std::ptr;

use mcsusy_ffi::*;

fn parse(src: &str) -> *mut McFunction {
    let src = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_function_parse(src.as_ptr(), &mut out) }, McStatus::Ok);
    out
}

fn take_string(s: *mut c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mc_string_free(s) };
    text
}

fn render(f: *const McFunction) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mc_function_to_string(f, &mut s) }, McStatus::Ok);
    take_string(s)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mc_last_error_message()) }.to_str().unwrap().to_owned()
}

#[test]
fn canonical_bracket() {
    let (q, p) = (parse("q1"), parse("p1"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_function_bracket(McHbar::Formal, q, p, &mut out) }, McStatus::Ok);
    assert_eq!(render(out), "i*hbar");
    let mut pb = ptr::null_mut();
    assert_eq!(unsafe { mc_function_poisson(q, p, &mut pb) }, McStatus::Ok);
    assert_eq!(render(pb), "1");
    let mut star = ptr::null_mut();
    assert_eq!(unsafe { mc_function_star(McHbar::One, q, p, &mut star) }, McStatus::Ok);
    let mut zero = true;
    assert_eq!(unsafe { mc_function_is_zero(star, &mut zero) }, McStatus::Ok);
    assert!(!zero);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { mc_function_to_json(star, &mut json) }, McStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!(value.is_array());
    unsafe {
        for f in [q, p, out, pb, star] {
            mc_function_free(f);
        }
    }
}

#[test]
fn parse_errors_are_reported() {
    let src = CString::new("q1^").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_function_parse(src.as_ptr(), &mut out) }, McStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("column 4"), "{}", last_error());
    assert_eq!(unsafe { mc_function_parse(ptr::null(), &mut out) }, McStatus::NullPointer);
}

#[test]
fn gaussian_products_are_rejected() {
    let w = parse("pi^-2*vacuum");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_function_star(McHbar::One, w, w, &mut out) }, McStatus::Envelope);
    assert_eq!(unsafe { mc_function_star(McHbar::Formal, w, w, &mut out) }, McStatus::Envelope);
    unsafe { mc_function_free(w) };
}

#[test]
fn system_verification() {
    let inputs = ["p2", "q1*p2 - q2*p1", "q2", "p1*p2 + q1*q2"].map(parse);
    let mut system = ptr::null_mut();
    let status = unsafe { mc_system_new(McHbar::Formal, inputs[0], inputs[1], inputs[2], inputs[3], &mut system) };
    assert_eq!(status, McStatus::Ok);
    let mut json = ptr::null_mut();
    let mut failures = usize::MAX;
    assert_eq!(unsafe { mc_system_verify_json(system, &mut json, &mut failures) }, McStatus::Ok);
    assert_eq!(failures, 0);
    assert!(take_string(json).contains("\"eq22\""));
    unsafe {
        mc_system_free(system);
        for f in inputs {
            mc_function_free(f);
        }
    }

    let (w1, w2, zero) = (parse("q1"), parse("p1"), parse("0"));
    let mut bad = ptr::null_mut();
    let status = unsafe { mc_system_new(McHbar::Formal, w1, w2, zero, zero, &mut bad) };
    assert_eq!(status, McStatus::ConditionViolated);
    assert!(bad.is_null());
    unsafe {
        for f in [w1, w2, zero] {
            mc_function_free(f);
        }
    }
}

#[test]
fn example_systems() {
    let mut system = ptr::null_mut();
    assert_eq!(unsafe { mc_system_example(1, ptr::null(), &mut system) }, McStatus::Ok);
    let mut json = ptr::null_mut();
    let mut failures = usize::MAX;
    assert_eq!(unsafe { mc_system_verify_json(system, &mut json, &mut failures) }, McStatus::Ok);
    assert_eq!(failures, 0);
    assert!(take_string(json).contains("\"eq69\""));
    unsafe { mc_system_free(system) };

    let k = parse("q2");
    assert_eq!(unsafe { mc_system_example(1, k, &mut system) }, McStatus::InvalidArgument);
    assert_eq!(unsafe { mc_system_example(3, ptr::null(), &mut system) }, McStatus::InvalidArgument);
    unsafe { mc_function_free(k) };
}

#[test]
fn spectrum_and_eigenvalues() {
    let mut lambda = -1;
    assert_eq!(unsafe { mc_eigenvalue(1, 2, 0, 0, &mut lambda) }, McStatus::Ok);
    assert_eq!(lambda, 1);
    assert_eq!(unsafe { mc_eigenvalue(1, 3, 0, 0, &mut lambda) }, McStatus::IndexOutOfRange);
    let mut csv = ptr::null_mut();
    let mut failures = usize::MAX;
    assert_eq!(unsafe { mc_verify_spectrum(2, 1, &mut csv, &mut failures) }, McStatus::Ok);
    assert_eq!(failures, 0);
    let csv = take_string(csv);
    assert!(csv.lines().any(|l| l == "1,0,0,1,true"), "{csv}");
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/mcsusy.h");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-x", "c", "-std=c99", "-Wall", "-Werror", "-fsyntax-only", header])
        .status()
    else {
        eprintln!("no C compiler available; header not compiled");
        return;
    };
    assert!(status.success());
}
