use std::ffi::{CStr, CString};
use std::ptr;

use skolab_ffi::*;

fn last_error() -> String {
    let p = skolab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn reference(lambda: i64) -> *mut SkolabAlgebra {
    let t = [1u32, 1, 1];
    let mut alg = ptr::null_mut();
    let st = unsafe { skolab_algebra_new(5, 3, t.as_ptr(), t.len(), lambda, 7, &mut alg) };
    assert_eq!(st, SkolabStatus::Ok);
    assert!(!alg.is_null());
    alg
}

#[test]
fn dims_at_reference_instance() {
    let alg = reference(2);
    let mut ambient = 0usize;
    let mut dims = [0usize; 3];
    unsafe {
        assert_eq!(skolab_ambient_dim(alg, &mut ambient), SkolabStatus::Ok);
        assert_eq!(skolab_derived_dims(alg, dims.as_mut_ptr()), SkolabStatus::Ok);
        skolab_algebra_free(alg);
    }
    assert_eq!(ambient, 125 * 16);
    assert_eq!(dims, [999, 999, 1003]);
}

#[test]
fn formulas_through_abi() {
    let t = [1u32, 1, 1];
    let mut d = 0u64;
    let mut out = 0u64;
    unsafe {
        assert_eq!(skolab_formula_dim(5, 3, t.as_ptr(), 3, 3, &mut d), SkolabStatus::Ok);
        assert_eq!(skolab_formula_der_out(5, 3, t.as_ptr(), 3, 3, &mut out), SkolabStatus::Ok);
    }
    assert_eq!((d, out), (996, 8));
}

#[test]
fn rejects_bad_modulus() {
    let t = [1u32, 1, 1];
    let mut alg = ptr::null_mut();
    let st = unsafe { skolab_algebra_new(4, 3, t.as_ptr(), 3, 0, 0, &mut alg) };
    assert_eq!(st, SkolabStatus::InvalidArgument);
    assert!(alg.is_null());
    assert!(last_error().contains("p must be an odd prime > 3"), "{}", last_error());
}

#[test]
fn rejects_bad_tuple_and_lambda() {
    let t = [1u32, 1];
    let mut alg = ptr::null_mut();
    unsafe {
        assert_eq!(skolab_algebra_new(5, 3, t.as_ptr(), 2, 0, 0, &mut alg), SkolabStatus::InvalidArgument);
        assert_eq!(skolab_algebra_new(5, 3, [1, 1, 1].as_ptr(), 3, 5, 0, &mut alg), SkolabStatus::InvalidArgument);
    }
    assert!(last_error().contains("lambda"));
}

#[test]
fn null_pointers_are_reported() {
    let mut n = 0usize;
    unsafe {
        assert_eq!(skolab_ambient_dim(ptr::null(), &mut n), SkolabStatus::NullPointer);
        assert_eq!(skolab_formula_dim(5, 3, ptr::null(), 3, 0, ptr::null_mut()), SkolabStatus::NullPointer);
        assert_eq!(skolab_formula_dim(5, 3, ptr::null(), 3, 0, &mut 0u64), SkolabStatus::NullPointer);
        skolab_algebra_free(ptr::null_mut());
        skolab_string_free(ptr::null_mut());
    }
    assert_eq!(last_error(), "t is null");
}

#[test]
fn verify_returns_json() {
    let alg = reference(2);
    let suites = CString::new("spanning,formulas").unwrap();
    let mut json = ptr::null_mut();
    let mut pass = false;
    unsafe {
        assert_eq!(skolab_verify(alg, suites.as_ptr(), &mut json, &mut pass), SkolabStatus::Ok);
    }
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe {
        skolab_string_free(json);
    }
    assert!(pass);
    assert!(text.contains("\"name\": \"spanning\""));
    assert!(text.contains("\"name\": \"formulas\""));
    assert!(!text.contains("\"name\": \"simplicity\""));

    let bad = CString::new("spanning,nope").unwrap();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(skolab_verify(alg, bad.as_ptr(), &mut json, ptr::null_mut()), SkolabStatus::InvalidArgument);
        skolab_algebra_free(alg);
    }
    assert!(json.is_null());
    assert!(last_error().contains("nope"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/skolab.h");
    for sym in [
        "skolab_last_error",
        "skolab_algebra_new",
        "skolab_algebra_free",
        "skolab_ambient_dim",
        "skolab_derived_dims",
        "skolab_formula_dim",
        "skolab_formula_der_out",
        "skolab_verify",
        "skolab_string_free",
        "SKOLAB_STATUS_INVALID_ARGUMENT = 2",
        "typedef struct SkolabAlgebra SkolabAlgebra;",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}
