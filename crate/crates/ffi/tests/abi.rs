use std::ffi::{CStr, CString};
use std::ptr;

use sectorix_ffi::*;

fn matrix(n: usize, re: &[f64], im: Option<&[f64]>) -> *mut SxMatrix {
    let mut out = ptr::null_mut();
    let im = im.map_or(ptr::null(), |v| v.as_ptr());
    assert_eq!(unsafe { sx_matrix_new(n, re.as_ptr(), im, &mut out) }, SxStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sx_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_round_trip() {
    let re = [1.0, 2.0, 3.0, 4.0];
    let im = [0.5, -0.5, 0.0, 1.0];
    let m = matrix(2, &re, Some(&im));
    assert_eq!(unsafe { sx_matrix_dim(m) }, 2);
    let (mut r, mut i) = ([0.0; 4], [0.0; 4]);
    assert_eq!(unsafe { sx_matrix_get(m, r.as_mut_ptr(), i.as_mut_ptr()) }, SxStatus::Ok);
    assert_eq!((r, i), (re, im));
    unsafe { sx_matrix_free(m) };
    unsafe { sx_matrix_free(ptr::null_mut()) };
}

#[test]
fn null_and_invalid_inputs() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sx_matrix_new(2, ptr::null(), ptr::null(), &mut out) }, SxStatus::NullPointer);
    assert!(last_error().contains("re"));
    let nan = [f64::NAN];
    assert_eq!(unsafe { sx_matrix_new(1, nan.as_ptr(), ptr::null(), &mut out) }, SxStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    let mut alpha = 0.0;
    assert_eq!(unsafe { sx_sector_angle(ptr::null(), &mut alpha) }, SxStatus::NullPointer);
    assert_eq!(unsafe { sx_matrix_dim(ptr::null()) }, 0);
}

#[test]
fn sector_angle_of_generated_matrix() {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { sx_gen_sector(4, 0.6, 10.0, 3, &mut a) }, SxStatus::Ok);
    let mut alpha = 0.0;
    assert_eq!(unsafe { sx_sector_angle(a, &mut alpha) }, SxStatus::Ok);
    assert!(alpha <= 0.6 + 1e-8 && alpha > 0.0);
    assert!(last_error().is_empty());

    let indefinite = matrix(2, &[1.0, 0.0, 0.0, -1.0], None);
    assert_eq!(unsafe { sx_sector_angle(indefinite, &mut alpha) }, SxStatus::NotAccretive);
    unsafe {
        sx_matrix_free(a);
        sx_matrix_free(indefinite);
    }
}

#[test]
fn means_and_kantorovich() {
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(sx_gen_hpd(3, 1.0, 4.0, 1, &mut a), SxStatus::Ok);
        assert_eq!(sx_gen_hpd(3, 2.0, 5.0, 2, &mut b), SxStatus::Ok);
    }
    let mut g = ptr::null_mut();
    let mut g2 = ptr::null_mut();
    unsafe {
        assert_eq!(sx_geometric_mean(a, b, 0.3, &mut g), SxStatus::Ok);
        assert_eq!(sx_mean(SxMeanKind::Geometric, a, b, 0.3, &mut g2), SxStatus::Ok);
    }
    let (mut r1, mut r2) = ([0.0; 9], [0.0; 9]);
    unsafe {
        sx_matrix_get(g, r1.as_mut_ptr(), ptr::null_mut());
        sx_matrix_get(g2, r2.as_mut_ptr(), ptr::null_mut());
    }
    assert_eq!(r1, r2);

    let mut k = 0.0;
    assert_eq!(unsafe { sx_kantorovich(1.0, &mut k) }, SxStatus::Ok);
    assert_eq!(k, 1.0);
    assert_eq!(unsafe { sx_kantorovich(-1.0, &mut k) }, SxStatus::InvalidArgument);
    unsafe {
        for m in [a, b, g, g2] {
            sx_matrix_free(m);
        }
    }
}

#[test]
fn check_through_the_abi() {
    let id3 = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let a = matrix(3, &id3, None);
    let (mut slack, mut verdict) = (0.0, SxVerdict::Vacuous);
    let id = CString::new("D2233").unwrap();
    assert_eq!(unsafe { sx_check(id.as_ptr(), a, a, 0.5, 1e-8, &mut slack, &mut verdict) }, SxStatus::Ok);
    assert_eq!(verdict, SxVerdict::Pass);
    assert!(slack >= 0.0);

    let bad = CString::new("NOPE").unwrap();
    assert_eq!(unsafe { sx_check(bad.as_ptr(), a, a, 0.5, 1e-8, &mut slack, &mut verdict) }, SxStatus::UnknownCheck);
    assert!(last_error().contains("NOPE"));

    let neg = matrix(3, &[-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0], None);
    let l13 = CString::new("l13").unwrap();
    assert_eq!(unsafe { sx_check(l13.as_ptr(), neg, a, 0.5, 1e-8, &mut slack, &mut verdict) }, SxStatus::Ok);
    assert_eq!(verdict, SxVerdict::Vacuous);
    unsafe {
        sx_matrix_free(a);
        sx_matrix_free(neg);
    }
}

#[test]
fn counterexamples_through_the_abi() {
    let mut v = [0.0; 3];
    let mut violated = false;
    assert_eq!(unsafe { sx_counterexample_sv(v.as_mut_ptr(), &mut violated) }, SxStatus::Ok);
    assert!(violated);
    assert!(v[0] > v[2] && v[1] > v[2]);
    assert_eq!(unsafe { sx_counterexample_det(v.as_mut_ptr(), &mut violated) }, SxStatus::Ok);
    assert!(violated);
    assert!((v[0] - 4.0).abs() < 1e-9 && (v[1] - 2.0).abs() < 1e-9);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(sx_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
