use std::ffi::{CStr, CString};
use std::ptr;

use qkernel_ffi::*;

fn ctx(q: f64) -> *mut QkContext {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { qk_context_new(q, &mut c) }, QkStatus::Ok);
    assert!(!c.is_null());
    c
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qk_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn context_rejects_bad_q() {
    let mut c = ptr::null_mut();
    for q in [0.0, 1.0, -0.5, f64::NAN] {
        assert_eq!(unsafe { qk_context_new(q, &mut c) }, QkStatus::Domain);
        assert!(c.is_null());
        assert!(last_error().contains("domain"));
    }
    assert_eq!(
        unsafe { qk_context_new(0.5, ptr::null_mut()) },
        QkStatus::NullPointer
    );
}

#[test]
fn pochhammer_and_binomial() {
    let c = ctx(0.5);
    let mut v = 0.0;
    unsafe {
        assert_eq!(qk_q_pochhammer(c, 0.25, 3, &mut v), QkStatus::Ok);
        let expect = (1.0 - 0.25) * (1.0 - 0.125) * (1.0 - 0.0625);
        assert!((v - expect).abs() < 1e-15);

        assert_eq!(qk_q_binomial(c, 4, 2, &mut v), QkStatus::Ok);
        // [4,2]_q = (1+q^2)(1+q+q^2)
        assert!((v - 1.25 * 1.75).abs() < 1e-14);

        let mut e = 0.0;
        assert_eq!(qk_q_pochhammer_inf(c, 0.5, &mut v, &mut e), QkStatus::Ok);
        assert!((v - 0.288_788_095_086_602_4).abs() < 1e-14);
        assert!(e >= 0.0);
        qk_context_free(c);
    }
}

#[test]
fn phi_series_matches_q_binomial_theorem() {
    let c = ctx(0.5);
    let (a, z) = (0.3, 0.4);
    let (mut v, mut e, mut n) = (0.0, 0.0, 0usize);
    unsafe {
        assert_eq!(
            qk_phi_series(c, &a, 1, ptr::null(), 0, z, &mut v, &mut e, &mut n),
            QkStatus::Ok
        );
        let (mut num, mut den, mut ee) = (0.0, 0.0, 0.0);
        qk_q_pochhammer_inf(c, a * z, &mut num, &mut ee);
        qk_q_pochhammer_inf(c, z, &mut den, &mut ee);
        assert!((v - num / den).abs() < 1e-13);
        assert!(n > 10);

        assert_eq!(
            qk_phi_series(c, ptr::null(), 1, ptr::null(), 0, z, &mut v, &mut e, &mut n),
            QkStatus::NullPointer
        );
        qk_context_free(c);
    }
}

#[test]
fn polynomials_roundtrip() {
    let c = ctx(0.5);
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qk_poly_jacobi(c, 3, 0.25, 0.2, &mut p), QkStatus::Ok);
        assert_eq!(qk_poly_degree(p), 3);
        let mut buf = [0.0; 4];
        assert_eq!(qk_poly_coeffs(p, buf.as_mut_ptr(), 2), QkStatus::Index);
        assert_eq!(qk_poly_coeffs(p, buf.as_mut_ptr(), 4), QkStatus::Ok);
        assert_eq!(buf[0], 1.0);

        let (x, y) = (0.3f64, 0.7f64);
        let direct: f64 = buf
            .iter()
            .enumerate()
            .map(|(k, c)| c * x.powi(k as i32) * y.powi(3 - k as i32))
            .sum();
        let mut v = 0.0;
        assert_eq!(qk_poly_evaluate(p, x, y, &mut v), QkStatus::Ok);
        assert!((v - direct).abs() < 1e-14);

        let mut metric = f64::NAN;
        assert_eq!(
            qk_pde_residual_metric(c, p, QkPdeKind::Jacobi, 0.25, 0.2, &mut metric),
            QkStatus::Ok
        );
        assert!(metric < 1e-13, "{metric}");
        qk_poly_free(p);

        assert_eq!(qk_poly_laguerre(c, 4, 1.0, &mut p), QkStatus::Ok);
        assert_eq!(
            qk_pde_residual_metric(c, p, QkPdeKind::Laguerre, 1.0, 0.0, &mut metric),
            QkStatus::Ok
        );
        assert!(metric < 1e-13, "{metric}");
        assert_eq!(
            qk_pde_residual_metric(c, p, QkPdeKind::Jacobi, 0.25, 0.2, &mut metric),
            QkStatus::Ok
        );
        assert!(metric > 1e-3);
        qk_poly_free(p);

        let coeffs = [1.0, -2.0, 0.5];
        assert_eq!(
            qk_poly_from_coeffs(coeffs.as_ptr(), 3, &mut p),
            QkStatus::Ok
        );
        assert_eq!(qk_poly_degree(p), 2);
        qk_poly_free(p);

        assert_eq!(qk_poly_degree(ptr::null()), -1);
        qk_poly_free(ptr::null_mut());
        qk_context_free(c);
    }
}

#[test]
fn degenerate_jacobi_is_domain_error() {
    let c = ctx(0.5);
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qk_poly_jacobi(c, 2, 2.0, 3.0, &mut p), QkStatus::Domain);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        qk_context_free(c);
    }
}

#[test]
fn genfun_record() {
    let c = ctx(0.5);
    let kind = CString::new("gf.jacobi").unwrap();
    let params = QkGenFunParams {
        alpha: 0.25,
        beta: 0.2,
        x: 0.6,
        y: 1.0,
        t: 0.3,
        ..Default::default()
    };
    let mut rec = QkGenFunRecord::default();
    unsafe {
        assert_eq!(
            qk_genfun_verify(c, kind.as_ptr(), &params, 60, &mut rec),
            QkStatus::Ok
        );
        assert!(rec.deviation < 1e-10, "{rec:?}");
        assert_eq!(rec.n_lhs, 60);

        let bad = CString::new("gf.nope").unwrap();
        assert_eq!(
            qk_genfun_verify(c, bad.as_ptr(), &params, 60, &mut rec),
            QkStatus::Parse
        );
        qk_context_free(c);
    }
}

#[test]
fn truncation_policy() {
    let c = ctx(0.9);
    let z = 0.95;
    let (mut v, mut e, mut n) = (0.0, 0.0, 0usize);
    unsafe {
        assert_eq!(qk_context_set_truncation(c, 5, 1e-16, 3), QkStatus::Ok);
        assert_eq!(
            qk_phi_series(c, ptr::null(), 0, ptr::null(), 0, z, &mut v, &mut e, &mut n),
            QkStatus::TruncationExceeded
        );
        assert_eq!(qk_context_set_truncation(c, 0, 1e-16, 3), QkStatus::Domain);
        qk_context_free(c);
    }
}

#[test]
fn verify_json_roundtrip() {
    let id = CString::new("eq2.2").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            qk_verify_json(id.as_ptr(), ptr::null(), &mut out),
            QkStatus::Ok
        );
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        qk_string_free(out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["summary"]["failed"], 0);
        assert!(v["reports"].as_array().unwrap().len() > 1);

        let bad = CString::new("eq9.9").unwrap();
        assert_eq!(
            qk_verify_json(bad.as_ptr(), ptr::null(), &mut out),
            QkStatus::Index
        );
        assert!(out.is_null());

        let cfg = CString::new("{\"bogus\": 1}").unwrap();
        assert_eq!(
            qk_verify_json(id.as_ptr(), cfg.as_ptr(), &mut out),
            QkStatus::Parse
        );
    }
}

#[test]
fn header_is_current() {
    let header = include_str!("../include/qkernel.h");
    for sym in [
        "qk_context_new",
        "qk_phi_series",
        "qk_poly_jacobi",
        "qk_pde_residual_metric",
        "qk_genfun_verify",
        "qk_verify_json",
        "QK_STATUS_NULL_POINTER",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
