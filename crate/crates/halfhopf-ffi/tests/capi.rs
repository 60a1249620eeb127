//! Exercises the C entry points from Rust and checks the generated header.

use std::ffi::{CStr, CString};
use std::ptr;

use halfhopf::spectral::CircleFunction;
use halfhopf_ffi::*;

fn circle_json() -> CString {
    let f = CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(1)])
        .unwrap();
    CString::new(f.to_json()).unwrap()
}

#[test]
fn roundtrip_and_energy() {
    unsafe {
        let json = circle_json();
        let mut handle: *mut HhFunction = ptr::null_mut();
        assert_eq!(hh_function_from_json(json.as_ptr(), &mut handle), HhStatus::Ok);
        assert!(!handle.is_null());

        let mut dim = 0usize;
        assert_eq!(hh_function_dim(handle, &mut dim), HhStatus::Ok);
        assert_eq!(dim, 2);
        let mut bw = 0usize;
        assert_eq!(hh_function_bandwidth(handle, &mut bw), HhStatus::Ok);
        assert_eq!(bw, 1);

        let mut energy = 0.0f64;
        assert_eq!(hh_energy_spectral(handle, &mut energy), HhStatus::Ok);
        assert!((energy - 2.0 * std::f64::consts::PI).abs() < 1e-12);

        let mut residual = f64::NAN;
        assert_eq!(hh_stationarity_residual(handle, &mut residual), HhStatus::Ok);
        assert!(residual < 1e-14);

        let mut defect = f64::NAN;
        assert_eq!(
            hh_conformality_defect(handle, 4, 8, 0.9, &mut defect),
            HhStatus::Ok
        );
        assert!(defect < 1e-14);

        let mut pohozaev = f64::NAN;
        assert_eq!(hh_pohozaev_residual(handle, 0.7, &mut pohozaev), HhStatus::Ok);
        assert!(pohozaev.abs() < 1e-13);

        // extension of (cos θ, sin θ) at (r, θ) is (r cos θ, r sin θ)
        let mut values = [0.0f64; 4];
        assert_eq!(
            hh_extension_eval(handle, 0.5, 0.0, values.as_mut_ptr()),
            HhStatus::Ok
        );
        assert!((values[0] - 0.5).abs() < 1e-14);
        assert!(values[2].abs() < 1e-14);

        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(hh_function_to_json(handle, &mut text), HhStatus::Ok);
        let round = CStr::from_ptr(text).to_str().unwrap();
        let parsed = CircleFunction::from_json(round).unwrap();
        assert_eq!(parsed.dim(), 2);
        hh_string_free(text);

        hh_function_free(handle);
    }
}

#[test]
fn error_paths() {
    unsafe {
        let mut handle: *mut HhFunction = ptr::null_mut();
        assert_eq!(
            hh_function_from_json(ptr::null(), &mut handle),
            HhStatus::NullPointer
        );

        let bad = CString::new("{\"not\": \"a function\"}").unwrap();
        assert_eq!(
            hh_function_from_json(bad.as_ptr(), &mut handle),
            HhStatus::InvalidInput
        );
        let msg = hh_last_error_message();
        assert!(!msg.is_null());
        assert!(!CStr::from_ptr(msg).to_str().unwrap().is_empty());

        // domain error: conformality grid outside the open disc
        let json = circle_json();
        assert_eq!(hh_function_from_json(json.as_ptr(), &mut handle), HhStatus::Ok);
        let mut defect = 0.0f64;
        assert_eq!(
            hh_conformality_defect(handle, 4, 8, 1.5, &mut defect),
            HhStatus::DomainError
        );
        hh_function_free(handle);

        // freeing null is a no-op
        hh_function_free(ptr::null_mut());
        hh_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    unsafe {
        let v = CStr::from_ptr(hh_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/halfhopf.h");
    let text = std::fs::read_to_string(&header).expect("cbindgen header exists");
    for symbol in [
        "hh_function_from_json",
        "hh_energy_spectral",
        "hh_stationarity_residual",
        "hh_conformality_defect",
        "HhStatus",
        "HH_STATUS_OK",
    ] {
        assert!(text.contains(symbol), "header missing {symbol}");
    }
}
