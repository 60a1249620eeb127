//! C ABI for the halfhopf library.
//!
//! Functions on the circle travel across the boundary as opaque handles
//! created from the library's CircleFunction JSON; every entry point
//! returns a status code and writes results through out-pointers. A
//! thread-local message for the last error is available via
//! `hh_last_error_message`. The header is generated by cbindgen into
//! `include/halfhopf.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use halfhopf::hopf::{conformality_defect, stationarity_residual, DiscGrid};
use halfhopf::energy::energy_spectral;
use halfhopf::variation::{pohozaev_residual, rotation_pohozaev};
use halfhopf::CircleFunction;

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    DomainError = 4,
    Panic = 5,
}

/// Opaque handle around a circle function.
pub struct HhFunction {
    inner: CircleFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into()).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard<F: FnOnce() -> HhStatus>(f: F) -> HhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            HhStatus::Panic
        }
    }
}

/// Message for the most recent error on this thread, or NULL when the last
/// call succeeded. The pointer stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn hh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a CircleFunction from its JSON representation.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_function_from_json(
    json: *const c_char,
    out: *mut *mut HhFunction,
) -> HhStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            set_error("null pointer argument");
            return HhStatus::NullPointer;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("json argument is not valid UTF-8");
                return HhStatus::InvalidUtf8;
            }
        };
        match CircleFunction::from_json(text) {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(HhFunction { inner: f })) };
                HhStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                HhStatus::InvalidInput
            }
        }
    })
}

/// Serializes the function back to JSON; free the result with
/// `hh_string_free`.
///
/// # Safety
/// `f` must be a live handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_function_to_json(
    f: *const HhFunction,
    out: *mut *mut c_char,
) -> HhStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            set_error("null pointer argument");
            return HhStatus::NullPointer;
        }
        let text = unsafe { &(*f).inner }.to_json();
        match CString::new(text) {
            Ok(c) => {
                unsafe { *out = c.into_raw() };
                HhStatus::Ok
            }
            Err(_) => {
                set_error("serialized JSON contained an interior NUL");
                HhStatus::Panic
            }
        }
    })
}

/// # Safety
/// `f` must be a handle returned by this library (or NULL, a no-op).
#[no_mangle]
pub unsafe extern "C" fn hh_function_free(f: *mut HhFunction) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// # Safety
/// `s` must be a string returned by this library (or NULL, a no-op).
#[no_mangle]
pub unsafe extern "C" fn hh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn with_function<T>(
    f: *const HhFunction,
    out: *mut T,
    body: impl FnOnce(&CircleFunction) -> Result<T, String>,
) -> HhStatus {
    if f.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HhStatus::NullPointer;
    }
    match body(unsafe { &(*f).inner }) {
        Ok(v) => {
            unsafe { *out = v };
            HhStatus::Ok
        }
        Err(msg) => {
            set_error(msg);
            HhStatus::DomainError
        }
    }
}

/// Half Dirichlet energy E½(u) = 2π Σ|n||û(n)|².
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_energy_spectral(f: *const HhFunction, out: *mut f64) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(energy_spectral(u))) })
}

/// Stationarity residual max_k |c_k| of the fractional Hopf coefficients.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_stationarity_residual(
    f: *const HhFunction,
    out: *mut f64,
) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(stationarity_residual(u))) })
}

/// max |𝓗(ũ)| over an r_res × theta_res polar grid with radii up to r_max.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_conformality_defect(
    f: *const HhFunction,
    r_res: usize,
    theta_res: usize,
    r_max: f64,
    out: *mut f64,
) -> HhStatus {
    guard(|| unsafe {
        with_function(f, out, |u| {
            let grid = DiscGrid::new(r_res, theta_res, r_max).map_err(|e| e.to_string())?;
            let (max, _) = conformality_defect(u, &grid).map_err(|e| e.to_string())?;
            Ok(max)
        })
    })
}

/// ∫ u′(−Δ)^{1/2}u sin(δ−x) dx.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_pohozaev_residual(
    f: *const HhFunction,
    delta: f64,
    out: *mut f64,
) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(pohozaev_residual(u, delta))) })
}

/// ∫ u′(−Δ)^{1/2}u dx (the rotation-field pairing).
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_rotation_pohozaev(f: *const HhFunction, out: *mut f64) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(rotation_pohozaev(u))) })
}

/// Evaluates the harmonic extension at (r, θ); writes dim pairs (re, im)
/// into `out`, which must hold at least 2·dim doubles.
///
/// # Safety
/// `f` must be a live handle and `out` must point to 2·dim writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hh_extension_eval(
    f: *const HhFunction,
    r: f64,
    theta: f64,
    out: *mut f64,
) -> HhStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            set_error("null pointer argument");
            return HhStatus::NullPointer;
        }
        let u = unsafe { &(*f).inner };
        let p = match halfhopf::operators::DiskPoint::new(r, theta) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return HhStatus::DomainError;
            }
        };
        let values: Vec<Complex64> = halfhopf::operators::harmonic_extension_eval(u, p);
        for (d, v) in values.iter().enumerate() {
            unsafe {
                *out.add(2 * d) = v.re;
                *out.add(2 * d + 1) = v.im;
            }
        }
        HhStatus::Ok
    })
}

/// Number of components of the stored function.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_function_dim(f: *const HhFunction, out: *mut usize) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(u.dim())) })
}

/// Bandwidth (highest retained frequency) of the stored function.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_function_bandwidth(f: *const HhFunction, out: *mut usize) -> HhStatus {
    guard(|| unsafe { with_function(f, out, |u| Ok(u.bandwidth())) })
}
