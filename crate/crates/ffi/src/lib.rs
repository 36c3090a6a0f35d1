//! C ABI over the starlike library.
//!
//! Conventions:
//!
//! * every fallible call returns an [`SlStatus`] and writes its result
//!   through an out pointer, which is set to null on failure;
//! * numbers cross the boundary as NUL-terminated strings — exact
//!   rationals as `"p/q"`, reals as decimal strings — because the
//!   underlying values are arbitrary precision;
//! * strings returned by the library are owned by the library: release
//!   them with [`sl_string_free`];
//! * `nu` parameters accept the same syntax as the CLI: integers,
//!   `p/q`, or finite decimals.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use starlike::expansions::{
    delta_coeffs, eps_coeffs, pi_coeffs, radius_phi_asymptotic, radius_varphi_asymptotic,
    radius_varphi_sq_asymptotic, rho_coeffs, ExpansionSeries, RadiusApprox,
};
use starlike::hp::digits_for_bits;
use starlike::oracle::{bessel_zero, radius_phi_numeric, radius_varphi_numeric};
use starlike::rational::Rational;
use starlike::rayleigh::{rayleigh_sum_exact, sigma_coeff};
use starlike::Error;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument failed to parse or was out of range.
    InvalidArgument = 2,
    /// A mathematical precondition was violated (pole, sign, region).
    Domain = 3,
    /// The numerical machinery failed (no sign change, no convergence).
    Numerical = 4,
    /// An internal invariant was violated.
    Internal = 5,
}

/// Coefficient family selector for [`sl_series_new`].
pub const SL_COEFF_EPS: u32 = 0;
/// Rearranged-form coefficients.
pub const SL_COEFF_DELTA: u32 = 1;
/// Squared-radius coefficients of the second family.
pub const SL_COEFF_RHO: u32 = 2;
/// Radius coefficients of the second family.
pub const SL_COEFF_PI: u32 = 3;

/// Radius selector: first normalised family.
pub const SL_RADIUS_PHI: u32 = 0;
/// Radius selector: second family, squared radius.
pub const SL_RADIUS_VARPHI_SQ: u32 = 1;
/// Radius selector: second family.
pub const SL_RADIUS_VARPHI: u32 = 2;

/// An expansion-coefficient table; opaque to C.
pub struct SlSeries(ExpansionSeries);

fn status_of(err: &Error) -> SlStatus {
    match err.exit_code() {
        2 => SlStatus::InvalidArgument,
        3 => SlStatus::Domain,
        _ => SlStatus::Numerical,
    }
}

/// Runs a closure, converting panics into `Internal` rather than
/// unwinding across the ABI.
fn guarded(body: impl FnOnce() -> SlStatus) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => SlStatus::Internal,
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> SlStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            SlStatus::Ok
        }
        Err(_) => SlStatus::Internal,
    }
}

/// # Safety
/// `nu` must be a valid NUL-terminated string.
unsafe fn parse_nu(nu: *const c_char) -> Result<Rational, SlStatus> {
    if nu.is_null() {
        return Err(SlStatus::NullPointer);
    }
    let text = unsafe { CStr::from_ptr(nu) }
        .to_str()
        .map_err(|_| SlStatus::InvalidArgument)?;
    text.parse().map_err(|_| SlStatus::InvalidArgument)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter
/// of this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Computes a coefficient family through order `count` and hands back
/// an owned table.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a table that
/// must be released with [`sl_series_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_series_new(
    family: u32,
    count: u32,
    out: *mut *mut SlSeries,
) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    guarded(|| {
        let computed = match family {
            SL_COEFF_EPS => eps_coeffs(count as usize),
            SL_COEFF_DELTA => delta_coeffs(count as usize),
            SL_COEFF_RHO => rho_coeffs(count as usize),
            SL_COEFF_PI => pi_coeffs(count as usize),
            _ => return SlStatus::InvalidArgument,
        };
        match computed {
            Ok(series) => {
                unsafe { *out = Box::into_raw(Box::new(SlSeries(series))) };
                SlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of coefficients held by the table (0 for null).
///
/// # Safety
/// `series` must be null or a live pointer from [`sl_series_new`].
#[no_mangle]
pub unsafe extern "C" fn sl_series_order(series: *const SlSeries) -> u32 {
    if series.is_null() {
        return 0;
    }
    unsafe { &*series }.0.order() as u32
}

/// The `k`-th coefficient (1-based) as an exact `"p/q"` string.
///
/// # Safety
/// `series` must be a live pointer from [`sl_series_new`]; `out` must
/// be valid. The string must be released with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_series_coeff(
    series: *const SlSeries,
    k: u32,
    out: *mut *mut c_char,
) -> SlStatus {
    if series.is_null() || out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    guarded(|| {
        let series = unsafe { &*series };
        match series.0.coeff(k as usize) {
            Some(c) => write_string(out, c.to_string()),
            None => SlStatus::InvalidArgument,
        }
    })
}

/// Releases a coefficient table. Null is ignored.
///
/// # Safety
/// `series` must be null or an unreleased pointer from [`sl_series_new`].
#[no_mangle]
pub unsafe extern "C" fn sl_series_free(series: *mut SlSeries) {
    if !series.is_null() {
        drop(unsafe { Box::from_raw(series) });
    }
}

/// Laurent coefficient of the order-`k` Rayleigh sum, index `m`, as an
/// exact `"p/q"` string.
///
/// # Safety
/// `out` must be valid; release the string with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_sigma_coeff(k: u32, m: u32, out: *mut *mut c_char) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    guarded(|| match sigma_coeff(k, m) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => status_of(&e),
    })
}

/// Exact Rayleigh sum of order `k` at `nu`, as an exact `"p/q"` string.
///
/// # Safety
/// `nu` must be a NUL-terminated string; `out` must be valid; release
/// the string with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_rayleigh_sum(
    k: u32,
    nu: *const c_char,
    out: *mut *mut c_char,
) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let nu = match unsafe { parse_nu(nu) } {
        Ok(v) => v,
        Err(status) => return status,
    };
    guarded(|| match rayleigh_sum_exact(k, &nu) {
        Ok(v) => write_string(out, v.value.to_string()),
        Err(e) => status_of(&e),
    })
}

/// Truncated expansion of the selected radius quantity at `nu` with
/// `order` series terms, rendered at the precision-implied digit count.
///
/// # Safety
/// `nu` must be a NUL-terminated string; `out` must be valid; release
/// the string with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_radius_asymptotic(
    family: u32,
    nu: *const c_char,
    order: u32,
    prec: u32,
    out: *mut *mut c_char,
) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let nu = match unsafe { parse_nu(nu) } {
        Ok(v) => v,
        Err(status) => return status,
    };
    guarded(|| {
        let trunc = match family {
            SL_RADIUS_PHI => radius_phi_asymptotic(&nu, order as usize),
            SL_RADIUS_VARPHI_SQ => radius_varphi_sq_asymptotic(&nu, order as usize),
            SL_RADIUS_VARPHI => radius_varphi_asymptotic(&nu, order as usize, prec),
            _ => return SlStatus::InvalidArgument,
        };
        match trunc {
            Ok(t) => {
                let digits = digits_for_bits(prec);
                let text = match &t.value {
                    RadiusApprox::Exact(q) => q.to_decimal(digits),
                    RadiusApprox::Real(x) => x.to_decimal(digits),
                };
                write_string(out, text)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Radius located numerically at `prec` bits, as a decimal string. The
/// squared-family selector reports the square of the located root.
///
/// # Safety
/// `nu` must be a NUL-terminated string; `out` must be valid; release
/// the string with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_radius_numeric(
    family: u32,
    nu: *const c_char,
    prec: u32,
    out: *mut *mut c_char,
) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let nu = match unsafe { parse_nu(nu) } {
        Ok(v) => v,
        Err(status) => return status,
    };
    guarded(|| {
        let digits = digits_for_bits(prec);
        let root = match family {
            SL_RADIUS_PHI => radius_phi_numeric(&nu, prec).map(|r| r.root),
            SL_RADIUS_VARPHI => radius_varphi_numeric(&nu, prec).map(|r| r.root),
            SL_RADIUS_VARPHI_SQ => {
                radius_varphi_numeric(&nu, prec).map(|r| (&r.root * &r.root).round_to(prec))
            }
            _ => return SlStatus::InvalidArgument,
        };
        match root {
            Ok(v) => write_string(out, v.to_decimal(digits)),
            Err(e) => status_of(&e),
        }
    })
}

/// The `n`-th positive Bessel zero of order `nu` at `prec` bits, as a
/// decimal string.
///
/// # Safety
/// `nu` must be a NUL-terminated string; `out` must be valid; release
/// the string with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_bessel_zero(
    nu: *const c_char,
    n: u32,
    prec: u32,
    out: *mut *mut c_char,
) -> SlStatus {
    if out.is_null() {
        return SlStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    let nu = match unsafe { parse_nu(nu) } {
        Ok(v) => v,
        Err(status) => return status,
    };
    guarded(|| match bessel_zero(&nu, n, prec) {
        Ok(z) => write_string(out, z.root.to_decimal(digits_for_bits(prec))),
        Err(e) => status_of(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take_string(out: *mut c_char) -> String {
        assert!(!out.is_null());
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { sl_string_free(out) };
        s
    }

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn series_round_trip() {
        let mut handle: *mut SlSeries = ptr::null_mut();
        let status = unsafe { sl_series_new(SL_COEFF_EPS, 6, &mut handle) };
        assert_eq!(status, SlStatus::Ok);
        assert_eq!(unsafe { sl_series_order(handle) }, 6);
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sl_series_coeff(handle, 6, &mut s) }, SlStatus::Ok);
        assert_eq!(take_string(s), "44");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_series_coeff(handle, 7, &mut s) },
            SlStatus::InvalidArgument
        );
        assert!(s.is_null());
        unsafe { sl_series_free(handle) };
    }

    #[test]
    fn pi_family_exact_strings() {
        let mut handle: *mut SlSeries = ptr::null_mut();
        assert_eq!(
            unsafe { sl_series_new(SL_COEFF_PI, 4, &mut handle) },
            SlStatus::Ok
        );
        let expected = ["1/4", "7/32", "-39/128", "-405/2048"];
        for (k, want) in (1..=4).zip(expected) {
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(unsafe { sl_series_coeff(handle, k, &mut s) }, SlStatus::Ok);
            assert_eq!(take_string(s), want);
        }
        unsafe { sl_series_free(handle) };
    }

    #[test]
    fn bad_arguments_are_reported() {
        let mut handle: *mut SlSeries = ptr::null_mut();
        assert_eq!(
            unsafe { sl_series_new(99, 3, &mut handle) },
            SlStatus::InvalidArgument
        );
        assert!(handle.is_null());
        assert_eq!(
            unsafe { sl_series_new(SL_COEFF_EPS, 3, ptr::null_mut()) },
            SlStatus::NullPointer
        );
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_rayleigh_sum(2, ptr::null(), &mut s) },
            SlStatus::NullPointer
        );
        let nu = c("not-a-number");
        assert_eq!(
            unsafe { sl_rayleigh_sum(2, nu.as_ptr(), &mut s) },
            SlStatus::InvalidArgument
        );
    }

    #[test]
    fn rayleigh_sum_and_pole() {
        let mut s: *mut c_char = ptr::null_mut();
        let nu = c("1");
        assert_eq!(
            unsafe { sl_rayleigh_sum(2, nu.as_ptr(), &mut s) },
            SlStatus::Ok
        );
        assert_eq!(take_string(s), "1/192");

        let mut s: *mut c_char = ptr::null_mut();
        let pole = c("-1");
        assert_eq!(
            unsafe { sl_rayleigh_sum(1, pole.as_ptr(), &mut s) },
            SlStatus::Domain
        );
        assert!(s.is_null());
    }

    #[test]
    fn sigma_coefficients() {
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sl_sigma_coeff(2, 0, &mut s) }, SlStatus::Ok);
        assert_eq!(take_string(s), "1/16");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sl_sigma_coeff(0, 0, &mut s) }, SlStatus::Domain);
    }

    #[test]
    fn radius_strings() {
        let nu = c("10");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_radius_asymptotic(SL_RADIUS_PHI, nu.as_ptr(), 6, 128, &mut s) },
            SlStatus::Ok
        );
        assert_eq!(take_string(s), "40.38656");

        let nu8 = c("8");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_radius_asymptotic(SL_RADIUS_VARPHI, nu8.as_ptr(), 2, 128, &mut s) },
            SlStatus::Ok
        );
        assert_eq!(take_string(s), "4.138671875");

        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_radius_numeric(SL_RADIUS_VARPHI, c("1/2").as_ptr(), 96, &mut s) },
            SlStatus::Ok
        );
        let text = take_string(s);
        assert!(text.starts_with("1.57079632679489661"), "{text}");

        let neg = c("-2");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_radius_numeric(SL_RADIUS_PHI, neg.as_ptr(), 96, &mut s) },
            SlStatus::Domain
        );
    }

    #[test]
    fn bessel_zero_string() {
        let nu = c("0.5");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { sl_bessel_zero(nu.as_ptr(), 2, 96, &mut s) },
            SlStatus::Ok
        );
        assert!(take_string(s).starts_with("6.2831853071795864"));
    }

    #[test]
    fn version_and_null_free() {
        let v = sl_version();
        assert!(!v.is_null());
        let text = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
        unsafe { sl_string_free(ptr::null_mut()) };
    }

    #[test]
    fn header_exports_every_symbol() {
        let header = std::fs::read_to_string(
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/starlike.h"),
        )
        .expect("generated header present");
        let source = include_str!("lib.rs");
        for line in source.lines() {
            if let Some(rest) = line.trim().strip_prefix("pub unsafe extern \"C\" fn ") {
                let name = rest.split('(').next().unwrap();
                assert!(header.contains(name), "header lacks {name}");
            }
        }
        for constant in ["SL_COEFF_EPS", "SL_RADIUS_VARPHI_SQ", "SlStatus"] {
            assert!(header.contains(constant), "header lacks {constant}");
        }
    }
}
