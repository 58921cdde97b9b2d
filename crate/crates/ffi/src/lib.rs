//! C ABI over `bohr-core`.
//!
//! Every fallible call returns a [`BohrStatus`] and writes results through out
//! pointers. Objects cross the boundary as opaque handles owned by the caller
//! and released with the matching `*_free` function. The message of the last
//! failure on the calling thread is available from [`bohr_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bohr_core::catalog::{self, CatalogTag, SharpnessReport, Theorem};
use bohr_core::engine::{bohr_sum, log_bohr_sum};
use bohr_core::radius;
use bohr_core::{BohrError, RadiusResult, TruncatedSeries};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Unsupported = 3,
    NonFinite = 4,
    Evaluation = 5,
    NoSignChange = 6,
    Parse = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrFamily {
    QcUnivalent = 0,
    QcConvex = 1,
    QcBounded = 2,
    LocallyUnivalent = 3,
    LogS = 4,
    LogInverse = 5,
    LogConvex = 6,
    LogU = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrCatalog {
    Koebe = 0,
    KoebeNeg = 1,
    HalfPlane = 2,
    /// parameter: lambda
    ULambda = 3,
    /// parameter: K; the analytic part is returned
    HarmonicP = 4,
    /// parameter: K; the analytic part is returned
    HarmonicQ = 5,
    /// parameter: lambda
    FLambda = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrTheorem {
    /// parameter: K
    QcUnivalent = 0,
    /// parameter: K
    QcConvex = 1,
    /// parameter: K
    QcBounded = 2,
    /// parameter: lambda
    LocallyUnivalent = 3,
    LogUnivalent = 4,
    LogInverse = 5,
    LogConvex = 6,
    /// parameter: lambda
    LogU = 7,
}

/// Opaque truncated power series.
pub struct BohrSeries(TruncatedSeries);

/// Opaque radius with its certificate.
pub struct BohrRadius(RadiusResult);

/// Opaque sharpness or holds report.
pub struct BohrReport(SharpnessReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &BohrError) -> BohrStatus {
    match e {
        BohrError::Domain(_) => BohrStatus::Domain,
        BohrError::Unsupported(_) => BohrStatus::Unsupported,
        BohrError::NonFinite(_) => BohrStatus::NonFinite,
        BohrError::Evaluation(_) => BohrStatus::Evaluation,
        BohrError::NoSignChange { .. } => BohrStatus::NoSignChange,
        BohrError::Parse(_) => BohrStatus::Parse,
    }
}

fn guard(f: impl FnOnce() -> Result<(), BohrStatus>) -> BohrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BohrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside bohr-core".into());
            BohrStatus::Panic
        }
    }
}

fn lift<T>(r: bohr_core::Result<T>) -> Result<T, BohrStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> BohrStatus {
    set_error("null pointer argument".into());
    BohrStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, BohrStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), BohrStatus> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), BohrStatus> {
    if out.is_null() {
        return Err(null());
    }
    *out = value;
    Ok(())
}

/// Length in bytes of the last error message on this thread, without the terminator.
#[no_mangle]
pub extern "C" fn bohr_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |c| c.as_bytes().len()))
}

/// Copies the last error message (NUL-terminated, truncated to fit) into `buf`.
/// Returns the number of bytes written, excluding the terminator.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bohr_last_error_message(buf: *mut c_char, len: usize) -> usize {
    if buf.is_null() || len == 0 {
        return 0;
    }
    LAST_ERROR.with(|e| {
        let binding = e.borrow();
        let bytes = binding.as_ref().map_or(&[][..], |c| c.as_bytes());
        let n = bytes.len().min(len - 1);
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
        *buf.add(n) = 0;
        n
    })
}

/// Series with coefficients `re[n] + i im[n]`, `n < len`; `im` may be null.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_new(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| {
        if re.is_null() {
            return Err(null());
        }
        let re = std::slice::from_raw_parts(re, len);
        let coeffs = if im.is_null() {
            re.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, len);
            re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect()
        };
        emit(out, BohrSeries(lift(TruncatedSeries::new(coeffs))?))
    })
}

/// Catalog function truncated at `order`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_catalog(
    tag: BohrCatalog,
    param: f64,
    order: usize,
    out: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| {
        let tag = match tag {
            BohrCatalog::Koebe => CatalogTag::Koebe,
            BohrCatalog::KoebeNeg => CatalogTag::KoebeNeg,
            BohrCatalog::HalfPlane => CatalogTag::HalfPlane,
            BohrCatalog::ULambda => CatalogTag::ULambdaExtremal(param),
            BohrCatalog::HarmonicP => CatalogTag::HarmonicP(param),
            BohrCatalog::HarmonicQ => CatalogTag::HarmonicQ(param),
            BohrCatalog::FLambda => CatalogTag::FLambda(param),
        };
        let f = lift(catalog::build(tag, order))?;
        emit(out, BohrSeries(f.analytic_part().clone()))
    })
}

/// # Safety
/// `s` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_free(s: *mut BohrSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_order(s: *const BohrSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// # Safety
/// `s` must be a live handle; `re` and `im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_coeff(s: *const BohrSeries, n: usize, re: *mut f64, im: *mut f64) -> BohrStatus {
    guard(|| {
        let s = deref(s)?;
        let c = s.0.get(n).ok_or_else(|| {
            set_error(format!("index {n} exceeds order {}", s.0.order()));
            BohrStatus::Domain
        })?;
        write(re, c.re)?;
        write(im, c.im)
    })
}

/// # Safety
/// Handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_mul(
    a: *const BohrSeries,
    b: *const BohrSeries,
    out: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| emit(out, BohrSeries(deref(a)?.0.cauchy_mul(&deref(b)?.0))))
}

/// `outer(inner(z))`; `inner` must vanish at the origin.
///
/// # Safety
/// Handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_compose(
    outer: *const BohrSeries,
    inner: *const BohrSeries,
    out: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| emit(out, BohrSeries(lift(deref(outer)?.0.compose(&deref(inner)?.0))?)))
}

/// Compositional inverse of `a_1 z + ...` with `a_1 != 0`.
///
/// # Safety
/// `s` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_revert(s: *const BohrSeries, out: *mut *mut BohrSeries) -> BohrStatus {
    guard(|| emit(out, BohrSeries(lift(deref(s)?.0.revert())?)))
}

/// `log(f(z)/z) = 2 sum gamma_n z^n` as a series.
///
/// # Safety
/// `s` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_log_over_z(s: *const BohrSeries, out: *mut *mut BohrSeries) -> BohrStatus {
    guard(|| emit(out, BohrSeries(lift(deref(s)?.0.log_over_z())?)))
}

/// `sum |a_n| r^n`, from `n = 0` when `include_constant` is true.
///
/// # Safety
/// `s` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_bohr_sum(
    s: *const BohrSeries,
    r: f64,
    include_constant: bool,
    out: *mut f64,
) -> BohrStatus {
    guard(|| write(out, lift(bohr_sum(&deref(s)?.0, r, include_constant))?))
}

/// `2 sum |gamma_n| r^n`.
///
/// # Safety
/// `s` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_log_bohr_sum(s: *const BohrSeries, r: f64, out: *mut f64) -> BohrStatus {
    guard(|| write(out, lift(log_bohr_sum(&deref(s)?.0, r))?))
}

/// Bohr radius of `family`; `big_k` and `lambda` are ignored where irrelevant.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_radius(
    family: BohrFamily,
    big_k: f64,
    lambda: f64,
    out: *mut *mut BohrRadius,
) -> BohrStatus {
    guard(|| {
        let r = match family {
            BohrFamily::QcUnivalent => radius::radius_qc_univalent(big_k),
            BohrFamily::QcConvex => radius::radius_qc_convex(big_k),
            BohrFamily::QcBounded => radius::radius_qc_bounded(big_k),
            BohrFamily::LocallyUnivalent => radius::radius_locally_univalent(lambda),
            BohrFamily::LogS => Ok(radius::radius_log_s()),
            BohrFamily::LogInverse => Ok(radius::radius_log_inverse()),
            BohrFamily::LogConvex => Ok(radius::radius_log_convex()),
            BohrFamily::LogU => radius::radius_log_u(lambda),
        };
        emit(out, BohrRadius(lift(r)?))
    })
}

/// Threshold parameter `lambda_0` of the `U(lambda)` sharpness range.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_lambda0(out: *mut *mut BohrRadius) -> BohrStatus {
    guard(|| emit(out, BohrRadius(radius::lambda0())))
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_radius_free(r: *mut BohrRadius) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Radius value, NaN for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_radius_value(r: *const BohrRadius) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.value)
}

/// Residual of the defining equation at the returned value, NaN for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_radius_residual(r: *const BohrRadius) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.residual)
}

/// # Safety
/// `r` must be live; `lo` and `hi` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_radius_bracket(r: *const BohrRadius, lo: *mut f64, hi: *mut f64) -> BohrStatus {
    guard(|| {
        let (a, b) = deref(r)?.0.bracket;
        write(lo, a)?;
        write(hi, b)
    })
}

/// Sharpness report (or holds report where no extremal is known).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bohr_verify(
    theorem: BohrTheorem,
    param: f64,
    order: usize,
    out: *mut *mut BohrReport,
) -> BohrStatus {
    guard(|| {
        let t = match theorem {
            BohrTheorem::QcUnivalent => Theorem::QcUnivalent { big_k: param },
            BohrTheorem::QcConvex => Theorem::QcConvex { big_k: param },
            BohrTheorem::QcBounded => Theorem::QcBounded { big_k: param },
            BohrTheorem::LocallyUnivalent => Theorem::LocallyUnivalent { lambda: param },
            BohrTheorem::LogUnivalent => Theorem::LogUnivalent,
            BohrTheorem::LogInverse => Theorem::LogInverse,
            BohrTheorem::LogConvex => Theorem::LogConvex,
            BohrTheorem::LogU => Theorem::LogU { lambda: param },
        };
        emit(out, BohrReport(lift(catalog::verify(t, order))?))
    })
}

/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_free(rep: *mut BohrReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_passed(rep: *const BohrReport) -> bool {
    rep.as_ref().is_some_and(|r| r.0.passed)
}

/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_r0(rep: *const BohrReport) -> f64 {
    rep.as_ref().map_or(f64::NAN, |r| r.0.r0)
}

/// Equality margin at the radius; NaN when the report has none.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_equality_margin(rep: *const BohrReport) -> f64 {
    rep.as_ref().and_then(|r| r.0.equality_margin).unwrap_or(f64::NAN)
}

/// Excess of the Bohr sum over the threshold just beyond the radius; NaN when absent.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_violation_margin(rep: *const BohrReport) -> f64 {
    rep.as_ref().and_then(|r| r.0.violation_margin).unwrap_or(f64::NAN)
}

/// Truncation order used by the report.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_order(rep: *const BohrReport) -> usize {
    rep.as_ref().map_or(0, |r| r.0.order)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bohr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
