//! C ABI for the `symdiv` operator calculus.
//!
//! Operators cross the boundary as opaque [`SdDivOp`] handles created by the
//! `sd_*` constructors and released with [`sd_div_op_free`]. Every fallible
//! function returns an [`SdStatus`]; on failure, [`sd_last_error_message`]
//! describes the error for the calling thread. Strings returned by the library
//! are released with [`sd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symdiv::cli::OperatorFile;
use symdiv::opalg::DivOp;
use symdiv::quantize::{quantize_divergence, weyl_lift};
use symdiv::spectral::positivity_certificate;
use symdiv::structure::{power_div_coeffs, scale_hbar};

/// Result codes of the C interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The operator text did not parse.
    Parse = 3,
    /// The computation rejected its input.
    Math = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// Opaque divergence-form operator `Σ (−1)^l ∂^l b_l ∂^l`.
pub struct SdDivOp {
    inner: DivOp,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> Result<(), (SdStatus, String)>) -> SdStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SdStatus::Panic
        }
    }
}

fn null() -> (SdStatus, String) {
    (SdStatus::NullPointer, "null pointer argument".to_string())
}

fn math(e: impl std::fmt::Display) -> (SdStatus, String) {
    (SdStatus::Math, e.to_string())
}

unsafe fn handle<'a>(op: *const SdDivOp) -> Result<&'a DivOp, (SdStatus, String)> {
    // SAFETY: the caller passes null or a live handle from this library.
    unsafe { op.as_ref() }.map(|h| &h.inner).ok_or_else(null)
}

unsafe fn emit_handle(out: *mut *mut SdDivOp, d: DivOp) -> Result<(), (SdStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: `out` is non-null and points to writable storage per the contract.
    unsafe { *out = Box::into_raw(Box::new(SdDivOp { inner: d })) };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses operator-file text (`b0 = x^4` lines, or raw `a0 = …` lines of a
/// symmetric operator) into a new handle stored in `*out`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_parse(src: *const c_char, out: *mut *mut SdDivOp) -> SdStatus {
    guarded(|| {
        if src.is_null() {
            return Err(null());
        }
        // SAFETY: `src` is non-null and NUL-terminated per the contract.
        let text = unsafe { CStr::from_ptr(src) }
            .to_str()
            .map_err(|e| (SdStatus::InvalidUtf8, e.to_string()))?;
        let file: OperatorFile = text.parse().map_err(|e: symdiv::cli::CliError| (SdStatus::Parse, e.to_string()))?;
        let d = file.to_div_op().map_err(math)?;
        // SAFETY: forwarded caller contract on `out`.
        unsafe { emit_handle(out, d) }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `op` must be NULL or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_free(op: *mut SdDivOp) {
    if !op.is_null() {
        // SAFETY: `op` came from `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(op) });
    }
}

/// Half-order `m` of the operator, or 0 for NULL.
///
/// # Safety
/// `op` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_half_order(op: *const SdDivOp) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { handle(op) }.map_or(0, DivOp::half_order)
}

/// Writes the operator as operator-file text to `*out`; release it with
/// [`sd_string_free`].
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_to_string(op: *const SdDivOp, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let d = unsafe { handle(op) }?;
        if out.is_null() {
            return Err(null());
        }
        let text = CString::new(OperatorFile::from_div(d).emit()).map_err(math)?;
        // SAFETY: `out` is non-null per the check above.
        unsafe { *out = text.into_raw() };
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Divergence coefficients `B_ℓ` of `L^n`, as a new handle.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_power(op: *const SdDivOp, n: u32, out: *mut *mut SdDivOp) -> SdStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let d = unsafe { handle(op) }?;
        let b = power_div_coeffs(d, n).b;
        // SAFETY: forwarded caller contract on `out`.
        unsafe { emit_handle(out, DivOp::new(b)) }
    })
}

/// The scaled family `b_l ↦ s^{2l} b_l(s x, s)`, as a new handle.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_div_op_scale_hbar(op: *const SdDivOp, out: *mut *mut SdDivOp) -> SdStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let d = unsafe { handle(op) }?;
        // SAFETY: forwarded caller contract on `out`.
        unsafe { emit_handle(out, scale_hbar(d)) }
    })
}

/// Divergence form of the quantized Weyl lift of `x^a ξ^b`, as a new handle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_quantize_weyl(a: u32, b: u32, out: *mut *mut SdDivOp) -> SdStatus {
    guarded(|| {
        let d = quantize_divergence(&weyl_lift(a, b)).map_err(math)?;
        // SAFETY: forwarded caller contract on `out`.
        unsafe { emit_handle(out, d) }
    })
}

/// Smallest eigenvalue of the `dim × dim` Hermite truncation of `L_ℏ^n`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_positivity_min_eigenvalue(op: *const SdDivOp, n: u32, hbar: f64, dim: usize, out: *mut f64) -> SdStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let d = unsafe { handle(op) }?;
        if out.is_null() {
            return Err(null());
        }
        let cert = positivity_certificate(d, n, &[hbar], dim).map_err(math)?;
        // SAFETY: `out` is non-null per the check above.
        unsafe { *out = cert.min_eigenvalues[0].1 };
        Ok(())
    })
}
