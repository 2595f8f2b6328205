//! C ABI over the `nccoulomb` solver.
//!
//! Parameters live behind an opaque `NcParams` handle. Every fallible call
//! returns an `NcStatus`; the message of the most recent failure on the
//! calling thread is available from `nc_last_error_message`. Panics never
//! cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nccoulomb::fuzzy::Params;
use nccoulomb::radial::{radial_closed_form, RadialSeq, Sign};
use nccoulomb::scattering::smatrix_nc;
use nccoulomb::spectrum::{bound_energies, bound_wavefunction};
use nccoulomb::Error;
use num_complex::Complex64;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Pole = 3,
    Divergence = 4,
    RegimeMismatch = 5,
    NonFinite = 6,
    NoRoot = 7,
    Breakdown = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Opaque parameter set: NC length `lambda` and Coulomb strength `alpha`
/// (`alpha > 0` attractive), in units `hbar = m = 1`.
pub struct NcParams {
    inner: Params,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NcStatus, message: impl Into<String>) -> NcStatus {
    set_error(message.into());
    status
}

fn status_of(e: &Error) -> NcStatus {
    match e {
        Error::Pole(_) => NcStatus::Pole,
        Error::Divergence { .. } => NcStatus::Divergence,
        Error::RegimeMismatch(_) => NcStatus::RegimeMismatch,
        Error::NonFinite(_) => NcStatus::NonFinite,
        Error::NoRoot(_) => NcStatus::NoRoot,
        Error::Breakdown { .. } => NcStatus::Breakdown,
        Error::Precondition(_) | Error::Range { .. } | Error::Config(_) => NcStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> Result<(), NcStatus>) -> NcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NcStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(NcStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: nccoulomb::Result<T>) -> Result<T, NcStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn handle_ref<'a>(handle: *const NcParams) -> Result<&'a Params, NcStatus> {
    handle.as_ref().map(|p| &p.inner).ok_or_else(|| fail(NcStatus::NullPointer, "null NcParams handle"))
}

unsafe fn write_sequence(radial: &RadialSeq, re: *mut f64, im: *mut f64, len: usize) -> Result<(), NcStatus> {
    if re.is_null() {
        return Err(fail(NcStatus::NullPointer, "null output buffer"));
    }
    if len < radial.values.len() {
        return Err(fail(NcStatus::BufferTooSmall, format!("need {} entries, buffer holds {len}", radial.values.len())));
    }
    let re = std::slice::from_raw_parts_mut(re, radial.values.len());
    for (out, v) in re.iter_mut().zip(&radial.values) {
        *out = v.re;
    }
    if !im.is_null() {
        let im = std::slice::from_raw_parts_mut(im, radial.values.len());
        for (out, v) in im.iter_mut().zip(&radial.values) {
            *out = v.im;
        }
    }
    Ok(())
}

/// New parameter handle, or NULL (with the last error set) when
/// `lambda <= 0` or either value is not finite. Free with `nc_params_free`.
#[no_mangle]
pub extern "C" fn nc_params_new(lambda: f64, alpha: f64) -> *mut NcParams {
    let inner = Params::new(lambda, alpha);
    match inner.validate() {
        Ok(()) => Box::into_raw(Box::new(NcParams { inner })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Releases a handle from `nc_params_new`. NULL is ignored.
///
/// # Safety
/// `params` must be NULL or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nc_params_free(params: *mut NcParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Bound-state energy with principal number `n > j`: below zero for
/// `alpha > 0`, above `2/lambda^2` for `alpha < 0`.
///
/// # Safety
/// `params` must be a live handle and `energy` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_bound_energy(params: *const NcParams, j: u32, n: u32, energy: *mut f64) -> NcStatus {
    guard(|| {
        let p = handle_ref(params)?;
        if energy.is_null() {
            return Err(fail(NcStatus::NullPointer, "null energy pointer"));
        }
        if n <= j {
            return Err(fail(NcStatus::InvalidArgument, format!("principal number {n} must exceed j = {j}")));
        }
        let level = lib(bound_energies(p, j, n - j))?.pop().expect("n > j gives at least one level");
        *energy = level.energy;
        Ok(())
    })
}

/// Partial-wave S-matrix at energy `energy_re + i energy_im`, with the phase
/// shift `Im ln S / 2`. Any of the outputs may be NULL.
///
/// # Safety
/// `params` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_smatrix(
    params: *const NcParams,
    j: u32,
    energy_re: f64,
    energy_im: f64,
    s_re: *mut f64,
    s_im: *mut f64,
    phase_shift: *mut f64,
) -> NcStatus {
    guard(|| {
        let p = handle_ref(params)?;
        let v = lib(smatrix_nc(j, Complex64::new(energy_re, energy_im), p))?;
        for (out, value) in [(s_re, v.s.re), (s_im, v.s.im), (phase_shift, v.phase_shift)] {
            if !out.is_null() {
                *out = value;
            }
        }
        Ok(())
    })
}

/// Closed-form radial sequence `R_j(0..=n_max)` at real `energy`;
/// `sign` selects the `+` (nonnegative) or `-` (negative) branch of the
/// closed form. Buffers need `n_max + 1` entries; `im` may be NULL.
///
/// # Safety
/// `params` must be a live handle; `re` (and `im` if non-NULL) must hold
/// `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_radial_closed_form(
    params: *const NcParams,
    j: u32,
    energy: f64,
    sign: i32,
    n_max: usize,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> NcStatus {
    guard(|| {
        let p = handle_ref(params)?;
        let sign = if sign >= 0 { Sign::Plus } else { Sign::Minus };
        let radial = lib(radial_closed_form(j, energy, p, n_max, sign))?;
        write_sequence(&radial, re, im, len)
    })
}

/// Bound-state radial sequence `R(0..=n_max)` for principal number `n > j`,
/// normalized to `R(0) = 1`. The values are real.
///
/// # Safety
/// `params` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_bound_wavefunction(
    params: *const NcParams,
    j: u32,
    n: u32,
    n_max: usize,
    out: *mut f64,
    len: usize,
) -> NcStatus {
    guard(|| {
        let p = handle_ref(params)?;
        if n <= j {
            return Err(fail(NcStatus::InvalidArgument, format!("principal number {n} must exceed j = {j}")));
        }
        let level = lib(bound_energies(p, j, n - j))?.pop().expect("n > j gives at least one level");
        let radial = lib(bound_wavefunction(&level, n_max))?;
        write_sequence(&radial, out, ptr::null_mut(), len)
    })
}

/// Copies the calling thread's last error message (NUL-terminated, truncated
/// to fit) into `buf` and returns the full length including the NUL; 0 when
/// there is no error. Pass NULL/0 to query the length.
///
/// # Safety
/// `buf` must be NULL or hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn nc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = (bytes.len() - 1).min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
