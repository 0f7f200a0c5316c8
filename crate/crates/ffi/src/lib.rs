//! C ABI for `sectorix`.
//!
//! Matrices cross the boundary as opaque `SxMatrix` handles created by the
//! `sx_matrix_*` and `sx_gen_*` functions and released with
//! `sx_matrix_free`. Every fallible call returns an `SxStatus`; on failure
//! `sx_last_error` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sectorix::checks::{det_bundle, evaluate, sv_bundle, CheckId, Instance, Params, Verdict};
use sectorix::means::{geometric_mean_accretive, kantorovich, MeanKind, MeanSpec, QuadControls};
use sectorix::sector::{gen_hpd, gen_sector, sector_angle, SectorGenSpec};
use sectorix::{CMatrix, Error, C64};

/// Opaque square complex matrix.
pub struct SxMatrix {
    inner: CMatrix,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotAccretive = 4,
    Singular = 5,
    NotPositiveDefinite = 6,
    Numerical = 7,
    UnknownCheck = 8,
    Panic = 9,
}

/// Outcome of `sx_check`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxVerdict {
    Pass = 0,
    Fail = 1,
    Vacuous = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxMeanKind {
    Harmonic = 0,
    Arithmetic = 1,
    Geometric = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SxStatus {
    match e {
        Error::NotSquare { .. } | Error::DimensionMismatch { .. } => SxStatus::DimensionMismatch,
        Error::NotAccretive { .. } => SxStatus::NotAccretive,
        Error::Singular { .. } => SxStatus::Singular,
        Error::NotPositiveDefinite { .. } => SxStatus::NotPositiveDefinite,
        Error::UnknownCheck(_) => SxStatus::UnknownCheck,
        Error::NoConvergence { .. } | Error::Quadrature(_) | Error::Conditioning { .. } | Error::Evaluation { .. } => {
            SxStatus::Numerical
        }
        _ => SxStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (SxStatus, String)>) -> SxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SxStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SxStatus::Panic
        }
    }
}

fn lib(e: Error) -> (SxStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SxStatus, String) {
    (SxStatus::NullPointer, format!("{what} is null"))
}

unsafe fn matrix_ref<'a>(p: *const SxMatrix, what: &str) -> Result<&'a CMatrix, (SxStatus, String)> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn put_matrix(out: *mut *mut SxMatrix, m: CMatrix) -> Result<(), (SxStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SxMatrix { inner: m }));
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `sx_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an `n x n` matrix from row-major real and imaginary parts.
/// `im` may be null for a real matrix.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `n * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_matrix_new(n: usize, re: *const f64, im: *const f64, out: *mut *mut SxMatrix) -> SxStatus {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        if n == 0 {
            return Err((SxStatus::InvalidArgument, "n must be positive".into()));
        }
        let len = n.checked_mul(n).ok_or((SxStatus::InvalidArgument, "n too large".into()))?;
        let re = std::slice::from_raw_parts(re, len);
        let im = if im.is_null() { None } else { Some(std::slice::from_raw_parts(im, len)) };
        let data = (0..len).map(|i| C64::new(re[i], im.map_or(0.0, |v| v[i]))).collect();
        let m = CMatrix::from_row_major(n, data).map_err(lib)?;
        m.check_finite().map_err(lib)?;
        put_matrix(out, m)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sx_matrix_free(m: *mut SxMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of a matrix, or 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sx_matrix_dim(m: *const SxMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.n())
}

/// Copies entries out in row-major order; either buffer may be null.
///
/// # Safety
/// `m` must be a live handle; non-null buffers must hold `n * n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sx_matrix_get(m: *const SxMatrix, re: *mut f64, im: *mut f64) -> SxStatus {
    guard(|| {
        let m = matrix_ref(m, "m")?;
        for (i, z) in m.as_slice().iter().enumerate() {
            if !re.is_null() {
                *re.add(i) = z.re;
            }
            if !im.is_null() {
                *im.add(i) = z.im;
            }
        }
        Ok(())
    })
}

/// Certified minimal sector angle of an accretive matrix.
///
/// # Safety
/// `m` must be a live handle and `alpha` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_sector_angle(m: *const SxMatrix, alpha: *mut f64) -> SxStatus {
    guard(|| {
        let m = matrix_ref(m, "m")?;
        let out = alpha.as_mut().ok_or_else(|| null("alpha"))?;
        *out = sector_angle(m).map_err(lib)?;
        Ok(())
    })
}

/// Seeded sector matrix with eigen-angles in `[-alpha_max, alpha_max]`, one of them extremal.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_gen_sector(n: usize, alpha_max: f64, cond_x: f64, seed: u64, out: *mut *mut SxMatrix) -> SxStatus {
    guard(|| {
        let spec = SectorGenSpec { n, alpha_max, cond_x, seed, force_extremal: true };
        put_matrix(out, gen_sector(&spec).map_err(lib)?.matrix)
    })
}

/// Seeded Hermitian positive definite matrix with spectrum in `[m, big_m]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_gen_hpd(n: usize, m: f64, big_m: f64, seed: u64, out: *mut *mut SxMatrix) -> SxStatus {
    guard(|| put_matrix(out, gen_hpd(n, m, big_m, seed).map_err(lib)?))
}

/// Weighted mean of two accretive matrices.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_mean(
    kind: SxMeanKind,
    a: *const SxMatrix,
    b: *const SxMatrix,
    v: f64,
    out: *mut *mut SxMatrix,
) -> SxStatus {
    guard(|| {
        let (a, b) = (matrix_ref(a, "a")?, matrix_ref(b, "b")?);
        let kind = match kind {
            SxMeanKind::Harmonic => MeanKind::Harmonic,
            SxMeanKind::Arithmetic => MeanKind::Arithmetic,
            SxMeanKind::Geometric => MeanKind::Geometric,
        };
        put_matrix(out, MeanSpec::new(kind, v).apply(a, b).map_err(lib)?)
    })
}

/// Geometric mean `A #_v B` with default quadrature controls.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_geometric_mean(a: *const SxMatrix, b: *const SxMatrix, v: f64, out: *mut *mut SxMatrix) -> SxStatus {
    guard(|| {
        let (a, b) = (matrix_ref(a, "a")?, matrix_ref(b, "b")?);
        put_matrix(out, geometric_mean_accretive(a, b, v, &QuadControls::default()).map_err(lib)?)
    })
}

/// `K(h) = (h + 1)^2 / (4h)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_kantorovich(h: f64, out: *mut f64) -> SxStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = kantorovich(h).map_err(lib)?;
        Ok(())
    })
}

/// Evaluates a catalogue check on the pair `(a, b)` at weight `v`, looping
/// over every `k`, `r`, `p` and `f`. Reports the smallest slack over all
/// non-vacuous results and the combined verdict (any failure fails; all
/// vacuous is vacuous).
///
/// # Safety
/// `id` must be a NUL-terminated string, `a`, `b` live handles, and the
/// outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sx_check(
    id: *const c_char,
    a: *const SxMatrix,
    b: *const SxMatrix,
    v: f64,
    tol: f64,
    min_slack: *mut f64,
    verdict: *mut SxVerdict,
) -> SxStatus {
    guard(|| {
        if id.is_null() {
            return Err(null("id"));
        }
        let id: CheckId = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| (SxStatus::InvalidArgument, "id is not UTF-8".into()))?
            .parse()
            .map_err(lib)?;
        let (a, b) = (matrix_ref(a, "a")?, matrix_ref(b, "b")?);
        let slack_out = min_slack.as_mut().ok_or_else(|| null("min_slack"))?;
        let verdict_out = verdict.as_mut().ok_or_else(|| null("verdict"))?;
        let inst = Instance::pair(a.clone(), b.clone());
        let results = evaluate(id, &inst, &Params::with_v(v), tol).map_err(lib)?;
        let met: Vec<_> = results.iter().filter(|r| !r.is_vacuous()).collect();
        *slack_out = met.iter().map(|r| r.slack).fold(f64::NAN, f64::min);
        *verdict_out = if met.is_empty() {
            SxVerdict::Vacuous
        } else if met.iter().any(|r| r.verdict == Verdict::Fail) {
            SxVerdict::Fail
        } else {
            SxVerdict::Pass
        };
        Ok(())
    })
}

/// Singular-value counterexample: `values` receives `s_1((A+B)^-1)`,
/// `s_1(I+(A+B)^-1)` and `s_1(I+A^-1) s_1(I+B^-1)`.
///
/// # Safety
/// `values` must hold 3 doubles and `violated` be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_counterexample_sv(values: *mut f64, violated: *mut bool) -> SxStatus {
    guard(|| {
        if values.is_null() || violated.is_null() {
            return Err(null("output"));
        }
        let b = sv_bundle().map_err(lib)?;
        for (i, x) in [b.s1_inv_sum, b.s1_shifted_inv_sum, b.product].into_iter().enumerate() {
            *values.add(i) = x;
        }
        *violated = b.violated;
        Ok(())
    })
}

/// Determinant counterexample: `values` receives `|det (A+B)^-1|`,
/// `|det(I+(A+B)^-1)|` and `|det(I+A^-1)| |det(I+B^-1)|`.
///
/// # Safety
/// `values` must hold 3 doubles and `violated` be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_counterexample_det(values: *mut f64, violated: *mut bool) -> SxStatus {
    guard(|| {
        if values.is_null() || violated.is_null() {
            return Err(null("output"));
        }
        let b = det_bundle().map_err(lib)?;
        for (i, x) in [b.det_inv_sum, b.det_shifted_inv_sum, b.product].into_iter().enumerate() {
            *values.add(i) = x;
        }
        *violated = b.violated;
        Ok(())
    })
}

#[doc(hidden)]
pub fn last_error_string() -> String {
    // SAFETY: the pointer comes from a live thread-local CString.
    unsafe { CStr::from_ptr(sx_last_error()) }.to_string_lossy().into_owned()
}
