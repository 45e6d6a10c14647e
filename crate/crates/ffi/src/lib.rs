//! C ABI over `zetacorr`.
//!
//! Zero sets and Λ tables are opaque handles created by `zpc_*` constructors
//! and released with the matching `_free`. Every fallible call returns a
//! [`ZpcStatus`]; on failure a description is available from
//! [`zpc_last_error_message`] on the same thread. Results are written through
//! out-pointers, which are left untouched on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zetacorr::conjecture::{m_of_x, BetaSchedule, EllSchedule};
use zetacorr::explicit::{truncated_psi, zero_sum_r};
use zetacorr::pair_correlation::{f_direct, f_integral, lemma2_rhs};
use zetacorr::primes::{li, pi_count, psi, sieve_lambda, LambdaTable};
use zetacorr::zeros::{find_zeros, ingest_zeros, read_cache, write_cache, ZeroSet, ZeroSource};
use zetacorr::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZpcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    Range = 4,
    HeightExceeded = 5,
    Completeness = 6,
    Parse = 7,
    Capacity = 8,
    Convergence = 9,
    IntegerArgument = 10,
    ScheduleDomain = 11,
    Format = 12,
    Io = 13,
    Panic = 14,
}

impl From<&Error> for ZpcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) | Error::EmptyGrid => ZpcStatus::Domain,
            Error::Range(_) => ZpcStatus::Range,
            Error::HeightExceeded { .. } => ZpcStatus::HeightExceeded,
            Error::Completeness { .. } => ZpcStatus::Completeness,
            Error::Parse { .. } | Error::Ordering { .. } => ZpcStatus::Parse,
            Error::Capacity { .. } => ZpcStatus::Capacity,
            Error::Convergence(_) => ZpcStatus::Convergence,
            Error::IntegerArgument(_) => ZpcStatus::IntegerArgument,
            Error::ScheduleDomain(_) => ZpcStatus::ScheduleDomain,
            Error::Format(_) => ZpcStatus::Format,
            Error::Io(_) => ZpcStatus::Io,
        }
    }
}

/// 𝓛(T) choices for [`zpc_m_of_x`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZpcEllKind {
    LogT = 0,
    LogxProxy = 1,
    /// (log T)^param
    Power = 2,
}

/// β(T) choices for [`zpc_m_of_x`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZpcBetaKind {
    /// β = param
    Constant = 0,
    /// (log T)^{3 − 2·param}
    Cor1Power = 1,
    /// max(1, log³T / (param⁴ (log log 2T)²))
    Cor3 = 2,
}

/// Opaque set of zeta-zero ordinates.
pub struct ZpcZeroSet(ZeroSet);

/// Opaque von Mangoldt table.
pub struct ZpcLambdaTable(LambdaTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ZpcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(ZpcStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn null(what: &str) -> Failure {
    Failure(ZpcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and the thread's
/// last-error message.
fn guard<F: FnOnce() -> FfiResult<()>>(f: F) -> ZpcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZpcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            ZpcStatus::Panic
        }
    }
}

unsafe fn path_arg<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ZpcStatus::InvalidUtf8, "path is not valid UTF-8".into()))
}

unsafe fn zeros_arg<'a>(zs: *const ZpcZeroSet) -> FfiResult<&'a ZeroSet> {
    zs.as_ref().map(|z| &z.0).ok_or_else(|| null("zero set"))
}

unsafe fn table_arg<'a>(t: *const ZpcLambdaTable) -> FfiResult<&'a LambdaTable> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null("table"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn io_err(e: std::io::Error) -> Failure {
    Error::Io(e).into()
}

/// Message for the last failed call on this thread, or NULL if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zpc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zpc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Computes all zeros with 0 < γ ≤ t_max (20 ≤ t_max ≤ 1e5).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_compute(t_max: f64, refine_tol: f64, out: *mut *mut ZpcZeroSet) -> ZpcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let zs = find_zeros(t_max, refine_tol)?;
        write_out(out, Box::into_raw(Box::new(ZpcZeroSet(zs))))
    })
}

/// Reads a text table (one ordinate per line). `precision <= 0` selects the
/// default of 1e-9.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_ingest(path: *const c_char, precision: f64, out: *mut *mut ZpcZeroSet) -> ZpcStatus {
    guard(|| {
        let path = path_arg(path)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let file = File::open(path).map_err(io_err)?;
        let precision = (precision > 0.0).then_some(precision);
        let zs = ingest_zeros(BufReader::new(file), precision)?;
        write_out(out, Box::into_raw(Box::new(ZpcZeroSet(zs))))
    })
}

/// Builds a zero set from `len` strictly increasing ordinates, complete up to
/// `t_max`.
///
/// # Safety
/// `gammas` must point to `len` readable doubles (or be NULL with len 0).
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_from_array(
    gammas: *const f64,
    len: usize,
    t_max: f64,
    precision: f64,
    out: *mut *mut ZpcZeroSet,
) -> ZpcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let values = if len == 0 {
            Vec::new()
        } else if gammas.is_null() {
            return Err(null("gammas"));
        } else {
            std::slice::from_raw_parts(gammas, len).to_vec()
        };
        let zs = ZeroSet::new(values, t_max, ZeroSource::Ingested, precision)?;
        write_out(out, Box::into_raw(Box::new(ZpcZeroSet(zs))))
    })
}

/// Loads a binary zero cache.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_load_cache(path: *const c_char, out: *mut *mut ZpcZeroSet) -> ZpcStatus {
    guard(|| {
        let path = path_arg(path)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let file = File::open(path).map_err(io_err)?;
        let zs = read_cache(BufReader::new(file), ZeroSource::Computed)?;
        write_out(out, Box::into_raw(Box::new(ZpcZeroSet(zs))))
    })
}

/// Writes a binary zero cache.
///
/// # Safety
/// `zs` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_save_cache(zs: *const ZpcZeroSet, path: *const c_char) -> ZpcStatus {
    guard(|| {
        let zs = zeros_arg(zs)?;
        let path = path_arg(path)?;
        let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
        write_cache(zs, &mut w)?;
        w.flush().map_err(io_err)
    })
}

/// Number of ordinates; 0 for a NULL handle.
///
/// # Safety
/// `zs` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_len(zs: *const ZpcZeroSet) -> usize {
    zs.as_ref().map_or(0, |z| z.0.len())
}

/// Height up to which the set is complete; NaN for a NULL handle.
///
/// # Safety
/// `zs` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_t_max(zs: *const ZpcZeroSet) -> f64 {
    zs.as_ref().map_or(f64::NAN, |z| z.0.t_max())
}

/// The `index`-th ordinate (0-based).
///
/// # Safety
/// `zs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_get(zs: *const ZpcZeroSet, index: usize, out: *mut f64) -> ZpcStatus {
    guard(|| {
        let zs = zeros_arg(zs)?;
        let g = zs.gammas().get(index).copied().ok_or_else(|| {
            Failure(
                ZpcStatus::Range,
                format!("index {index} out of range for {} ordinates", zs.len()),
            )
        })?;
        write_out(out, g)
    })
}

/// Copies up to `capacity` ordinates into `buf`; the number copied goes to
/// `written`.
///
/// # Safety
/// `buf` must have room for `capacity` doubles; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_copy(
    zs: *const ZpcZeroSet,
    buf: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> ZpcStatus {
    guard(|| {
        let zs = zeros_arg(zs)?;
        if written.is_null() {
            return Err(null("written"));
        }
        let n = zs.len().min(capacity);
        if n > 0 {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(zs.gammas().as_ptr(), buf, n);
        }
        write_out(written, n)
    })
}

/// Releases a zero set. NULL is ignored.
///
/// # Safety
/// `zs` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zpc_zeros_free(zs: *mut ZpcZeroSet) {
    if !zs.is_null() {
        drop(Box::from_raw(zs));
    }
}

/// Sieves Λ(n) for n ≤ n_max (at most 1e8).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_sieve(n_max: u64, out: *mut *mut ZpcLambdaTable) -> ZpcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let t = sieve_lambda(n_max)?;
        write_out(out, Box::into_raw(Box::new(ZpcLambdaTable(t))))
    })
}

/// Releases a Λ table. NULL is ignored.
///
/// # Safety
/// `table` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zpc_sieve_free(table: *mut ZpcLambdaTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// ψ(x) = Σ_{n≤x} Λ(n).
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_psi(table: *const ZpcLambdaTable, x: f64, out: *mut f64) -> ZpcStatus {
    guard(|| write_out(out, psi(x, table_arg(table)?)?))
}

/// π(x).
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_pi(table: *const ZpcLambdaTable, x: f64, out: *mut u64) -> ZpcStatus {
    guard(|| write_out(out, pi_count(x, table_arg(table)?)?))
}

/// li(x) = ∫₂^x dt/log t.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_li(x: f64, out: *mut f64) -> ZpcStatus {
    guard(|| write_out(out, li(x)?))
}

/// F_β(x, T) by the pair sum. `err` may be NULL.
///
/// # Safety
/// `zs` must be a live handle; `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zpc_f_direct(
    zs: *const ZpcZeroSet,
    x: f64,
    t: f64,
    beta: f64,
    value: *mut f64,
    err: *mut f64,
) -> ZpcStatus {
    guard(|| {
        let e = f_direct(zeros_arg(zs)?, x, t, beta)?;
        write_out(value, e.value)?;
        if !err.is_null() {
            err.write(e.err_estimate);
        }
        Ok(())
    })
}

/// F_β(x, T) from the integral representation. `err` may be NULL.
///
/// # Safety
/// `zs` must be a live handle; `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zpc_f_integral(
    zs: *const ZpcZeroSet,
    x: f64,
    t: f64,
    beta: f64,
    tail_tol: f64,
    value: *mut f64,
    err: *mut f64,
) -> ZpcStatus {
    guard(|| {
        let e = f_integral(zeros_arg(zs)?, x, t, beta, tail_tol)?;
        write_out(value, e.value)?;
        if !err.is_null() {
            err.write(e.err_estimate);
        }
        Ok(())
    })
}

/// F_β(x, T) rebuilt from F(·, T) through the β-weighted integral identity.
///
/// # Safety
/// `zs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_lemma2_rhs(
    zs: *const ZpcZeroSet,
    x: f64,
    t: f64,
    beta: f64,
    quad_tol: f64,
    out: *mut f64,
) -> ZpcStatus {
    guard(|| write_out(out, lemma2_rhs(zeros_arg(zs)?, x, t, beta, quad_tol)?))
}

/// x − 2 Re Σ_{γ≤Y} x^{1/2+iγ}/(1/2+iγ). `x` must not be an integer.
///
/// # Safety
/// `zs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_truncated_psi(zs: *const ZpcZeroSet, x: f64, y: f64, out: *mut f64) -> ZpcStatus {
    guard(|| write_out(out, truncated_psi(x, y, zeros_arg(zs)?)?))
}

/// −2 Im Σ_{W<γ≤Y} x^{iγ}/γ.
///
/// # Safety
/// `zs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_zero_sum_r(zs: *const ZpcZeroSet, x: f64, w: f64, y: f64, out: *mut f64) -> ZpcStatus {
    guard(|| write_out(out, zero_sum_r(x, w, y, zeros_arg(zs)?)?))
}

/// M(x) = Σ_k √(𝓛(2^k)/β(2^k)) for the given schedules.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zpc_m_of_x(
    x: f64,
    ell: ZpcEllKind,
    ell_param: f64,
    beta: ZpcBetaKind,
    beta_param: f64,
    out: *mut f64,
) -> ZpcStatus {
    guard(|| {
        let ell = match ell {
            ZpcEllKind::LogT => EllSchedule::log_t(),
            ZpcEllKind::LogxProxy => EllSchedule::logx_proxy(),
            ZpcEllKind::Power => EllSchedule::custom_power(ell_param)?,
        };
        let beta = match beta {
            ZpcBetaKind::Constant => BetaSchedule::constant(beta_param)?,
            ZpcBetaKind::Cor1Power => BetaSchedule::cor1_power(beta_param)?,
            ZpcBetaKind::Cor3 => BetaSchedule::cor3_gm(beta_param)?,
        };
        write_out(out, m_of_x(x, &ell, &beta)?)
    })
}
