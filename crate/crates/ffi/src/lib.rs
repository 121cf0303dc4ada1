//! C interface. Spaces and states are opaque handles created from JSON and
//! released with the matching `_free` function. Every fallible function
//! returns a `MatsloccStatus`; on failure a message is available from
//! `matslocc_last_error` until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matslocc::arith::PrimeField;
use matslocc::compression::{asymptotic_profile, mrk_tensor_power};
use matslocc::matspace::{MatrixSpace, SizeGuard};
use matslocc::rank::{max_rank_with_retry, RandomizedConfig};
use matslocc::shrunk::has_shrunk_subspace;
use matslocc::slocc::{msrk, TripartiteState};
use matslocc::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatsloccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    SizeGuard = 5,
    Failed = 6,
    Panic = 7,
}

/// Settings for randomized computations. `prime = 0` selects the default.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct MatsloccConfig {
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub size_guard: u64,
}

/// Opaque matrix space.
pub struct MatsloccSpace(MatrixSpace);

/// Opaque tripartite state.
pub struct MatsloccState(TripartiteState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MatsloccStatus {
    match e {
        Error::Parse(_) => MatsloccStatus::Parse,
        Error::SizeGuardExceeded { .. } | Error::BlowupSizeGuard { .. } => MatsloccStatus::SizeGuard,
        Error::InconsistentEvidence(_) => MatsloccStatus::Failed,
        _ => MatsloccStatus::InvalidArgument,
    }
}

enum Failure {
    Status(MatsloccStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> MatsloccStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MatsloccStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            MatsloccStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(MatsloccStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Status(MatsloccStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn randomized(cfg: &MatsloccConfig) -> Result<RandomizedConfig, Failure> {
    if cfg.trials == 0 {
        return Err(Failure::Status(MatsloccStatus::InvalidArgument, "trials must be at least 1".into()));
    }
    let field = if cfg.prime == 0 { PrimeField::default() } else { PrimeField::new(cfg.prime)? };
    Ok(RandomizedConfig { trials: cfg.trials, seed: cfg.seed, field, jobs: 1 })
}

/// Seed 0, 16 trials, default prime and size guard.
#[no_mangle]
pub extern "C" fn matslocc_config_default() -> MatsloccConfig {
    MatsloccConfig { seed: 0, trials: 16, prime: 0, size_guard: SizeGuard::default().0 }
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn matslocc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `json` must be a nul-terminated string and `out_space` writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_space_from_json(json: *const c_char, out_space: *mut *mut MatsloccSpace) -> MatsloccStatus {
    guarded(|| {
        let slot = out(out_space, "out_space")?;
        let space = MatrixSpace::from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(MatsloccSpace(space)));
        Ok(())
    })
}

/// # Safety
/// `space` must come from `matslocc_space_from_json` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn matslocc_space_free(space: *mut MatsloccSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// # Safety
/// `space` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_space_shape(
    space: *const MatsloccSpace,
    rows: *mut usize,
    cols: *mut usize,
    dim: *mut usize,
) -> MatsloccStatus {
    guarded(|| {
        let s = &handle(space, "space")?.0;
        *out(rows, "rows")? = s.rows();
        *out(cols, "cols")? = s.cols();
        *out(dim, "dim")? = s.dim();
        Ok(())
    })
}

/// Randomized maximal rank.
///
/// # Safety
/// `space` must be a live handle and `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_space_max_rank(
    space: *const MatsloccSpace,
    config: MatsloccConfig,
    rank: *mut usize,
) -> MatsloccStatus {
    guarded(|| {
        let s = &handle(space, "space")?.0;
        let slot = out(rank, "rank")?;
        *slot = max_rank_with_retry(s, &randomized(&config)?)?.rank;
        Ok(())
    })
}

/// Whether a square space has a shrunk subspace.
///
/// # Safety
/// `space` must be a live handle and `has_shrunk` writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_space_has_shrunk(
    space: *const MatsloccSpace,
    config: MatsloccConfig,
    has_shrunk: *mut bool,
) -> MatsloccStatus {
    guarded(|| {
        let s = &handle(space, "space")?.0;
        let slot = out(has_shrunk, "has_shrunk")?;
        *slot = has_shrunk_subspace(s, &randomized(&config)?, SizeGuard(config.size_guard))?.has_shrunk();
        Ok(())
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out_state` writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_state_from_json(json: *const c_char, out_state: *mut *mut MatsloccState) -> MatsloccStatus {
    guarded(|| {
        let slot = out(out_state, "out_state")?;
        let state = TripartiteState::from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(MatsloccState(state)));
        Ok(())
    })
}

/// # Safety
/// `state` must come from `matslocc_state_from_json` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn matslocc_state_free(state: *mut MatsloccState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Randomized maximal Schmidt rank of `copies` copies of the state.
///
/// # Safety
/// `state` must be a live handle and `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_state_msrk(
    state: *const MatsloccState,
    copies: u32,
    config: MatsloccConfig,
    rank: *mut usize,
) -> MatsloccStatus {
    guarded(|| {
        let s = &handle(state, "state")?.0;
        let slot = out(rank, "rank")?;
        if copies == 0 {
            return Err(Failure::Status(MatsloccStatus::InvalidArgument, "copies must be at least 1".into()));
        }
        *slot = msrk(s, copies, &randomized(&config)?, SizeGuard(config.size_guard))?.rank;
        Ok(())
    })
}

/// Maximal rank of `A(p, q, d)^{⊗copies}` as a decimal string, released
/// with `matslocc_string_free`.
///
/// # Safety
/// `decimal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_compression_power(
    p: usize,
    q: usize,
    d: usize,
    copies: u32,
    decimal: *mut *mut c_char,
) -> MatsloccStatus {
    guarded(|| {
        let slot = out(decimal, "decimal")?;
        let v = mrk_tensor_power(p, q, d, copies)?;
        *slot = CString::new(v.to_string()).expect("digits only").into_raw();
        Ok(())
    })
}

/// Asymptotic growth rate of the maximal rank of `A(p, q, d)^{⊗n}`.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn matslocc_compression_asymptotic(p: usize, q: usize, d: usize, value: *mut f64) -> MatsloccStatus {
    guarded(|| {
        let slot = out(value, "value")?;
        *slot = asymptotic_profile(p, q, d)?.mrk_inf;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn matslocc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
