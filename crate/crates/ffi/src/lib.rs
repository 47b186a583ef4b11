//! C ABI for skolab-core.
//!
//! Every fallible call returns a [`SkolabStatus`]; on failure the message is
//! kept per thread and read back with [`skolab_last_error`]. Handles and
//! strings handed out here must be released with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skolab_core::formulas::{dim_der_out, dim_sko};
use skolab_core::report::{run_suite, Instance, Params, Report, Suite};
use skolab_core::Error;

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkolabStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad p, n, t, λ or suite name.
    InvalidArgument = 2,
    /// Construction or linear algebra failed.
    Computation = 3,
    /// A result does not fit the output type.
    Overflow = 4,
    /// Internal panic; the handle should be discarded.
    Panic = 5,
}

/// Opaque algebra handle.
pub struct SkolabAlgebra {
    inst: Instance,
    t: Vec<u32>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn classify(e: &Error) -> SkolabStatus {
    use skolab_core::AlgebraError as A;
    match e {
        Error::Field(_) | Error::Config(_) | Error::Formula(_) => SkolabStatus::InvalidArgument,
        Error::Algebra(A::Field(_) | A::RankTooSmall(_) | A::BadTuple { .. } | A::TooLarge(_)) => SkolabStatus::InvalidArgument,
        _ => SkolabStatus::Computation,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (SkolabStatus, String)>) -> SkolabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkolabStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            SkolabStatus::Panic
        }
    }
}

fn core_err(e: impl Into<Error>) -> (SkolabStatus, String) {
    let e = e.into();
    (classify(&e), e.to_string())
}

fn null(what: &str) -> (SkolabStatus, String) {
    (SkolabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn tuple<'a>(t: *const u32, len: usize) -> Result<&'a [u32], (SkolabStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if t.is_null() {
        return Err(null("t"));
    }
    Ok(std::slice::from_raw_parts(t, len))
}

fn to_u64(v: num_bigint::BigInt, what: &str) -> Result<u64, (SkolabStatus, String)> {
    u64::try_from(&v).map_err(|_| (SkolabStatus::Overflow, format!("{what} = {v} does not fit in 64 bits")))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn skolab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds SKO(n, n+1; λ, t) over GF(p). `t` has `t_len == n` entries.
///
/// # Safety
/// `t` must point to `t_len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skolab_algebra_new(
    p: u32,
    n: usize,
    t: *const u32,
    t_len: usize,
    lambda: i64,
    seed: u64,
    out: *mut *mut SkolabAlgebra,
) -> SkolabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let t = tuple(t, t_len)?.to_vec();
        if lambda < 0 || lambda >= p as i64 {
            return Err((SkolabStatus::InvalidArgument, format!("lambda must lie in 0..{p}, got {lambda}")));
        }
        let inst = Instance::new(p, n, &t, lambda, seed).map_err(core_err)?;
        *out = Box::into_raw(Box::new(SkolabAlgebra { inst, t }));
        Ok(())
    })
}

/// # Safety
/// `alg` must come from [`skolab_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn skolab_algebra_free(alg: *mut SkolabAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the ambient superalgebra O(n; t) ⊗ Λ(n+1).
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skolab_ambient_dim(alg: *const SkolabAlgebra, out: *mut usize) -> SkolabStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null("alg"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = alg.inst.ctx.dim();
        Ok(())
    })
}

/// Dimensions of g, g' and g'' (computed once, then cached on the handle).
///
/// # Safety
/// `alg` must be a live handle; `out` must have room for 3 values.
#[no_mangle]
pub unsafe extern "C" fn skolab_derived_dims(alg: *const SkolabAlgebra, out: *mut usize) -> SkolabStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null("alg"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = alg.inst.series().map_err(core_err)?;
        let dims = [s.g.dim(), s.g1.dim(), s.g2.dim()];
        ptr::copy_nonoverlapping(dims.as_ptr(), out, 3);
        Ok(())
    })
}

/// Closed-form dim SKO(n, n+1; λ, t).
///
/// # Safety
/// `t` must point to `t_len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skolab_formula_dim(
    p: u32,
    n: usize,
    t: *const u32,
    t_len: usize,
    lambda: i64,
    out: *mut u64,
) -> SkolabStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let t = tuple(t, t_len)?;
        *out = to_u64(dim_sko(p, n, t, lambda).map_err(core_err)?, "dimension")?;
        Ok(())
    })
}

/// Closed-form dimension of the outer derivation algebra.
///
/// # Safety
/// Same as [`skolab_formula_dim`].
#[no_mangle]
pub unsafe extern "C" fn skolab_formula_der_out(
    p: u32,
    n: usize,
    t: *const u32,
    t_len: usize,
    lambda: i64,
    out: *mut u64,
) -> SkolabStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let t = tuple(t, t_len)?;
        *out = to_u64(dim_der_out(p, n, t, lambda).map_err(core_err)?, "outer dimension")?;
        Ok(())
    })
}

/// Runs verification suites and returns the JSON report.
///
/// `suites` is a comma-separated list of suite names, or null / "all".
/// `all_pass` receives whether every check passed. Free `json_out` with
/// [`skolab_string_free`].
///
/// # Safety
/// `alg` must be a live handle; `suites` null or NUL-terminated; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn skolab_verify(
    alg: *const SkolabAlgebra,
    suites: *const c_char,
    json_out: *mut *mut c_char,
    all_pass: *mut bool,
) -> SkolabStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null("alg"))?;
        if json_out.is_null() {
            return Err(null("json_out"));
        }
        *json_out = ptr::null_mut();
        let names = if suites.is_null() {
            "all".to_string()
        } else {
            CStr::from_ptr(suites)
                .to_str()
                .map_err(|_| (SkolabStatus::InvalidArgument, "suite list is not UTF-8".to_string()))?
                .to_string()
        };
        let mut chosen: Vec<Suite> = if names.trim() == "all" {
            Suite::ALL.to_vec()
        } else {
            names.split(',').map(|s| s.trim().parse()).collect::<Result<_, Error>>().map_err(core_err)?
        };
        chosen.sort();
        chosen.dedup();
        let mut reports = Vec::new();
        for s in chosen {
            reports.push(run_suite(&alg.inst, s).map_err(core_err)?);
        }
        let ctx = &alg.inst.ctx;
        let params = Params {
            p: ctx.p(),
            n: ctx.n(),
            t: alg.t.clone(),
            lambda: vec![alg.inst.lambda()],
            seed: alg.inst.seed,
        };
        let report = Report { params, suites: reports };
        let mut buf = Vec::new();
        report.write_json(&mut buf).map_err(core_err)?;
        if let Some(flag) = all_pass.as_mut() {
            *flag = report.pass();
        }
        *json_out = CString::new(buf).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn skolab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
