//! C ABI for the exact hermitian-lattice density library.
//!
//! Handles are opaque; every computation returns an error code and writes
//! results as newly allocated C strings holding exact rationals (to be
//! released with [`hermlab_string_free`]). Matrices cross the boundary as the
//! library's JSON encoding:
//! `{"n": 2, "denom_pow": 0, "entries": [[["1","0"],["0","0"]], ...]}`.

use hermlab::closedform::ConstCtx;
use hermlab::density::DensityCtx;
use hermlab::herm::{HermMatrix, Partition};
use hermlab::lattice;
use hermlab::suites::{self, SuiteCtx};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum HermlabStatus {
    Ok = 0,
    InvalidArgument = 1,
    ExceedsDeskScale = 2,
    NotStabilized = 3,
    Internal = 4,
}

/// Opaque computation context for one prime power q = p^f.
pub struct HermlabCtx {
    density: Arc<DensityCtx>,
    consts: ConstCtx,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg).ok();
    });
}

fn status_of(err: &hermlab::Error) -> HermlabStatus {
    use hermlab::Error::*;
    match err {
        ExceedsDeskScale(_) => HermlabStatus::ExceedsDeskScale,
        NotStabilized(_) | DegreeNotConfirmed(_) => HermlabStatus::NotStabilized,
        InvalidArgument(_) | DimensionMismatch(_) | NotIntegral | RequiresConcreteQ
        | UnknownSuite(_) | Json(_) => HermlabStatus::InvalidArgument,
        _ => HermlabStatus::Internal,
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> HermlabStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HermlabStatus::Ok
        }
        Err(_) => {
            set_error("interior NUL in result".into());
            HermlabStatus::Internal
        }
    }
}

unsafe fn parse_c_matrix(
    ctx: &HermlabCtx,
    json: *const c_char,
) -> Result<HermMatrix, HermlabStatus> {
    if json.is_null() {
        set_error("null matrix pointer".into());
        return Err(HermlabStatus::InvalidArgument);
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("matrix JSON is not UTF-8".into());
            return Err(HermlabStatus::InvalidArgument);
        }
    };
    HermMatrix::from_json(text, ctx.density.efield.clone()).map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

/// Creates a context for the odd prime power q = p^f. Returns null on error;
/// consult [`hermlab_last_error`].
#[no_mangle]
pub extern "C" fn hermlab_ctx_new(p: u64, f: u32) -> *mut HermlabCtx {
    match DensityCtx::new(p, f) {
        Ok(dc) => {
            let density = Arc::new(dc);
            let consts = ConstCtx::concrete(Arc::clone(&density));
            Box::into_raw(Box::new(HermlabCtx { density, consts }))
        }
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Releases a context created by [`hermlab_ctx_new`].
///
/// # Safety
/// `ctx` must be a pointer previously returned by [`hermlab_ctx_new`] and not
/// already freed.
#[no_mangle]
pub unsafe extern "C" fn hermlab_ctx_free(ctx: *mut HermlabCtx) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Releases a string returned by any computation in this library.
///
/// # Safety
/// `s` must have been returned by this library and not already freed.
#[no_mangle]
pub unsafe extern "C" fn hermlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the most recent error on this thread, or null.
#[no_mangle]
pub extern "C" fn hermlab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// alpha(A, B) as an exact rational string.
///
/// # Safety
/// `ctx` must be a live context; `a_json`/`b_json` must be NUL-terminated;
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn hermlab_alpha(
    ctx: *const HermlabCtx,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut *mut c_char,
) -> HermlabStatus {
    let ctx = &*ctx;
    let a = match parse_c_matrix(ctx, a_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let b = match parse_c_matrix(ctx, b_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    match ctx.density.alpha(&a, &b) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// alpha'(A, B) = -d/dX alpha(A, B; X) at X = 1.
///
/// # Safety
/// As for [`hermlab_alpha`].
#[no_mangle]
pub unsafe extern "C" fn hermlab_alpha_prime(
    ctx: *const HermlabCtx,
    a_json: *const c_char,
    b_json: *const c_char,
    out: *mut *mut c_char,
) -> HermlabStatus {
    let ctx = &*ctx;
    let a = match parse_c_matrix(ctx, a_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let b = match parse_c_matrix(ctx, b_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    match ctx.density.alpha_prime(&a, &b) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// W_{h,t}(B, r) as an exact rational string.
///
/// # Safety
/// As for [`hermlab_alpha`].
#[no_mangle]
pub unsafe extern "C" fn hermlab_weighted_w(
    ctx: *const HermlabCtx,
    h: usize,
    t: usize,
    r: u32,
    b_json: *const c_char,
    out: *mut *mut c_char,
) -> HermlabStatus {
    let ctx = &*ctx;
    let b = match parse_c_matrix(ctx, b_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    match ctx.density.weighted_w(h, t, &b, r) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Number of overlattices of the lattice of B with Gram type lambda
/// (lambda passed as a comma-separated part list, e.g. "1,1").
///
/// # Safety
/// As for [`hermlab_alpha`]; `lambda` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hermlab_count_by_type(
    ctx: *const HermlabCtx,
    b_json: *const c_char,
    lambda: *const c_char,
    out: *mut u64,
) -> HermlabStatus {
    let ctx = &*ctx;
    let b = match parse_c_matrix(ctx, b_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let parts: Result<Vec<i64>, _> = match CStr::from_ptr(lambda).to_str() {
        Ok(t) => t.split(',').map(|x| x.trim().parse::<i64>()).collect(),
        Err(_) => {
            set_error("lambda is not UTF-8".into());
            return HermlabStatus::InvalidArgument;
        }
    };
    let parts = match parts {
        Ok(p) => p,
        Err(_) => {
            set_error("lambda parts must be integers".into());
            return HermlabStatus::InvalidArgument;
        }
    };
    match lattice::count_by_type(&b, &Partition::new(parts)) {
        Ok(c) => {
            *out = c as u64;
            HermlabStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Both displayed forms of the intersection number for a 2n x 2n integral B.
/// Writes "lattice-value;density-value;agree" (density parts empty when
/// `with_density` is 0).
///
/// # Safety
/// As for [`hermlab_alpha`].
#[no_mangle]
pub unsafe extern "C" fn hermlab_intersection_number(
    ctx: *const HermlabCtx,
    n: usize,
    b_json: *const c_char,
    with_density: i32,
    out: *mut *mut c_char,
) -> HermlabStatus {
    let ctx = &*ctx;
    let b = match parse_c_matrix(ctx, b_json) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let density = if with_density != 0 {
        Some(&*ctx.density)
    } else {
        None
    };
    match lattice::intersection_number(&b, n, &ctx.consts, density) {
        Ok(r) => {
            let value = r.value.eval_at_q(ctx.density.q());
            let rendered = match (r.density_value, r.density_agrees) {
                (Some(dv), Some(agree)) => format!("{value};{dv};{agree}"),
                _ => format!("{value};;"),
            };
            write_string(out, rendered)
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Runs a named verification suite; writes pass and fail counts.
///
/// # Safety
/// `ctx` live, `name` NUL-terminated, `pass`/`fail` valid destinations.
#[no_mangle]
pub unsafe extern "C" fn hermlab_verify_suite(
    ctx: *const HermlabCtx,
    name: *const c_char,
    pass: *mut u64,
    fail: *mut u64,
) -> HermlabStatus {
    let ctx = &*ctx;
    let name = match CStr::from_ptr(name).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("suite name is not UTF-8".into());
            return HermlabStatus::InvalidArgument;
        }
    };
    let sctx = SuiteCtx::with_density(Arc::clone(&ctx.density));
    match suites::run_suite(name, &sctx) {
        Ok(report) => {
            *pass = report.passed() as u64;
            *fail = report.failed() as u64;
            HermlabStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn take_string(p: *mut c_char) -> String {
        unsafe {
            let s = CStr::from_ptr(p).to_str().unwrap().to_string();
            hermlab_string_free(p);
            s
        }
    }

    #[test]
    fn alpha_through_the_c_abi() {
        let ctx = hermlab_ctx_new(3, 1);
        assert!(!ctx.is_null());
        let one = cstr(r#"{"n":1,"denom_pow":0,"entries":[[["1","0"]]]}"#);
        let mut out: *mut c_char = std::ptr::null_mut();
        let st = unsafe { hermlab_alpha(ctx, one.as_ptr(), one.as_ptr(), &mut out) };
        assert!(matches!(st, HermlabStatus::Ok));
        assert_eq!(take_string(out), "4/3");
        unsafe { hermlab_ctx_free(ctx) };
    }

    #[test]
    fn weighted_and_intersection_through_the_c_abi() {
        let ctx = hermlab_ctx_new(3, 1);
        let a1 = cstr(
            r#"{"n":2,"denom_pow":1,"entries":[[["3","0"],["0","0"]],[["0","0"],["1","0"]]]}"#,
        );
        let mut out: *mut c_char = std::ptr::null_mut();
        let st = unsafe { hermlab_weighted_w(ctx, 1, 1, 0, a1.as_ptr(), &mut out) };
        assert!(matches!(st, HermlabStatus::Ok));
        assert_eq!(take_string(out), "16/243");
        let b = cstr(
            r#"{"n":2,"denom_pow":0,"entries":[[["3","0"],["0","0"]],[["0","0"],["3","0"]]]}"#,
        );
        let st = unsafe { hermlab_intersection_number(ctx, 1, b.as_ptr(), 1, &mut out) };
        assert!(matches!(st, HermlabStatus::Ok));
        assert_eq!(take_string(out), "-2;-2;true");
        let mut cnt = 0u64;
        let lam = cstr("0,0");
        let st = unsafe { hermlab_count_by_type(ctx, b.as_ptr(), lam.as_ptr(), &mut cnt) };
        assert!(matches!(st, HermlabStatus::Ok));
        assert_eq!(cnt, 4);
        unsafe { hermlab_ctx_free(ctx) };
    }

    #[test]
    fn errors_set_messages() {
        let ctx = hermlab_ctx_new(3, 1);
        let bad = cstr("not json");
        let mut out: *mut c_char = std::ptr::null_mut();
        let st = unsafe { hermlab_alpha(ctx, bad.as_ptr(), bad.as_ptr(), &mut out) };
        assert!(matches!(st, HermlabStatus::InvalidArgument));
        let msg = hermlab_last_error();
        assert!(!msg.is_null());
        unsafe { hermlab_ctx_free(ctx) };
    }
}
