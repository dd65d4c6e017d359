//! C ABI over the floating-point side of `qkernel`.
//!
//! Every fallible function returns a [`QkStatus`] and writes results through
//! out-pointers. The message of the most recent failure on the calling thread
//! is available from [`qk_last_error`]. Handles are opaque and must be
//! released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qkernel::genfun::{genfun_verify, GenFunKind, GenFunParams};
use qkernel::pde::{pde_sides, residual_metric, PdeKind};
use qkernel::series::{phi_series_auto, q_binomial, q_pochhammer, q_pochhammer_inf, HyperSeries};
use qkernel::{
    jacobi_bivariate, laguerre_bivariate, verify_json, BivariatePolynomial, QContext, QError,
    TruncationPolicy,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    Domain = 1,
    TruncationExceeded = 2,
    DivergenceSuspected = 3,
    Index = 4,
    Parse = 5,
    Io = 6,
    NullPointer = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkPdeKind {
    Laguerre = 0,
    Jacobi = 1,
    Legendre = 2,
    Wall = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QkGenFunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub t: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QkGenFunRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub deviation: f64,
    pub n_lhs: usize,
    pub terms_rhs: usize,
}

/// Base `q` and truncation policy.
pub struct QkContext {
    inner: QContext<f64>,
}

/// Homogeneous bivariate polynomial with `f64` coefficients.
pub struct QkPolynomial {
    inner: BivariatePolynomial<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &QError) -> QkStatus {
    match e {
        QError::Domain(_) => QkStatus::Domain,
        QError::TruncationExceeded { .. } => QkStatus::TruncationExceeded,
        QError::DivergenceSuspected { .. } => QkStatus::DivergenceSuspected,
        QError::Index(_) => QkStatus::Index,
        QError::Parse(_) => QkStatus::Parse,
        QError::Io(_) => QkStatus::Io,
    }
}

enum Failure {
    Lib(QError),
    Null(&'static str),
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            QkStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            QkStatus::NullPointer
        }
        Err(_) => {
            set_last_error("internal panic");
            QkStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(QError::Parse(format!("{what} is not valid UTF-8"))))
}

/// Message of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out_ctx` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qk_context_new(q: f64, out_ctx: *mut *mut QkContext) -> QkStatus {
    guard(|| {
        let slot = out(out_ctx, "out_ctx")?;
        *slot = ptr::null_mut();
        let inner = QContext::float(q)?;
        *slot = Box::into_raw(Box::new(QkContext { inner }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from [`qk_context_new`] and not have been freed. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qk_context_free(ctx: *mut QkContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context handle.
#[no_mangle]
pub unsafe extern "C" fn qk_context_set_truncation(
    ctx: *mut QkContext,
    max_terms: usize,
    tail_tol: f64,
    consecutive_small: usize,
) -> QkStatus {
    guard(|| {
        let ctx = out(ctx, "ctx")?;
        ctx.inner.trunc = TruncationPolicy::new(max_terms, tail_tol, consecutive_small)?;
        Ok(())
    })
}

/// `(a; q)_n`.
///
/// # Safety
/// `ctx` must be a live context handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_q_pochhammer(
    ctx: *const QkContext,
    a: f64,
    n: usize,
    out_value: *mut f64,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        *out(out_value, "out_value")? = q_pochhammer(&a, &ctx.inner, n);
        Ok(())
    })
}

/// `(a; q)_inf` with an error bound.
///
/// # Safety
/// `ctx` must be a live context handle; `out_value` and `out_error` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_q_pochhammer_inf(
    ctx: *const QkContext,
    a: f64,
    out_value: *mut f64,
    out_error: *mut f64,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let s = q_pochhammer_inf(a, &ctx.inner)?;
        *out(out_value, "out_value")? = s.value;
        *out(out_error, "out_error")? = s.error;
        Ok(())
    })
}

/// # Safety
/// `ctx` must be a live context handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_q_binomial(
    ctx: *const QkContext,
    n: usize,
    k: usize,
    out_value: *mut f64,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        *out(out_value, "out_value")? = q_binomial(n, k, &ctx.inner)?;
        Ok(())
    })
}

/// `r phi s (upper; lower; q, z)` under the context's stopping rule.
///
/// # Safety
/// `upper` and `lower` must point to `n_upper` and `n_lower` readable values
/// (either may be NULL when its length is 0); out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_phi_series(
    ctx: *const QkContext,
    upper: *const f64,
    n_upper: usize,
    lower: *const f64,
    n_lower: usize,
    z: f64,
    out_value: *mut f64,
    out_error: *mut f64,
    out_terms: *mut usize,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let spec = HyperSeries::new(
            slice(upper, n_upper, "upper")?.to_vec(),
            slice(lower, n_lower, "lower")?.to_vec(),
            z,
        );
        let s = phi_series_auto(&spec, &ctx.inner)?;
        *out(out_value, "out_value")? = s.value;
        *out(out_error, "out_error")? = s.error;
        *out(out_terms, "out_terms")? = s.terms;
        Ok(())
    })
}

unsafe fn new_poly(
    out_poly: *mut *mut QkPolynomial,
    make: impl FnOnce() -> qkernel::Result<BivariatePolynomial<f64>>,
) -> QkStatus {
    guard(|| {
        let slot = out(out_poly, "out_poly")?;
        *slot = ptr::null_mut();
        let inner = make()?;
        *slot = Box::into_raw(Box::new(QkPolynomial { inner }));
        Ok(())
    })
}

/// Bivariate q-Laguerre polynomial of degree `n`.
///
/// # Safety
/// `ctx` must be a live context handle and `out_poly` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_laguerre(
    ctx: *const QkContext,
    n: usize,
    alpha: f64,
    out_poly: *mut *mut QkPolynomial,
) -> QkStatus {
    let Some(ctx) = ctx.as_ref() else {
        set_last_error("null pointer: ctx");
        return QkStatus::NullPointer;
    };
    new_poly(out_poly, || laguerre_bivariate(n, &alpha, &ctx.inner))
}

/// Bivariate little q-Jacobi polynomial of degree `n`.
///
/// # Safety
/// `ctx` must be a live context handle and `out_poly` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_jacobi(
    ctx: *const QkContext,
    n: usize,
    alpha: f64,
    beta: f64,
    out_poly: *mut *mut QkPolynomial,
) -> QkStatus {
    let Some(ctx) = ctx.as_ref() else {
        set_last_error("null pointer: ctx");
        return QkStatus::NullPointer;
    };
    new_poly(out_poly, || jacobi_bivariate(n, &alpha, &beta, &ctx.inner))
}

/// Polynomial from `len` coefficients of `x^k y^(len-1-k)`.
///
/// # Safety
/// `coeffs` must point to `len` readable values (NULL allowed when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn qk_poly_from_coeffs(
    coeffs: *const f64,
    len: usize,
    out_poly: *mut *mut QkPolynomial,
) -> QkStatus {
    match slice(coeffs, len, "coeffs") {
        Ok(c) => {
            let c = c.to_vec();
            new_poly(out_poly, || Ok(BivariatePolynomial::new(c)))
        }
        Err(_) => {
            set_last_error("null pointer: coeffs");
            QkStatus::NullPointer
        }
    }
}

/// # Safety
/// `poly` must come from one of the `qk_poly_*` constructors and not have
/// been freed. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_free(poly: *mut QkPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree, or -1 for the zero polynomial and for NULL.
///
/// # Safety
/// `poly` must be a live polynomial handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_degree(poly: *const QkPolynomial) -> isize {
    poly.as_ref().map_or(-1, |p| p.inner.degree())
}

/// Copies the coefficients into `buf`, which must hold `degree + 1` values.
///
/// # Safety
/// `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_coeffs(
    poly: *const QkPolynomial,
    buf: *mut f64,
    len: usize,
) -> QkStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        let c = p.inner.coeffs();
        if len < c.len() {
            return Err(
                QError::Index(format!("buffer holds {len} values, {} needed", c.len())).into(),
            );
        }
        if !c.is_empty() {
            if buf.is_null() {
                return Err(Failure::Null("buf"));
            }
            ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
        }
        Ok(())
    })
}

/// # Safety
/// `poly` must be a live polynomial handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_poly_evaluate(
    poly: *const QkPolynomial,
    x: f64,
    y: f64,
    out_value: *mut f64,
) -> QkStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        *out(out_value, "out_value")? = p.inner.evaluate(&x, &y);
        Ok(())
    })
}

/// Scale-free residual of the chosen q-partial differential equation on
/// `poly`; `beta` is ignored except for [`QkPdeKind::Jacobi`], `alpha` for
/// [`QkPdeKind::Legendre`].
///
/// # Safety
/// `ctx` and `poly` must be live handles and `out_metric` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_pde_residual_metric(
    ctx: *const QkContext,
    poly: *const QkPolynomial,
    kind: QkPdeKind,
    alpha: f64,
    beta: f64,
    out_metric: *mut f64,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let p = deref(poly, "poly")?;
        let kind = match kind {
            QkPdeKind::Laguerre => PdeKind::Laguerre { alpha },
            QkPdeKind::Jacobi => PdeKind::Jacobi { alpha, beta },
            QkPdeKind::Legendre => PdeKind::Legendre,
            QkPdeKind::Wall => PdeKind::Wall { alpha },
        };
        let (lhs, rhs) = pde_sides(&p.inner, &kind, &ctx.inner)?;
        *out(out_metric, "out_metric")? = residual_metric(&lhs, &rhs)?;
        Ok(())
    })
}

/// Compares the `n_lhs`-term partial sum of a generating function with its
/// right member. `kind` is a label such as `"l1"` or `"gf.jacobi"`.
///
/// # Safety
/// `kind` must be a NUL-terminated string, `params` readable and `out_record`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qk_genfun_verify(
    ctx: *const QkContext,
    kind: *const c_char,
    params: *const QkGenFunParams,
    n_lhs: usize,
    out_record: *mut QkGenFunRecord,
) -> QkStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let kind = GenFunKind::parse(string(kind, "kind")?)?;
        let p = deref(params, "params")?;
        let gp = GenFunParams {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            x: p.x,
            y: p.y,
            u: p.u,
            v: p.v,
            t: p.t,
        };
        let rec = genfun_verify(kind, &gp, &ctx.inner, n_lhs)?;
        *out(out_record, "out_record")? = QkGenFunRecord {
            lhs: rec.lhs,
            rhs: rec.rhs,
            rhs_error: rec.rhs_error,
            deviation: rec.deviation,
            n_lhs: rec.n_lhs,
            terms_rhs: rec.terms_rhs,
        };
        Ok(())
    })
}

/// Runs one catalog identity. On success `*out_json` receives
/// `{"reports": [...], "summary": {...}}`, to be released with
/// [`qk_string_free`]. `config_json` may be NULL or empty for defaults.
///
/// # Safety
/// `id` must be a NUL-terminated string, `config_json` NULL or one, and
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_verify_json(
    id: *const c_char,
    config_json: *const c_char,
    out_json: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        *slot = ptr::null_mut();
        let id = string(id, "id")?;
        let cfg = if config_json.is_null() {
            ""
        } else {
            string(config_json, "config_json")?
        };
        let text = verify_json(id, cfg)?;
        *slot = CString::new(text)
            .map_err(|_| QError::Parse("report contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
