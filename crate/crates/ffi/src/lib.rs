//! C ABI for `biharm`.
//!
//! Every entry point returns a [`BhStatus`]. Results are written through out
//! pointers, and objects cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. On failure
//! [`bh_last_error`] describes what went wrong on the calling thread.
//! Panics never unwind into C; they surface as [`BhStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use biharm::elasticity::{ElasticSolution, PipelineOptions};
use biharm::{
    BElement, BoundaryFunction, Error, LameConstants, MonogenicFunction, Problem14, V2Formula,
};

/// Status code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhStatus {
    Ok = 0,
    NullPointer = 1,
    ZeroDivisor = 2,
    Domain = 3,
    DegreeOverflow = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// `u1·e₁ + u2·ie₁ + u3·e₂ + u4·ie₂`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BhElement {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
}

impl From<BElement> for BhElement {
    fn from(e: BElement) -> Self {
        BhElement {
            u1: e.u1,
            u2: e.u2,
            u3: e.u3,
            u4: e.u4,
        }
    }
}

impl From<BhElement> for BElement {
    fn from(e: BhElement) -> Self {
        BElement::new(e.u1, e.u2, e.u3, e.u4)
    }
}

/// `a0 + Σ cos[n-1]·cos nθ + sin[n-1]·sin nθ` for `n = 1..=len`.
/// `cos` and `sin` may be null only when `len` is 0.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BhFourier {
    pub a0: f64,
    pub cos: *const f64,
    pub sin: *const f64,
    pub len: usize,
}

/// Which formula for `v_y` the elasticity solver uses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhV2Formula {
    Derived = 0,
    Printed = 1,
}

/// All fields of the elastic solution at one point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BhElasticPoint {
    /// `U1..U4`
    pub components: [f64; 4],
    /// `u_x, v_y, u_y, v_x`
    pub gradients: [f64; 4],
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub tau_xy: f64,
    pub u: f64,
    pub v: f64,
}

/// Opaque monogenic function.
pub struct BhMonogenic(MonogenicFunction);

/// Opaque elastic solution.
pub struct BhElasticSolution(ElasticSolution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BhStatus, msg: impl Into<String>) -> BhStatus {
    set_last_error(msg);
    status
}

fn from_error(e: Error) -> BhStatus {
    let status = match e {
        Error::ZeroDivisor => BhStatus::ZeroDivisor,
        Error::Domain { .. } => BhStatus::Domain,
        Error::DegreeOverflow { .. } => BhStatus::DegreeOverflow,
        Error::InvalidParameter { .. } => BhStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`BhStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), BhStatus>) -> BhStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BhStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(BhStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), BhStatus> {
    if p.is_null() {
        Err(fail(BhStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_fourier(f: *const BhFourier, name: &str) -> Result<BoundaryFunction, BhStatus> {
    non_null(f, name)?;
    let f = &*f;
    let part = |p: *const f64, which: &str| -> Result<Vec<f64>, BhStatus> {
        if f.len == 0 {
            return Ok(Vec::new());
        }
        non_null(p, &format!("{name}.{which}"))?;
        Ok(slice::from_raw_parts(p, f.len).to_vec())
    };
    let (a, b) = (part(f.cos, "cos")?, part(f.sin, "sin")?);
    if !(f.a0.is_finite() && a.iter().chain(&b).all(|v| v.is_finite())) {
        return Err(fail(
            BhStatus::InvalidArgument,
            format!("{name} has non-finite coefficients"),
        ));
    }
    Ok(BoundaryFunction::new(f.a0, a, b))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `out = a · b`
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_multiply(a: BhElement, b: BhElement, out: *mut BhElement) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = (BElement::from(a) * BElement::from(b)).into();
        Ok(())
    })
}

/// `out = a⁻¹`; fails with `ZeroDivisor` on the nilpotent line.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_invert(a: BhElement, out: *mut BhElement) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = BElement::from(a).invert().map_err(from_error)?.into();
        Ok(())
    })
}

/// `Σ coeffs[k]·ζ^k` for `k < len`.
///
/// # Safety
/// `coeffs` must point to `len` elements; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_monogenic_from_polynomial(
    coeffs: *const BhElement,
    len: usize,
    out: *mut *mut BhMonogenic,
) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        if len == 0 {
            return Err(fail(BhStatus::InvalidArgument, "len must be at least 1"));
        }
        non_null(coeffs, "coeffs")?;
        let c: Vec<BElement> = slice::from_raw_parts(coeffs, len)
            .iter()
            .map(|&e| e.into())
            .collect();
        *out = Box::into_raw(Box::new(BhMonogenic(MonogenicFunction::from_b_polynomial(
            &c,
        ))));
        Ok(())
    })
}

/// Solves the problem of recovering a monogenic function from the boundary
/// values of its `U1` and `U4` components.
///
/// # Safety
/// `u1`, `u4` must point to valid [`BhFourier`] descriptors; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_monogenic_solve(
    u1: *const BhFourier,
    u4: *const BhFourier,
    out: *mut *mut BhMonogenic,
) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let p = Problem14::new(read_fourier(u1, "u1")?, read_fourier(u4, "u4")?);
        let phi = biharm::solve_14(&p).map_err(from_error)?;
        *out = Box::into_raw(Box::new(BhMonogenic(phi)));
        Ok(())
    })
}

/// Value at `x·e₁ + y·e₂`, which must lie in the closed unit disk.
///
/// # Safety
/// `phi` must come from this library and not be freed; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_monogenic_evaluate(
    phi: *const BhMonogenic,
    x: f64,
    y: f64,
    out: *mut BhElement,
) -> BhStatus {
    guard(|| {
        non_null(phi, "phi")?;
        non_null(out, "out")?;
        *out = (*phi).0.evaluate(x, y).map_err(from_error)?.into();
        Ok(())
    })
}

/// Derivative as a new handle.
///
/// # Safety
/// As for [`bh_monogenic_evaluate`].
#[no_mangle]
pub unsafe extern "C" fn bh_monogenic_derivative(
    phi: *const BhMonogenic,
    out: *mut *mut BhMonogenic,
) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        non_null(phi, "phi")?;
        *out = Box::into_raw(Box::new(BhMonogenic((*phi).0.derivative())));
        Ok(())
    })
}

/// # Safety
/// `phi` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bh_monogenic_free(phi: *mut BhMonogenic) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Reconstructs the plane-strain field whose boundary values of `u_x` and
/// `v_y` are `g1` and `g2`. Displacements vanish at `(base_x, base_y)`.
/// `formula` is a [`BhV2Formula`] value.
///
/// # Safety
/// `g1`, `g2` must point to valid [`BhFourier`] descriptors; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_elastic_solve(
    g1: *const BhFourier,
    g2: *const BhFourier,
    lambda: f64,
    mu: f64,
    base_x: f64,
    base_y: f64,
    formula: u32,
    out: *mut *mut BhElasticSolution,
) -> BhStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let (g1, g2) = (read_fourier(g1, "g1")?, read_fourier(g2, "g2")?);
        let lame = LameConstants::new(lambda, mu).map_err(from_error)?;
        let opts = PipelineOptions {
            v2_formula: match formula {
                f if f == BhV2Formula::Derived as u32 => V2Formula::Derived,
                f if f == BhV2Formula::Printed as u32 => V2Formula::Printed,
                f => {
                    return Err(fail(
                        BhStatus::InvalidArgument,
                        format!("unknown v2 formula {f}"),
                    ))
                }
            },
            ..PipelineOptions::default()
        };
        let (sol, _) =
            ElasticSolution::solve(&g1, &g2, lame, (base_x, base_y), &opts).map_err(from_error)?;
        *out = Box::into_raw(Box::new(BhElasticSolution(sol)));
        Ok(())
    })
}

/// All fields at `(x, y)` in the closed unit disk.
///
/// # Safety
/// `sol` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_elastic_point(
    sol: *const BhElasticSolution,
    x: f64,
    y: f64,
    out: *mut BhElasticPoint,
) -> BhStatus {
    guard(|| {
        non_null(sol, "sol")?;
        non_null(out, "out")?;
        let p = (*sol).0.point(x, y).map_err(from_error)?;
        *out = BhElasticPoint {
            components: p.components,
            gradients: p.gradients,
            sigma_x: p.sigma_x,
            sigma_y: p.sigma_y,
            tau_xy: p.tau_xy,
            u: p.u,
            v: p.v,
        };
        Ok(())
    })
}

/// # Safety
/// `sol` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bh_elastic_free(sol: *mut BhElasticSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}
