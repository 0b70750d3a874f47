//! Representation formulas and extension of slice data.
//!
//! A regular function on an axially symmetric slice domain is affine on each
//! sphere `x + y S`: `f(x + y I) = b + I c` with `b, c` independent of `I`.
//! The values on one slice (two conjugate points) or on two distinct slices
//! therefore determine the function everywhere.

use std::sync::Arc;

use crate::domain::{symmetric_completion, DEFAULT_GRID_STEP};
use crate::error::{Result, SliceError};
use crate::expr::{eval_on_slice, grf_coefficients, representation_coefficients, Extension, SliceExpr, StemFunction};
use crate::quaternion::{ImaginaryUnit, Quaternion, SlicePoint};

/// Number of real-axis samples used to compare two stems.
pub const REAL_TRACE_SAMPLES: usize = 32;
pub const REAL_TRACE_TOL: f64 = 1e-9;

/// Value at `target` from `f_plus = f(x + yJ)` and `f_minus = f(x - yJ)`.
pub fn representation(f_plus: Quaternion, f_minus: Quaternion, j: ImaginaryUnit, target: SlicePoint) -> Quaternion {
    let (b, c) = representation_coefficients(f_plus, f_minus, j);
    b + target.unit.quat() * c
}

/// Value at `target` from `v_j = f(x + yJ)` and `v_k = f(x + yK)`, `J != K`.
pub fn general_representation(
    v_j: Quaternion,
    v_k: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    target: SlicePoint,
) -> Result<Quaternion> {
    let (b, c) = grf_coefficients(v_j, v_k, j, k)?;
    Ok(b + target.unit.quat() * c)
}

/// Coefficients `(b, c)` with `f(x + yI) = b + I c` on the sphere `x + y S`,
/// computed from the slice `L_i`.
pub fn sphere_affine_coeffs(f: &SliceExpr, x: f64, y: f64) -> Result<(Quaternion, Quaternion)> {
    if y.is_nan() || y <= 0.0 {
        return Err(SliceError::InvalidArgument(format!("sphere radius must be positive, got {y}")));
    }
    let k = ImaginaryUnit::I;
    let plus = eval_on_slice(f, x, y, k)?;
    let minus = eval_on_slice(f, x, -y, k)?;
    Ok(representation_coefficients(plus, minus, k))
}

/// Unique regular function extending `r` (on `L_J`) and `s` (on `L_K`).
///
/// The stems must share their `(x, y)` region, meet the real axis, and agree
/// there; agreement is sampled at [`REAL_TRACE_SAMPLES`] points.
pub fn extend(r: StemFunction, s: StemFunction) -> Result<SliceExpr> {
    extend_with_grid(r, s, DEFAULT_GRID_STEP)
}

pub fn extend_with_grid(r: StemFunction, s: StemFunction, grid_step: f64) -> Result<SliceExpr> {
    let gap = (r.unit().quat() - s.unit().quat()).norm();
    if gap <= 1e-9 {
        return Err(SliceError::DegenerateUnits(gap));
    }
    let trace = r.region().real_trace_samples(REAL_TRACE_SAMPLES, grid_step);
    if trace.is_empty() {
        return Err(SliceError::NoRealTrace);
    }
    for x in trace {
        let (a, b) = (r.value(x, 0.0), s.value_checked(x, 0.0)?);
        let residual = a.dist(b);
        if residual > REAL_TRACE_TOL * a.norm().max(1.0) {
            return Err(SliceError::RealTraceMismatch { x, residual });
        }
    }
    let domain = symmetric_completion(r.region(), grid_step);
    Ok(SliceExpr::Ext(Arc::new(Extension::Pair { r, s, domain })))
}

/// Regular extension of a function given on one slice `L_J`, over a region
/// symmetric about the real axis.
pub fn ext_from_holomorphic(f: StemFunction) -> Result<SliceExpr> {
    ext_from_holomorphic_with_grid(f, DEFAULT_GRID_STEP)
}

pub fn ext_from_holomorphic_with_grid(f: StemFunction, grid_step: f64) -> Result<SliceExpr> {
    if f.region().real_trace_extent(grid_step).is_none() {
        return Err(SliceError::NoRealTrace);
    }
    if !f.region().is_conjugation_symmetric(grid_step) {
        return Err(SliceError::DomainNotSymmetric);
    }
    let domain = symmetric_completion(f.region(), grid_step);
    Ok(SliceExpr::Ext(Arc::new(Extension::Single { f, domain })))
}

/// Restriction of `f` to the slice `L_unit`, as a stem.
pub fn restrict(f: &SliceExpr, unit: ImaginaryUnit) -> StemFunction {
    if let Some(p) = f.as_poly() {
        return StemFunction::from_poly(p.clone(), unit);
    }
    let f = f.clone();
    StemFunction::from_fn(unit, move |x, y| {
        eval_on_slice(&f, x, y, unit).unwrap_or(Quaternion::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN))
    })
}
