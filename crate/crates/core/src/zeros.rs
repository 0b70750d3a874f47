//! Zero sets of regular functions.
//!
//! On a sphere `x + y S` a regular function is `b + I c`, so it either
//! vanishes on the whole sphere (`b = c = 0`), at the single unit
//! `I = -b c^-1`, or nowhere. For polynomials, the spheres carrying zeros are
//! exactly the zero spheres of the symmetrization `f^s`, a real polynomial
//! whose complex roots are found by Aberth iteration.

use num_complex::Complex64;

use crate::error::{Result, SliceError};
use crate::expr::{eval, eval_on_slice, star_eval, SliceExpr, SINGULAR_TOL};
use crate::polynomial::{symm_poly, SlicePolynomial};
use crate::quaternion::{from_slice, ImaginaryUnit, Quaternion};
use crate::representation::sphere_affine_coeffs;

pub const DEFAULT_ZERO_TOL: f64 = 1e-8;
pub const ABERTH_MAX_ITER: usize = 200;
pub const ABERTH_TOL: f64 = 1e-13;
/// Spheres closer than this (relative) are reported once.
pub const SPHERE_DEDUP_TOL: f64 = 1e-8;
/// Root approximations closer than this (relative) are treated as one
/// multiple root.
const CLUSTER_RADIUS: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroKind {
    None,
    Isolated(ImaginaryUnit),
    Spherical,
}

/// Zero structure of a function on one sphere `x + y S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereZero {
    pub x: f64,
    pub y: f64,
    pub kind: ZeroKind,
    /// `|f|` at the reported zero: at `x + y I` for isolated zeros, the
    /// larger of `|b|`, `|c|` for spherical ones, `|f(x + y i)|` otherwise.
    pub residual: f64,
    /// Set for real points, where the unit carries no information.
    pub arbitrary_unit: bool,
}

impl SphereZero {
    pub fn point(&self) -> Option<Quaternion> {
        match self.kind {
            ZeroKind::Isolated(u) => Some(from_slice(self.x, self.y, u)),
            _ => None,
        }
    }
}

/// Classifies the zeros of `f` on the sphere `x + y S`.
pub fn sphere_zero_classify(f: &SliceExpr, x: f64, y: f64, tol: f64) -> Result<SphereZero> {
    if y < 0.0 {
        return Err(SliceError::InvalidArgument(format!("sphere radius must be nonnegative, got {y}")));
    }
    if y == 0.0 {
        let residual = eval(f, Quaternion::real(x))?.norm();
        let kind = if residual < tol { ZeroKind::Isolated(ImaginaryUnit::I) } else { ZeroKind::None };
        return Ok(SphereZero { x, y, kind, residual, arbitrary_unit: true });
    }
    let (b, c) = sphere_affine_coeffs(f, x, y)?;
    let zero = |kind, residual| SphereZero { x, y, kind, residual, arbitrary_unit: false };
    if b.norm() < tol && c.norm() < tol {
        return Ok(zero(ZeroKind::Spherical, b.norm().max(c.norm())));
    }
    let not_found = || eval_on_slice(f, x, y, ImaginaryUnit::I).map(|v| zero(ZeroKind::None, v.norm()));
    let Ok(c_inv) = c.inv() else {
        return not_found();
    };
    let cand = -(b * c_inv);
    if cand.re().abs() >= tol || (cand.norm() - 1.0).abs() >= tol {
        return not_found();
    }
    let unit = match ImaginaryUnit::new(cand) {
        Ok(u) => u,
        Err(_) => return not_found(),
    };
    let residual = eval_on_slice(f, x, y, unit)?.norm();
    Ok(zero(ZeroKind::Isolated(unit), residual))
}

/// Zero spheres of a polynomial with their classification.
///
/// Tolerance `tol` is scaled by `max(1, |coefficients|)`.
pub fn poly_roots(f: &SlicePolynomial, tol: f64) -> Result<Vec<SphereZero>> {
    if f.degree() < 1 {
        return Err(SliceError::InvalidArgument("polynomial must have degree at least 1".into()));
    }
    let scaled_tol = tol * f.coeff_norm().max(1.0);
    let symm = symm_poly(f);
    let coeffs: Vec<Complex64> = symm.coeffs().iter().map(|c| Complex64::new(c.re(), 0.0)).collect();
    let aberth = aberth(&coeffs, ABERTH_MAX_ITER, ABERTH_TOL);
    let roots = refine_clusters(&coeffs, &aberth.roots);

    let spheres = fold_spheres(&roots, f.center());
    let expr = SliceExpr::poly(f.clone());
    let zeros = spheres
        .into_iter()
        .map(|(x, y)| sphere_zero_classify(&expr, x, y, scaled_tol))
        .collect::<Result<Vec<_>>>()?;
    if !aberth.converged {
        return Err(SliceError::NonConvergence { iterations: aberth.iterations, partial: zeros });
    }
    Ok(zeros)
}

/// Candidate spheres `(x, |y|)` from complex roots, conjugate pairs folded.
fn fold_spheres(roots: &[Complex64], center: f64) -> Vec<(f64, f64)> {
    let mut spheres: Vec<(f64, f64)> = Vec::new();
    for z in roots {
        let scale = 1.0 + z.norm();
        let y = if z.im.abs() < 1e-8 * scale { 0.0 } else { z.im.abs() };
        let x = center + z.re;
        let dup = spheres
            .iter()
            .any(|&(sx, sy)| ((sx - x).powi(2) + (sy - y).powi(2)).sqrt() <= SPHERE_DEDUP_TOL * scale);
        if !dup {
            spheres.push((x, y));
        }
    }
    spheres.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    spheres
}

/// Result of the simultaneous iteration.
#[derive(Clone, Debug)]
pub struct AberthRoots {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Horner evaluation of `p` and `p'`, plus the round-off bound
/// `sum |c_k| |z|^k`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + c.norm();
    }
    (p, dp, bound)
}

/// All complex roots of `sum c_k z^k` by Aberth-Ehrlich iteration.
///
/// Initial guesses lie on the circle of radius `1 + max |c_k / c_n|` at a
/// fixed angular lattice. A root is settled when its correction drops below
/// `tol` relative to its modulus or its value is at the round-off level.
pub fn aberth(coeffs: &[Complex64], max_iter: usize, tol: f64) -> AberthRoots {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return AberthRoots { roots: Vec::new(), iterations: 0, converged: true };
    }
    let lead = coeffs[n];
    let radius = 1.0 + coeffs[..n].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];

    for iter in 1..=max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp, bound) = horner(&coeffs, z[k]);
            if p.norm() <= 4.0 * f64::EPSILON * n as f64 * bound {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&m| m != k).map(|m| (z[k] - z[m]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= tol * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return AberthRoots { roots: z, iterations: iter, converged: true };
        }
    }
    AberthRoots { roots: z, iterations: max_iter, converged: false }
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Replaces each cluster of `m` nearby approximations by the root of the
/// `(m-1)`-th derivative found by Newton iteration from the cluster mean;
/// multiple roots are resolved to full precision this way. Clusters whose
/// refinement does not land on a root of `p` are kept as they are.
fn refine_clusters(coeffs: &[Complex64], roots: &[Complex64]) -> Vec<Complex64> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::with_capacity(roots.len());
    for k in 0..roots.len() {
        if used[k] {
            continue;
        }
        let scale = 1.0 + roots[k].norm();
        let members: Vec<usize> = (k..roots.len())
            .filter(|&m| !used[m] && (roots[m] - roots[k]).norm() <= CLUSTER_RADIUS * scale)
            .collect();
        for &m in &members {
            used[m] = true;
        }
        let cluster: Vec<Complex64> = members.iter().map(|&m| roots[m]).collect();
        if cluster.len() == 1 {
            out.push(cluster[0]);
            continue;
        }
        let mean = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        let mut d = coeffs.to_vec();
        for _ in 1..cluster.len() {
            d = derivative(&d);
        }
        let mut z = mean;
        for _ in 0..60 {
            let (p, dp, _) = horner(&d, z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            z -= step;
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        let worst_member = cluster.iter().map(|&c| horner(coeffs, c).0.norm()).fold(0.0, f64::max);
        let (pz, _, bound) = horner(coeffs, z);
        let accepted = (z - mean).norm() <= CLUSTER_RADIUS * scale
            && pz.norm() <= worst_member.max(64.0 * f64::EPSILON * bound);
        if accepted {
            out.extend(std::iter::repeat_n(z, cluster.len()));
        } else {
            out.extend(cluster);
        }
    }
    out
}

/// Checks the product zero theorem at `q`: `f*g(q) = 0` exactly when
/// `f(q) = 0` or `g(f(q)^-1 q f(q)) = 0`.
pub fn star_zero_check(f: &SliceExpr, g: &SliceExpr, q: Quaternion, tol: f64) -> Result<bool> {
    let product_vanishes = star_eval(f, g, q)?.norm() < tol;
    let fq = eval(f, q)?;
    let predicate = if fq.norm() < tol {
        true
    } else {
        let moved = fq.inv()? * q * fq;
        eval(g, moved)?.norm() < tol
    };
    Ok(predicate == product_vanishes)
}

/// `(q^2 - 2 Re(s) q + |s|^2)^-1 (q - s̄)`, the regular reciprocal of `q - s`.
pub fn cauchy_kernel(s: Quaternion, q: Quaternion) -> Result<Quaternion> {
    let denom = q * q - q * (2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    let numer = q - s.conj();
    if denom.norm() <= SINGULAR_TOL * numer.norm().max(1.0) {
        return Err(SliceError::SingularPoint { x: s.re(), y: s.im_norm() });
    }
    Ok(denom.inv()? * numer)
}
