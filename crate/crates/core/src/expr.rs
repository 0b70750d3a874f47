//! Slice regular functions as immutable expression trees, evaluated
//! pointwise through the splitting of their slice restrictions.
//!
//! At `q = x + y I` pick `J` orthogonal to `I`. Every value `v` splits as
//! `v = F + G J` with `F, G` in the complex line `L_I`; products, conjugates
//! and symmetrizations of regular functions are then explicit in terms of the
//! splittings of their values at `z = x + y I` and `z̄ = x - y I`. The
//! evaluator therefore returns, for every node, the pair `(f(z), f(z̄))`, so
//! each node is visited once per evaluation.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::domain::{AxialDomain, Region};
use crate::error::{Result, SliceError};
use crate::polynomial::SlicePolynomial;
use crate::quaternion::{
    from_slice, orthogonal_unit, slice_coords, ImaginaryUnit, Quaternion, SlicePoint,
};

/// Step of the central differences used for derivatives and residuals.
pub const FD_STEP: f64 = 1e-5;

/// Relative threshold under which a symmetrization value counts as zero.
pub const SINGULAR_TOL: f64 = 1e-10;

/// Below this modulus `f(q)` is treated as zero by the composition form.
pub const ZERO_BASE_TOL: f64 = 1e-12;

/// Tolerance of the orthogonality precondition of [`split`].
pub const ORTHO_TOL: f64 = 1e-9;

/// Orthonormal real basis `{1, I, J, IJ}` adapted to a slice.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Basis {
    i: Quaternion,
    j: Quaternion,
    ij: Quaternion,
}

impl Basis {
    pub(crate) fn new(i: ImaginaryUnit, j: ImaginaryUnit) -> Self {
        let (i, j) = (i.quat(), j.quat());
        Basis { i, j, ij: i * j }
    }

    #[inline]
    pub(crate) fn split(&self, v: Quaternion) -> (Complex64, Complex64) {
        (
            Complex64::new(v.x0, v.dot(self.i)),
            Complex64::new(v.dot(self.j), v.dot(self.ij)),
        )
    }

    #[inline]
    pub(crate) fn join(&self, f: Complex64, g: Complex64) -> Quaternion {
        Quaternion::real(f.re) + self.i * f.im + self.j * g.re + self.ij * g.im
    }

    /// `c` as an element of `L_I`.
    #[inline]
    pub(crate) fn lift(&self, c: Complex64) -> Quaternion {
        Quaternion::real(c.re) + self.i * c.im
    }
}

/// Splitting `v = F + G J` of a quaternion against a slice `L_I`.
///
/// `F` and `G` are complex numbers with respect to the basis `{1, I}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitPair {
    pub f: Complex64,
    pub g: Complex64,
    pub i: ImaginaryUnit,
    pub j: ImaginaryUnit,
}

impl SplitPair {
    pub fn recombine(&self) -> Quaternion {
        Basis::new(self.i, self.j).join(self.f, self.g)
    }
}

pub fn split(v: Quaternion, i: ImaginaryUnit, j: ImaginaryUnit) -> Result<SplitPair> {
    let d = i.dot(j);
    if d.abs() > ORTHO_TOL {
        return Err(SliceError::NotOrthogonal(d));
    }
    let (f, g) = Basis::new(i, j).split(v);
    Ok(SplitPair { f, g, i, j })
}

type StemFn = dyn Fn(f64, f64) -> Quaternion + Send + Sync;

#[derive(Clone)]
enum StemKind {
    Poly(Arc<SlicePolynomial>),
    Func(Arc<StemFn>),
}

/// Slice data: a map `(x, y) -> value at x + y J` on a region of `L_J`.
///
/// The map is expected to satisfy `(d/dx + J d/dy) r = 0`; this is not
/// enforced and can be measured with [`regularity_residual`] on the
/// extension.
#[derive(Clone)]
pub struct StemFunction {
    unit: ImaginaryUnit,
    region: Region,
    kind: StemKind,
}

impl StemFunction {
    /// Restriction of a polynomial to the slice `L_unit`.
    pub fn from_poly(poly: SlicePolynomial, unit: ImaginaryUnit) -> Self {
        StemFunction { unit, region: Region::Plane, kind: StemKind::Poly(Arc::new(poly)) }
    }

    pub fn from_fn<F>(unit: ImaginaryUnit, f: F) -> Self
    where
        F: Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
    {
        StemFunction { unit, region: Region::Plane, kind: StemKind::Func(Arc::new(f)) }
    }

    pub fn with_region(mut self, region: Region) -> Self {
        self.region = region;
        self
    }

    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn as_poly(&self) -> Option<&SlicePolynomial> {
        match &self.kind {
            StemKind::Poly(p) => Some(p),
            StemKind::Func(_) => None,
        }
    }

    /// Value at `x + y J`; no domain check.
    pub fn value(&self, x: f64, y: f64) -> Quaternion {
        match &self.kind {
            StemKind::Poly(p) => p.eval(from_slice(x, y, self.unit)),
            StemKind::Func(f) => f(x, y),
        }
    }

    pub fn value_checked(&self, x: f64, y: f64) -> Result<Quaternion> {
        if !self.region.contains(x, y) {
            return Err(SliceError::Domain(from_slice(x, y, self.unit)));
        }
        Ok(self.value(x, y))
    }

    /// Derivative in `x`; exact for polynomial stems, central differences
    /// otherwise.
    pub fn derivative(&self) -> StemFunction {
        let kind = match &self.kind {
            StemKind::Poly(p) => StemKind::Poly(Arc::new(p.derivative())),
            StemKind::Func(f) => {
                let f = Arc::clone(f);
                StemKind::Func(Arc::new(move |x, y| (f(x + FD_STEP, y) - f(x - FD_STEP, y)) / (2.0 * FD_STEP)))
            }
        };
        StemFunction { unit: self.unit, region: self.region.clone(), kind }
    }
}

impl fmt::Debug for StemFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("StemFunction");
        d.field("unit", &self.unit).field("region", &self.region);
        match &self.kind {
            StemKind::Poly(p) => d.field("poly", p),
            StemKind::Func(_) => d.field("func", &"<closure>"),
        };
        d.finish()
    }
}

/// Payload of an extension node.
#[derive(Clone, Debug)]
pub enum Extension {
    /// Two stems on distinct slices `L_J`, `L_K` agreeing on the real axis.
    Pair { r: StemFunction, s: StemFunction, domain: AxialDomain },
    /// One stem on `L_J` over a domain symmetric about the real axis.
    Single { f: StemFunction, domain: AxialDomain },
}

impl Extension {
    pub fn domain(&self) -> &AxialDomain {
        match self {
            Extension::Pair { domain, .. } | Extension::Single { domain, .. } => domain,
        }
    }

    fn derivative(&self) -> Extension {
        match self {
            Extension::Pair { r, s, domain } => Extension::Pair {
                r: r.derivative(),
                s: s.derivative(),
                domain: domain.clone(),
            },
            Extension::Single { f, domain } => Extension::Single { f: f.derivative(), domain: domain.clone() },
        }
    }

    /// Value at `x + y I` for signed `y`.
    fn value(&self, x: f64, y: f64, unit: ImaginaryUnit) -> Result<Quaternion> {
        let point = from_slice(x, y, unit);
        match self {
            Extension::Pair { r, s, .. } => {
                // x + yI = x + (-y)(-I): use whichever half of L_J carries data
                let (y, unit) = if r.region().contains(x, y) { (y, unit) } else { (-y, -unit) };
                if !r.region().contains(x, y) || !s.region().contains(x, y) {
                    return Err(SliceError::Domain(point));
                }
                let (b, c) = grf_coefficients(r.value(x, y), s.value(x, y), r.unit(), s.unit())?;
                Ok(b + unit.quat() * c)
            }
            Extension::Single { f, .. } => {
                let (plus, minus) = (f.value_checked(x, y), f.value_checked(x, -y));
                let (plus, minus) = match (plus, minus) {
                    (Ok(p), Ok(m)) => (p, m),
                    _ => return Err(SliceError::Domain(point)),
                };
                let (b, c) = representation_coefficients(plus, minus, f.unit());
                Ok(b + unit.quat() * c)
            }
        }
    }
}

/// `(b, c)` with `f(x + yI) = b + I c`, from the values `f(x ± yJ)`.
pub(crate) fn representation_coefficients(
    plus: Quaternion,
    minus: Quaternion,
    j: ImaginaryUnit,
) -> (Quaternion, Quaternion) {
    let b = (plus + minus) * 0.5;
    let c = j.quat() * (minus - plus) * 0.5;
    (b, c)
}

/// `(b, c)` with `f(x + yI) = b + I c`, from `f(x + yJ)` and `f(x + yK)`.
pub(crate) fn grf_coefficients(
    v_j: Quaternion,
    v_k: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
) -> Result<(Quaternion, Quaternion)> {
    let d = j.quat() - k.quat();
    let gap = d.norm();
    if gap <= 1e-9 {
        return Err(SliceError::DegenerateUnits(gap));
    }
    let d_inv = d.inv()?;
    let b = d_inv * (j.quat() * v_j - k.quat() * v_k);
    let c = d_inv * (v_j - v_k);
    Ok((b, c))
}

/// A pointwise map with no regularity guarantee; used for controls in the
/// verification harness.
#[derive(Clone)]
pub struct PointMap {
    name: String,
    f: Arc<dyn Fn(Quaternion) -> Quaternion + Send + Sync>,
}

impl PointMap {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(Quaternion) -> Quaternion + Send + Sync + 'static,
    {
        PointMap { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, q: Quaternion) -> Quaternion {
        (self.f)(q)
    }
}

impl fmt::Debug for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointMap({})", self.name)
    }
}

/// Expression tree over slice regular functions.
#[derive(Clone, Debug)]
pub enum SliceExpr {
    Poly(Arc<SlicePolynomial>),
    Ext(Arc<Extension>),
    Star(Arc<SliceExpr>, Arc<SliceExpr>),
    Conj(Arc<SliceExpr>),
    Symm(Arc<SliceExpr>),
    Recip(Arc<SliceExpr>),
    Sum(Arc<SliceExpr>, Arc<SliceExpr>),
    RightScalar(Arc<SliceExpr>, Quaternion),
    /// Slice derivative of the inner expression.
    Deriv(Arc<SliceExpr>),
    /// Raw pointwise map, not necessarily regular.
    Map(PointMap),
}

impl From<SlicePolynomial> for SliceExpr {
    fn from(p: SlicePolynomial) -> Self {
        SliceExpr::Poly(Arc::new(p))
    }
}

impl SliceExpr {
    pub fn poly(p: SlicePolynomial) -> Self {
        p.into()
    }

    pub fn constant(a: Quaternion) -> Self {
        SlicePolynomial::constant(a).into()
    }

    pub fn map<F>(name: &str, f: F) -> Self
    where
        F: Fn(Quaternion) -> Quaternion + Send + Sync + 'static,
    {
        SliceExpr::Map(PointMap::new(name, f))
    }

    pub fn star(&self, other: &SliceExpr) -> SliceExpr {
        SliceExpr::Star(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn conj(&self) -> SliceExpr {
        SliceExpr::Conj(Arc::new(self.clone()))
    }

    pub fn symm(&self) -> SliceExpr {
        SliceExpr::Symm(Arc::new(self.clone()))
    }

    pub fn recip(&self) -> SliceExpr {
        SliceExpr::Recip(Arc::new(self.clone()))
    }

    pub fn sum(&self, other: &SliceExpr) -> SliceExpr {
        SliceExpr::Sum(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn rscale(&self, a: Quaternion) -> SliceExpr {
        SliceExpr::RightScalar(Arc::new(self.clone()), a)
    }

    pub fn deriv(&self) -> SliceExpr {
        SliceExpr::Deriv(Arc::new(self.clone()))
    }

    pub fn as_poly(&self) -> Option<&SlicePolynomial> {
        match self {
            SliceExpr::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Slice derivative as an expression. Products follow the Leibniz rule,
    /// `(f^-*)' = -f^-* * f' * f^-*`, and extensions differentiate their
    /// stems; raw maps fall back to central differences.
    pub fn derivative(&self) -> SliceExpr {
        match self {
            SliceExpr::Poly(p) => p.derivative().into(),
            SliceExpr::Ext(e) => SliceExpr::Ext(Arc::new(e.derivative())),
            SliceExpr::Star(f, g) => f.derivative().star(g).sum(&f.star(&g.derivative())),
            SliceExpr::Conj(f) => f.derivative().conj(),
            SliceExpr::Symm(f) => {
                let df = f.derivative();
                df.star(&f.conj()).sum(&f.star(&df.conj()))
            }
            SliceExpr::Recip(f) => {
                let inv = self.clone();
                inv.star(&f.derivative()).star(&inv).rscale(-Quaternion::ONE)
            }
            SliceExpr::Sum(f, g) => f.derivative().sum(&g.derivative()),
            SliceExpr::RightScalar(f, a) => f.derivative().rscale(*a),
            SliceExpr::Deriv(f) => f.derivative().derivative(),
            SliceExpr::Map(m) => {
                let m = m.clone();
                let name = format!("d/dx {}", m.name());
                SliceExpr::map(&name, move |q| {
                    let sp = slice_coords(q);
                    let plus = m.apply(from_slice(sp.x + FD_STEP, sp.y, sp.unit));
                    let minus = m.apply(from_slice(sp.x - FD_STEP, sp.y, sp.unit));
                    (plus - minus) / (2.0 * FD_STEP)
                })
            }
        }
    }

    /// Whether `q` lies in the (axially symmetric) domain of every node.
    pub fn contains(&self, q: Quaternion) -> bool {
        match self {
            SliceExpr::Poly(_) | SliceExpr::Map(_) => true,
            SliceExpr::Ext(e) => e.domain().contains(q),
            SliceExpr::Star(f, g) | SliceExpr::Sum(f, g) => f.contains(q) && g.contains(q),
            SliceExpr::Conj(f)
            | SliceExpr::Symm(f)
            | SliceExpr::Recip(f)
            | SliceExpr::Deriv(f)
            | SliceExpr::RightScalar(f, _) => f.contains(q),
        }
    }
}

/// Evaluation frame: the points `x ± y I` and the splitting basis.
struct Frame {
    x: f64,
    y: f64,
    unit: ImaginaryUnit,
    basis: Basis,
}

impl Frame {
    fn new(sp: SlicePoint, j: ImaginaryUnit) -> Self {
        Frame { x: sp.x, y: sp.y, unit: sp.unit, basis: Basis::new(sp.unit, j) }
    }

    fn is_real(&self) -> bool {
        self.y == 0.0
    }

    fn z(&self) -> Quaternion {
        from_slice(self.x, self.y, self.unit)
    }

    fn zbar(&self) -> Quaternion {
        from_slice(self.x, -self.y, self.unit)
    }
}

type Pair = (Quaternion, Quaternion);

fn eval_pair(e: &SliceExpr, fr: &Frame) -> Result<Pair> {
    let b = &fr.basis;
    match e {
        SliceExpr::Poly(p) => {
            let z = p.eval(fr.z());
            Ok((z, if fr.is_real() { z } else { p.eval(fr.zbar()) }))
        }
        SliceExpr::Map(m) => Ok((m.apply(fr.z()), m.apply(fr.zbar()))),
        SliceExpr::Ext(ext) => {
            let z = ext.value(fr.x, fr.y, fr.unit)?;
            let zb = if fr.is_real() { z } else { ext.value(fr.x, -fr.y, fr.unit)? };
            Ok((z, zb))
        }
        SliceExpr::Sum(f, g) => {
            let (f, g) = (eval_pair(f, fr)?, eval_pair(g, fr)?);
            Ok((f.0 + g.0, f.1 + g.1))
        }
        SliceExpr::RightScalar(f, a) => {
            let f = eval_pair(f, fr)?;
            Ok((f.0 * *a, f.1 * *a))
        }
        SliceExpr::Deriv(f) => eval_pair(&f.derivative(), fr),
        SliceExpr::Star(f, g) => {
            let (f, g) = (eval_pair(f, fr)?, eval_pair(g, fr)?);
            if fr.is_real() {
                let v = f.0 * g.0;
                return Ok((v, v));
            }
            let (fz, gz) = (b.split(f.0), b.split(f.1));
            let (hz, kz) = (b.split(g.0), b.split(g.1));
            // fz = (F(z), G(z)), gz = (F(z̄), G(z̄)), likewise H, K for g
            let star = |(ff, gg): (Complex64, Complex64),
                        (h, k): (Complex64, Complex64),
                        (h_bar, k_bar): (Complex64, Complex64)| {
                b.join(ff * h - gg * k_bar.conj(), ff * k + gg * h_bar.conj())
            };
            Ok((star(fz, hz, kz), star(gz, kz, hz)))
        }
        SliceExpr::Conj(f) => {
            let f = eval_pair(f, fr)?;
            if fr.is_real() {
                let v = f.0.conj();
                return Ok((v, v));
            }
            let ((fz, gz), (fzb, gzb)) = (b.split(f.0), b.split(f.1));
            Ok((b.join(fzb.conj(), -gz), b.join(fz.conj(), -gzb)))
        }
        SliceExpr::Symm(f) => {
            let (s, sb) = symm_pair(&eval_pair(f, fr)?, fr);
            Ok((b.lift(s), b.lift(sb)))
        }
        SliceExpr::Recip(f) => {
            let f = eval_pair(f, fr)?;
            if fr.is_real() {
                if f.0.norm_sqr() <= SINGULAR_TOL * f.0.norm().max(1.0) {
                    return Err(SliceError::SingularPoint { x: fr.x, y: 0.0 });
                }
                let v = f.0.inv()?;
                return Ok((v, v));
            }
            let (s, sb) = symm_pair(&f, fr);
            let ((fz, gz), (fzb, gzb)) = (b.split(f.0), b.split(f.1));
            let (c, cb) = (b.join(fzb.conj(), -gz), b.join(fz.conj(), -gzb));
            let recip = |s: Complex64, c: Quaternion| {
                if s.norm() <= SINGULAR_TOL * c.norm().max(1.0) {
                    return Err(SliceError::SingularPoint { x: fr.x, y: fr.y.abs() });
                }
                Ok(b.lift(s.inv()) * c)
            };
            Ok((recip(s, c)?, recip(sb, cb)?))
        }
    }
}

/// Symmetrization values at `z` and `z̄` as elements of `L_I`.
fn symm_pair(f: &Pair, fr: &Frame) -> (Complex64, Complex64) {
    if fr.is_real() {
        let s = Complex64::new(f.0.norm_sqr(), 0.0);
        return (s, s);
    }
    let b = &fr.basis;
    let ((fz, gz), (fzb, gzb)) = (b.split(f.0), b.split(f.1));
    (fz * fzb.conj() + gz * gzb.conj(), fzb * fz.conj() + gzb * gz.conj())
}

fn frame_at(q: Quaternion, j: Option<ImaginaryUnit>) -> Result<Frame> {
    if !q.is_finite() {
        return Err(SliceError::Domain(q));
    }
    let sp = slice_coords(q);
    let j = match j {
        Some(j) => {
            let d = sp.unit.dot(j);
            if !sp.arbitrary_unit && d.abs() > ORTHO_TOL {
                return Err(SliceError::NotOrthogonal(d));
            }
            j
        }
        None => orthogonal_unit(sp.unit),
    };
    Ok(Frame::new(sp, j))
}

/// Pointwise value of a regular function.
pub fn eval(f: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    if !f.contains(q) {
        return Err(SliceError::Domain(q));
    }
    Ok(eval_pair(f, &frame_at(q, None)?)?.0)
}

/// As [`eval`], with an explicit splitting unit `J` orthogonal to `I_q`.
pub fn eval_with_splitting(f: &SliceExpr, q: Quaternion, j: ImaginaryUnit) -> Result<Quaternion> {
    if !f.contains(q) {
        return Err(SliceError::Domain(q));
    }
    Ok(eval_pair(f, &frame_at(q, Some(j))?)?.0)
}

/// Value at `x + y I` on an explicitly chosen slice; `y` may be zero, in
/// which case the unit is irrelevant.
pub fn eval_on_slice(f: &SliceExpr, x: f64, y: f64, unit: ImaginaryUnit) -> Result<Quaternion> {
    let q = from_slice(x, y, unit);
    if !f.contains(q) {
        return Err(SliceError::Domain(q));
    }
    let sp = SlicePoint::new(x, y, unit);
    Ok(eval_pair(f, &Frame::new(sp, orthogonal_unit(sp.unit)))?.0)
}

pub fn star_eval(f: &SliceExpr, g: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    eval(&f.star(g), q)
}

pub fn conj_eval(f: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    eval(&f.conj(), q)
}

pub fn symm_eval(f: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    eval(&f.symm(), q)
}

pub fn recip_eval(f: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    eval(&f.recip(), q)
}

/// `f(q) g(f(q)^-1 q f(q))`, defined where `f(q) != 0`.
pub fn star_via_composition(f: &SliceExpr, g: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    let fq = eval(f, q)?;
    if fq.norm() <= ZERO_BASE_TOL {
        return Err(SliceError::ZeroBase(q));
    }
    let moved = fq.inv()? * q * fq;
    Ok(fq * eval(g, moved)?)
}

pub fn slice_derivative(f: &SliceExpr, q: Quaternion) -> Result<Quaternion> {
    eval(&f.derivative(), q)
}

/// Central difference in `x` along the slice of `q`.
pub fn slice_derivative_fd(f: &SliceExpr, q: Quaternion, h: f64) -> Result<Quaternion> {
    let sp = slice_coords(q);
    let plus = eval_on_slice(f, sp.x + h, sp.y, sp.unit)?;
    let minus = eval_on_slice(f, sp.x - h, sp.y, sp.unit)?;
    Ok((plus - minus) / (2.0 * h))
}

/// `|1/2 (d/dx + I d/dy) f(x + y I)|` by central differences of half-width
/// `h` on the slice of `q`.
pub fn regularity_residual(f: &SliceExpr, q: Quaternion, h: f64) -> Result<f64> {
    let sp = slice_coords(q);
    if sp.arbitrary_unit {
        return Err(SliceError::NotASlicePoint);
    }
    let at = |x: f64, y: f64| eval_on_slice(f, x, y, sp.unit);
    let dx = (at(sp.x + h, sp.y)? - at(sp.x - h, sp.y)?) / (2.0 * h);
    let dy = (at(sp.x, sp.y + h)? - at(sp.x, sp.y - h)?) / (2.0 * h);
    Ok(((dx + sp.unit.quat() * dy) * 0.5).norm())
}
