//! Quaternion arithmetic, imaginary units and slice coordinates.
//!
//! Every non-real quaternion `q` can be written uniquely as `x + y I` with
//! `y > 0` and `I` a purely imaginary unit quaternion; `I` selects the complex
//! line (slice) `L_I = R + R I` that contains `q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::SliceError;

/// Threshold below which an imaginary part is treated as zero.
pub const IMAG_EPS: f64 = 1e-12;

/// Default tolerance used by the comparison helpers.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A quaternion `x0 + x1 i + x2 j + x3 k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    pub const fn real(x: f64) -> Self {
        Quaternion::new(x, 0.0, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.x0
    }

    #[inline]
    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.x1, self.x2, self.x3)
    }

    #[inline]
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Modulus of the imaginary part.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Euclidean inner product on `R^4`.
    #[inline]
    pub fn dot(self, other: Quaternion) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Quaternion, SliceError> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(SliceError::ZeroQuaternion);
        }
        Ok(self.conj() / n2)
    }

    /// Distance `|self - other|`.
    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        self.dist(other) <= tol
    }
}

/// Hamilton product.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
        a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
        a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
        a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0,
    )
}

pub fn quat_inv(q: Quaternion) -> Result<Quaternion, SliceError> {
    q.inv()
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        quat_mul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Quaternion::real(x)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.x0, self.x1, self.x2, self.x3)
    }
}

/// A point of the sphere `S` of imaginary units: `Re(u) = 0`, `|u| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Normalizes the imaginary part of `q`. The real part is discarded.
    pub fn new(q: Quaternion) -> Result<Self, SliceError> {
        let n = q.im_norm();
        if !n.is_finite() || n < IMAG_EPS {
            return Err(SliceError::NotASlicePoint);
        }
        Ok(ImaginaryUnit(q.im() / n))
    }

    pub fn from_components(x1: f64, x2: f64, x3: f64) -> Result<Self, SliceError> {
        Self::new(Quaternion::new(0.0, x1, x2, x3))
    }

    #[inline]
    pub fn quat(self) -> Quaternion {
        self.0
    }

    /// Inner product of the imaginary parts.
    pub fn dot(self, other: ImaginaryUnit) -> f64 {
        self.0.dot(other.0)
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Quaternion {
        u.0
    }
}

/// `Im(q) / |Im(q)|`.
pub fn imaginary_unit_of(q: Quaternion) -> Result<ImaginaryUnit, SliceError> {
    ImaginaryUnit::new(q)
}

/// Slice coordinates `q = x + y I` with `y >= 0`.
///
/// For real `q` (|Im q| below [`IMAG_EPS`]) the unit is not determined by `q`;
/// the canonical `i` is stored and `arbitrary_unit` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: ImaginaryUnit,
    pub arbitrary_unit: bool,
}

impl SlicePoint {
    pub fn new(x: f64, y: f64, unit: ImaginaryUnit) -> Self {
        if y < 0.0 {
            SlicePoint { x, y: -y, unit: -unit, arbitrary_unit: false }
        } else {
            SlicePoint { x, y, unit, arbitrary_unit: false }
        }
    }

    pub fn to_quaternion(self) -> Quaternion {
        from_slice(self.x, self.y, self.unit)
    }

    pub fn is_real(self) -> bool {
        self.y == 0.0
    }
}

pub fn slice_coords(q: Quaternion) -> SlicePoint {
    let y = q.im_norm();
    if y < IMAG_EPS {
        return SlicePoint { x: q.x0, y: 0.0, unit: ImaginaryUnit::I, arbitrary_unit: true };
    }
    SlicePoint { x: q.x0, y, unit: ImaginaryUnit(q.im() / y), arbitrary_unit: false }
}

/// `x + y I`; `y` may be negative.
#[inline]
pub fn from_slice(x: f64, y: f64, unit: ImaginaryUnit) -> Quaternion {
    let u = unit.0;
    Quaternion::new(x, y * u.x1, y * u.x2, y * u.x3)
}

/// A unit orthogonal to `unit`, by Gram-Schmidt against the first of
/// `i, j, k` that is not parallel to it.
pub fn orthogonal_unit(unit: ImaginaryUnit) -> ImaginaryUnit {
    let u = unit.0;
    for cand in [Quaternion::I, Quaternion::J, Quaternion::K] {
        let v = cand - u * u.dot(cand);
        // |v|^2 = 1 - <u,cand>^2, so 0.5 keeps the projection well conditioned
        if v.im_norm() > 0.5 {
            return ImaginaryUnit(v.im() / v.im_norm());
        }
    }
    unreachable!("some canonical axis is always far from parallel to a unit vector")
}
