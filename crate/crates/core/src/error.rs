use thiserror::Error;

use crate::quaternion::Quaternion;
use crate::zeros::SphereZero;

#[derive(Debug, Clone, Error)]
pub enum SliceError {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,

    #[error("point lies on the real axis; its imaginary unit is not determined")]
    NotASlicePoint,

    #[error("splitting unit is not orthogonal to the slice unit (inner product {0:e})")]
    NotOrthogonal(f64),

    #[error("point {0} is outside the domain")]
    Domain(Quaternion),

    #[error("singular point: sphere x + y S with x = {x}, y = {y} contains zeros of the symmetrization")]
    SingularPoint { x: f64, y: f64 },

    #[error("left factor vanishes at {0}; the composition form is undefined there")]
    ZeroBase(Quaternion),

    #[error("polynomial centers differ ({0} vs {1})")]
    MismatchedCenters(f64, f64),

    #[error("imaginary units J and K coincide (|J - K| = {0:e})")]
    DegenerateUnits(f64),

    #[error("stems disagree on the real axis at x = {x} (|r - s| = {residual:e})")]
    RealTraceMismatch { x: f64, residual: f64 },

    #[error("stem domain is not symmetric with respect to the real axis")]
    DomainNotSymmetric,

    #[error("stem domain does not meet the real axis")]
    NoRealTrace,

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize, partial: Vec<SphereZero> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SliceError>;
