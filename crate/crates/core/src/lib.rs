//! Slice regular functions of a quaternionic variable.
//!
//! Functions are built as [`SliceExpr`] trees from polynomials with right
//! quaternionic coefficients and from extensions of slice data, combined with
//! the regular product, regular conjugate, symmetrization and regular
//! reciprocal, and evaluated pointwise through the splitting of their slice
//! restrictions.
//!
//! ```
//! use slicereg::{eval, Quaternion, SliceExpr, SlicePolynomial};
//!
//! let f = SliceExpr::poly(SlicePolynomial::linear(Quaternion::J)); // q - j
//! let v = eval(&f.recip(), Quaternion::J * 2.0).unwrap();
//! assert!(v.approx_eq(-Quaternion::J, 1e-15));
//! ```

pub mod domain;
pub mod error;
pub mod expr;
pub mod json;
pub mod polynomial;
pub mod quaternion;
pub mod representation;
pub mod verify;
pub mod zeros;

pub use domain::{symmetric_completion, AxialBox, AxialDomain, Region};
pub use error::{Result, SliceError};
pub use expr::{
    conj_eval, eval, eval_on_slice, eval_with_splitting, recip_eval, regularity_residual, slice_derivative,
    slice_derivative_fd, split, star_eval, star_via_composition, symm_eval, Extension, PointMap, SliceExpr,
    SplitPair, StemFunction,
};
pub use polynomial::{conj_poly, star_poly, symm_poly, SlicePolynomial};
pub use quaternion::{
    from_slice, imaginary_unit_of, orthogonal_unit, quat_inv, quat_mul, slice_coords, ImaginaryUnit, Quaternion,
    SlicePoint,
};
pub use representation::{
    ext_from_holomorphic, extend, general_representation, representation, restrict, sphere_affine_coeffs,
};

pub use json::{ExprJson, JsonError, RootJson};
pub use verify::CheckReport;
pub use zeros::{cauchy_kernel, poly_roots, sphere_zero_classify, star_zero_check, SphereZero, ZeroKind};
