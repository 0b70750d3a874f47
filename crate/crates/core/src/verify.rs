//! Executable checks of the identities satisfied by regular functions.
//!
//! Every check draws its inputs from a seeded SplitMix64 stream, evaluates
//! them (in parallel), and folds the residuals into a [`CheckReport`]. The
//! fold is order independent, so a report is a pure function of its inputs
//! and seed. Residuals are relative: `|a - b| / max(1, |b|)`.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::{eval, eval_on_slice, eval_with_splitting, split, SliceExpr};
use crate::polynomial::SlicePolynomial;
use crate::quaternion::{orthogonal_unit, slice_coords, ImaginaryUnit, Quaternion, SlicePoint};
use crate::representation::{ext_from_holomorphic, general_representation, restrict};

pub const GRF_TOL: f64 = 1e-9;
pub const ANTI_HOMOMORPHISM_TOL: f64 = 1e-9;
pub const COMPOSITION_TOL: f64 = 1e-8;
pub const SYMMETRIZATION_TOL: f64 = 1e-9;
pub const COMMUTATION_TOL: f64 = 1e-12;
pub const RECIPROCAL_TOL: f64 = 1e-8;
pub const SLICE_PRESERVATION_TOL: f64 = 1e-10;
pub const EXTENSION_TOL: f64 = 1e-9;
pub const SPLITTING_TOL: f64 = 1e-10;

/// `|f(q)|` must exceed this for the composition form to be sampled.
pub const COMPOSITION_MIN_BASE: f64 = 1e-6;
/// `|f^s(q)|` must exceed this for the reciprocal identities to be sampled.
pub const RECIPROCAL_MIN_SYMM: f64 = 1e-3;

const EXTENSION_SEED: u64 = 0x5EED;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    #[serde(with = "crate::json::extended_f64")]
    pub max_residual: f64,
    /// `None` for measurements that are reported but never fail.
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub worst_case: WorstCase,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub input: String,
    #[serde(with = "crate::json::extended_f64")]
    pub residual: f64,
}

impl CheckReport {
    /// Folds `(residual, input description)` samples. NaN residuals count as
    /// infinitely bad.
    pub fn from_samples(name: &str, tolerance: Option<f64>, samples: Vec<(f64, String)>) -> Self {
        let count = samples.len();
        let mut worst = WorstCase { input: String::new(), residual: 0.0 };
        for (r, input) in samples {
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if r > worst.residual || worst.input.is_empty() {
                worst = WorstCase { input, residual: r };
            }
        }
        let max_residual = worst.residual;
        CheckReport {
            name: name.to_string(),
            samples: count,
            max_residual,
            tolerance,
            passed: tolerance.is_none_or(|t| max_residual <= t),
            worst_case: worst,
        }
    }
}

pub fn rel_err(a: Quaternion, b: Quaternion) -> f64 {
    a.dist(b) / b.norm().max(1.0)
}

/// Seeded sample generator.
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: SplitMix64::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    /// Uniform on the sphere of imaginary units.
    pub fn unit(&mut self) -> ImaginaryUnit {
        loop {
            let v: [f64; 3] = [
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
            ];
            if let Ok(u) = ImaginaryUnit::from_components(v[0], v[1], v[2]) {
                return u;
            }
        }
    }

    /// `x` in `[-2, 2]`, `y` in `[0.1, 2]`, uniform unit.
    pub fn slice_point(&mut self) -> SlicePoint {
        let x = self.uniform(-2.0, 2.0);
        let y = self.uniform(0.1, 2.0);
        SlicePoint::new(x, y, self.unit())
    }

    /// Uniform direction, modulus uniform in `[0, radius]`.
    pub fn quaternion(&mut self, radius: f64) -> Quaternion {
        loop {
            let v = Quaternion::new(
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
            );
            let n = v.norm();
            if n > 1e-6 {
                return v * (self.uniform(0.0, radius) / n);
            }
        }
    }

    /// Degree exactly `degree`, coefficients of modulus at most one, with a
    /// leading coefficient of modulus at least 0.1.
    pub fn polynomial(&mut self, degree: usize, center: f64) -> SlicePolynomial {
        let mut coeffs: Vec<Quaternion> = (0..=degree).map(|_| self.quaternion(1.0)).collect();
        let lead = coeffs[degree];
        coeffs[degree] = lead * (self.uniform(0.1, 1.0) / lead.norm().max(1e-300));
        SlicePolynomial::new(center, coeffs)
    }

    /// Degree drawn from `1..=max_degree`.
    pub fn polynomial_up_to(&mut self, max_degree: usize) -> SlicePolynomial {
        let d = 1 + (self.rng.random::<u64>() % max_degree.max(1) as u64) as usize;
        self.polynomial(d, 0.0)
    }

    /// A pair of distinct units.
    pub fn unit_pair(&mut self) -> (ImaginaryUnit, ImaginaryUnit) {
        loop {
            let (j, k) = (self.unit(), self.unit());
            if (j.quat() - k.quat()).norm() > 1e-3 {
                return (j, k);
            }
        }
    }
}

fn describe(p: SlicePoint) -> String {
    format!("x={:e} y={:e} I={}", p.x, p.y, p.unit.quat())
}

/// Spread of the two-slice representation of `f` across random `(J, K)`
/// pairs, on random spheres with random targets.
pub fn check_grf_invariance(f: &SliceExpr, spheres: usize, unit_pairs: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = Sampler::new(seed);
    let cases: Vec<(SlicePoint, Vec<(ImaginaryUnit, ImaginaryUnit)>)> = (0..spheres)
        .map(|_| {
            let target = rng.slice_point();
            let pairs = (0..unit_pairs.max(1)).map(|_| rng.unit_pair()).collect();
            (target, pairs)
        })
        .collect();
    let samples = cases
        .par_iter()
        .map(|(target, pairs)| -> Result<(f64, String)> {
            let values = pairs
                .iter()
                .map(|&(j, k)| {
                    let vj = eval_on_slice(f, target.x, target.y, j)?;
                    let vk = eval_on_slice(f, target.x, target.y, k)?;
                    general_representation(vj, vk, j, k, *target)
                })
                .collect::<Result<Vec<_>>>()?;
            let spread = values.iter().map(|&v| rel_err(v, values[0])).fold(0.0, f64::max);
            Ok((spread, describe(*target)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::from_samples("grf-invariance", Some(GRF_TOL), samples))
}

/// Residual of each identity over `points` random points: anti-homomorphism
/// of the regular conjugate, composition form of the product,
/// multiplicativity and commutation of symmetrizations, left and right
/// reciprocal identities, and slice preservation of `f^s`.
///
/// The right reciprocal identity is measured but carries no tolerance.
pub fn check_identity_suite(f: &SliceExpr, g: &SliceExpr, points: usize, seed: u64) -> Vec<CheckReport> {
    let mut rng = Sampler::new(seed);
    let pts: Vec<SlicePoint> = (0..points).map(|_| rng.slice_point()).collect();
    let one = Quaternion::ONE;

    let fg = f.star(g);
    let anti = fg.conj();
    let anti_rhs = g.conj().star(&f.conj());
    let (sf, sg, sfg) = (f.symm(), g.symm(), fg.symm());
    let left = f.recip().star(f);
    let right = f.star(&f.recip());

    let run = |name: &str, tol: Option<f64>, sample: &(dyn Fn(Quaternion) -> Result<Option<f64>> + Sync)| {
        let samples: Vec<(f64, String)> = pts
            .par_iter()
            .filter_map(|&p| match sample(p.to_quaternion()) {
                Ok(Some(r)) => Some((r, describe(p))),
                Ok(None) => None,
                Err(e) => Some((f64::INFINITY, format!("{}: {e}", describe(p)))),
            })
            .collect();
        CheckReport::from_samples(name, tol, samples)
    };

    vec![
        run("anti-homomorphism", Some(ANTI_HOMOMORPHISM_TOL), &|q| {
            Ok(Some(rel_err(eval(&anti, q)?, eval(&anti_rhs, q)?)))
        }),
        run("composition-form", Some(COMPOSITION_TOL), &|q| {
            let fq = eval(f, q)?;
            if fq.norm() <= COMPOSITION_MIN_BASE {
                return Ok(None);
            }
            let composed = fq * eval(g, fq.inv()? * q * fq)?;
            Ok(Some(rel_err(composed, eval(&fg, q)?)))
        }),
        run("symmetrization-multiplicative", Some(SYMMETRIZATION_TOL), &|q| {
            let (a, b) = (eval(&sf, q)?, eval(&sg, q)?);
            Ok(Some(rel_err(a * b, eval(&sfg, q)?)))
        }),
        run("symmetrization-commute", Some(COMMUTATION_TOL), &|q| {
            let (a, b) = (eval(&sf, q)?, eval(&sg, q)?);
            Ok(Some(rel_err(a * b, b * a)))
        }),
        run("reciprocal-left", Some(RECIPROCAL_TOL), &|q| {
            if eval(&sf, q)?.norm() <= RECIPROCAL_MIN_SYMM {
                return Ok(None);
            }
            Ok(Some(rel_err(eval(&left, q)?, one)))
        }),
        run("reciprocal-right", None, &|q| {
            if eval(&sf, q)?.norm() <= RECIPROCAL_MIN_SYMM {
                return Ok(None);
            }
            Ok(Some(rel_err(eval(&right, q)?, one)))
        }),
        run("symmetrization-slice-preserving", Some(SLICE_PRESERVATION_TOL), &|q| {
            let s = eval(&sf, q)?;
            let unit = slice_coords(q).unit;
            let parts = split(s, unit, orthogonal_unit(unit))?;
            Ok(Some(parts.g.norm() / s.norm().max(1.0)))
        }),
    ]
}

/// Residual of the single-slice extension of `f|L_slice` against `f`.
pub fn check_extension_roundtrip(f: &SlicePolynomial, slice: ImaginaryUnit, points: usize) -> Result<CheckReport> {
    check_extension_roundtrip_seeded(f, slice, points, EXTENSION_SEED)
}

pub fn check_extension_roundtrip_seeded(
    f: &SlicePolynomial,
    slice: ImaginaryUnit,
    points: usize,
    seed: u64,
) -> Result<CheckReport> {
    let expr = SliceExpr::poly(f.clone());
    let ext = ext_from_holomorphic(restrict(&expr, slice))?;
    let mut rng = Sampler::new(seed);
    let pts: Vec<SlicePoint> = (0..points).map(|_| rng.slice_point()).collect();
    let samples = pts
        .par_iter()
        .map(|&p| -> Result<(f64, String)> {
            let q = p.to_quaternion();
            Ok((rel_err(eval(&ext, q)?, f.eval(q)), describe(p)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::from_samples("extension-roundtrip", Some(EXTENSION_TOL), samples))
}

/// Star products computed with two different splitting units must agree.
pub fn check_splitting_independence(f: &SliceExpr, g: &SliceExpr, points: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = Sampler::new(seed);
    let cases: Vec<(SlicePoint, f64)> = (0..points).map(|_| (rng.slice_point(), rng.uniform(0.0, 6.3))).collect();
    let fg = f.star(g);
    let samples = cases
        .par_iter()
        .map(|&(p, angle)| -> Result<(f64, String)> {
            let q = p.to_quaternion();
            let j = orthogonal_unit(p.unit);
            // rotate J about I inside the plane orthogonal to I
            let ij = p.unit.quat() * j.quat();
            let rotated = ImaginaryUnit::new(j.quat() * angle.cos() + ij * angle.sin())?;
            let a = eval_with_splitting(&fg, q, j)?;
            let b = eval_with_splitting(&fg, q, rotated)?;
            Ok((rel_err(b, a), describe(p)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::from_samples("splitting-independence", Some(SPLITTING_TOL), samples))
}

/// `conj(q)`: a slice function that is not regular.
pub fn conj_control() -> SliceExpr {
    SliceExpr::map("conj", |q| q.conj())
}

/// `i q`: left multiplication by a constant, not a slice function.
pub fn left_mul_control() -> SliceExpr {
    SliceExpr::map("i*q", |q| Quaternion::I * q)
}
