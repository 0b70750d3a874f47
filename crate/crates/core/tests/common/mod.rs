#![allow(dead_code)]

use slicereg::{ImaginaryUnit, Quaternion, SlicePolynomial};

/// Coefficients of the regular product, by direct convolution.
pub fn convolve(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Quaternion::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `sum (q - c)^n a_n`, powers computed explicitly.
pub fn power_sum(coeffs: &[Quaternion], center: f64, q: Quaternion) -> Quaternion {
    let w = q - Quaternion::real(center);
    let mut pow = Quaternion::ONE;
    let mut acc = Quaternion::ZERO;
    for &a in coeffs {
        acc += pow * a;
        pow = pow * w;
    }
    acc
}

pub fn poly_value(p: &SlicePolynomial, q: Quaternion) -> Quaternion {
    power_sum(p.coeffs(), p.center(), q)
}

/// Fibonacci lattice of `n` imaginary units.
pub fn fibonacci_units(n: usize) -> Vec<ImaginaryUnit> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * k as f64;
            ImaginaryUnit::from_components(r * t.cos(), r * t.sin(), z).unwrap()
        })
        .collect()
}

pub fn rel_err(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
