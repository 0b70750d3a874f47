//! Polynomials `sum (q - p0)^n a_n` with quaternionic coefficients on the
//! right and a real center `p0`.
//!
//! On such polynomials the regular product is the ordinary convolution of
//! the coefficient sequences (with non-commuting coefficient products) and
//! the regular conjugate conjugates each coefficient.

use crate::error::{Result, SliceError};
use crate::quaternion::Quaternion;

#[derive(Clone, Debug, PartialEq)]
pub struct SlicePolynomial {
    center: f64,
    coeffs: Vec<Quaternion>,
}

impl SlicePolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(center: f64, coeffs: Vec<Quaternion>) -> Self {
        let mut p = SlicePolynomial { center, coeffs };
        p.trim();
        p
    }

    /// Polynomial centered at the origin.
    pub fn from_coeffs(coeffs: Vec<Quaternion>) -> Self {
        Self::new(0.0, coeffs)
    }

    pub fn constant(a: Quaternion) -> Self {
        Self::new(0.0, vec![a])
    }

    /// Real-coefficient polynomial centered at the origin.
    pub fn real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    /// `q - a`.
    pub fn linear(a: Quaternion) -> Self {
        Self::from_coeffs(vec![-a, Quaternion::ONE])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&Quaternion::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last nonzero coefficient; 0 for constants and for the
    /// zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Quaternion {
        self.coeffs.last().copied().unwrap_or(Quaternion::ZERO)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Horner evaluation; the variable multiplies from the left.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let w = q - Quaternion::real(self.center);
        self.coeffs.iter().rev().fold(Quaternion::ZERO, |acc, &a| w * acc + a)
    }

    /// Exact coefficient shift `sum n a_n (q - p0)^(n-1)`.
    pub fn derivative(&self) -> SlicePolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &a)| a * n as f64)
            .collect();
        SlicePolynomial::new(self.center, coeffs)
    }

    pub fn add(&self, other: &SlicePolynomial) -> Result<SlicePolynomial> {
        self.check_center(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or_default()
                    + other.coeffs.get(i).copied().unwrap_or_default()
            })
            .collect();
        Ok(SlicePolynomial::new(self.center, coeffs))
    }

    /// Multiplies every coefficient on the right by `a`.
    pub fn right_scale(&self, a: Quaternion) -> SlicePolynomial {
        SlicePolynomial::new(self.center, self.coeffs.iter().map(|&c| c * a).collect())
    }

    fn check_center(&self, other: &SlicePolynomial) -> Result<()> {
        if self.center != other.center {
            return Err(SliceError::MismatchedCenters(self.center, other.center));
        }
        Ok(())
    }
}

/// Regular product: `c_n = sum_{r=0}^{n} a_r b_{n-r}`.
pub fn star_poly(f: &SlicePolynomial, g: &SlicePolynomial) -> Result<SlicePolynomial> {
    f.check_center(g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(SlicePolynomial::new(f.center, Vec::new()));
    }
    let mut c = vec![Quaternion::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (r, &a) in f.coeffs.iter().enumerate() {
        for (s, &b) in g.coeffs.iter().enumerate() {
            c[r + s] += a * b;
        }
    }
    Ok(SlicePolynomial::new(f.center, c))
}

/// Regular conjugate: coefficient-wise quaternion conjugation.
pub fn conj_poly(f: &SlicePolynomial) -> SlicePolynomial {
    SlicePolynomial::new(f.center, f.coeffs.iter().map(|c| c.conj()).collect())
}

/// Symmetrization `f * f^c`. Its coefficients are real; the imaginary
/// round-off is discarded.
pub fn symm_poly(f: &SlicePolynomial) -> SlicePolynomial {
    let s = star_poly(f, &conj_poly(f)).expect("same center");
    SlicePolynomial::new(s.center, s.coeffs.iter().map(|c| Quaternion::real(c.re())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn convolution_of_linear_factors() {
        let f = SlicePolynomial::linear(I);
        let g = SlicePolynomial::linear(J);
        let p = star_poly(&f, &g).unwrap();
        assert_eq!(p.coeffs(), &[K, -I - J, ONE]);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn star_unit_and_constants() {
        let f = SlicePolynomial::from_coeffs(vec![I, J + K, Quaternion::real(2.0)]);
        assert_eq!(star_poly(&f, &SlicePolynomial::constant(ONE)).unwrap(), f);
        let p = star_poly(&SlicePolynomial::constant(I), &SlicePolynomial::constant(J)).unwrap();
        assert_eq!(p.coeffs(), &[K]);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(conj_poly(&SlicePolynomial::linear(I)).coeffs(), &[I, ONE]);
        let p = SlicePolynomial::from_coeffs(vec![K, -I - J, ONE]);
        assert_eq!(conj_poly(&p).coeffs(), &[-K, I + J, ONE]);
        assert_eq!(conj_poly(&conj_poly(&p)), p);
    }

    #[test]
    fn symmetrization_of_q_minus_j() {
        let s = symm_poly(&SlicePolynomial::linear(J));
        assert_eq!(s, SlicePolynomial::real(&[1.0, 0.0, 1.0]));
    }

    #[test]
    fn trimming_and_degree() {
        let p = SlicePolynomial::from_coeffs(vec![I, ONE, Quaternion::ZERO, Quaternion::ZERO]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
        let z = SlicePolynomial::from_coeffs(vec![Quaternion::ZERO]);
        assert!(z.is_zero());
        assert_eq!(z.eval(I), Quaternion::ZERO);
    }

    #[test]
    fn horner_matches_power_sum() {
        let f = SlicePolynomial::new(
            0.5,
            vec![I, Quaternion::new(0.2, -1.0, 0.3, 0.0), K, Quaternion::new(1.0, 1.0, -2.0, 0.5)],
        );
        let q = Quaternion::new(0.3, 1.1, -0.4, 0.9);
        let w = q - Quaternion::real(0.5);
        let mut pow = ONE;
        let mut sum = Quaternion::ZERO;
        for &a in f.coeffs() {
            sum += pow * a;
            pow = pow * w;
        }
        assert!(f.eval(q).dist(sum) < 1e-12 * sum.norm().max(1.0));
    }

    #[test]
    fn derivative_power_rule() {
        let sq = SlicePolynomial::real(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.derivative().eval(I), I * 2.0);
        assert!(SlicePolynomial::constant(K).derivative().is_zero());
    }

    #[test]
    fn mismatched_centers_rejected() {
        let f = SlicePolynomial::new(0.0, vec![ONE]);
        let g = SlicePolynomial::new(1.0, vec![ONE]);
        assert!(matches!(star_poly(&f, &g), Err(SliceError::MismatchedCenters(..))));
    }
}
