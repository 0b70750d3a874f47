mod common;

use common::{convolve, fibonacci_units, poly_value, rel_err};
use nalgebra::DMatrix;
use slicereg::verify::Sampler;
use slicereg::zeros::DEFAULT_ZERO_TOL;
use slicereg::{
    cauchy_kernel, from_slice, poly_roots, recip_eval, sphere_zero_classify, star_poly, star_zero_check, ImaginaryUnit,
    Quaternion, SliceError, SliceExpr, SlicePolynomial, SphereZero, ZeroKind,
};

/// Distinct spheres `(x, |y|)` of the roots of a real polynomial, from the
/// eigenvalues of its companion matrix.
fn companion_spheres(real_coeffs: &[f64], merge: f64) -> Vec<(f64, f64)> {
    let n = real_coeffs.len() - 1;
    let lead = real_coeffs[n];
    let m = DMatrix::from_fn(n, n, |r, c| {
        if r == 0 {
            -real_coeffs[n - 1 - c] / lead
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut spheres: Vec<(f64, f64)> = Vec::new();
    for z in m.complex_eigenvalues().iter() {
        let s = (z.re, z.im.abs());
        if !spheres.iter().any(|t| (t.0 - s.0).hypot(t.1 - s.1) < merge) {
            spheres.push(s);
        }
    }
    spheres
}

fn symmetrization_coeffs(p: &SlicePolynomial) -> Vec<f64> {
    let conj: Vec<Quaternion> = p.coeffs().iter().map(|a| a.conj()).collect();
    convolve(p.coeffs(), &conj).iter().map(|c| c.re()).collect()
}

fn assert_zero(p: &SlicePolynomial, z: &SphereZero) {
    match z.kind {
        ZeroKind::Isolated(u) => {
            let r = poly_value(p, from_slice(z.x, z.y, u)).norm();
            assert!(r < 1e-7, "isolated residual {r:e} at {z:?}");
        }
        ZeroKind::Spherical => {
            for u in fibonacci_units(50) {
                let r = poly_value(p, from_slice(z.x, z.y, u)).norm();
                assert!(r < 1e-7, "spherical residual {r:e} at {z:?}");
            }
        }
        ZeroKind::None => panic!("non-zero reported: {z:?}"),
    }
}

#[test]
fn root_count_matches_companion_matrix() {
    let mut rng = Sampler::new(5);
    for _ in 0..60 {
        let p = rng.polynomial_up_to(6);
        let zeros = poly_roots(&p, DEFAULT_ZERO_TOL).unwrap();
        let spheres = companion_spheres(&symmetrization_coeffs(&p), 1e-6);
        assert_eq!(zeros.len(), spheres.len(), "{p:?}");
        for &(x, y) in &spheres {
            assert!(
                zeros.iter().any(|z| (z.x - x).hypot(z.y - y) < 1e-6),
                "sphere ({x}, {y}) missing from {zeros:?}"
            );
        }
        for z in &zeros {
            assert_zero(&p, z);
        }
    }
}

#[test]
fn real_coefficients_give_spherical_zeros() {
    let mut rng = Sampler::new(6);
    for _ in 0..40 {
        let degree = 2 + (rng.uniform(0.0, 5.0) as usize);
        let coeffs: Vec<f64> = (0..=degree).map(|k| if k == degree { 1.0 } else { rng.uniform(-1.0, 1.0) }).collect();
        let p = SlicePolynomial::real(&coeffs);
        let zeros = poly_roots(&p, DEFAULT_ZERO_TOL).unwrap();
        // f^s = f^2 here: every root is double
        assert_eq!(zeros.len(), companion_spheres(&coeffs, 1e-6).len());
        for z in &zeros {
            if z.y > 0.0 {
                assert_eq!(z.kind, ZeroKind::Spherical, "{z:?}");
            }
            assert_zero(&p, z);
        }
    }
}

#[test]
fn slice_preserving_polynomials_vanish_on_their_slice_or_spheres() {
    let j = Quaternion::J;
    let mut rng = Sampler::new(7);
    for _ in 0..40 {
        let coeffs: Vec<Quaternion> =
            (0..4).map(|_| Quaternion::real(rng.uniform(-1.0, 1.0)) + j * rng.uniform(-1.0, 1.0)).collect();
        let p = SlicePolynomial::from_coeffs(coeffs);
        for z in poly_roots(&p, DEFAULT_ZERO_TOL).unwrap() {
            match z.kind {
                ZeroKind::Isolated(u) if z.y > 0.0 => {
                    assert!(u.quat().approx_eq(j, 1e-6) || u.quat().approx_eq(-j, 1e-6), "{z:?}")
                }
                _ => {}
            }
        }
    }
    // a zero off L_j forces a spherical zero
    let p = SlicePolynomial::real(&[4.0, 0.0, 1.0]);
    assert_eq!(sphere_zero_classify(&p.into(), 0.0, 2.0, 1e-9).unwrap().kind, ZeroKind::Spherical);
}

#[test]
fn product_zero_theorem() {
    let mut rng = Sampler::new(8);
    for _ in 0..20 {
        let (f, g) = (rng.polynomial_up_to(3), rng.polynomial_up_to(3));
        let (fe, ge): (SliceExpr, SliceExpr) = (f.clone().into(), g.clone().into());
        for _ in 0..50 {
            let q = rng.slice_point().to_quaternion();
            assert!(star_zero_check(&fe, &ge, q, 1e-8).unwrap());
        }
        let fg = star_poly(&f, &g).unwrap();
        for z in poly_roots(&fg, DEFAULT_ZERO_TOL).unwrap() {
            if let Some(q) = z.point() {
                assert!(star_zero_check(&fe, &ge, q, 1e-7).unwrap(), "{z:?}");
            }
        }
    }
}

#[test]
fn kernel_is_the_reciprocal_of_q_minus_s() {
    let mut rng = Sampler::new(9);
    let mut n = 0;
    while n < 100 {
        let (s, q) = (rng.quaternion(2.0), rng.quaternion(2.0));
        if (q * q - q * (2.0 * s.re()) + Quaternion::real(s.norm_sqr())).norm() < 1e-2 {
            continue;
        }
        let via_recip = recip_eval(&SlicePolynomial::linear(s).into(), q).unwrap();
        let k = cauchy_kernel(s, q).unwrap();
        assert!(rel_err(k, via_recip) < 1e-9);
        n += 1;
    }
    let i = ImaginaryUnit::I.quat();
    assert!(matches!(cauchy_kernel(i, Quaternion::J), Err(SliceError::SingularPoint { .. })));
    assert!(cauchy_kernel(Quaternion::ZERO, Quaternion::ONE).unwrap().approx_eq(Quaternion::ONE, 1e-15));
}

#[test]
fn multiple_roots_are_merged() {
    // (q - j)^3 * (q + 1)
    let lin = SlicePolynomial::linear(Quaternion::J);
    let cube = star_poly(&star_poly(&lin, &lin).unwrap(), &lin).unwrap();
    let p = star_poly(&cube, &SlicePolynomial::real(&[1.0, 1.0])).unwrap();
    let zeros = poly_roots(&p, DEFAULT_ZERO_TOL).unwrap();
    assert_eq!(zeros.len(), 2, "{zeros:?}");
    assert!(zeros.iter().any(|z| z.y == 0.0 && (z.x + 1.0).abs() < 1e-8));
    let on_sphere = zeros.iter().find(|z| z.y > 0.5).unwrap();
    assert!((on_sphere.y - 1.0).abs() < 1e-4 && on_sphere.x.abs() < 1e-4);
}
