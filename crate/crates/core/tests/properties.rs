mod common;

use approx::assert_relative_eq;
use common::{convolve, power_sum, rel_err};
use proptest::prelude::*;
use slicereg::representation::sphere_affine_coeffs;
use slicereg::{
    conj_eval, eval, eval_on_slice, eval_with_splitting, ext_from_holomorphic, extend, general_representation,
    imaginary_unit_of, orthogonal_unit, quat_inv, quat_mul, regularity_residual, representation, slice_coords,
    split, star_eval, star_via_composition, symm_eval, symmetric_completion, ImaginaryUnit, Quaternion, Region,
    SliceExpr, SlicePoint, SlicePolynomial, StemFunction,
};

fn quat(r: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-r..r).prop_map(Quaternion::from_array)
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|[a, b, c]| ImaginaryUnit::from_components(a, b, c).unwrap())
}

fn poly(max_degree: usize) -> impl Strategy<Value = SlicePolynomial> {
    prop::collection::vec(quat(1.0), 1..=max_degree + 1).prop_map(SlicePolynomial::from_coeffs)
}

fn slice_point() -> impl Strategy<Value = SlicePoint> {
    (-2.0..2.0f64, 0.1..2.0f64, unit()).prop_map(|(x, y, u)| SlicePoint::new(x, y, u))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in quat(10.0), b in quat(10.0)) {
        let lhs = quat_mul(a, b).norm();
        prop_assert!((lhs - a.norm() * b.norm()).abs() <= 1e-12 * (a.norm() * b.norm()).max(1e-300));
    }

    #[test]
    fn inverse_across_scales(dir in quat(1.0), exp in -6.0..6.0f64) {
        prop_assume!(dir.norm() > 1e-3);
        let q = dir * (10f64.powf(exp) / dir.norm());
        let inv = quat_inv(q).unwrap();
        prop_assert!(quat_mul(q, inv).approx_eq(Quaternion::ONE, 1e-12));
        prop_assert!(quat_mul(inv, q).approx_eq(Quaternion::ONE, 1e-12));
    }

    #[test]
    fn units_square_to_minus_one(q in quat(5.0)) {
        prop_assume!(q.im_norm() > 1e-9);
        let u = imaginary_unit_of(q).unwrap().quat();
        prop_assert!((u * u).approx_eq(-Quaternion::ONE, 1e-12));
    }

    #[test]
    fn orthogonal_unit_is_orthogonal(i in unit()) {
        let j = orthogonal_unit(i);
        prop_assert!((j.quat().norm() - 1.0).abs() < 1e-12);
        prop_assert!(j.quat().re() == 0.0);
        prop_assert!(i.dot(j).abs() < 1e-12);
    }

    #[test]
    fn slice_coordinates_roundtrip(q in quat(3.0)) {
        let p = slice_coords(q);
        prop_assert!(p.y >= 0.0);
        prop_assert!(p.to_quaternion().approx_eq(q, 1e-14));
    }

    #[test]
    fn splitting_recombines(v in quat(3.0), i in unit()) {
        let parts = split(v, i, orthogonal_unit(i)).unwrap();
        prop_assert!(parts.recombine().approx_eq(v, 1e-14));
    }

    #[test]
    fn star_matches_convolution(f in poly(8), g in poly(8), p in slice_point()) {
        let q = p.to_quaternion();
        let product = convolve(f.coeffs(), g.coeffs());
        let v = star_eval(&f.into(), &g.into(), q).unwrap();
        prop_assert!(rel_err(v, power_sum(&product, 0.0, q)) < 1e-9);
    }

    #[test]
    fn star_matches_composition(f in poly(5), g in poly(5), p in slice_point()) {
        let q = p.to_quaternion();
        let (f, g): (SliceExpr, SliceExpr) = (f.into(), g.into());
        prop_assume!(eval(&f, q).unwrap().norm() > 1e-6);
        let a = star_via_composition(&f, &g, q).unwrap();
        prop_assert!(rel_err(a, star_eval(&f, &g, q).unwrap()) < 1e-8);
    }

    #[test]
    fn conjugate_reverses_products(f in poly(5), g in poly(5), p in slice_point()) {
        let q = p.to_quaternion();
        let (f, g): (SliceExpr, SliceExpr) = (f.into(), g.into());
        let lhs = conj_eval(&f.star(&g), q).unwrap();
        let rhs = star_eval(&g.conj(), &f.conj(), q).unwrap();
        prop_assert!(rel_err(lhs, rhs) < 1e-9);
    }

    #[test]
    fn symmetrization_is_multiplicative(f in poly(5), g in poly(5), p in slice_point()) {
        let q = p.to_quaternion();
        let (f, g): (SliceExpr, SliceExpr) = (f.into(), g.into());
        let (a, b) = (symm_eval(&f, q).unwrap(), symm_eval(&g, q).unwrap());
        prop_assert!(rel_err(a * b, symm_eval(&f.star(&g), q).unwrap()) < 1e-9);
        prop_assert!(rel_err(a * b, b * a) < 1e-12);
        let off = split(a, p.unit, orthogonal_unit(p.unit)).unwrap().g.norm();
        prop_assert!(off < 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn left_reciprocal(f in poly(5), p in slice_point()) {
        let q = p.to_quaternion();
        let f: SliceExpr = f.into();
        prop_assume!(symm_eval(&f, q).unwrap().norm() > 1e-3);
        let v = star_eval(&f.recip(), &f, q).unwrap();
        prop_assert!(v.approx_eq(Quaternion::ONE, 1e-8));
    }

    #[test]
    fn star_independent_of_splitting_unit(f in poly(5), g in poly(5), p in slice_point(), angle in 0.0..6.3f64) {
        let q = p.to_quaternion();
        let fg = SliceExpr::from(f).star(&g.into());
        let j = orthogonal_unit(p.unit);
        let rotated = ImaginaryUnit::new(j.quat() * angle.cos() + p.unit.quat() * j.quat() * angle.sin()).unwrap();
        prop_assert!(p.unit.dot(rotated).abs() < 1e-12);
        let a = eval_with_splitting(&fg, q, j).unwrap();
        let b = eval_with_splitting(&fg, q, rotated).unwrap();
        prop_assert!(rel_err(b, a) < 1e-10);
    }

    /// A constant `J` times a holomorphic `H` on `L_I` is `conj(H(z̄)) J`.
    #[test]
    fn constant_unit_star_holomorphic(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..6),
                                      i in unit(), x in -2.0..2.0f64, y in 0.1..2.0f64) {
        let j = orthogonal_unit(i);
        let stem_coeffs: Vec<Quaternion> = coeffs.iter().map(|&(a, b)| Quaternion::real(a) + i.quat() * b).collect();
        let h = ext_from_holomorphic(StemFunction::from_poly(SlicePolynomial::from_coeffs(stem_coeffs), i)).unwrap();
        let z = SlicePoint::new(x, y, i).to_quaternion();
        let lhs = star_eval(&SliceExpr::constant(j.quat()), &h, z).unwrap();
        let rhs = eval(&h, z.conj()).unwrap().conj() * j.quat();
        prop_assert!(rel_err(lhs, rhs) < 1e-10);
    }

    #[test]
    fn real_points_do_not_depend_on_unit(f in poly(4), g in poly(4), x in -2.0..2.0f64, i in unit()) {
        let expr = SliceExpr::from(f).star(&g.into()).conj().symm();
        let a = eval_on_slice(&expr, x, 0.0, i).unwrap();
        let b = eval(&expr, Quaternion::real(x)).unwrap();
        prop_assert!(rel_err(a, b) < 1e-12);
    }

    #[test]
    fn affine_on_spheres(f in poly(6), p in slice_point()) {
        let f: SliceExpr = f.into();
        let (b, c) = sphere_affine_coeffs(&f, p.x, p.y).unwrap();
        let v = eval(&f, p.to_quaternion()).unwrap();
        prop_assert!(rel_err(b + p.unit.quat() * c, v) < 1e-9);
    }

    #[test]
    fn two_slice_representation(f in poly(6), p in slice_point(), j in unit(), k in unit()) {
        prop_assume!((j.quat() - k.quat()).norm() > 1e-3);
        let f: SliceExpr = f.into();
        let vj = eval_on_slice(&f, p.x, p.y, j).unwrap();
        let vk = eval_on_slice(&f, p.x, p.y, k).unwrap();
        let v = general_representation(vj, vk, j, k, p).unwrap();
        prop_assert!(rel_err(v, eval(&f, p.to_quaternion()).unwrap()) < 1e-9 / (j.quat() - k.quat()).norm());
        let vm = eval_on_slice(&f, p.x, -p.y, j).unwrap();
        let special = general_representation(vj, vm, j, -j, p).unwrap();
        prop_assert!(special.approx_eq(representation(vj, vm, j, p), 1e-13 * vj.norm().max(1.0)));
    }

    #[test]
    fn extension_reproduces_polynomials(f in poly(8), i in unit(), p in slice_point()) {
        let ext = ext_from_holomorphic(StemFunction::from_poly(f.clone(), i)).unwrap();
        let q = p.to_quaternion();
        prop_assert!(rel_err(eval(&ext, q).unwrap(), f.eval(q)) < 1e-9);
    }

    #[test]
    fn completion_is_axially_symmetric(cx in -1.0..1.0f64, cy in -0.5..0.5f64, r in 0.6..1.5f64,
                                       x in -2.0..2.0f64, y in 0.0..2.0f64, a in unit(), b in unit()) {
        let d = symmetric_completion(&Region::disc(cx, cy, r), 0.05);
        prop_assert_eq!(d.contains(SlicePoint::new(x, y, a).to_quaternion()), d.contains(SlicePoint::new(x, y, b).to_quaternion()));
    }
}

fn regular_nodes(f: &SlicePolynomial, g: &SlicePolynomial) -> Vec<(&'static str, SliceExpr)> {
    let (fe, ge): (SliceExpr, SliceExpr) = (f.clone().into(), g.clone().into());
    let pair = extend(StemFunction::from_poly(f.clone(), ImaginaryUnit::I), StemFunction::from_poly(f.clone(), ImaginaryUnit::K))
        .unwrap();
    let single = ext_from_holomorphic(StemFunction::from_fn(ImaginaryUnit::J, {
        let f = fe.clone();
        move |x, y| eval(&f, Quaternion::new(x, 0.0, y, 0.0)).unwrap()
    }))
    .unwrap();
    vec![
        ("poly", fe.clone()),
        ("star", fe.star(&ge)),
        ("conj", fe.conj()),
        ("symm", fe.symm()),
        ("recip", fe.recip()),
        ("sum", fe.sum(&ge)),
        ("rscale", fe.rscale(Quaternion::new(0.5, -1.0, 0.25, 2.0))),
        ("deriv", fe.deriv()),
        ("deriv-star", fe.star(&ge).deriv()),
        ("ext-pair", pair),
        ("ext-single", single),
        ("deriv-ext", ge.star(&fe.recip()).deriv()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_node_is_regular(f in poly(4), g in poly(4), p in slice_point()) {
        let q = p.to_quaternion();
        for (name, e) in regular_nodes(&f, &g) {
            // the reciprocal is steep near zeros of f^s
            if symm_eval(&f.clone().into(), q).unwrap().norm() < 0.1 && (name.contains("recip") || name.contains("ext")) {
                continue;
            }
            let Ok(r) = regularity_residual(&e, q, 1e-5) else { continue };
            let scale = eval(&e, q).map(|v| v.norm()).unwrap_or(1.0).max(1.0);
            prop_assert!(r < 1e-6 * scale, "{name}: residual {r:e}");
        }
    }
}

#[test]
fn conj_map_is_not_regular() {
    let control = slicereg::verify::conj_control();
    let r = regularity_residual(&control, Quaternion::new(0.3, 0.4, 0.5, 0.6), 1e-5).unwrap();
    assert_relative_eq!(r, 1.0, epsilon = 1e-8);
}

#[test]
fn reports_are_reproducible() {
    let f: SliceExpr = SlicePolynomial::from_coeffs(vec![Quaternion::new(0.2, 0.1, -0.3, 0.5), Quaternion::J, Quaternion::ONE]).into();
    let g: SliceExpr = SlicePolynomial::linear(Quaternion::K).into();
    let a = slicereg::verify::check_identity_suite(&f, &g, 300, 11);
    let b = slicereg::verify::check_identity_suite(&f, &g, 300, 11);
    assert_eq!(a, b);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = pool.install(|| slicereg::verify::check_identity_suite(&f, &g, 300, 11));
    assert_eq!(a, c);
    for (x, y) in a.iter().zip(&c) {
        assert_eq!(x.max_residual.to_bits(), y.max_residual.to_bits());
    }
}
