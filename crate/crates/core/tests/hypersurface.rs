use std::f64::consts::FRAC_1_SQRT_2;

use paranull::hypersurface::checks::{
    connection_residual, gauss_prediction, gradient_c_residual, hessian_c_residual,
    laplacian_c_sides, null_identity_expression, null_normal_residual, null_scalar_formula,
    principal_angle_residual, trivial_direction_residual, x_derivative_residual, Invariants,
};
use paranull::hypersurface::{evaluate_point, shape_data, Evaluator, Reparametrized, NULL_TOL};
use paranull::models::{grid, Family, FamilySpec, ModelKind, SurfaceInSpaceForm};
use paranull::numerics::Mat;
use paranull::verifier::Sample;
use proptest::prelude::*;

fn sigma(space: ModelKind, t: f64) -> Family {
    Family::new(FamilySpec::SigmaT { space, t }).unwrap()
}

fn plane() -> Family {
    let h = FRAC_1_SQRT_2;
    Family::new(FamilySpec::NullPlane {
        normal: [h, 0.0, h, 0.0],
    })
    .unwrap()
}

fn graph(c: f64) -> Family {
    Family::new(FamilySpec::Graph { c }).unwrap()
}

fn at(f: &Family, s: f64) -> Sample {
    let u: Vec<f64> = f
        .sample_box()
        .iter()
        .map(|(a, b)| a + (b - a) * s)
        .collect();
    Sample::evaluate(f, &u, Evaluator::jet(), NULL_TOL).unwrap()
}

fn every_family() -> Vec<Family> {
    let mut out = vec![plane(), graph(0.0), graph(0.25), graph(-0.6)];
    for space in [ModelKind::S2xs2, ModelKind::H2xh2] {
        for t in [-0.5, 0.0, 0.5] {
            out.push(sigma(space, t));
        }
    }
    out.push(
        Family::new(FamilySpec::Mab {
            a: [0.0, 0.0, 1.0],
            b: [1.0, 0.0, 0.0],
        })
        .unwrap(),
    );
    for surface in [
        SurfaceInSpaceForm::geodesic_sphere(0.7).unwrap(),
        SurfaceInSpaceForm::clifford_torus(),
    ] {
        out.push(Family::new(FamilySpec::Tangential { surface }).unwrap());
    }
    out
}

#[test]
fn normals_and_nullity() {
    for s in [0.1, 0.5, 0.9] {
        assert!(at(&sigma(ModelKind::S2xs2, 0.4), s).sd.c_plus.abs() < 1e-9);
    }
    let flat = at(&graph(0.0), 0.3);
    assert!((flat.sd.c_plus + 1.0).abs() < 1e-15);
    assert!(!flat.sd.is_null());
    let n = &flat.sd.n_plus;
    assert!((n[3].abs() - 1.0).abs() < 1e-15 && n[..3].iter().all(|v| *v == 0.0));
    let p = at(&plane(), 0.3);
    assert!(p.sd.is_null() && p.sd.c_plus.abs() < 1e-15);
}

#[test]
fn shape_operator_examples() {
    let s = at(&sigma(ModelKind::S2xs2, 0.0), 0.4);
    let h = FRAC_1_SQRT_2;
    for (a, b) in s.sd.lambdas.iter().zip([-h, 0.0, h]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!(s.sd.mean_h.abs() < 1e-12);

    let s = at(&sigma(ModelKind::H2xh2, 0.0), 0.4);
    let mut l: Vec<f64> = s.sd.lambdas.iter().map(|v| v.abs()).collect();
    l.sort_by(f64::total_cmp);
    assert!(l[0] < 1e-12 && (l[1] - h).abs() < 1e-12 && (l[2] - h).abs() < 1e-12);
    assert!((s.sd.mean_h.abs() - 2f64.sqrt() / 3.0).abs() < 1e-12);

    assert_eq!(at(&plane(), 0.7).sd.a_plus.max_abs(), 0.0);
}

#[test]
fn derivative_identities_for_c_plus() {
    let cases = [
        (sigma(ModelKind::S2xs2, 0.5), 1e-7),
        (sigma(ModelKind::H2xh2, 0.3), 1e-7),
        (graph(0.25), 1e-6),
        (plane(), 0.0),
    ];
    for (f, grad_tol) in &cases {
        for s in [0.2, 0.6] {
            let x = at(f, s);
            assert!(gradient_c_residual(&x.pd) <= *grad_tol, "{}", f.label());
            assert!(
                x_derivative_residual(&x.pd, &x.sd).unwrap() < 1e-5,
                "{}",
                f.label()
            );
            assert!(
                hessian_c_residual(&x.pd, &x.sd).unwrap() < 1e-5,
                "{}",
                f.label()
            );
            let (lhs, rhs) = laplacian_c_sides(&x.pd, &x.sd).unwrap();
            assert!((lhs - rhs).abs() < 1e-4, "{}: {lhs} vs {rhs}", f.label());
        }
    }
    for space in [ModelKind::S2xs2, ModelKind::H2xh2] {
        assert!(at(&sigma(space, 0.5), 0.3).sd.trace_pt_a2().abs() < 1e-6);
    }
    assert_eq!(at(&plane(), 0.3).sd.trace_pt_a2(), 0.0);
}

#[test]
fn principal_angle() {
    for space in [ModelKind::S2xs2, ModelKind::H2xh2] {
        let s = at(&sigma(space, 0.5), 0.35);
        let nf = s.null().unwrap();
        assert!(nf.theta.cos().abs() < 1e-7 && !nf.gauge);
        assert!(principal_angle_residual(&s.sd, nf) < 1e-7);
    }
    assert!(at(&plane(), 0.35).null().unwrap().gauge);
}

#[test]
fn scalar_curvature_identities() {
    for t in [-0.7, 0.0, 0.5] {
        let s = at(&sigma(ModelKind::S2xs2, t), 0.3);
        let r = s.scalar().unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!((gauss_prediction(&s.sd, 4.0) - r).abs() < 1e-9);
        let nf = s.null().unwrap();
        assert!((null_scalar_formula(nf) - r).abs() < 1e-9);
        assert!(null_identity_expression(nf, 4.0).abs() < 1e-9);
        assert!((-2.0 * nf.lambda1 * nf.lambda2 - 1.0).abs() < 1e-12);
    }
    for t in [0.0, 0.3] {
        let s = at(&sigma(ModelKind::H2xh2, t), 0.3);
        let r = s.scalar().unwrap();
        assert!((r + 1.0).abs() < 1e-9);
        assert!((gauss_prediction(&s.sd, -4.0) - r).abs() < 1e-9);
        let nf = s.null().unwrap();
        assert!((null_scalar_formula(nf) - r).abs() < 1e-9);
        assert!(null_identity_expression(nf, -4.0).abs() < 1e-9);
        assert!((nf.lambda1 * nf.lambda2 - 0.5).abs() < 1e-12);
    }
    let s = at(&sigma(ModelKind::S2xs2, 0.3), 0.5);
    let nf = s.null().unwrap();
    assert!((nf.lambda1 * nf.lambda2 + 0.5).abs() < 1e-12);

    let p = at(&plane(), 0.5);
    let nf = p.null().unwrap();
    assert_eq!(p.scalar().unwrap(), 0.0);
    assert_eq!(gauss_prediction(&p.sd, 0.0), 0.0);
    assert_eq!(null_scalar_formula(nf), 0.0);
    assert_eq!(null_identity_expression(nf, 0.0), 0.0);
}

#[test]
fn null_frame_connection() {
    for space in [ModelKind::S2xs2, ModelKind::H2xh2] {
        let s = at(&sigma(space, 0.5), 0.45);
        let nfd = s.frame().unwrap();
        assert!(connection_residual(nfd) < 1e-4);
        assert!(nfd.compatibility_defect() < 1e-8);
    }
    let p = at(&plane(), 0.45);
    let nfd = p.frame().unwrap();
    assert_eq!([nfd.k_coef, nfd.mu_coef, nfd.nu_coef], [0.0; 3]);
}

#[test]
fn orientation_flip_negates_the_shape_operator() {
    let flip = Mat::from_diag(&[-1.0, 1.0, 1.0]);
    for f in [
        sigma(ModelKind::S2xs2, 0.5),
        sigma(ModelKind::H2xh2, -0.3),
        graph(0.25),
    ] {
        let u: Vec<f64> = f
            .sample_box()
            .iter()
            .map(|(a, b)| 0.3 * a + 0.7 * b)
            .collect();
        let base = Sample::evaluate(&f, &u, Evaluator::jet(), NULL_TOL).unwrap();
        let rep = Reparametrized::new(&base.imm, &u, flip.clone());
        let pd = evaluate_point(
            &rep,
            &base.model.metric,
            &base.model.pstruct,
            &u,
            &Evaluator::jet(),
        )
        .unwrap();
        let sd = shape_data(&pd.local, &u, NULL_TOL).unwrap();
        let (a, b) = (Invariants::of(&base.sd), Invariants::of(&sd));
        assert!((a.mean + b.mean).abs() < 1e-12);
        assert!(a.flipped().distance(&b) < 1e-10, "{a:?} vs {b:?}");
        if let (Some(n0), Some(n1)) = (&base.sd.null, &sd.null) {
            assert!((n0.lambda1 * n0.lambda2 - n1.lambda1 * n1.lambda2).abs() < 1e-12);
        }
    }
}

#[test]
fn null_classification_is_two_sided() {
    // 200 samples over every family
    let families = every_family();
    let per = 200usize.div_ceil(families.len());
    let mut count = 0;
    for f in &families {
        let n = (per as f64).cbrt().ceil() as usize;
        for u in grid(&f.sample_box(), &[n, n, n]).into_iter().take(per) {
            let s = Sample::evaluate(f, &u, Evaluator::jet(), NULL_TOL).unwrap();
            let (agree, defect) = null_normal_residual(&s.pd, 1e-8, 1e-7);
            assert!(agree, "{} at {u:?}", f.label());
            if s.sd.is_null() {
                assert!(defect < 1e-7);
                let nf = s.null().unwrap();
                assert!(trivial_direction_residual(&s.sd, nf) <= 1e-7);
            }
            assert!(s.sd.c_plus.abs() <= 1.0 + 1e-9);
            count += 1;
        }
    }
    assert!(count >= 200);
}

fn orthogonal(entries: &[f64]) -> Option<Mat<f64>> {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for c in entries.chunks(3) {
        let mut v = c.to_vec();
        for b in &cols {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            return None;
        }
        cols.push(v.iter().map(|x| x / n).collect());
    }
    Some(Mat::from_cols(&cols))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn invariants_ignore_reparametrization(
        entries in prop::collection::vec(-1.0f64..1.0, 9),
        s in 0.1f64..0.9,
        k in 0usize..6,
    ) {
        let families = [
            sigma(ModelKind::S2xs2, 0.5),
            sigma(ModelKind::H2xh2, 0.0),
            graph(0.25),
            plane(),
            Family::new(FamilySpec::Mab { a: [0.0, 0.0, 1.0], b: [0.0, 0.0, 1.0] }).unwrap(),
            Family::new(FamilySpec::Tangential { surface: SurfaceInSpaceForm::geodesic_sphere(0.5).unwrap() }).unwrap(),
        ];
        let Some(q) = orthogonal(&entries) else { return Ok(()) };
        let f = &families[k];
        let base = at(f, s);
        let rep = Reparametrized::new(&base.imm, &base.u, q);
        let det = rep.determinant();
        let pd = evaluate_point(&rep, &base.model.metric, &base.model.pstruct, &base.u, &Evaluator::jet()).unwrap();
        let sd = shape_data(&pd.local, &base.u, NULL_TOL).unwrap();
        let mut inv = Invariants::of(&sd);
        if det < 0.0 {
            inv = inv.flipped();
        }
        prop_assert!(inv.distance(&base.invariants()) < 1e-8, "{}: {:?} vs {:?}", f.label(), inv, base.invariants());
    }
}
