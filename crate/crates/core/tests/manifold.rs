#![allow(clippy::needless_range_loop)]

use paranull::manifold::{
    christoffel, covariant_derivative_11, curvature, is_einstein, signature, Chart,
    ConstantEndomorphism, ConstantMetric, DerivativeMode, MetricField,
};
use paranull::models::{build_model, ModelKind, ModelSpace};
use paranull::numerics::{fd_jacobian, Mat};
use proptest::prelude::*;

const ALL: [ModelKind; 5] = [
    ModelKind::S2xs2,
    ModelKind::H2xh2,
    ModelKind::Flat,
    ModelKind::S2xr2,
    ModelKind::GeodesicSpace,
];

fn max3(t: &[Vec<Vec<f64>>]) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Maps a point of the unit cube into the model's sample box.
fn in_box(m: &ModelSpace, s: &[f64; 4]) -> Vec<f64> {
    m.sample_box()
        .iter()
        .zip(s)
        .map(|((a, b), t)| a + (b - a) * t)
        .collect()
}

#[test]
fn euclidean_metric_has_no_christoffels() {
    let g = ConstantMetric::new(Chart::euclidean("r4", 4), Mat::identity(4));
    let gamma = christoffel(&g, &[0.1, 0.2, -0.3, 0.4], DerivativeMode::Jet).unwrap();
    assert_eq!(max3(&gamma), 0.0);
}

#[test]
fn sphere_product_christoffels_are_blockwise() {
    let m = build_model(ModelKind::S2xs2).unwrap();
    let x = [1.1, 0.4, 0.7, -2.0];
    for mode in [DerivativeMode::Jet, DerivativeMode::Fd] {
        let gamma = christoffel(&m.metric, &x, mode).unwrap();
        let tol = if mode == DerivativeMode::Jet {
            1e-14
        } else {
            1e-8
        };
        for (k, off) in [(0usize, 0usize), (2, 2)] {
            let phi = x[off];
            assert!((gamma[k][off + 1][off + 1] + phi.sin() * phi.cos()).abs() < tol);
            assert!((gamma[k + 1][k][k + 1] - phi.cos() / phi.sin()).abs() < tol);
        }
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    if (k < 2) != (i < 2) || (k < 2) != (j < 2) {
                        assert!(gamma[k][i][j].abs() < tol, "mixed block Γ^{k}_{i}{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn model_scalar_curvatures() {
    for (kind, r) in [
        (ModelKind::S2xs2, 4.0),
        (ModelKind::H2xh2, -4.0),
        (ModelKind::Flat, 0.0),
        (ModelKind::S2xr2, 2.0),
    ] {
        let m = build_model(kind).unwrap();
        for x in m.sample_grid(3) {
            let rep = curvature(&m.metric, &x, DerivativeMode::Jet).unwrap();
            assert!((rep.scalar - r).abs() < 1e-10, "{kind:?}: {}", rep.scalar);
            assert_eq!(rep.signature, (0, 4));
        }
    }
    let flat = build_model(ModelKind::Flat).unwrap();
    let rep = curvature(&flat.metric, &[0.3, -0.2, 0.5, 0.1], DerivativeMode::Jet).unwrap();
    assert_eq!(max3(&rep.christoffel), 0.0);
    assert!(rep
        .riemann
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .all(|v| *v == 0.0));
}

#[test]
fn einstein_test_on_models() {
    for (kind, rbar) in [
        (ModelKind::S2xs2, Some(4.0)),
        (ModelKind::H2xh2, Some(-4.0)),
        (ModelKind::S2xr2, None),
    ] {
        let m = build_model(kind).unwrap();
        let rep = is_einstein(&m.metric, &m.sample_grid(3), 1e-8, DerivativeMode::Jet).unwrap();
        match rbar {
            Some(r) => assert!(
                rep.einstein && (rep.rbar - r).abs() < 1e-6,
                "{kind:?}: {rep:?}"
            ),
            None => assert!(!rep.einstein && rep.max_residual > 0.1),
        }
    }
    let m = build_model(ModelKind::S2xs2).unwrap();
    assert!(is_einstein(&m.metric, &m.sample_grid(1), 1e-8, DerivativeMode::Jet).is_err());
}

#[test]
fn covariant_derivative_examples() {
    let m = build_model(ModelKind::S2xs2).unwrap();
    let chart = m.metric.chart().clone();
    let x = [0.9, 0.3, 1.7, -1.1];
    let id = ConstantEndomorphism::new(chart.clone(), Mat::identity(4));
    assert!(
        max3(&covariant_derivative_11(&m.metric, &id, &x, DerivativeMode::Jet).unwrap()) < 1e-14
    );
    assert!(
        max3(&covariant_derivative_11(&m.metric, &m.pstruct, &x, DerivativeMode::Jet).unwrap())
            < 1e-8
    );
    let arbitrary = Mat::from_fn(4, 4, |i, j| (i * 4 + j) as f64 * 0.1 - 0.7);
    let t = ConstantEndomorphism::new(chart, arbitrary);
    assert!(max3(&covariant_derivative_11(&m.metric, &t, &x, DerivativeMode::Jet).unwrap()) > 0.1);
}

#[test]
fn riemann_symmetries_hold() {
    for kind in ALL {
        let m = build_model(kind).unwrap();
        for x in m.sample_grid(2) {
            let rep = curvature(&m.metric, &x, DerivativeMode::Jet).unwrap();
            assert!(rep.symmetry_defect() < 1e-10, "{kind:?}");
        }
    }
}

#[test]
fn contracted_bianchi_on_einstein_models() {
    // div Ric = ½ dR, with ∇Ric from differenced Ricci components and Christoffels
    for kind in [ModelKind::S2xs2, ModelKind::H2xh2, ModelKind::GeodesicSpace] {
        let m = build_model(kind).unwrap();
        for x in m.sample_grid(2) {
            let ricci = |y: &[f64]| {
                curvature(&m.metric, y, DerivativeMode::Jet).map(|r| {
                    let mut v: Vec<f64> = r.ricci.iter().flatten().copied().collect();
                    v.push(r.scalar);
                    v
                })
            };
            let rep = curvature(&m.metric, &x, DerivativeMode::Jet).unwrap();
            let d = fd_jacobian(ricci, &x, 1e-3, Some(m.metric.chart())).unwrap();
            let ginv = Mat::from_rows(&rep.metric).inverse().unwrap();
            let g = &rep.christoffel;
            let ric = &rep.ricci;
            for k in 0..4 {
                let mut div = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        // ∇_i Ric_jk
                        let mut nab = d.value[j * 4 + k][i];
                        for l in 0..4 {
                            nab -= g[l][i][j] * ric[l][k] + g[l][i][k] * ric[j][l];
                        }
                        div += ginv[(i, j)] * nab;
                    }
                }
                let half_dr = 0.5 * d.value[16][k];
                assert!(
                    (div - half_dr).abs() < 1e-6 + d.error,
                    "{kind:?} at {x:?}: {div} vs {half_dr}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn jet_and_fd_scalar_curvature_agree(s in prop::array::uniform4(0.0f64..1.0)) {
        for kind in ALL {
            let m = build_model(kind).unwrap();
            let x = in_box(&m, &s);
            let jet = curvature(&m.metric, &x, DerivativeMode::Jet).unwrap();
            let fd = curvature(&m.metric, &x, DerivativeMode::Fd).unwrap();
            prop_assert!((jet.scalar - fd.scalar).abs() <= 1e-5f64.max(fd.fd_error), "{:?}", kind);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_is_constant_on_each_chart(s in prop::array::uniform4(0.0f64..1.0)) {
        for kind in ALL {
            let m = build_model(kind).unwrap();
            let g = m.metric.metric(&in_box(&m, &s)).unwrap();
            prop_assert_eq!(signature(&g, false).unwrap(), (0, 4));
        }
    }
}
