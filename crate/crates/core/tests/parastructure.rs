use paranull::manifold::{
    curvature, ConstantEndomorphism, DerivativeMode, EndomorphismField, MetricField,
};
use paranull::models::{build_model, ModelKind};
use paranull::numerics::Mat;
use paranull::parastructure::{
    neutral_metric, verify_neutral_properties, verify_paracomplex, NeutralMetric,
};
use paranull::Error;
use proptest::prelude::*;

const EINSTEIN: [ModelKind; 4] = [
    ModelKind::S2xs2,
    ModelKind::H2xh2,
    ModelKind::Flat,
    ModelKind::GeodesicSpace,
];

#[test]
fn axioms_hold_on_every_model() {
    for kind in EINSTEIN.into_iter().chain([ModelKind::S2xr2]) {
        let m = build_model(kind).unwrap();
        let rep = verify_paracomplex(
            &m.pstruct,
            &m.metric,
            &m.sample_grid(3),
            DerivativeMode::Jet,
        )
        .unwrap();
        let tol = if kind == ModelKind::GeodesicSpace {
            1e-6
        } else {
            1e-8
        };
        assert_eq!(rep.samples, 81);
        assert!(rep.passes(tol), "{kind:?}: {rep:?}");
    }
}

#[test]
fn identity_is_not_paracomplex() {
    let m = build_model(ModelKind::S2xs2).unwrap();
    let id = ConstantEndomorphism::new(m.metric.chart().clone(), Mat::identity(4));
    let samples = m.sample_grid(2);
    let rep = verify_paracomplex(&id, &m.metric, &samples, DerivativeMode::Jet).unwrap();
    assert!(!rep.passes(1e-6));
    assert_eq!(rep.trace, 4.0);
    assert!(rep.eigenvalues >= 2.0 - 1e-12);
    assert!(matches!(
        neutral_metric(&m.metric, &id, &samples, 1e-6, DerivativeMode::Jet),
        Err(Error::AxiomFailure(_))
    ));
}

#[test]
fn neutral_metric_of_products_negates_the_second_block() {
    for kind in [ModelKind::S2xs2, ModelKind::H2xh2, ModelKind::Flat] {
        let m = build_model(kind).unwrap();
        let samples = m.sample_grid(2);
        let nm =
            neutral_metric(&m.metric, &m.pstruct, &samples, 1e-8, DerivativeMode::Jet).unwrap();
        for x in &samples {
            let g = m.metric.metric(x).unwrap();
            let gm = nm.metric(x).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let sign = if i < 2 { 1.0 } else { -1.0 };
                    assert_eq!(gm[(i, j)], sign * g[(i, j)]);
                }
            }
        }
    }
    let flat = build_model(ModelKind::Flat).unwrap();
    let nm = NeutralMetric::new(&flat.metric, &flat.pstruct);
    assert_eq!(
        nm.metric(&[0.1, 0.2, 0.3, 0.4]).unwrap(),
        Mat::from_diag(&[1.0, 1.0, -1.0, -1.0])
    );
}

#[test]
fn neutral_properties_on_every_einstein_model() {
    for kind in EINSTEIN {
        let m = build_model(kind).unwrap();
        let nm = NeutralMetric::new(&m.metric, &m.pstruct);
        let r = verify_neutral_properties(&nm, &m.sample_grid(3), DerivativeMode::Jet).unwrap();
        assert!(r.signature_ok, "{kind:?}");
        assert!(
            r.scalar < 1e-6 && r.weyl < 1e-6 && r.christoffel < 1e-8 && r.ricci < 1e-6,
            "{kind:?}: {r:?}"
        );
        assert!(r.asymmetry < 1e-12);
    }
}

#[test]
fn non_einstein_product_has_curved_neutral_metric() {
    // g₋ = g_S² ⊕ (−g_ℝ²) keeps the sphere's scalar curvature
    let m = build_model(ModelKind::S2xr2).unwrap();
    let nm = NeutralMetric::new(&m.metric, &m.pstruct);
    let r = verify_neutral_properties(&nm, &m.sample_grid(2), DerivativeMode::Jet).unwrap();
    assert!((r.scalar - 2.0).abs() < 1e-10);
}

fn form(m: &Mat<f64>, u: &[f64], v: &[f64]) -> f64 {
    (0..4)
        .map(|i| (0..4).map(|j| u[i] * m[(i, j)] * v[j]).sum::<f64>())
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ricci_of_both_metrics_agree_on_any_vector(
        s in prop::array::uniform4(0.0f64..1.0),
        v in prop::array::uniform4(-1.0f64..1.0),
        k in 0usize..4,
    ) {
        let m = build_model(EINSTEIN[k]).unwrap();
        let x: Vec<f64> = m.sample_box().iter().zip(&s).map(|((a, b), t)| a + (b - a) * t).collect();
        let nm = NeutralMetric::new(&m.metric, &m.pstruct);
        let plus = curvature(&m.metric, &x, DerivativeMode::Jet).unwrap();
        let minus = curvature(&nm, &x, DerivativeMode::Jet).unwrap();
        let rp = Mat::from_rows(&plus.ricci);
        let rm = Mat::from_rows(&minus.ricci);
        prop_assert!((form(&rp, &v, &v) - form(&rm, &v, &v)).abs() < 1e-6);

        // g₋(P·,·) = g₊
        let p = m.pstruct.eval(&x).unwrap();
        let gm = nm.metric(&x).unwrap();
        let g = m.metric.metric(&x).unwrap();
        let pv = p.matvec(&v);
        let w = [v[1], -v[0], v[3], 0.5];
        prop_assert!((form(&gm, &pv, &w) - form(&g, &v, &w)).abs() < 1e-12);
    }
}
