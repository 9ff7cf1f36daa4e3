use paranull::hypersurface::Evaluator;
use paranull::manifold::{metric_jet, DerivativeMode, MetricField};
use paranull::models::{build_model, Family, FamilySpec, ModelKind};
use paranull::numerics::{eig_sym, fd_derivative, jet_lift, Dual, FdDerivative, Jet2, Mat, Scalar};
use paranull::Error;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn lifted_coordinate_is_a_coordinate_jet() {
    let j = jet_lift(&[0.3, 0.7], 1).unwrap();
    assert_eq!(j.value(), 0.7);
    assert_eq!(j.grad(), vec![0.0, 1.0]);
    assert_eq!(j.hess(), vec![vec![0.0; 2]; 2]);
    assert!(matches!(
        jet_lift(&[0.3, 0.7], 2),
        Err(Error::IndexOutOfRange { .. })
    ));
    assert!(matches!(
        jet_lift(&[0.0; 7], 0),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn sine_and_square_root_jets() {
    let s = jet_lift(&[0.0], 0).unwrap().sin();
    assert_eq!((s.value(), s.d(0), s.dd(0, 0)), (0.0, 1.0, 0.0));

    let r = Jet2::from_parts(4.0, &[1.0], &[vec![0.0]]).unwrap().sqrt();
    assert!(close(r.value(), 2.0, 1e-15));
    assert!(close(r.d(0), 0.25, 1e-15));
    assert!(close(r.dd(0, 0), -1.0 / 32.0, 1e-15));
}

#[test]
fn dual_over_jet_reaches_third_derivatives() {
    // d³/dx³ sin x = -cos x
    let x = 0.4;
    let d = Dual::new(jet_lift(&[x], 0).unwrap(), Jet2::constant(1.0)).sin();
    assert!(close(d.eps.dd(0, 0), -x.cos(), 1e-14));
}

#[test]
fn eigen_examples() {
    let e = eig_sym(&Mat::from_diag(&[3.0, 1.0, 2.0])).unwrap();
    assert_eq!(e.values, vec![1.0, 2.0, 3.0]);

    let e = eig_sym(&Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!(close(e.values[0], -1.0, 1e-14) && close(e.values[1], 1.0, 1e-14));
    let (v0, v1) = (e.vector(0), e.vector(1));
    assert!(close(v0[0], h, 1e-14) && close(v0[1], -h, 1e-14));
    assert!(close(v1[0], h, 1e-14) && close(v1[1], h, 1e-14));

    let bad = Mat::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]);
    assert!(matches!(eig_sym(&bad), Err(Error::NonSymmetric { .. })));
}

#[test]
fn eigen_of_a_sigma_t_shape_operator() {
    let family = Family::new(FamilySpec::SigmaT {
        space: ModelKind::S2xs2,
        t: 0.5,
    })
    .unwrap();
    let u: Vec<f64> = family
        .sample_box()
        .iter()
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let s = paranull::verifier::Sample::evaluate(&family, &u, Evaluator::jet(), 1e-7).unwrap();
    let pred = family.prediction(&u).unwrap();
    let flipped: Vec<f64> = pred.lambdas.iter().rev().map(|l| -l).collect();
    let d = |p: &[f64]| {
        s.sd.lambdas
            .iter()
            .zip(p)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    };
    assert!(
        d(&pred.lambdas).min(d(&flipped)) < 1e-12,
        "{:?} vs {:?}",
        s.sd.lambdas,
        pred.lambdas
    );
    assert!(close(pred.lambdas[2], 1.5f64.sqrt(), 1e-15));
    assert!(close(pred.lambdas[0], -(1.0f64 / 6.0).sqrt(), 1e-15));
}

#[test]
fn finite_difference_examples() {
    let FdDerivative::Gradient(g) = fd_derivative(|x| Ok(x[0] * x[0]), &[3.0], 1, None).unwrap()
    else {
        panic!("order 1 gives a gradient")
    };
    assert!(close(g.value[0], 6.0, 1e-9));

    let FdDerivative::Hessian(h) =
        fd_derivative(|x| Ok(x[0] * x[1]), &[0.2, -1.3], 2, None).unwrap()
    else {
        panic!("order 2 gives a Hessian")
    };
    for (i, row) in h.value.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert!(close(*v, if i == j { 0.0 } else { 1.0 }, 1e-9));
        }
    }
    assert!(fd_derivative(|x| Ok(x[0]), &[1.0], 3, None).is_err());
}

#[test]
fn metric_component_jets_match_finite_differences() {
    for kind in [ModelKind::S2xs2, ModelKind::H2xh2, ModelKind::GeodesicSpace] {
        let m = build_model(kind).unwrap();
        for x in m.sample_grid(2) {
            let jet = metric_jet(&m.metric, &x, DerivativeMode::Jet).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    let f = |y: &[f64]| m.metric.metric(y).map(|g| g[(a, b)]);
                    let FdDerivative::Gradient(g) =
                        fd_derivative(f, &x, 1, Some(m.metric.chart())).unwrap()
                    else {
                        unreachable!()
                    };
                    for k in 0..4 {
                        let v = jet.dg[k][(a, b)];
                        let tol = 1e-7f64.max(1e-6 * jet.g[(a, b)].abs());
                        assert!(
                            close(v, g.value[k], tol),
                            "{kind:?} ∂{k}g{a}{b}: {v} vs {}",
                            g.value[k]
                        );
                    }
                }
            }
        }
    }
}

fn composite<S: Scalar>(x: &[S]) -> S {
    let inner = [
        x[0] * x[1] + x[2].sin(),
        (x[0] * x[0] + 1.0).ln(),
        x[1].cosh() - x[2],
    ];
    (inner[0] * inner[1]).atan() + inner[2].exp() / (inner[0] * inner[0] + 2.0).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chain_rule_matches_finite_differences(x in prop::array::uniform3(-1.0f64..1.0)) {
        let jet = composite(&Jet2::variables(&x));
        let FdDerivative::Gradient(g) = fd_derivative(|y| Ok(composite(y)), &x, 1, None).unwrap() else { unreachable!() };
        let FdDerivative::Hessian(h) = fd_derivative(|y| Ok(composite(y)), &x, 2, None).unwrap() else { unreachable!() };
        for i in 0..3 {
            prop_assert!((jet.d(i) - g.value[i]).abs() <= g.error + 1e-10);
            for j in 0..3 {
                prop_assert!((jet.dd(i, j) - h.value[i][j]).abs() <= h.error + 1e-8);
            }
        }
    }

    #[test]
    fn eigen_reconstructs(entries in prop::collection::vec(-5.0f64..5.0, 10), n in 1usize..=4) {
        let mut k = 0;
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                a[(i, j)] = entries[k];
                a[(j, i)] = entries[k];
                k += 1;
            }
        }
        let e = eig_sym(&a).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10 * a.max_abs().max(1.0));
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let vtv = e.vectors.transpose().matmul(&e.vectors).unwrap();
        prop_assert!(vtv.max_abs_diff(&Mat::identity(n)) <= 1e-12);
        // deterministic: a second call is bit-identical
        prop_assert_eq!(eig_sym(&a).unwrap(), e);
    }
}
