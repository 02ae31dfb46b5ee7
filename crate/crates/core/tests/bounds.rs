use std::f64::consts::PI;

use eigenbound::bounds::*;
use eigenbound::geometry::{inradius, unit_ball_volume, DomainSpec};
use eigenbound::radial::OperatorSpec;
use eigenbound::specfun::Family;
use eigenbound::Error;
use proptest::prelude::*;

const J01: f64 = 2.404825557695773;
const J11: f64 = 3.8317059702075125;

fn square() -> DomainInput {
    DomainSpec::rectangle(&[1.0, 1.0]).unwrap().into()
}

#[test]
fn square_first_gap() {
    let lb = lower_bound(&OperatorSpec::Laplacian { n: 2 }, &square(), 1).unwrap();
    assert!((lb.value - ((J11 - J01) / 0.5).powi(2)).abs() < 1e-12);
    assert_eq!(lb.method, LowerMethod::Theorem2J);
    let gap = lb.zero_gap.unwrap();
    assert_eq!((gap.k, gap.family), (1, Family::J));
    assert!((lb.delta.unwrap() - 0.5 * J01 / (J11 - J01)).abs() < 1e-12);
    let ub = upper_bound(&OperatorSpec::Laplacian { n: 2 }, &square()).unwrap().unwrap();
    assert!((ub.value - (J01 / 0.5).powi(2)).abs() < 1e-12);
    assert_eq!(ub.method, UpperMethod::BallEigenvalue);
}

#[test]
fn disk_rfk_is_sharp() {
    let disk = DomainSpec::ball(2, 1.0).unwrap();
    assert!((rfk_bound(&disk).unwrap() - J01 * J01).abs() < 1e-12);
    assert!(rfk_bound(&DomainSpec::ball(4, 1.0).unwrap()).is_err());
}

#[test]
fn three_dimensional_ball_scan() {
    let d: DomainInput = DomainSpec::ball(3, 1.0).unwrap().into();
    let r = full_report(&OperatorSpec::Laplacian { n: 3 }, &d, 64, DEFAULT_TOL).unwrap();
    let cap = (PI / 2.0).powi(2);
    assert!(r.lower <= cap * (1.0 + 1e-9) && r.lower >= 0.98 * cap);
    assert_eq!(r.asymptotic_gap, Some(PI / 2.0));
    assert!((r.upper.unwrap() - PI * PI).abs() < 1e-10);
}

#[test]
fn operators_without_upper_bound() {
    let pucci = OperatorSpec::PucciMax { gamma: 1.0, big_gamma: 2.0, n: 2 };
    let r = full_report(&pucci, &square(), 8, DEFAULT_TOL).unwrap();
    assert!(r.upper.is_none() && r.upper_method.is_none());
    let steep = OperatorSpec::PLaplacian { p: 1.5, n: 3 };
    let d: DomainInput = DomainSpec::rectangle(&[1.0, 1.0, 1.0]).unwrap().into();
    let r = full_report(&steep, &d, 8, DEFAULT_TOL).unwrap();
    assert_eq!(r.lower_method, LowerMethod::Theorem2Y);
    assert!(r.upper.is_none());
}

#[test]
fn nonconvex_shapes_use_the_dilation() {
    let l: DomainInput = DomainSpec::l_shape(3.0, 1.0).unwrap().into();
    let r = full_report(&OperatorSpec::Laplacian { n: 2 }, &l, 16, DEFAULT_TOL).unwrap();
    let (delta, rd) = (r.delta_used.unwrap(), r.r_delta_used.unwrap());
    assert!(rd > r.inradius + delta);
    assert!(r.lower < r.upper.unwrap());
    assert!(r.certificate.residual.verified);
}

#[test]
fn dimension_mismatch_and_bad_arguments() {
    let cube: DomainInput = DomainSpec::rectangle(&[1.0, 1.0, 1.0]).unwrap().into();
    assert!(lower_bound(&OperatorSpec::Laplacian { n: 2 }, &cube, 4).is_err());
    assert!(full_report(&OperatorSpec::Laplacian { n: 3 }, &cube, 4, -1.0).is_err());
    assert!(lower_bound(&OperatorSpec::Laplacian { n: 2 }, &square(), 0).is_err());
    let bad = DomainInput::InradiusOnly { inradius: -1.0, convex: true };
    assert!(matches!(lower_bound(&OperatorSpec::GradientLimit, &bad, 1), Err(Error::Argument(_))));
}

#[test]
fn rfk_crossover_volume() {
    let v = 8.0 * unit_ball_volume(3);
    assert!((rfk_from_volume(3, v).unwrap() - (PI / 2.0).powi(2)).abs() < 1e-10);
}

#[test]
fn report_round_trips_through_json() {
    let r = full_report(&OperatorSpec::Laplacian { n: 2 }, &square(), 8, DEFAULT_TOL).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: BoundReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(text.contains("\"R\"") && text.contains("\"R_delta_used\"") && text.contains("theorem2-J"));
}

fn any_operator() -> impl Strategy<Value = OperatorSpec> {
    prop_oneof![
        Just(OperatorSpec::InfinityLaplacian),
        Just(OperatorSpec::GradientLimit),
        Just(OperatorSpec::Laplacian { n: 2 }),
        (1.3f64..40.0).prop_map(|p| OperatorSpec::PLaplacian { p, n: 2 }),
        (0.5f64..2.0, 1.0f64..3.0).prop_map(|(g, k)| OperatorSpec::PucciMax { gamma: g, big_gamma: g * k, n: 2 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sandwich_and_certificate(op in any_operator(), w in 0.2f64..5.0, h in 0.2f64..5.0, k in 1usize..24) {
        let d: DomainInput = DomainSpec::rectangle(&[w, h]).unwrap().into();
        let r = full_report(&op, &d, k, DEFAULT_TOL).unwrap();
        prop_assert!(r.certificate.residual.verified);
        if let Some(u) = r.upper {
            prop_assert!(r.lower <= u * (1.0 + 1e-12));
        }
        prop_assert!((r.inradius - 0.5 * w.min(h)).abs() < 1e-15);
    }

    #[test]
    fn lower_bound_grows_with_k(op in any_operator(), k in 1usize..20) {
        let a = lower_bound(&op, &square(), k).unwrap().value;
        let b = lower_bound(&op, &square(), k + 5).unwrap().value;
        prop_assert!(b >= a);
    }

    #[test]
    fn bounds_scale_with_length(op in any_operator(), r in 0.1f64..10.0, s in 0.1f64..10.0) {
        let a = DomainInput::InradiusOnly { inradius: r, convex: true };
        let b = DomainInput::InradiusOnly { inradius: s * r, convex: true };
        let power = if op == OperatorSpec::GradientLimit { 1 } else { 2 };
        let la = lower_bound(&op, &a, 6).unwrap().value;
        let lb = lower_bound(&op, &b, 6).unwrap().value;
        prop_assert!((lb * s.powi(power) / la - 1.0).abs() < 1e-9, "{la} {lb}");
    }

    #[test]
    fn exact_operators_match(r in 0.05f64..20.0) {
        let d = DomainInput::InradiusOnly { inradius: r, convex: false };
        let inf = full_report(&OperatorSpec::InfinityLaplacian, &d, 1, DEFAULT_TOL).unwrap();
        prop_assert!((inf.lower - (PI / (2.0 * r)).powi(2)).abs() <= 1e-12 * inf.lower);
        prop_assert_eq!(inf.upper, Some(inf.lower));
        let grad = full_report(&OperatorSpec::GradientLimit, &d, 1, DEFAULT_TOL).unwrap();
        prop_assert!((grad.lower - 1.0 / r).abs() <= 1e-15 / r);
    }
}

#[test]
fn inradius_only_matches_the_shape() {
    let shape = DomainSpec::rectangle(&[2.0, 3.0]).unwrap();
    let r = inradius(&shape).unwrap();
    let op = OperatorSpec::PLaplacian { p: 3.0, n: 2 };
    let a = lower_bound(&op, &shape.clone().into(), 10).unwrap().value;
    let b = lower_bound(&op, &DomainInput::InradiusOnly { inradius: r, convex: true }, 10).unwrap().value;
    assert_eq!(a, b);
}
