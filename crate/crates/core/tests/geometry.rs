use std::f64::consts::{PI, SQRT_2};

use eigenbound::geometry::*;
use proptest::prelude::*;

/// Convex polygon with vertices on the circle |x − c| = r at the given angles.
fn inscribed_polygon(angles: &[f64], r: f64, c: [f64; 2]) -> Vec<[f64; 2]> {
    angles.iter().map(|t| [c[0] + r * t.cos(), c[1] + r * t.sin()]).collect()
}

fn convex_angles() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..2.0 * PI, 3..12).prop_filter_map("well separated", |mut a| {
        a.sort_by(f64::total_cmp);
        let gaps_ok = a.windows(2).all(|w| w[1] - w[0] > 0.05) && a[0] + 2.0 * PI - a[a.len() - 1] > 0.05;
        // keep the centre inside so the polygon is not a sliver
        let spread = a.windows(2).map(|w| w[1] - w[0]).chain([a[0] + 2.0 * PI - a[a.len() - 1]]).fold(0.0, f64::max);
        (gaps_ok && spread < PI * 0.9).then_some(a)
    })
}

#[test]
fn closed_form_inradii() {
    assert_eq!(inradius(&DomainSpec::rectangle(&[3.0, 1.0]).unwrap()).unwrap(), 0.5);
    assert_eq!(inradius(&DomainSpec::ball(4, 2.5).unwrap()).unwrap(), 2.5);
    assert_eq!(inradius(&DomainSpec::cylinder(1.0, 20.0).unwrap()).unwrap(), 1.0);
    let l = inradius(&DomainSpec::l_shape(3.0, 1.0).unwrap()).unwrap();
    assert!((l - 1.0 / (1.0 + 1.0 / SQRT_2)).abs() < 1e-15);
    let stadium = DomainSpec::new(Shape::Stadium { length: 4.0, radius: 0.7 }, None).unwrap();
    assert_eq!(inradius(&stadium).unwrap(), 0.7);
}

#[test]
fn volumes() {
    assert!((volume(&DomainSpec::ball(3, 1.0).unwrap()) - 4.0 * PI / 3.0).abs() < 1e-14);
    assert_eq!(volume(&DomainSpec::l_shape(3.0, 1.0).unwrap()), 5.0);
    assert_eq!(volume(&DomainSpec::u_shape(3.0, 1.0, 2.0).unwrap()), 7.0);
    assert!((volume(&DomainSpec::cylinder(1.0, 20.0).unwrap()) - 20.0 * PI).abs() < 1e-12);
}

#[test]
fn u_shape_dilation_beats_convex_rule() {
    let u = DomainSpec::u_shape(3.0, 1.0, 2.0).unwrap();
    let r = inradius_measured(&u).unwrap();
    // arms and floor are all of width 1, so the corner disk gives 2 − √2
    let h = r.resolution.unwrap();
    assert!(r.value <= 2.0 - SQRT_2 + 1e-12 && 2.0 - SQRT_2 <= r.value + h + 1e-12, "{r:?}");
    let rd = dilated_inradius_measured(&u, 0.75).unwrap();
    assert!((rd.value - 2.1555437658101066).abs() < 1e-8, "{rd:?}");
    assert!(rd.value - (r.value + 0.75) > 0.01);
}

#[test]
fn l_shape_closed_form_agrees_with_search() {
    let l = DomainSpec::l_shape(3.0, 1.0).unwrap();
    for delta in [0.0, 0.2, 0.455, 1.0, 3.0] {
        let exact = dilated_inradius(&l, delta).unwrap();
        let search = dilated_inradius_numerical(&l, delta).unwrap();
        let h = search.resolution.unwrap_or(0.0);
        assert!(search.value <= exact + 1e-12 && exact <= search.value + h + 1e-9, "δ={delta}: {exact} vs {search:?}");
    }
}

#[test]
fn ratio_solve_hits_the_ratio() {
    for d in [DomainSpec::l_shape(3.0, 1.0).unwrap(), DomainSpec::u_shape(3.0, 1.0, 2.0).unwrap()] {
        for ratio in [0.2, 0.6, 0.9] {
            let (delta, r_delta) = solve_delta_for_ratio(&d, ratio).unwrap();
            assert!((delta / r_delta - ratio).abs() < 1e-9, "{delta} {r_delta}");
        }
    }
}

#[test]
fn invalid_shapes() {
    assert!(DomainSpec::polygon(&[[0.0, 0.0], [1.0, 0.0]]).is_err());
    assert!(DomainSpec::polygon(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).is_err());
    assert!(DomainSpec::polygon(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
    assert!(DomainSpec::l_shape(1.0, 2.0).is_err());
    assert!(DomainSpec::u_shape(1.0, 1.0, 0.5).is_err());
    assert!(DomainSpec::rectangle(&[1.0, f64::NAN]).is_err());
    assert!(DomainSpec::new(Shape::Ball { radius: 1.0 }, None).is_err());
    let sq = DomainSpec::rectangle(&[1.0, 1.0]).unwrap();
    assert!(dilated_inradius(&sq, -0.1).is_err());
    assert!(distance_to_complement(&sq, &[0.5]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convex_dilation_rule(angles in convex_angles(), r in 0.2f64..5.0, cx in -3.0f64..3.0, delta in 0.0f64..4.0) {
        let d = DomainSpec::polygon(&inscribed_polygon(&angles, r, [cx, 0.5])).unwrap();
        prop_assert!(is_convex(&d));
        let r0 = inradius(&d).unwrap();
        let search = dilated_inradius_numerical(&d, delta).unwrap();
        prop_assert!((search.value - (r0 + delta)).abs() <= 1e-8 * (1.0 + r0 + delta), "{} vs {}", search.value, r0 + delta);
    }

    #[test]
    fn inradius_scales(angles in convex_angles(), s in 0.1f64..10.0) {
        let d = DomainSpec::polygon(&inscribed_polygon(&angles, 1.0, [0.0, 0.0])).unwrap();
        let a = inradius(&d).unwrap();
        let b = inradius(&d.scaled(s).unwrap()).unwrap();
        prop_assert!((b - s * a).abs() <= 1e-12 * s.max(1.0));
    }

    #[test]
    fn distance_never_exceeds_inradius(x in 0.0f64..3.0, y in 0.0f64..3.0, delta in 0.0f64..2.0) {
        for d in [DomainSpec::l_shape(3.0, 1.0).unwrap(), DomainSpec::u_shape(3.0, 1.0, 2.0).unwrap()] {
            let m = inradius_measured(&d).unwrap();
            prop_assert!(distance_to_complement(&d, &[x, y]).unwrap() <= m.upper() + 1e-12);
            // dilation never shrinks below the convex rule
            prop_assert!(dilated_inradius(&d, delta).unwrap() >= m.lower() + delta - 1e-9);
        }
    }
}
