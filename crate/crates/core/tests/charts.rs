use holed_torus::charts::*;
use holed_torus::{validate_descriptor, SurfaceDescriptor};
use num_complex::Complex64;
use proptest::prelude::*;

fn upper_half_plane() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, 0.05f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn plane_v2() -> impl Strategy<Value = [f64; 3]> {
    (-20.0f64..20.0, -20.0f64..20.0).prop_map(|(a, b)| [a, b, -a - b])
}

proptest! {
    #[test]
    fn punctured_tori_lie_on_the_boundary(tau in upper_half_plane()) {
        let t = lambda_of_punctured_torus(tau).unwrap();
        prop_assert!(t.region_gap().abs() < 1e-9 * (1.0 + t.x.iter().map(|c| c * c).sum::<f64>()));
    }

    #[test]
    fn eigen_split_reconstructs(x in prop::array::uniform3(-50.0f64..50.0)) {
        let e = eigen_split(x);
        let r = e.reconstruct();
        for i in 0..3 {
            prop_assert!((r[i] - x[i]).abs() < 1e-12 * (1.0 + x[i].abs()));
        }
        prop_assert!((e.zeta.iter().sum::<f64>()).abs() < 1e-12 * 50.0);
        prop_assert!((q_form(x) - e.q_value()).abs() < 1e-9 * (1.0 + q_form(x).abs()));
    }

    #[test]
    fn region_height_solves_the_boundary(zeta in plane_v2()) {
        let t = region_height(zeta).unwrap();
        let p = EigenSplit { zeta, t }.reconstruct();
        prop_assert!((q_form(p) + 4.0).abs() < 1e-9 * (1.0 + t * t));
        prop_assert!(p.iter().all(|&c| c > 0.0));
    }

    #[test]
    fn region_height_is_radial(dir in plane_v2(), r in 0.0f64..30.0) {
        let n = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assume!(n > 1e-6);
        let zeta = dir.map(|c| r * c / n);
        let t = region_height(zeta).unwrap();
        prop_assert!((t * t - (2.0 * r * r + 4.0)).abs() < 1e-9 * (1.0 + r * r));
    }

    #[test]
    fn strips_are_nested(h1 in 0.0f64..5.0, dh in 0.0f64..5.0, tau in upper_half_plane()) {
        let small = Strip { height: ExtReal::Finite(h1) };
        let big = Strip { height: ExtReal::Finite(h1 + dh) };
        let all = Strip { height: ExtReal::Infinite };
        prop_assert!(!small.contains(tau) || big.contains(tau));
        prop_assert!(!big.contains(tau) || all.contains(tau));
    }

    #[test]
    fn interior_is_closed_under_scaling_up(x in prop::array::uniform3(0.01f64..10.0), c in 1.0f64..10.0) {
        prop_assume!(region_membership(x, BOUNDARY_TOL).unwrap() == RegionClass::Interior);
        let y = x.map(|v| c * v);
        prop_assert_eq!(region_membership(y, BOUNDARY_TOL).unwrap(), RegionClass::Interior);
    }

    #[test]
    fn descriptors_round_trip_exactly(
        re in -1e3f64..1e3, im in 1e-6f64..1e3, s in 0.0f64..1.0,
        l in 1e-6f64..50.0, lp in 0.0f64..50.0, theta in -50.0f64..50.0,
    ) {
        for d in [
            SurfaceDescriptor::Slit { tau: [re, im], s },
            SurfaceDescriptor::Fn { l, lp, theta },
        ] {
            let back = SurfaceDescriptor::from_json(&d.to_json()).unwrap();
            prop_assert_eq!(back, d);
            validate_descriptor(&back).unwrap();
        }
    }
}

// Brute-force check that the positivity guard of `region_height` never fires:
// a dense polar sweep of V2 out to radius 1e4.
#[test]
fn region_height_never_violates_positivity() {
    let u = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let v = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    for k in 0..720 {
        let phi = k as f64 * std::f64::consts::PI / 360.0;
        for e in -40..=40 {
            let r = 10f64.powf(e as f64 / 10.0);
            let zeta = [0, 1, 2].map(|i| r * (phi.cos() * u[i] + phi.sin() * v[i]));
            assert!(region_height(zeta).is_ok(), "{zeta:?}");
        }
    }
}
