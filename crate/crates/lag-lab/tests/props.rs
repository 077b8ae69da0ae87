use lag_lab::{
    enclosed_area, gamma_circle, gamma_ellipse, hamiltonian_h, lagrangian_defect, map_f,
    moment_map, product_torus, t_a_gamma, torus_action, winding_number, FDConfig, LagTarget,
    Point4, C,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn arb_point() -> impl Strategy<Value = Point4> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(a, b, c, d)| Point4::new(C::new(a, b), C::new(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_preserves_moment_and_composes(p in arb_point(), t1 in 0.0..1.0f64, t2 in 0.0..1.0f64) {
        let q = torus_action(p, t1, t2);
        let (a1, a2) = moment_map(p);
        let (b1, b2) = moment_map(q);
        prop_assert!((a1 - b1).abs() < 1e-12 * (1.0 + a1));
        prop_assert!((a2 - b2).abs() < 1e-12 * (1.0 + a2));
        prop_assert!((hamiltonian_h(p) - hamiltonian_h(q)).abs() < 1e-10);
        // two quarter-turns equal one half-turn
        let two = torus_action(torus_action(p, t1, 0.0), t1, 0.0);
        let one = torus_action(p, 2.0 * t1, 0.0);
        prop_assert!((two.z1 - one.z1).norm() < 1e-12 && (two.z2 - one.z2).norm() < 1e-12);
    }

    #[test]
    fn shoelace_matches_ellipse_area(rx in 0.05..2.0f64, ry in 0.05..2.0f64,
                                     cx in -3.0..3.0f64, cy in -3.0..3.0f64) {
        let g = gamma_ellipse(C::new(cx, cy), rx, ry).unwrap();
        let area = enclosed_area(&g);
        prop_assert!((area - PI * rx * ry).abs() < 1e-5 * (1.0 + PI * rx * ry));
    }

    #[test]
    fn winding_is_translation_covariant(cx in -2.0..2.0f64, cy in -2.0..2.0f64, a in 0.1..2.0f64) {
        let g = gamma_circle(C::new(cx, cy), a).unwrap();
        let samples = g.samples();
        let inside = winding_number(&samples, C::new(cx, cy)).unwrap();
        prop_assert_eq!(inside, 1);
        let r = (a / PI).sqrt();
        let outside = winding_number(&samples, C::new(cx + r + 1.0, cy)).unwrap();
        prop_assert_eq!(outside, 0);
    }

    #[test]
    fn ta_gamma_level_sets_are_exact(a in -1.5..1.5f64, cx in 1.5..3.0f64, area in 0.05..0.5f64) {
        let g = gamma_circle(C::new(cx, 0.0), area).unwrap();
        let surf = t_a_gamma(a, &g).unwrap();
        for (s, t) in [(0.0, 0.0), (0.3, 0.7), (0.9, 0.2), (0.5, 0.5)] {
            let p = surf.at(s, t);
            prop_assert!((hamiltonian_h(p) - a).abs() < 1e-9);
            prop_assert!((map_f(p) - g.at(t)).norm() < 1e-9);
        }
    }

    #[test]
    fn product_tori_are_lagrangian_for_any_areas(a in 0.2..3.0f64, b in 0.2..3.0f64) {
        let s = product_torus(a, b).unwrap();
        let cfg = FDConfig::new(1e-4, 1e-6, 24).unwrap();
        let d = lagrangian_defect(LagTarget::Surface(&s), &cfg).unwrap();
        prop_assert!(d < 1e-11, "defect {:e}", d);
    }
}
