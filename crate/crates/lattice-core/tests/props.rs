//! Property tests for the exact lattice layer.

use lattice_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-1000i64..1000, 1i64..60).prop_map(|(p, q)| Rat::new(BigInt::from(p), BigInt::from(q)))
}

fn arb_vec2q() -> impl Strategy<Value = Vec2Q> {
    (arb_rat(), arb_rat()).prop_map(|(x, y)| Vec2Q::new(x, y))
}

/// Random unimodular map assembled from shears and the swap.
fn arb_unimodular() -> impl Strategy<Value = Unimodular> {
    let step = prop_oneof![
        (-4i64..=4).prop_map(|k| {
            // sigma for vhat=(1,0) is [[1,1],[0,1]]; powers give [[1,k],[0,1]]
            Unimodular::new(Mat2Z::from_ints(1, k, 0, 1)).unwrap()
        }),
        (-4i64..=4).prop_map(|k| Unimodular::new(Mat2Z::from_ints(1, 0, k, 1)).unwrap()),
        Just(Unimodular::new(Mat2Z::from_ints(0, 1, 1, 0)).unwrap()),
    ];
    proptest::collection::vec(step, 1..6)
        .prop_map(|ms| ms.iter().fold(Unimodular::identity(), |acc, m| acc.compose(m)))
}

proptest! {
    #[test]
    fn cross_transforms_by_det(a in arb_unimodular(), p in arb_vec2q(), q in arb_vec2q()) {
        let lhs = a.apply(&p).cross(&a.apply(&q));
        let rhs = Rat::from(a.det()) * p.cross(&q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitive_ignores_positive_scaling(v in arb_vec2q(), k in 1i64..500, d in 1i64..40) {
        prop_assume!(!v.is_zero());
        let s = Rat::new(BigInt::from(k), BigInt::from(d));
        prop_assert_eq!(primitive(&v.scale(&s)).unwrap(), primitive(&v).unwrap());
    }

    #[test]
    fn primitive_output_is_primitive(v in arb_vec2q()) {
        prop_assume!(!v.is_zero());
        let p = primitive(&v).unwrap();
        prop_assert!(p.is_primitive());
        // same direction: cross = 0, dot > 0
        prop_assert_eq!(p.to_q().cross(&v), Rat::from(BigInt::from(0)));
        prop_assert!(p.to_q().dot(&v) > Rat::from(BigInt::from(0)));
    }

    #[test]
    fn shear_is_unimodular_and_fixes_axis(x in -20i64..20, y in -20i64..20) {
        let v = Vec2Z::from_ints(x, y);
        prop_assume!(v.is_primitive());
        let s = shear_by(&v).unwrap();
        prop_assert_eq!(s.det(), BigInt::from(1));
        prop_assert_eq!(s.apply_z(&v), v);
    }

    #[test]
    fn rational_roundtrip(p in -100000i64..100000, q in 1i64..10000) {
        let r = Rat::new(BigInt::from(p), BigInt::from(q));
        prop_assert_eq!(parse_rat(&rat_to_string(&r)).unwrap(), r);
    }

    #[test]
    fn vec2q_json_roundtrip(v in arb_vec2q()) {
        let s = serde_json::to_string(&v).unwrap();
        let back: Vec2Q = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, v);
    }
}
