//! Property tests: mutation-tree invariants, involution, and unimodular
//! covariance of the weight data.

use atf_base::*;
use lattice_core::{Mat2Z, Unimodular};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_path() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..3, 0..6)
}

fn arb_unimodular() -> impl Strategy<Value = Unimodular> {
    let step = prop_oneof![
        (-3i64..=3).prop_map(|k| Unimodular::new(Mat2Z::from_ints(1, k, 0, 1)).unwrap()),
        (-3i64..=3).prop_map(|k| Unimodular::new(Mat2Z::from_ints(1, 0, k, 1)).unwrap()),
        Just(Unimodular::new(Mat2Z::from_ints(0, 1, 1, 0)).unwrap()),
    ];
    proptest::collection::vec(step, 1..5)
        .prop_map(|ms| ms.iter().fold(Unimodular::identity(), |acc, m| acc.compose(m)))
}

fn sorted_weights(t: &BaseTriangle) -> Vec<BigInt> {
    let mut w = weights(t).to_vec();
    w.sort();
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_identities_hold_along_paths(path in arb_path()) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        prop_assert!(invariant_report(&t).all_hold());
        for i in 0..3 {
            prop_assert!(verify_shear_lemma(&t, i).unwrap().ok());
        }
    }

    #[test]
    fn mutation_undoes_up_to_gl2z(path in arb_path(), i in 0usize..3) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        let m1 = mutate(&t, i).unwrap();
        let m2 = mutate(&m1.triangle, m1.new_vertex_index).unwrap();
        let a = gl2z_equivalent(&t, &m2.triangle);
        prop_assert!(a.is_some());
        let a = a.unwrap();
        prop_assert!(transform(&t, &a).same_vertex_set(&m2.triangle));
    }

    #[test]
    fn weights_invariant_under_unimodular(path in arb_path(), a in arb_unimodular()) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        let ta = transform(&t, &a);
        prop_assert_eq!(sorted_weights(&t), sorted_weights(&ta));
        // and the image stays a valid triangle with the same area
        prop_assert_eq!(ta.two_area(), t.two_area());
    }

    #[test]
    fn equivalent_iff_witnessed(path in arb_path(), a in arb_unimodular()) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        let ta = transform(&t, &a);
        let w = gl2z_equivalent(&t, &ta);
        prop_assert!(w.is_some());
        prop_assert!(transform(&t, &w.unwrap()).same_vertex_set(&ta));
    }

    #[test]
    fn json_roundtrip_along_paths(path in arb_path()) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        let back = BaseTriangle::from_json_str(&t.to_json_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn provenance_tracks_the_shear(path in arb_path(), i in 0usize..3) {
        let t = mutate_path(&root_triangle(), &path).unwrap();
        let m = mutate(&t, i).unwrap();
        for (k, src) in m.provenance.iter().enumerate() {
            match src {
                VertexSource::New => prop_assert_eq!(k, m.new_vertex_index),
                VertexSource::Sheared(j) => {
                    prop_assert_eq!(*j, (i + 1) % 3);
                    prop_assert_eq!(m.triangle.vertex(k), &m.shear.apply(t.vertex(*j)));
                }
                VertexSource::Kept(j) => {
                    prop_assert_eq!(*j, (i + 2) % 3);
                    prop_assert_eq!(m.triangle.vertex(k), t.vertex(*j));
                }
            }
        }
    }
}
