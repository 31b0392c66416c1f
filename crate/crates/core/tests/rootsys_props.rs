//! Lattice identities for the classical root systems.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use weylbranch::rootsys::{
    build_root_system, dominance_leq, dual_weight, graph_automorphism_image, mu_difference_coeffs,
    to_root_coords, Family, RootSystem, Weight,
};

fn min_rank(f: Family) -> usize {
    match f {
        Family::A => 1,
        Family::B | Family::C => 2,
        Family::D => 3,
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::A), Just(Family::B), Just(Family::C), Just(Family::D)]
}

fn system(max_rank: usize) -> impl Strategy<Value = Arc<RootSystem>> {
    family().prop_flat_map(move |f| {
        (min_rank(f)..=max_rank).prop_map(move |r| build_root_system(f, r).unwrap())
    })
}

fn weights(sys: Arc<RootSystem>, count: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Weight>> {
    let r = sys.rank();
    proptest::collection::vec(proptest::collection::vec(lo..=hi, r), count)
        .prop_map(move |vs| vs.into_iter().map(|c| Weight::new(&sys, c).unwrap()).collect())
}

#[test]
fn cartan_times_inverse_is_identity_up_to_rank_24() {
    for f in [Family::A, Family::B, Family::C, Family::D] {
        for r in min_rank(f)..=24 {
            let sys = build_root_system(f, r).unwrap();
            let c = sys.cartan();
            let inv = sys.inverse_cartan();
            for i in 0..r {
                assert_eq!(c[i][i], 2);
                for j in 0..r {
                    assert!(i == j || [0, -1, -2].contains(&c[i][j]));
                    let s = (0..r).fold(BigRational::zero(), |acc, k| {
                        acc + BigRational::from_integer(c[i][k].into()) * &inv[k][j]
                    });
                    let want = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(s, want, "{f}{r} entry ({i},{j})");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order(ws in system(10).prop_flat_map(|s| weights(s, 3, -5, 5))) {
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert!(dominance_leq(a, a).unwrap());
        if dominance_leq(a, b).unwrap() && dominance_leq(b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if dominance_leq(a, b).unwrap() && dominance_leq(b, c).unwrap() {
            prop_assert!(dominance_leq(a, c).unwrap());
        }
    }

    #[test]
    fn dominance_along_subtracted_roots(
        ws in system(8).prop_flat_map(|s| weights(s, 1, -5, 5)),
        steps in proptest::collection::vec(0usize..8, 0..6),
    ) {
        let w = &ws[0];
        let r = w.system().rank();
        let mut c = vec![0i64; r];
        for s in steps {
            c[s % r] += 1;
        }
        let lower = w.sub_roots(&c).unwrap();
        prop_assert!(dominance_leq(&lower, w).unwrap());
    }

    #[test]
    fn root_coords_round_trip(ws in system(12).prop_flat_map(|s| weights(s, 1, -6, 6))) {
        let w = &ws[0];
        prop_assert_eq!(&to_root_coords(w).to_weight().unwrap(), w);
    }

    #[test]
    fn graph_automorphism_is_an_involution_commuting_with_duality(
        ws in prop_oneof![Just(Family::A), Just(Family::D)]
            .prop_flat_map(|f| (min_rank(f).max(3)..=10).prop_map(move |r| build_root_system(f, r).unwrap()))
            .prop_flat_map(|s| weights(s, 1, -4, 4)),
    ) {
        let w = &ws[0];
        let g = graph_automorphism_image(w).unwrap();
        prop_assert_eq!(&graph_automorphism_image(&g).unwrap(), w);
        prop_assert_eq!(dual_weight(&g), graph_automorphism_image(&dual_weight(w)).unwrap());
    }

    #[test]
    fn duality_is_an_involution(ws in system(10).prop_flat_map(|s| weights(s, 1, -4, 4))) {
        let w = &ws[0];
        prop_assert_eq!(&dual_weight(&dual_weight(w)), w);
    }

    #[test]
    fn a_type_difference_coordinates_are_antisymmetric(
        ws in (1usize..=10)
            .prop_map(|r| build_root_system(Family::A, r).unwrap())
            .prop_flat_map(|s| weights(s, 1, 0, 5)),
    ) {
        let w = &ws[0];
        let n = w.system().rank();
        let c = mu_difference_coeffs(w).unwrap();
        let c = c.coeffs();
        for j in 0..n {
            prop_assert!((&c[j] + &c[n - 1 - j]).is_zero());
        }
        let symmetric = (0..n).all(|i| w.coeffs()[i] == w.coeffs()[n - 1 - i]);
        prop_assert_eq!(c.iter().all(|q| !q.is_negative()), symmetric);
    }
}

#[test]
fn b_and_c_have_no_graph_automorphism() {
    for f in [Family::B, Family::C] {
        let sys = build_root_system(f, 4).unwrap();
        assert!(graph_automorphism_image(&Weight::fundamental(&sys, 1).unwrap()).is_err());
    }
}
