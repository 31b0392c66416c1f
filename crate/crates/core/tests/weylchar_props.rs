//! Character identities: enumerators against the Weyl dimension formula and
//! against Freudenthal, minuscule spin modules, Steinberg layers and tensor
//! constituents.

use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use weylbranch::rootsys::{build_root_system, dominance_leq, Family, Weight};
use weylbranch::weylchar::{
    dominant_character, full_character, fundamental_module_weights, steinberg_decompose,
    tensor_characters, tensor_highest_weight, weyl_dim, weyl_orbit_size, DEFAULT_DIM_CAP,
};

fn min_rank(f: Family) -> usize {
    match f {
        Family::A => 1,
        Family::B | Family::C => 2,
        Family::D => 3,
    }
}

#[test]
fn enumerator_counts_match_weyl_dimension() {
    for f in [Family::A, Family::B, Family::C, Family::D] {
        for r in min_rank(f)..=8 {
            let sys = build_root_system(f, r).unwrap();
            for k in 1..=r {
                let count: u64 = fundamental_module_weights(&sys, k).unwrap().iter().map(|(_, m)| m).sum();
                let dim = weyl_dim(&Weight::fundamental(&sys, k).unwrap()).unwrap();
                assert_eq!(BigUint::from(count), dim, "{sys} λ_{k}");
            }
        }
    }
    for r in 9..=23 {
        let sys = build_root_system(Family::A, r).unwrap();
        for k in 1..=5.min(r) {
            let count: u64 = fundamental_module_weights(&sys, k).unwrap().iter().map(|(_, m)| m).sum();
            let dim = weyl_dim(&Weight::fundamental(&sys, k).unwrap()).unwrap();
            assert_eq!(BigUint::from(count), dim, "{sys} λ_{k}");
        }
    }
}

#[test]
fn freudenthal_agrees_with_enumerators() {
    for f in [Family::A, Family::B, Family::C, Family::D] {
        for r in min_rank(f)..=6 {
            let sys = build_root_system(f, r).unwrap();
            for k in 1..=r {
                let dc = dominant_character(&Weight::fundamental(&sys, k).unwrap(), DEFAULT_DIM_CAP).unwrap();
                let mut by_dominant: HashMap<Vec<i64>, u64> = HashMap::new();
                for (w, m) in fundamental_module_weights(&sys, k).unwrap() {
                    *by_dominant.entry(sys.dominant_conjugate(&w)).or_insert(0) += m;
                }
                assert_eq!(by_dominant.len(), dc.entries().len(), "{sys} λ_{k}");
                for (mu, &m) in dc.entries() {
                    let orbit = weyl_orbit_size(&Weight::new(&sys, mu.clone()).unwrap()).unwrap();
                    let got = by_dominant.get(mu).copied().unwrap_or(0);
                    assert_eq!(BigUint::from(got), orbit * m, "{sys} λ_{k} at {mu:?}");
                }
            }
        }
    }
}

#[test]
fn spin_modules_are_minuscule() {
    let cases = (3..=8usize)
        .map(|n| (Family::B, n, vec![n]))
        .chain((4..=8usize).map(|n| (Family::D, n, vec![n - 1, n])));
    for (f, n, ks) in cases {
        let sys = build_root_system(f, n).unwrap();
        for k in ks {
            let top = Weight::fundamental(&sys, k).unwrap();
            let weights = fundamental_module_weights(&sys, k).unwrap();
            for (w, m) in &weights {
                assert_eq!(*m, 1, "{sys} λ_{k}");
                assert_eq!(sys.dominant_conjugate(w), top.coeffs(), "{sys} λ_{k}");
            }
            assert_eq!(weyl_orbit_size(&top).unwrap(), BigUint::from(weights.len()));
        }
    }
}

proptest! {
    #[test]
    fn steinberg_layers_reconstruct(
        coeffs in proptest::collection::vec(0i64..200, 1..=8),
        p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
    ) {
        let sys = build_root_system(Family::A, coeffs.len()).unwrap();
        let w = Weight::new(&sys, coeffs.clone()).unwrap();
        let s = steinberg_decompose(&w, p).unwrap();
        prop_assert_eq!(s.reconstruct(), coeffs);
        for (layer, _) in &s.factors {
            prop_assert!(layer.coeffs().iter().all(|&a| (a as u64) < p));
        }
    }
}

fn all_weights(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |a| [v.clone(), vec![a]].concat()))
            .collect();
    }
    out
}

fn check_tensor(f: Family, r: usize, firsts: &[Vec<i64>], seconds: &[Vec<i64>]) {
    let sys = build_root_system(f, r).unwrap();
    for a in firsts {
        let l1 = Weight::new(&sys, a.clone()).unwrap();
        let ch1 = full_character(&l1, DEFAULT_DIM_CAP).unwrap();
        for b in seconds {
            let l2 = Weight::new(&sys, b.clone()).unwrap();
            let ch2 = full_character(&l2, DEFAULT_DIM_CAP).unwrap();
            let (top, flag) = tensor_highest_weight(&l1, &l2).unwrap();
            assert!(flag);
            let product = tensor_characters(&ch1, &ch2);
            assert_eq!(product.get(top.coeffs()).copied(), Some(1), "{sys} {a:?} ⊗ {b:?}");
            for w in product.keys().filter(|w| w.iter().all(|&c| c >= 0)) {
                let w = Weight::new(&sys, w.clone()).unwrap();
                assert!(dominance_leq(&w, &top).unwrap(), "{sys}: {w} not under {top}");
            }
        }
    }
}

#[test]
fn tensor_constituents_lie_under_the_sum_a2_b2() {
    for (f, r) in [(Family::A, 2), (Family::B, 2)] {
        let ws = all_weights(r, 2);
        check_tensor(f, r, &ws, &ws);
    }
}

#[test]
fn tensor_constituents_lie_under_the_sum_c3() {
    // Full coefficient range 2 on both sides needs products of up to
    // 19683 × 19683 weights; the second factor keeps coefficients ≤ 1.
    let firsts = all_weights(3, 2);
    check_tensor(Family::C, 3, &firsts, &all_weights(3, 1));
}
