mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use periodpoly::congruence::{
    al_power_coeffs, eigensystem_roots, new_subspace, new_subspace_in, rational_newform_eigendata, scan_t1, verify_t2,
    NewSpaceSpec, Selector,
};
use periodpoly::eisenstein::eis_plus;
use periodpoly::exactmath::{int, Rational};
use periodpoly::linalg::{PrimeField, Ring, Rationals};
use periodpoly::periodspace::build_w_rational;
use proptest::prelude::*;

fn run(c: Check) {
    if let Err(e) = c {
        panic!("{e}");
    }
}

#[test]
fn hecke_images_stay_in_w() {
    for n in [1u64, 5, 7, 14, 19] {
        for w in [2usize, 4, 8, 10] {
            run(hecke_preserves_w(n, w, &[2, 3]));
        }
    }
}

#[test]
fn independent_hecke_elements_agree() {
    for (n, w) in [(1u64, 10usize), (7, 4), (5, 2), (15, 4)] {
        run(two_hecke_realizations_agree(n, w, 2));
    }
    run(two_hecke_realizations_agree(7, 4, 3));
}

#[test]
fn hecke_delta_atkin_lehner_commute() {
    for (n, w) in [(1u64, 10usize), (7, 4), (14, 2), (14, 4), (15, 2)] {
        run(operators_commute(n, w));
    }
}

#[test]
fn atkin_lehner_squares_to_identity() {
    for n in [7u64, 14] {
        for w in [2usize, 4] {
            run(atkin_lehner_involutions(n, w));
        }
    }
}

#[test]
fn trace_after_include_is_index() {
    for (m, n, w) in [(1u64, 7u64, 2usize), (7, 14, 4), (1, 14, 2), (5, 15, 2)] {
        run(trace_include(m, n, w));
    }
}

#[test]
fn closed_form_of_theta_on_p_zero() {
    for n in [5u64, 7, 14] {
        for w in [2usize, 4] {
            run(pal_matches_action(n, w));
        }
    }
}

#[test]
fn eisenstein_classes_are_eigen() {
    for n in [1u64, 5, 7, 14] {
        for eps in all_eps(n) {
            for w in [2usize, 4] {
                run(eisenstein_eigen_relations(&eps, w));
            }
        }
    }
}

#[test]
fn trace_identities() {
    run(trace_identity(1, 7, 6));
    run(trace_identity(7, 2, 6));
}

#[test]
fn unipotent_image_and_kernel() {
    for (w, ell) in [(2usize, 5u64), (4, 7), (10, 13)] {
        run(unipotent_action(w, ell));
    }
}

#[test]
fn shipped_hecke_elements_satisfy_relation() {
    run(hecke_elements_valid(14));
}

#[test]
fn constructed_classes_lie_in_kernel() {
    for n in [1u64, 5, 7, 14, 19] {
        run(classes_in_kernel(n, 4));
    }
}

#[test]
fn eichler_shimura_dimensions() {
    for n in [1u64, 5, 7, 14, 19, 21] {
        for k in [4u64, 6, 8, 12] {
            run(eichler_shimura(n, k));
        }
    }
}

#[test]
fn reduction_preserves_dimension() {
    for (n, w, ell) in [(7u64, 2usize, 5u64), (7, 4, 11), (14, 4, 11), (19, 4, 7), (1, 10, 13)] {
        run(dims_agree_mod(n, w, ell));
    }
}

#[test]
fn eisenstein_class_is_old_over_q() {
    let q = Rationals;
    for n in [5u64, 7, 14] {
        for eps in all_eps(n) {
            for w in [2usize, 4] {
                let e: Vec<Rational> = eis_plus(&eps, w).unwrap().coeffs.into_iter().map(Rational::from_integer).collect();
                for &p in &periodpoly::exactmath::prime_divisors(n) {
                    let space = new_subspace_in(&q, &NewSpaceSpec::new(n, w, p), &build_w_rational(n, w).unwrap()).unwrap();
                    assert!(!space.contains(&q, &e), "N = {n}, p = {p}, w = {w}");
                }
            }
        }
    }
}

#[test]
fn eisenstein_class_is_new_mod_ell() {
    let rows = scan_t1([4, 6, 8], [5, 7, 11, 13, 19], 60, false).unwrap();
    let mut tested = 0;
    for r in rows.iter().filter(|r| r.case == periodpoly::exactmath::T1Case::DividesPlus) {
        let f = PrimeField::new(r.ell).unwrap();
        let w = (r.k - 2) as usize;
        let eps = periodpoly::eisenstein::EpsSystem::uniform(r.p, r.eps).unwrap();
        let e: Vec<u64> = eis_plus(&eps, w).unwrap().coeffs.iter().map(|c| f.from_bigint(c)).collect();
        assert!(e.iter().any(|&x| x != 0));
        let space = new_subspace(&f, &NewSpaceSpec::new(r.p, w, r.p)).unwrap();
        assert!(space.contains(&f, &e), "{r:?}");
        tested += 1;
    }
    assert!(tested >= 2);
}

#[test]
fn surjectivity_anomaly() {
    for (n, p, w, ell) in [(7u64, 7u64, 2usize, 11u64), (14, 2, 4, 11), (5, 5, 2, 7), (7, 7, 4, 11), (11, 11, 2, 7)] {
        let r = verify_t2(n, p, w, ell).unwrap();
        assert_eq!(r.anomaly, 0, "{r:?}");
    }
    for (n, p, w) in [(7u64, 7u64, 2usize), (11, 11, 4), (13, 13, 2), (14, 7, 2)] {
        let r = verify_t2(n, p, w, w as u64 + 3).unwrap();
        assert_eq!(r.anomaly, 1, "{r:?}");
    }
}

#[test]
fn roots_persist_in_larger_space() {
    let q = Rationals;
    let w = 4;
    let full = build_w_rational(19, w).unwrap();
    let sub = new_subspace_in(&q, &NewSpaceSpec::new(19, w, 19).with_parity(1).with_al_sign(19, 1), &full).unwrap();
    let targets: BTreeMap<u64, Rational> = [2u64, 3, 5].iter().map(|&n| (n, Rational::from_integer(periodpoly::exactmath::sigma(n, 5)))).collect();
    let small = eigensystem_roots(&sub, 19, w, &[2, 3, 5], 7, &targets).unwrap();
    let big = eigensystem_roots(&full, 19, w, &[2, 3, 5], 7, &targets).unwrap();
    for (a, b) in small.iter().zip(&big) {
        assert!(!a.is_root || b.is_root);
    }
}

#[test]
fn eigenvalues_are_multiplicative() {
    let g = rational_newform_eigendata(7, 6, &Selector { n: 2, lambda: int(-10) }).unwrap();
    assert_eq!(g.eigenvalues[&1], int(1));
    assert_eq!(g.eigenvalues[&6], &g.eigenvalues[&2] * &g.eigenvalues[&3]);
    assert_eq!(g.eigenvalues[&10], &g.eigenvalues[&2] * &g.eigenvalues[&5]);
    let d = rational_newform_eigendata(1, 12, &Selector { n: 2, lambda: int(-24) }).unwrap();
    assert_eq!(d.eigenvalues[&4], int(-1472));
    assert_eq!(d.eigenvalues[&5], int(4830));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn stabilized_coefficients_are_congruent(lambda in -10_000i64..10_000, eps in prop_oneof![Just(1i8), Just(-1i8)]) {
        let r = al_power_coeffs(&BigInt::from(lambda), 3, eps, 8, 3).unwrap();
        prop_assert!(r.divisible);
    }
}
