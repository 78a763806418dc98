use std::collections::BTreeMap;

use num_bigint::BigInt;
use periodpoly::congruence::{
    eigensystem_roots, new_subspace_in, rational_newform_eigendata, verify_t1, verify_t3, NewSpaceSpec, Selector,
};
use periodpoly::exactmath::int;
use periodpoly::linalg::Rationals;
use periodpoly::periodspace::{build_w_rational, format_poly};

#[test]
fn level_19_weight_6_mod_7() {
    let r = verify_t1(6, 19, 1, 7).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.eisenstein_in_new, Some(true));
    assert_eq!(r.roots.len(), 3);
}

#[test]
fn level_19_listed_newform_coefficients() {
    // f = q - 2q^2 - q^3 - 28q^4 - 24q^5: a_n = sigma_5(n) mod 7
    for (a, s) in [(-2i64, 33i64), (-1, 244), (-24, 3126)] {
        assert_eq!((a - s).rem_euclid(7), 0);
    }
    let space = new_subspace_in(&Rationals, &NewSpaceSpec::new(19, 4, 19).with_parity(1).with_al_sign(19, 1), &build_w_rational(19, 4).unwrap()).unwrap();
    let targets = BTreeMap::from([(2, int(-2)), (3, int(-1)), (5, int(-24))]);
    let roots = eigensystem_roots(&space, 19, 4, &[2, 3, 5], 7, &targets).unwrap();
    assert!(roots.iter().all(|r| r.is_root));
}

#[test]
fn level_7_weight_6_mod_43() {
    let r = verify_t1(6, 7, 1, 43).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn level_7_newform_and_level_14_congruence() {
    let g = rational_newform_eigendata(7, 6, &Selector { n: 2, lambda: int(-10) }).unwrap();
    let comps: Vec<String> = g.plus.components().map(format_poly).collect();
    assert_eq!(comps[0], "-49X^4 + 1");
    assert_eq!(g.den_plus, BigInt::from(2));
    let r = verify_t3(7, 2, 6, -1, 11, &g).unwrap();
    assert!(r.lambda_congruence && r.condition, "{r:?}");
    assert!(r.pass, "{r:?}");
    // f = q + 4q^2 + 8q^3 + 16q^4 + 10q^5
    assert_eq!((8i64 - (-14)).rem_euclid(11), 0);
    assert_eq!((10i64 - (-56)).rem_euclid(11), 0);
    let r = verify_t3(7, 2, 6, -1, 13, &g).unwrap();
    assert!(!r.lambda_congruence && !r.pass && r.roots.is_empty());
}
