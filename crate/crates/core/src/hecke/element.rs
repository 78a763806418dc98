//! Hecke elements satisfying T_inf (1 - S) - (1 - S) T~ in (1 - T) R_n.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::formal::{coset_reps_infty, normalize_sign, FormalMatrixSum};
use crate::cosets::IntMatrix2;
use crate::error::{Error, Result};
use crate::linalg::{solve_integer, Matrix};

/// Outcome of the defect check; `witness` lists the T-orbits with nonzero coefficient sum.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport {
    pub ok: bool,
    pub witness: Vec<(IntMatrix2, BigInt)>,
}

fn reduce_by_t(m: &IntMatrix2) -> IntMatrix2 {
    if m.c != 0 {
        let k = (m.a - m.a.rem_euclid(m.c.abs())) / m.c;
        IntMatrix2::new(m.a - k * m.c, m.b - k * m.d, m.c, m.d)
    } else {
        let k = (m.b - m.b.rem_euclid(m.d.abs())) / m.d;
        IntMatrix2::new(m.a, m.b - k * m.d, m.c, m.d)
    }
}

/// Canonical element of the orbit of {M, -M} under left multiplication by T.
pub fn t_orbit_key(m: &IntMatrix2) -> IntMatrix2 {
    reduce_by_t(m).min(reduce_by_t(&m.neg()))
}

fn infinity_part(n: i64) -> BTreeMap<IntMatrix2, BigInt> {
    let mut d = BTreeMap::new();
    for m in coset_reps_infty(n) {
        *d.entry(t_orbit_key(&m)).or_insert_with(BigInt::zero) += 1;
        *d.entry(t_orbit_key(&m.mul(&IntMatrix2::S))).or_insert_with(BigInt::zero) -= 1;
    }
    d
}

/// Checks the defining relation of a Hecke element by T-orbit sums of the defect.
pub fn cz_defect(t: &FormalMatrixSum, n: i64) -> Result<DefectReport> {
    if t.n != n {
        return Err(Error::DimensionMismatch(format!("element has determinant {}, expected {n}", t.n)));
    }
    let mut orbits = infinity_part(n);
    for (m, c) in t.terms() {
        *orbits.entry(t_orbit_key(m)).or_insert_with(BigInt::zero) -= c;
        *orbits.entry(t_orbit_key(&IntMatrix2::S.mul(m))).or_insert_with(BigInt::zero) += c;
    }
    let witness: Vec<(IntMatrix2, BigInt)> = orbits.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(DefectReport { ok: witness.is_empty(), witness })
}

/// {(a b; c d) : ad - bc = n, a > c >= 0, d > b >= 0}.
pub fn heilbronn_element(n: i64) -> FormalMatrixSum {
    let mut s = FormalMatrixSum::new(n);
    for a in 1..=n {
        for d in 1..=n {
            for c in 0..a {
                for b in 0..d {
                    if a * d - b * c == n {
                        s.add_term(IntMatrix2::new(a, b, c, d), BigInt::one()).expect("determinant n");
                    }
                }
            }
        }
    }
    s
}

/// Solves for a Hecke element supported on sign classes of determinant-n matrices
/// with entries bounded by `bound` in absolute value.
pub fn solve_hecke_element(n: i64, bound: i64) -> Option<FormalMatrixSum> {
    let mut support = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let m = IntMatrix2::new(a, b, c, d);
                    if m.det() == n && normalize_sign(&m) == m {
                        support.push(m);
                    }
                }
            }
        }
    }
    let target = infinity_part(n);
    let mut keys: Vec<IntMatrix2> = target.keys().copied().collect();
    for m in &support {
        keys.push(t_orbit_key(m));
        keys.push(t_orbit_key(&IntMatrix2::S.mul(m)));
    }
    keys.sort();
    keys.dedup();
    let row_of: HashMap<IntMatrix2, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut a = Matrix::filled(keys.len(), support.len(), BigInt::zero());
    for (j, m) in support.iter().enumerate() {
        a[(row_of[&t_orbit_key(m)], j)] -= 1;
        a[(row_of[&t_orbit_key(&IntMatrix2::S.mul(m))], j)] += 1;
    }
    let mut b = vec![BigInt::zero(); keys.len()];
    for (k, c) in &target {
        b[row_of[k]] = -c;
    }
    let x = solve_integer(&a, &b)?;
    FormalMatrixSum::from_terms(n, support.into_iter().zip(x)).ok()
}

/// The verified Hecke element for `n`, memoized. The Heilbronn-type set is tried
/// first; otherwise bounded integer solving with growing bounds.
pub fn hecke_element(n: i64) -> Result<Arc<FormalMatrixSum>> {
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} must be positive")));
    }
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<FormalMatrixSum>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&n) {
        return Ok(Arc::clone(t));
    }
    let candidate = heilbronn_element(n);
    let element = if cz_defect(&candidate, n)?.ok {
        candidate
    } else {
        let mut found = None;
        for bound in 1..=n + 2 {
            if let Some(t) = solve_hecke_element(n, bound) {
                if cz_defect(&t, n)?.ok {
                    found = Some(t);
                    break;
                }
            }
        }
        found.ok_or_else(|| Error::HeckeElement(format!("no element of determinant {n} found")))?
    };
    let element = Arc::new(element);
    Ok(cache.lock().expect("cache lock").entry(n).or_insert(element).clone())
}
