use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{bernoulli, is_prime, numerator_divides, valuation, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum T1Case {
    /// ell | p^{k/2} + eps: the even Eisenstein class is new mod ell.
    DividesPlus,
    /// ell divides only p^{k/2-1} + eps: the odd class carries the congruence.
    DividesMinusOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct T1Conditions {
    pub k: u64,
    pub p: u64,
    pub eps: i8,
    pub ell: u64,
    pub case: T1Case,
    pub ok: bool,
    pub failures: Vec<String>,
    /// v_ell(p^{k/2} + eps)
    pub valuation_plus: u32,
    /// v_ell(p^{k/2-1} + eps)
    pub valuation_minus: u32,
    /// v_ell of the numerator of (B_k/k)(p^{k/2}+eps); `None` when that rational is zero.
    pub bernoulli_valuation: Option<u32>,
    pub ell_is_k_plus_one: bool,
    /// Even n in (0, k) with ell not dividing B_n B_{k-n} (p^{n-1} - 1), when that search ran.
    pub odd_witness_n: Option<u64>,
}

fn signed_power(p: u64, e: u64, eps: i8) -> BigInt {
    BigInt::from(p).pow(e as u32) + BigInt::from(eps)
}

/// The hypotheses on (k, p, eps, ell) under which an Eisenstein series of
/// prime level p and Atkin-Lehner sign eps is congruent mod ell to a newform.
///
/// `ell = k + 1` is accepted only in the `DividesPlus` case.
pub fn t1_conditions(k: u64, p: u64, eps: i8, ell: u64) -> Result<T1Conditions> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Precondition(format!("weight k = {k} must be even and >= 4")));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::Precondition(format!("eps = {eps} must be +1 or -1")));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} is not prime")));
    }
    if !is_prime(ell) {
        return Err(Error::Precondition(format!("ell = {ell} is not prime")));
    }
    let half = k / 2;
    let plus = signed_power(p, half, eps);
    let minus = signed_power(p, half - 1, eps);
    let ell_big = BigInt::from(ell);
    let divides_plus = (&plus % &ell_big).is_zero();
    let divides_minus = (&minus % &ell_big).is_zero();
    let case = if divides_plus { T1Case::DividesPlus } else { T1Case::DividesMinusOnly };

    let mut failures = Vec::new();
    if ell <= k - 2 {
        failures.push(format!("ell = {ell} is not > k - 2 = {}", k - 2));
    }
    if ell <= 3 {
        failures.push("ell must exceed 3".into());
    }
    if ell == k + 1 && !divides_plus {
        failures.push("ell = k + 1 requires ell | p^{k/2} + eps".into());
    }
    if !divides_plus && !divides_minus {
        failures.push("ell does not divide (p^{k/2}+eps)(p^{k/2-1}+eps)".into());
    }
    let bk_over_k = bernoulli(k as usize) / Rational::from_integer(BigInt::from(k));
    let scaled = &bk_over_k * Rational::from_integer(plus.clone());
    if !numerator_divides(ell, &scaled) {
        failures.push("ell does not divide the numerator of (B_k/k)(p^{k/2}+eps)".into());
    }

    let mut odd_witness_n = None;
    if !divides_plus {
        odd_witness_n = (2..k).step_by(2).find(|&n| {
            let pn = Rational::from_integer(BigInt::from(p).pow((n - 1) as u32) - 1);
            let prod = bernoulli(n as usize) * bernoulli((k - n) as usize) * pn;
            !numerator_divides(ell, &prod)
        });
        if odd_witness_n.is_none() {
            failures.push("no even n in (0,k) with ell not dividing B_n B_{k-n} (p^{n-1}-1)".into());
        }
    }

    Ok(T1Conditions {
        k,
        p,
        eps,
        ell,
        case,
        ok: failures.is_empty(),
        failures,
        valuation_plus: valuation(ell, &plus).unwrap_or(u32::MAX),
        valuation_minus: valuation(ell, &minus).unwrap_or(u32::MAX),
        bernoulli_valuation: valuation(ell, scaled.numer()),
        ell_is_k_plus_one: ell == k + 1,
        odd_witness_n,
    })
}
