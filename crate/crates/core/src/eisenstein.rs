//! Closed-form Eisenstein period polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::cosets::ProjLine;
use crate::error::{Error, Result};
use crate::exactmath::{bernoulli, binomial, gcd_i64, is_squarefree, prime_divisors, Rational};
use crate::linalg::Integers;
use crate::periodspace::{trace, ExtPoly, VectorPoly};

/// Atkin-Lehner signs at the primes of a square-free level, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsSystem {
    pub n: u64,
    pub signs: BTreeMap<u64, i8>,
}

impl EpsSystem {
    pub fn uniform(n: u64, sign: i8) -> Result<Self> {
        check_squarefree(n)?;
        check_sign(sign)?;
        Ok(EpsSystem { n, signs: prime_divisors(n).into_iter().map(|p| (p, sign)).collect() })
    }

    pub fn new(n: u64, signs: impl IntoIterator<Item = (u64, i8)>) -> Result<Self> {
        check_squarefree(n)?;
        let signs: BTreeMap<u64, i8> = signs.into_iter().collect();
        for (&p, &s) in &signs {
            check_sign(s)?;
            if n % p != 0 || !crate::exactmath::is_prime(p) {
                return Err(Error::Precondition(format!("{p} is not a prime divisor of {n}")));
            }
        }
        if signs.len() != prime_divisors(n).len() {
            return Err(Error::Precondition(format!("a sign is needed at every prime of {n}")));
        }
        Ok(EpsSystem { n, signs })
    }

    /// Parses "+1", "-1", or a list such as "2=-1,7=+1".
    pub fn parse(n: u64, s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains('=') {
            let sign: i8 = s.parse().map_err(|_| Error::Parse(format!("bad sign {s:?}")))?;
            return EpsSystem::uniform(n, sign);
        }
        let mut signs = Vec::new();
        for part in s.split(',') {
            let (p, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad sign entry {part:?}")))?;
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
            let v: i8 = v.trim().parse().map_err(|_| Error::Parse(format!("bad sign {v:?}")))?;
            signs.push((p, v));
        }
        EpsSystem::new(n, signs)
    }

    /// eps(d) for d | N.
    pub fn eval(&self, d: u64) -> i8 {
        prime_divisors(d).iter().map(|p| self.signs[p]).product()
    }

    pub fn restrict(&self, m: u64) -> Result<Self> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::Precondition(format!("{m} does not divide {}", self.n)));
        }
        Ok(EpsSystem { n: m, signs: self.signs.iter().filter(|(p, _)| m % **p == 0).map(|(p, s)| (*p, *s)).collect() })
    }
}

fn check_squarefree(n: u64) -> Result<()> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::Precondition(format!("level {n} is not square-free")));
    }
    Ok(())
}

fn check_sign(s: i8) -> Result<()> {
    if s != 1 && s != -1 {
        return Err(Error::Precondition(format!("sign {s} is not +1 or -1")));
    }
    Ok(())
}

fn check_weight(w: usize) -> Result<()> {
    if w < 2 || w % 2 != 0 {
        return Err(Error::Precondition(format!("w = {w} must be even and at least 2")));
    }
    Ok(())
}

fn n_of(n: u64, a: u64) -> u64 {
    n / gcd_i64(n as i64, a as i64) as u64
}

/// The tuple with 1 - X^w at every coset.
pub fn p_zero(n: u64, w: usize) -> Result<VectorPoly<BigInt>> {
    check_weight(w)?;
    let mut p = vec![BigInt::zero(); w + 1];
    p[0] = BigInt::one();
    p[w] = BigInt::from(-1);
    Ok(VectorPoly::constant(n, w, &p))
}

/// N_z^w - N_t^w X^w at A = (z : t).
pub fn pal_image(n: u64, w: usize, z: u64, t: u64) -> Result<Vec<BigInt>> {
    check_weight(w)?;
    let mut p = vec![BigInt::zero(); w + 1];
    p[0] = Pow::pow(BigInt::from(n_of(n, z)), w as u32);
    p[w] = -Pow::pow(BigInt::from(n_of(n, t)), w as u32);
    Ok(p)
}

/// Value tuple of the closed form above at every coset of level N.
pub fn pal_tuple(n: u64, w: usize) -> Result<VectorPoly<BigInt>> {
    let line = ProjLine::get(n);
    let mut coeffs = Vec::new();
    for a in line.labels() {
        coeffs.extend(pal_image(n, w, a.c, a.d)?);
    }
    VectorPoly::from_flat(n, w, coeffs)
}

/// Even Eisenstein class: eps(N_z) N_z^(w/2) - eps(N_t) N_t^(w/2) X^w at (z : t).
pub fn eis_plus(eps: &EpsSystem, w: usize) -> Result<VectorPoly<BigInt>> {
    check_weight(w)?;
    let n = eps.n;
    let line = ProjLine::get(n);
    let half = (w / 2) as u32;
    let mut coeffs = Vec::with_capacity(line.len() * (w + 1));
    for a in line.labels() {
        let (nz, nt) = (n_of(n, a.c), n_of(n, a.d));
        let mut p = vec![BigInt::zero(); w + 1];
        p[0] = BigInt::from(eps.eval(nz)) * Pow::pow(BigInt::from(nz), half);
        p[w] = -BigInt::from(eps.eval(nt)) * Pow::pow(BigInt::from(nt), half);
        coeffs.extend(p);
    }
    VectorPoly::from_flat(n, w, coeffs)
}

/// Interior coefficient (1/2) binom(k-2, n-1) (B_n/n) (B_{k-n}/(k-n)) at X^(n-1).
pub fn odd_interior_coefficient(k: usize, n: usize) -> Rational {
    let bn = bernoulli(n) / Rational::from_integer(BigInt::from(n));
    let bkn = bernoulli(k - n) / Rational::from_integer(BigInt::from(k - n));
    Rational::new(binomial((k - 2) as u64, (n - 1) as u64), BigInt::from(2)) * bn * bkn
}

/// Extended odd class of E_k at level one.
pub fn eis_minus_level1(k: usize) -> Result<ExtPoly> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::Precondition(format!("k = {k} must be even and at least 4")));
    }
    let w = k - 2;
    let mut e = ExtPoly::zero(w);
    let principal = -(bernoulli(k) / Rational::from_integer(BigInt::from(2 * k))) / Rational::from_integer(BigInt::from(k - 1));
    e.set(-1, principal.clone());
    e.set((w + 1) as i64, principal);
    for n in 1..k {
        e.set(n as i64 - 1, odd_interior_coefficient(k, n));
    }
    Ok(e)
}

/// Identity-coset value of the odd class at square-free level:
/// sum over d | N of eps(d) d^(-w/2) times the level-one class slashed by diag(d, 1).
pub fn eis_minus_identity_coset(eps: &EpsSystem, k: usize) -> Result<ExtPoly> {
    let base = eis_minus_level1(k)?;
    let w = k - 2;
    let n = eps.n;
    let mut acc = ExtPoly::zero(w);
    for d in (1..=n).filter(|d| n % d == 0) {
        let scale = Rational::from_integer(BigInt::from(eps.eval(d)))
            / Rational::from_integer(Pow::pow(BigInt::from(d), (w / 2) as u32));
        acc = acc.add(&base.slash_diag(d as i64).scale(&scale));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentityReport {
    pub pass: bool,
    pub factor: String,
}

/// Checks trace from Mp to M of the even class against (1 + eps(p) p^(k/2)) times the level-M class.
pub fn trace_identity_check(m: u64, p: u64, eps: &EpsSystem, k: usize) -> Result<TraceIdentityReport> {
    let n = m * p;
    if eps.n != n || m % p == 0 {
        return Err(Error::Precondition(format!("need eps at level {n} with p not dividing M")));
    }
    let w = k - 2;
    let top = eis_plus(eps, w)?;
    let bottom = eis_plus(&eps.restrict(m)?, w)?;
    let factor = BigInt::one() + BigInt::from(eps.eval(p)) * Pow::pow(BigInt::from(p), (k / 2) as u32);
    let traced = trace(&Integers, &top.coeffs, n, w, m)?;
    let expected: Vec<BigInt> = bottom.coeffs.iter().map(|x| x * &factor).collect();
    Ok(TraceIdentityReport { pass: traced == expected, factor: factor.to_string() })
}
