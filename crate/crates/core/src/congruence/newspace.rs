//! p-new subspaces and the classical dimension formulas for Gamma_0(N).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cosets::ProjLine;
use crate::error::{Error, Result};
use crate::exactmath::{gcd_i64, is_prime, is_squarefree, prime_divisors, Rational};
use crate::hecke::{atkin_lehner_scale, theta_operator};
use crate::linalg::{Field, Subspace};
use crate::periodspace::{build_w, trace, CosetOperator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewSpaceSpec {
    pub level: u64,
    pub w: usize,
    pub p: u64,
    /// Required normalized Atkin-Lehner eigenvalues at exact divisors Q of the level.
    pub al_signs: Vec<(u64, i8)>,
    /// Required delta eigenvalue.
    pub parity: Option<i8>,
}

impl NewSpaceSpec {
    pub fn new(level: u64, w: usize, p: u64) -> Self {
        NewSpaceSpec { level, w, p, al_signs: Vec::new(), parity: None }
    }

    pub fn with_al_sign(mut self, q: u64, sign: i8) -> Self {
        self.al_signs.push((q, sign));
        self
    }

    pub fn with_parity(mut self, sign: i8) -> Self {
        self.parity = Some(sign);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.level % self.p != 0 {
            return Err(Error::Precondition(format!("p = {} is not a prime divisor of {}", self.p, self.level)));
        }
        for &(q, s) in &self.al_signs {
            if q == 0 || self.level % q != 0 || gcd_i64(q as i64, (self.level / q) as i64) != 1 {
                return Err(Error::Precondition(format!("{q} is not an exact divisor of {}", self.level)));
            }
            if s != 1 && s != -1 {
                return Err(Error::Precondition(format!("sign {s} is not +1 or -1")));
            }
        }
        if let Some(s) = self.parity {
            if s != 1 && s != -1 {
                return Err(Error::Precondition(format!("parity {s} is not +1 or -1")));
            }
        }
        Ok(())
    }
}

fn check_field<F: Field>(f: &F, spec: &NewSpaceSpec) -> Result<()> {
    let ch = f.characteristic();
    if ch != 0 && (ch as usize <= spec.w || (6 * spec.level) % ch == 0) {
        return Err(Error::Precondition(format!(
            "characteristic {ch} must exceed w = {} and not divide 6N = {}",
            spec.w,
            6 * spec.level
        )));
    }
    Ok(())
}

/// The p-new subspace inside a given copy of W_w(N) over `f`, cut further by the
/// requested parity and Atkin-Lehner signs.
pub fn new_subspace_in<F: Field>(f: &F, spec: &NewSpaceSpec, w_space: &Subspace<F::Elem>) -> Result<Subspace<F::Elem>> {
    spec.validate()?;
    check_field(f, spec)?;
    let (n, w) = (spec.level, spec.w);
    let m = n / spec.p;
    let theta = theta_operator(n, w, n as i64)?.over(f);
    let mut space = w_space.kernel_within(f, |v| {
        let mut out = trace(f, v, n, w, m).expect("divisor");
        out.extend(trace(f, &theta.apply(f, v), n, w, m).expect("divisor"));
        out
    });
    if let Some(sign) = spec.parity {
        let delta = CosetOperator::delta(n, w).over(f);
        space = space.eigen_within(f, |v| delta.apply(f, v), &f.from_i64(sign as i64));
    }
    for &(q, sign) in &spec.al_signs {
        let scale = atkin_lehner_scale(f, q as i64, w)?;
        let op = theta_operator(n, w, q as i64)?.over(f);
        space = space.eigen_within(
            f,
            |v| op.apply(f, v).iter().map(|x| f.mul(x, &scale)).collect(),
            &f.from_i64(sign as i64),
        );
    }
    Ok(space)
}

pub fn new_subspace<F: Field>(f: &F, spec: &NewSpaceSpec) -> Result<Subspace<F::Elem>> {
    spec.validate()?;
    check_field(f, spec)?;
    let w_space = build_w(f, spec.level, spec.w)?;
    new_subspace_in(f, spec, &w_space)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimRecord {
    pub dim_m: i64,
    pub dim_s: i64,
    pub dim_s_new: i64,
}

/// Index, elliptic point counts, cusp count and genus of Gamma_0(N), N square-free.
fn signature(n: u64) -> (Rational, i64, i64, i64, Rational) {
    let primes = prime_divisors(n);
    let mut mu = Rational::from_integer(BigInt::from(n));
    let mut nu2 = 1i64;
    let mut nu3 = 1i64;
    for &p in &primes {
        mu *= Rational::new(BigInt::from(p + 1), BigInt::from(p));
        nu2 *= match p % 4 {
            1 => 2,
            3 => 0,
            _ => 1,
        };
        nu3 *= match p % 3 {
            1 => 2,
            2 => 0,
            _ => 1,
        };
    }
    let cusps = 1i64 << primes.len();
    let genus = Rational::from_integer(BigInt::from(1)) + &mu / Rational::from_integer(BigInt::from(12))
        - Rational::new(BigInt::from(nu2), BigInt::from(4))
        - Rational::new(BigInt::from(nu3), BigInt::from(3))
        - Rational::new(BigInt::from(cusps), BigInt::from(2));
    (mu, nu2, nu3, cusps, genus)
}

fn dim_cusp(n: u64, k: i64) -> i64 {
    let (_, nu2, nu3, c, g) = signature(n);
    let g = g.to_integer().to_i64().expect("small genus");
    if k == 2 {
        return g;
    }
    (k - 1) * (g - 1) + (k / 2 - 1) * c + nu2 * (k / 4) + nu3 * (k / 3)
}

/// Classical dimensions of M_k, S_k and the new part of S_k for Gamma_0(N), N square-free.
pub fn dim_oracle(n: u64, k: u64) -> Result<DimRecord> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::Precondition(format!("level {n} is not square-free")));
    }
    if k < 4 || k % 2 != 0 {
        return Err(Error::Precondition(format!("weight {k} must be even and at least 4")));
    }
    let k = k as i64;
    let (_, _, _, c, _) = signature(n);
    let dim_s = dim_cusp(n, k);
    // new part by inversion with beta(p) = -2 on square-free quotients
    let mut dim_s_new = 0;
    for m in (1..=n).filter(|m| n % m == 0) {
        let beta = (-2i64).pow(prime_divisors(n / m).len() as u32);
        dim_s_new += beta * dim_cusp(m, k);
    }
    Ok(DimRecord { dim_m: dim_s + c, dim_s, dim_s_new })
}

/// dim S_k(N) - 2 dim S_k(N/p): the part new at p.
pub fn dim_p_new(n: u64, k: u64, p: u64) -> Result<i64> {
    if n % p != 0 {
        return Err(Error::Precondition(format!("{p} does not divide {n}")));
    }
    Ok(dim_oracle(n, k)?.dim_s - 2 * dim_oracle(n / p, k)?.dim_s)
}

/// Number of cosets of Gamma_0(N) in SL_2(Z).
pub fn index(n: u64) -> usize {
    ProjLine::get(n).len()
}
