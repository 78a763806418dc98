use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The Bernoulli number B_k with B_1 = -1/2, from the exact recurrence
/// sum_{j=0}^{m} binom(m+1, j) B_j = 0. Values are cached.
pub fn bernoulli(k: usize) -> Rational {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= k {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binom.clone());
            }
            // binom(m+1, j+1) from binom(m+1, j)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        cache.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    cache[k].clone()
}

/// sigma_a(n) = sum of d^a over the positive divisors d of n.
pub fn sigma(n: u64, a: u32) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(a);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(a);
            }
        }
        d += 1;
    }
    total
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{numerator_divides, rat};

    /// Akiyama-Tanigawa; yields B_n with the B_1 = +1/2 convention.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::new();
        for m in 0..=n {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = Rational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    /// Denominator of B_k (k even >= 2) is the product of primes p with (p-1) | k.
    fn von_staudt_denominator(k: u64) -> BigInt {
        crate::exactmath::primes_up_to(k + 1)
            .into_iter()
            .filter(|p| k % (p - 1) == 0)
            .map(BigInt::from)
            .product()
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        let b12 = bernoulli(12) / Rational::from_integer(BigInt::from(24));
        assert!(numerator_divides(691, &b12));
    }

    #[test]
    fn matches_independent_algorithms() {
        for k in (2..=60).step_by(2) {
            let b = bernoulli(k);
            assert_eq!(b, akiyama_tanigawa(k), "k = {k}");
            assert_eq!(b.denom(), &von_staudt_denominator(k as u64), "k = {k}");
        }
    }

    #[test]
    fn sigma_values_and_multiplicativity() {
        assert_eq!(sigma(1, 5), BigInt::from(1));
        assert_eq!(sigma(2, 5), BigInt::from(33));
        assert_eq!(sigma(2, 11), BigInt::from(2049));
        for m in 1..=50u64 {
            for n in 1..=50u64 {
                if num_integer::gcd(m, n) == 1 {
                    for a in [0, 1, 3] {
                        assert_eq!(sigma(m * n, a), sigma(m, a) * sigma(n, a));
                    }
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(4, 5), BigInt::zero());
    }
}
