//! Exact integer, rational and prime-field arithmetic.
//!
//! Everything here is pure and allocation-light; rationals are
//! `num_rational::BigRational`, always kept in lowest terms with a positive
//! denominator.

mod bernoulli;
mod conditions;
mod modint;
mod primes;
mod rational;

pub use bernoulli::{bernoulli, binomial, sigma};
pub use conditions::{t1_conditions, T1Case, T1Conditions};
pub use modint::ModInt;
pub use primes::{
    ext_gcd, factor, gcd_i64, inv_mod, is_prime, is_squarefree, mul_mod, pow_mod, prime_divisors,
    primes_up_to,
};
pub use rational::{
    format_rational, int, numerator_divides, parse_rational, rat, valuation, Rational,
};
