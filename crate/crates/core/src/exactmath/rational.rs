use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serialized form `"num/den"`; the denominator is always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse(n)?, d))
        }
        None => Ok(Rational::from_integer(parse(s)?)),
    }
}

/// True iff `ell` divides the numerator of `q` in lowest terms. Zero counts as divisible.
pub fn numerator_divides(ell: u64, q: &Rational) -> bool {
    (q.numer() % BigInt::from(ell)).is_zero()
}

/// The `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(p: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
        if n.is_one() {
            return Some(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerator_divisibility() {
        assert!(numerator_divides(691, &rat(-691, 65520)));
        assert!(!numerator_divides(7, &rat(1, 252)));
        assert!(numerator_divides(5, &Rational::zero()));
    }

    #[test]
    fn format_and_parse() {
        let q = rat(-6, 4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), q);
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(7, &BigInt::from(6860)), Some(3));
        assert_eq!(valuation(2, &BigInt::from(-12)), Some(2));
        assert_eq!(valuation(3, &BigInt::from(1)), Some(0));
        assert_eq!(valuation(3, &BigInt::zero()), None);
    }
}
