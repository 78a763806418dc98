use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::ext_gcd;

/// An integer 2x2 matrix (a b; c d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl IntMatrix2 {
    pub const S: IntMatrix2 = IntMatrix2 { a: 0, b: -1, c: 1, d: 0 };
    pub const U: IntMatrix2 = IntMatrix2 { a: 1, b: -1, c: 1, d: 0 };
    pub const T: IntMatrix2 = IntMatrix2 { a: 1, b: 1, c: 0, d: 1 };
    pub const DELTA: IntMatrix2 = IntMatrix2 { a: -1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub const fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    /// diag(n, 1)
    pub const fn sigma(n: i64) -> Self {
        IntMatrix2::new(n, 0, 0, 1)
    }

    /// (0 -1; N 0)
    pub const fn fricke(n: i64) -> Self {
        IntMatrix2::new(0, -1, n, 0)
    }

    /// An Atkin-Lehner matrix (Qa b; Nc Qd) of determinant Q for an exact divisor Q of N.
    pub fn atkin_lehner(n: i64, q: i64) -> Result<Self> {
        if q <= 0 || n <= 0 || n % q != 0 || ext_gcd(q, n / q).0 != 1 {
            return Err(Error::Precondition(format!("{q} is not an exact divisor of {n}")));
        }
        if q == n {
            return Ok(IntMatrix2::fricke(n));
        }
        let r = n / q;
        // q*d - r*b = 1 with 0 <= d < r
        let (_, x, _) = ext_gcd(q, r);
        let d = x.rem_euclid(r);
        let b = (q * d - 1) / r;
        Ok(IntMatrix2::new(q, b, n, q * d))
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Adjugate (d -b; -c a), so that m * adj(m) = det(m) I.
    pub fn adj(&self) -> IntMatrix2 {
        IntMatrix2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn neg(&self) -> IntMatrix2 {
        IntMatrix2::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn inverse(&self) -> Option<IntMatrix2> {
        match self.det() {
            1 => Some(self.adj()),
            -1 => Some(self.adj().neg()),
            _ => None,
        }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn all_divisible_by(&self, q: i64) -> bool {
        self.entries().iter().all(|x| x % q == 0)
    }

    pub fn div_exact(&self, q: i64) -> IntMatrix2 {
        IntMatrix2::new(self.a / q, self.b / q, self.c / q, self.d / q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(IntMatrix2::S.det(), 1);
        assert_eq!(IntMatrix2::U.det(), 1);
        assert_eq!(IntMatrix2::fricke(7).det(), 7);
        assert_eq!(IntMatrix2::sigma(5).det(), 5);
        assert_eq!(IntMatrix2::S.mul(&IntMatrix2::S), IntMatrix2::identity().neg());
    }

    #[test]
    fn atkin_lehner_matrices() {
        assert_eq!(IntMatrix2::atkin_lehner(14, 2).unwrap(), IntMatrix2::new(2, 1, 14, 8));
        assert_eq!(IntMatrix2::atkin_lehner(14, 14).unwrap(), IntMatrix2::fricke(14));
        for (n, q) in [(14, 7), (30, 3), (30, 10), (12, 4)] {
            let w = IntMatrix2::atkin_lehner(n, q).unwrap();
            assert_eq!(w.det(), q);
            assert_eq!(w.a % q, 0);
            assert_eq!(w.d % q, 0);
            assert_eq!(w.c % n, 0);
        }
        assert!(IntMatrix2::atkin_lehner(12, 2).is_err());
    }

    #[test]
    fn inverse_and_adjugate() {
        let g = IntMatrix2::new(2, 3, 1, 2);
        assert_eq!(g.mul(&g.inverse().unwrap()), IntMatrix2::identity());
        let m = IntMatrix2::new(2, 1, 0, 3);
        assert_eq!(m.mul(&m.adj()), IntMatrix2::new(6, 0, 0, 6));
        assert!(m.inverse().is_none());
    }
}
