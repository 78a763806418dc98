//! Formal integer combinations of determinant-n matrices modulo M ~ -M.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::cosets::IntMatrix2;
use crate::error::{Error, Result};

/// Representative of {M, -M} whose first nonzero entry is positive.
pub fn normalize_sign(m: &IntMatrix2) -> IntMatrix2 {
    match m.entries().iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => m.neg(),
        _ => *m,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalMatrixSum {
    pub n: i64,
    terms: BTreeMap<IntMatrix2, BigInt>,
}

impl FormalMatrixSum {
    pub fn new(n: i64) -> Self {
        FormalMatrixSum { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: i64, terms: impl IntoIterator<Item = (IntMatrix2, BigInt)>) -> Result<Self> {
        let mut s = FormalMatrixSum::new(n);
        for (m, c) in terms {
            s.add_term(m, c)?;
        }
        Ok(s)
    }

    pub fn add_term(&mut self, m: IntMatrix2, c: BigInt) -> Result<()> {
        if m.det() != self.n {
            return Err(Error::DimensionMismatch(format!("{m} has determinant {}, expected {}", m.det(), self.n)));
        }
        let key = normalize_sign(&m);
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Terms in lexicographic order of the normalized matrices.
    pub fn terms(&self) -> impl Iterator<Item = (&IntMatrix2, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let coeff = c.to_i64().map(Value::from).unwrap_or_else(|| Value::String(c.to_string()));
                    json!({ "matrix": [m.a, m.b, m.c, m.d], "coeff": coeff })
                })
                .collect(),
        )
    }
}

/// Upper triangular representatives (a b; 0 d), ad = n, 0 <= b < d.
pub fn coset_reps_infty(n: i64) -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let d = n / a;
        for b in 0..d {
            out.push(IntMatrix2::new(a, b, 0, d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reps_at_infinity() {
        assert_eq!(coset_reps_infty(1), vec![IntMatrix2::identity()]);
        assert_eq!(
            coset_reps_infty(2),
            vec![IntMatrix2::new(1, 0, 0, 2), IntMatrix2::new(1, 1, 0, 2), IntMatrix2::new(2, 0, 0, 1)]
        );
        assert_eq!(coset_reps_infty(4).len(), 7);
    }

    #[test]
    fn sign_normalization_merges_terms() {
        let m = IntMatrix2::new(2, 0, 0, 1);
        let mut s = FormalMatrixSum::new(2);
        s.add_term(m, BigInt::from(1)).unwrap();
        s.add_term(m.neg(), BigInt::from(-1)).unwrap();
        assert!(s.is_empty());
        assert!(s.add_term(IntMatrix2::identity(), BigInt::from(1)).is_err());
        s.add_term(IntMatrix2::new(-1, 0, 3, -2), BigInt::from(4)).unwrap();
        assert_eq!(s.to_json().to_string(), r#"[{"matrix":[1,0,-3,2],"coeff":4}]"#);
    }
}
