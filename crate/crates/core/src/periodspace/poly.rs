//! Polynomials of degree at most w and the weight -w slash action.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::cosets::IntMatrix2;
use crate::exactmath::{format_rational, Rational};
use crate::linalg::Ring;

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Matrix of `P -> P|M` on V_w: entry `[k][j]` is the coefficient of X^k in X^j|M.
pub fn slash_block(m: &IntMatrix2, w: usize) -> Vec<Vec<BigInt>> {
    let lin_num = [BigInt::from(m.b), BigInt::from(m.a)];
    let lin_den = [BigInt::from(m.d), BigInt::from(m.c)];
    let mut num_pows = vec![vec![BigInt::one()]];
    let mut den_pows = vec![vec![BigInt::one()]];
    for i in 0..w {
        num_pows.push(poly_mul_int(&num_pows[i], &lin_num));
        den_pows.push(poly_mul_int(&den_pows[i], &lin_den));
    }
    let mut block = vec![vec![BigInt::zero(); w + 1]; w + 1];
    for j in 0..=w {
        let col = poly_mul_int(&num_pows[j], &den_pows[w - j]);
        for (k, x) in col.into_iter().enumerate() {
            block[k][j] = x;
        }
    }
    block
}

/// `P|M(X) = P((aX+b)/(cX+d)) (cX+d)^w` for coefficients listed from degree 0.
pub fn slash<R: Ring>(r: &R, p: &[R::Elem], m: &IntMatrix2, w: usize) -> Vec<R::Elem> {
    assert_eq!(p.len(), w + 1, "polynomial length must be w+1");
    let block = slash_block(m, w);
    (0..=w)
        .map(|k| {
            (0..=w).fold(r.zero(), |acc, j| {
                if r.is_zero(&p[j]) || block[k][j].is_zero() {
                    acc
                } else {
                    r.add(&acc, &r.mul(&r.from_bigint(&block[k][j]), &p[j]))
                }
            })
        })
        .collect()
}

/// Coefficients as strings, lowest degree first.
pub fn poly_to_json<R: Ring>(r: &R, p: &[R::Elem]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(r.format(x))).collect())
}

/// Human-readable form with descending degrees, e.g. `-49X^4 + 1`.
pub fn format_poly(p: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.is_integer() { c.to_integer().to_string() } else { format_rational(c) };
        let term = match k {
            0 => coeff,
            _ => {
                let mono = if k == 1 { "X".to_string() } else { format!("X^{k}") };
                match coeff.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{coeff}{mono}"),
                }
            }
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for t in &parts[1..] {
        if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// A polynomial with extra terms at X^-1 and X^(w+1). `coeffs[i]` is the
/// coefficient of X^(i-1).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtPoly {
    pub w: usize,
    pub coeffs: Vec<Rational>,
}

impl ExtPoly {
    pub fn zero(w: usize) -> Self {
        ExtPoly { w, coeffs: vec![Rational::zero(); w + 3] }
    }

    /// Coefficient of X^deg for deg in -1..=w+1.
    pub fn coeff(&self, deg: i64) -> &Rational {
        &self.coeffs[(deg + 1) as usize]
    }

    pub fn set(&mut self, deg: i64, value: Rational) {
        self.coeffs[(deg + 1) as usize] = value;
    }

    pub fn add(&self, other: &ExtPoly) -> ExtPoly {
        assert_eq!(self.w, other.w);
        ExtPoly { w: self.w, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Rational) -> ExtPoly {
        ExtPoly { w: self.w, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Slash by diag(d, 1): X^j goes to d^j X^j, including j = -1 and j = w+1.
    pub fn slash_diag(&self, d: i64) -> ExtPoly {
        let d = Rational::from_integer(BigInt::from(d));
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let deg = i as i32 - 1;
                c * num_traits::pow::Pow::pow(&d, deg)
            })
            .collect();
        ExtPoly { w: self.w, coeffs }
    }

    /// Degree 0..=w part.
    pub fn ordinary_part(&self) -> Vec<Rational> {
        self.coeffs[1..self.w + 2].to_vec()
    }

    pub fn from_ordinary(w: usize, p: &[Rational]) -> ExtPoly {
        let mut e = ExtPoly::zero(w);
        for (k, c) in p.iter().enumerate() {
            e.coeffs[k + 1] = c.clone();
        }
        e
    }

    /// JSON object with the offset tag.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "offset": -1,
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}
