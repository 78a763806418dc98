//! Characteristic polynomials via Hessenberg reduction.

use super::field::{Field, Ring};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Monic characteristic polynomial `det(xI - M)`, coefficients from low to high degree.
pub fn charpoly<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "charpoly needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let m1 = col + 1;
        let Some(i) = (m1..n).find(|&i| !f.is_zero(&h[(i, col)])) else {
            continue;
        };
        if i != m1 {
            for j in 0..n {
                let t = h[(i, j)].clone();
                h[(i, j)] = h[(m1, j)].clone();
                h[(m1, j)] = t;
            }
            for r in 0..n {
                let t = h[(r, i)].clone();
                h[(r, i)] = h[(r, m1)].clone();
                h[(r, m1)] = t;
            }
        }
        let t = h[(m1, col)].clone();
        for i in (m1 + 1)..n {
            if f.is_zero(&h[(i, col)]) {
                continue;
            }
            let u = f.div(&h[(i, col)], &t).expect("pivot is nonzero");
            for j in 0..n {
                let d = f.mul(&u, &h[(m1, j)]);
                h[(i, j)] = f.sub(&h[(i, j)], &d);
            }
            for r in 0..n {
                let d = f.mul(&u, &h[(r, i)]);
                h[(r, m1)] = f.add(&h[(r, m1)], &d);
            }
        }
    }
    // p[k] is the charpoly of the leading k x k block
    let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 1..=n {
        let prev = &p[k - 1];
        let mut next = vec![f.zero(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = f.add(&next[d + 1], c);
            next[d] = f.sub(&next[d], &f.mul(&h[(k - 1, k - 1)], c));
        }
        let mut t = f.one();
        for i in (1..k).rev() {
            t = f.mul(&t, &h[(i, i - 1)]);
            let coeff = f.mul(&t, &h[(i - 1, k - 1)]);
            if f.is_zero(&coeff) {
                continue;
            }
            for (d, c) in p[i - 1].iter().enumerate() {
                next[d] = f.sub(&next[d], &f.mul(&coeff, c));
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("nonempty"))
}

pub fn eval_poly<F: Field>(f: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Polynomial product, coefficients low to high.
pub fn poly_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Roots of a polynomial over F_p by exhaustive search, with multiplicity.
pub fn roots_mod_p(p: u64, coeffs: &[u64]) -> Vec<(u64, usize)> {
    let f = super::PrimeField::new(p).expect("prime modulus");
    let mut out = Vec::new();
    for r in 0..p {
        let mut c = coeffs.to_vec();
        let mut mult = 0;
        while c.len() > 1 && eval_poly(&f, &c, &r) == 0 {
            // synthetic division by (x - r)
            let mut q = vec![0u64; c.len() - 1];
            let mut carry = 0u64;
            for d in (1..c.len()).rev() {
                carry = f.add(&c[d], &f.mul(&carry, &r));
                q[d - 1] = carry;
            }
            c = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::linalg::{diagonal, PrimeField, Rationals};
    use crate::linalg::Ring;

    #[test]
    fn diagonal_charpoly() {
        let q = Rationals;
        let m = diagonal(&q, &[int(2), int(3)]);
        assert_eq!(charpoly(&q, &m).unwrap(), vec![int(6), int(-5), int(1)]);
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // x^3 - 2x^2 + 5x - 7
        let q = Rationals;
        let rows = vec![
            vec![int(0), int(0), int(7)],
            vec![int(1), int(0), int(-5)],
            vec![int(0), int(1), int(2)],
        ];
        let m = Matrix::from_rows(rows, 3).unwrap();
        assert_eq!(charpoly(&q, &m).unwrap(), vec![int(-7), int(5), int(-2), int(1)]);
    }

    #[test]
    fn charpoly_mod_p_and_roots() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]], 2).unwrap();
        let cp = charpoly(&f, &m).unwrap();
        assert_eq!(cp, vec![1, 5, 1]);
        assert_eq!(roots_mod_p(7, &cp), vec![(1, 2)]);
        assert_eq!(f.format(&cp[1]), "5 mod 7");
    }

    #[test]
    fn non_square_rejected() {
        let q = Rationals;
        let m = Matrix::filled(2, 3, int(0));
        assert!(charpoly(&q, &m).is_err());
    }
}
