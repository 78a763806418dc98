//! The spaces V_w(N) and W_w(N), the delta splitting, trace and inclusion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde_json::{Map, Value};

use super::operator::CosetOperator;
use super::poly::poly_to_json;
use crate::cosets::{IntMatrix2, ProjLine};
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::linalg::{primitive_integer_vector, saturate, Field, Rationals, Ring, Subspace};

/// A tuple of polynomials indexed by the cosets of level `n`, stored flat in
/// coset-major order with ascending degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorPoly<E> {
    pub n: u64,
    pub w: usize,
    pub coeffs: Vec<E>,
}

impl<E: Clone> VectorPoly<E> {
    pub fn from_flat(n: u64, w: usize, coeffs: Vec<E>) -> Result<Self> {
        let expected = ProjLine::get(n).len() * (w + 1);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch(format!("expected {expected} coefficients, got {}", coeffs.len())));
        }
        Ok(VectorPoly { n, w, coeffs })
    }

    /// The same polynomial at every coset.
    pub fn constant(n: u64, w: usize, p: &[E]) -> Self {
        let len = ProjLine::get(n).len();
        let mut coeffs = Vec::with_capacity(len * (w + 1));
        for _ in 0..len {
            coeffs.extend_from_slice(p);
        }
        VectorPoly { n, w, coeffs }
    }

    pub fn component(&self, i: usize) -> &[E] {
        &self.coeffs[i * (self.w + 1)..(i + 1) * (self.w + 1)]
    }

    pub fn components(&self) -> impl Iterator<Item = &[E]> {
        self.coeffs.chunks(self.w + 1)
    }

    /// JSON map from "c:d@N" to coefficient arrays.
    pub fn to_json<R: Ring<Elem = E>>(&self, r: &R) -> Value {
        let line = ProjLine::get(self.n);
        let mut map = Map::new();
        for (i, p) in self.components().enumerate() {
            map.insert(line.label(i).to_string(), poly_to_json(r, p));
        }
        Value::Object(map)
    }
}

pub fn ambient_dim(n: u64, w: usize) -> usize {
    ProjLine::get(n).len() * (w + 1)
}

fn check_weight(w: usize) -> Result<()> {
    if w % 2 != 0 {
        return Err(Error::Precondition(format!("weight parameter w = {w} must be even")));
    }
    Ok(())
}

fn check_field<F: Field>(f: &F) -> Result<()> {
    let ch = f.characteristic();
    if ch == 2 || ch == 3 {
        return Err(Error::Precondition(format!("characteristic {ch} is not allowed")));
    }
    Ok(())
}

/// The two relation operators `1 + S` and `1 + U + U^2`.
pub fn relation_operators(n: u64, w: usize) -> [CosetOperator<BigInt>; 2] {
    let line = ProjLine::get(n);
    let u2 = IntMatrix2::U.mul(&IntMatrix2::U);
    let ident = |a: usize| (a, a, BigInt::from(1), IntMatrix2::identity());
    let gact = |g: IntMatrix2| {
        let ginv = g.inverse().expect("unimodular");
        let line = Arc::clone(&line);
        (0..line.len()).map(move |a| (a, line.act_index(a, &ginv), BigInt::from(1), g))
    };
    let r1 = CosetOperator::from_terms(n, w, (0..line.len()).map(ident).chain(gact(IntMatrix2::S)));
    let r2 = CosetOperator::from_terms(
        n,
        w,
        (0..line.len()).map(ident).chain(gact(IntMatrix2::U)).chain(gact(u2)),
    );
    [r1, r2]
}

/// True when `v` is annihilated by both relations.
pub fn satisfies_relations<F: Field>(f: &F, n: u64, w: usize, v: &[F::Elem]) -> bool {
    relation_operators(n, w).iter().all(|op| op.over(f).apply(f, v).iter().all(|x| f.is_zero(x)))
}

/// W_w(N) over the field `f`.
pub fn build_w<F: Field>(f: &F, n: u64, w: usize) -> Result<Subspace<F::Elem>> {
    check_weight(w)?;
    check_field(f)?;
    if n == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let [r1, r2] = relation_operators(n, w);
    let m = r1.over(f).to_matrix(f).vstack(&r2.over(f).to_matrix(f))?;
    Ok(Subspace::kernel_of(f, &m))
}

/// W_w(N) over Q, memoized per (N, w).
pub fn build_w_rational(n: u64, w: usize) -> Result<Arc<Subspace<Rational>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<Subspace<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("cache lock").get(&(n, w)) {
        return Ok(Arc::clone(s));
    }
    let s = Arc::new(build_w(&Rationals, n, w)?);
    Ok(cache.lock().expect("cache lock").entry((n, w)).or_insert(s).clone())
}

/// A saturated integral basis of W_w(N) in Hermite form.
pub fn build_w_integral(n: u64, w: usize) -> Result<Vec<Vec<BigInt>>> {
    let s = build_w_rational(n, w)?;
    let rows = s.basis().iter().map(|b| primitive_integer_vector(b)).collect();
    Ok(saturate(rows, s.ambient_dim()))
}

/// The delta eigenspaces (W+, W-) of a delta-stable subspace.
pub fn split_pm<F: Field>(f: &F, n: u64, w: usize, space: &Subspace<F::Elem>) -> Result<(Subspace<F::Elem>, Subspace<F::Elem>)> {
    if f.characteristic() == 2 {
        return Err(Error::Precondition("2 must be invertible".into()));
    }
    let delta = CosetOperator::delta(n, w).over(f);
    let plus = space.eigen_within(f, |v| delta.apply(f, v), &f.one());
    let minus = space.eigen_within(f, |v| delta.apply(f, v), &f.neg(&f.one()));
    Ok((plus, minus))
}

fn check_divides(m: u64, n: u64) -> Result<()> {
    if m == 0 || n % m != 0 {
        return Err(Error::Precondition(format!("{m} does not divide {n}")));
    }
    Ok(())
}

/// Fiber sums from level `n` down to level `m`.
pub fn trace<R: Ring>(r: &R, v: &[R::Elem], n: u64, w: usize, m: u64) -> Result<Vec<R::Elem>> {
    check_divides(m, n)?;
    let big = ProjLine::get(n);
    let small = ProjLine::get(m);
    if v.len() != big.len() * (w + 1) {
        return Err(Error::DimensionMismatch("vector length does not match level".into()));
    }
    let k = w + 1;
    let mut out = vec![r.zero(); small.len() * k];
    for a in 0..big.len() {
        let c = big.project_index(a, m)?;
        for j in 0..k {
            out[c * k + j] = r.add(&out[c * k + j], &v[a * k + j]);
        }
    }
    Ok(out)
}

/// Pullback from level `m` to level `n` along the projection.
pub fn include<R: Ring>(r: &R, v: &[R::Elem], m: u64, w: usize, n: u64) -> Result<Vec<R::Elem>> {
    check_divides(m, n)?;
    let big = ProjLine::get(n);
    let small = ProjLine::get(m);
    if v.len() != small.len() * (w + 1) {
        return Err(Error::DimensionMismatch("vector length does not match level".into()));
    }
    let _ = r;
    let k = w + 1;
    let mut out = Vec::with_capacity(big.len() * k);
    for a in 0..big.len() {
        let c = big.project_index(a, m)?;
        out.extend_from_slice(&v[c * k..(c + 1) * k]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::linalg::PrimeField;

    fn p_zero(n: u64, w: usize) -> Vec<Rational> {
        let mut p = vec![int(0); w + 1];
        p[0] = int(1);
        p[w] = int(-1);
        VectorPoly::constant(n, w, &p).coeffs
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_w_rational(1, 10).unwrap().dim(), 3);
        assert_eq!(build_w_rational(7, 4).unwrap().dim(), 8);
        let f = PrimeField::new(53).unwrap();
        assert_eq!(build_w(&f, 7, 4).unwrap().dim(), 8);
        assert!(build_w(&PrimeField::new(3).unwrap(), 7, 4).is_err());
        assert!(build_w(&Rationals, 7, 3).is_err());
    }

    #[test]
    fn splittings() {
        let q = Rationals;
        let w = build_w_rational(1, 10).unwrap();
        let (p, m) = split_pm(&q, 1, 10, &w).unwrap();
        assert_eq!((p.dim(), m.dim()), (2, 1));
        let w = build_w_rational(7, 4).unwrap();
        let (p, m) = split_pm(&q, 7, 4, &w).unwrap();
        assert_eq!((p.dim(), m.dim()), (5, 3));
    }

    #[test]
    fn p_zero_lies_in_w() {
        for (n, w) in [(1, 10), (7, 4), (14, 2)] {
            let v = p_zero(n, w);
            assert!(satisfies_relations(&Rationals, n, w, &v));
            assert!(build_w_rational(n, w).unwrap().contains(&Rationals, &v));
        }
    }

    #[test]
    fn trace_of_p_zero() {
        let q = Rationals;
        let t = trace(&q, &p_zero(14, 4), 14, 4, 7).unwrap();
        let expected: Vec<Rational> = p_zero(7, 4).iter().map(|x| x * int(3)).collect();
        assert_eq!(t, expected);
        assert!(trace(&q, &p_zero(14, 4), 14, 4, 3).is_err());
    }

    #[test]
    fn include_preserves_relations_and_traces_back() {
        let q = Rationals;
        let w7 = build_w_rational(7, 2).unwrap();
        for b in w7.basis() {
            let up = include(&q, b, 7, 2, 14).unwrap();
            assert!(satisfies_relations(&q, 14, 2, &up));
            let back = trace(&q, &up, 14, 2, 7).unwrap();
            let expected: Vec<Rational> = b.iter().map(|x| x * int(3)).collect();
            assert_eq!(back, expected);
        }
        let one = include(&q, &p_zero(1, 4), 1, 4, 7).unwrap();
        assert_eq!(one, p_zero(7, 4));
    }

    #[test]
    fn integral_basis_is_saturated() {
        let basis = build_w_integral(7, 2).unwrap();
        assert_eq!(basis.len(), 4);
        let m = crate::linalg::Matrix::from_rows(basis, 24).unwrap();
        assert!(crate::linalg::smith_invariants(&m).iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn vector_poly_json() {
        let v = VectorPoly::from_flat(1, 2, vec![int(1), int(0), int(-1)]).unwrap();
        assert_eq!(v.to_json(&Rationals).to_string(), r#"{"0:1@1":["1/1","0/1","-1/1"]}"#);
        assert!(VectorPoly::from_flat(7, 2, vec![int(1)]).is_err());
    }
}
