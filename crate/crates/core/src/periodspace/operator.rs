//! Linear operators on V_w(N) of the form P -> (A -> sum of blocks applied to P(B)).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::slash_block;
use crate::cosets::{IntMatrix2, ProjLine};
use crate::linalg::{Field, Matrix, Ring};

/// Sparse block operator on V_w(N). `rows[A]` lists `(B, block)` pairs: the
/// output at coset A is the sum of `block * P(B)`.
#[derive(Clone, Debug)]
pub struct CosetOperator<E> {
    pub n: u64,
    pub w: usize,
    rows: Vec<Vec<(usize, Arc<Vec<Vec<E>>>)>>,
}

impl CosetOperator<BigInt> {
    /// Assembles an operator from `(target A, source B, coefficient, matrix M)`
    /// contributions `coefficient * P(B)|M` at A.
    pub fn from_terms(n: u64, w: usize, terms: impl IntoIterator<Item = (usize, usize, BigInt, IntMatrix2)>) -> Self {
        let line = ProjLine::get(n);
        let mut blocks: BTreeMap<IntMatrix2, Arc<Vec<Vec<BigInt>>>> = BTreeMap::new();
        let mut acc: Vec<BTreeMap<usize, Vec<Vec<BigInt>>>> = vec![BTreeMap::new(); line.len()];
        for (a, b, coeff, m) in terms {
            if coeff.is_zero() {
                continue;
            }
            let block = blocks.entry(m).or_insert_with(|| Arc::new(slash_block(&m, w))).clone();
            let slot = acc[a].entry(b).or_insert_with(|| vec![vec![BigInt::zero(); w + 1]; w + 1]);
            for (srow, brow) in slot.iter_mut().zip(block.iter()) {
                for (s, x) in srow.iter_mut().zip(brow) {
                    if !x.is_zero() {
                        *s += &coeff * x;
                    }
                }
            }
        }
        let rows = acc
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|(_, blk)| blk.iter().any(|r| r.iter().any(|x| !x.is_zero())))
                    .map(|(b, blk)| (b, Arc::new(blk)))
                    .collect()
            })
            .collect();
        CosetOperator { n, w, rows }
    }

    /// `P -> P|g` with `(P|g)(A) = P(A g^-1)|g`, for g in SL_2(Z).
    pub fn group_action(n: u64, w: usize, g: &IntMatrix2) -> Self {
        let line = ProjLine::get(n);
        let ginv = g.inverse().expect("matrix in SL_2(Z)");
        let terms = (0..line.len()).map(|a| (a, line.act_index(a, &ginv), BigInt::from(1), *g));
        CosetOperator::from_terms(n, w, terms)
    }

    /// `P -> P|delta` with `(P|delta)(A) = P(delta A delta)|delta`.
    pub fn delta(n: u64, w: usize) -> Self {
        let line = ProjLine::get(n);
        let terms = (0..line.len()).map(|a| (a, line.delta_index(a), BigInt::from(1), IntMatrix2::DELTA));
        CosetOperator::from_terms(n, w, terms)
    }

    /// The same operator with entries mapped into a field.
    pub fn over<F: Field>(&self, f: &F) -> CosetOperator<F::Elem> {
        self.over_ring(f)
    }

    pub fn over_ring<F: Ring>(&self, f: &F) -> CosetOperator<F::Elem> {
        let mut cache: Vec<(*const Vec<Vec<BigInt>>, Arc<Vec<Vec<F::Elem>>>)> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(b, blk)| {
                        let key = Arc::as_ptr(blk);
                        let mapped = match cache.iter().find(|(k, _)| *k == key) {
                            Some((_, m)) => m.clone(),
                            None => {
                                let m = Arc::new(
                                    blk.iter().map(|r| r.iter().map(|x| f.from_bigint(x)).collect()).collect(),
                                );
                                cache.push((key, Arc::clone(&m)));
                                m
                            }
                        };
                        (*b, mapped)
                    })
                    .collect()
            })
            .collect();
        CosetOperator { n: self.n, w: self.w, rows }
    }
}

impl<E: Clone> CosetOperator<E> {
    pub fn dim(&self) -> usize {
        self.rows.len() * (self.w + 1)
    }

    pub fn apply<R: Ring<Elem = E>>(&self, r: &R, v: &[E]) -> Vec<E> {
        let k = self.w + 1;
        assert_eq!(v.len(), self.dim(), "vector length");
        let mut out = vec![r.zero(); v.len()];
        for (a, row) in self.rows.iter().enumerate() {
            for (b, blk) in row {
                let src = &v[b * k..(b + 1) * k];
                if src.iter().all(|x| r.is_zero(x)) {
                    continue;
                }
                for (i, brow) in blk.iter().enumerate() {
                    let mut acc = out[a * k + i].clone();
                    for (x, y) in brow.iter().zip(src) {
                        if !r.is_zero(x) && !r.is_zero(y) {
                            acc = r.add(&acc, &r.mul(x, y));
                        }
                    }
                    out[a * k + i] = acc;
                }
            }
        }
        out
    }

    /// Dense matrix acting on column vectors.
    pub fn to_matrix<R: Ring<Elem = E>>(&self, r: &R) -> Matrix<E> {
        let k = self.w + 1;
        let d = self.dim();
        let mut m = Matrix::filled(d, d, r.zero());
        for (a, row) in self.rows.iter().enumerate() {
            for (b, blk) in row {
                for i in 0..k {
                    for j in 0..k {
                        let cur = m[(a * k + i, b * k + j)].clone();
                        m[(a * k + i, b * k + j)] = r.add(&cur, &blk[i][j]);
                    }
                }
            }
        }
        m
    }
}
