//! Row echelon forms. Over F_p plain Gauss-Jordan; over Q a fraction-free
//! integer elimination keeping every row primitive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::{common_denominator, make_primitive, Field, Rationals};
use crate::exactmath::Rational;

/// Reduced row echelon form: `rows[i][pivots[i]] == 1` and every other row
/// vanishes in column `pivots[i]`.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

pub fn gauss_jordan<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Echelon<F::Elem> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&i| !f.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = f.inv(&rows[next][col]).expect("nonzero pivot is invertible");
        for x in rows[next].iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        let support: Vec<usize> = (0..ncols).filter(|&j| !f.is_zero(&rows[next][j])).collect();
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || f.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for &j in &support {
                row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Echelon { rows, pivots, ncols }
}

fn content_normalize(row: &mut Vec<BigInt>) {
    let taken = std::mem::take(row);
    *row = make_primitive(taken);
}

/// Fraction-free reduced echelon form of an integer matrix. Each returned row is
/// primitive with a positive pivot; pivot columns are cleared in all other rows.
pub fn integer_echelon(rows: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pending: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(make_primitive)
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut done: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if pending.is_empty() {
            break;
        }
        // smallest |entry| in this column, ties broken by sparsity
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(_, r)| (r[col].bits(), r.iter().filter(|x| !x.is_zero()).count()))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let pivot_row = pending.swap_remove(best);
        let support: Vec<usize> = (0..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let p = pivot_row[col].clone();
        pending.retain_mut(|row| {
            if row[col].is_zero() {
                return true;
            }
            let g = p.gcd(&row[col]);
            let a = &p / &g;
            let b = &row[col] / &g;
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &a;
                }
            }
            for &j in &support {
                row[j] -= &b * &pivot_row[j];
            }
            content_normalize(row);
            row.iter().any(|x| !x.is_zero())
        });
        done.push(pivot_row);
        pivots.push(col);
    }
    // back substitution
    for i in (0..done.len()).rev() {
        let col = pivots[i];
        let (head, tail) = done.split_at_mut(i);
        let pivot_row = &tail[0];
        let p = &pivot_row[col];
        let support: Vec<usize> = (0..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in head.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = p.gcd(&row[col]);
            let a = p / &g;
            let b = &row[col] / &g;
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &a;
                }
            }
            for &j in &support {
                row[j] -= &b * &pivot_row[j];
            }
            content_normalize(row);
        }
    }
    for (row, &col) in done.iter_mut().zip(&pivots) {
        if row[col].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    (done, pivots)
}

pub(crate) fn rational_echelon(rows: Vec<Vec<Rational>>, ncols: usize) -> Echelon<Rational> {
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let den = common_denominator(&r);
            r.iter().map(|q| (q * &den).to_integer()).collect()
        })
        .collect();
    let (rows, pivots) = integer_echelon(int_rows, ncols);
    let rows = rows
        .into_iter()
        .zip(&pivots)
        .map(|(r, &c)| {
            let p = r[c].clone();
            r.into_iter().map(|x| Rational::new(x, p.clone())).collect()
        })
        .collect();
    Echelon { rows, pivots, ncols }
}

impl Rationals {
    pub fn echelon_of_integers(&self, rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon<Rational> {
        let (rows, pivots) = integer_echelon(rows, ncols);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &c)| {
                let p = r[c].clone();
                r.into_iter().map(|x| Rational::new(x, p.clone())).collect()
            })
            .collect();
        Echelon { rows, pivots, ncols }
    }
}
