use serde_json::{json, Value};

use super::field::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix; arithmetic goes through a [`Ring`] context.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(columns: &[Vec<E>], rows: usize, zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F: Clone>(&self, f: impl Fn(&E) -> Option<F>) -> Option<Matrix<F>> {
        let data: Option<Vec<F>> = self.data.iter().map(f).collect();
        data.map(|data| Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::filled(rows, cols, r.zero())
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zeros(r, n, n);
    for i in 0..n {
        m[(i, i)] = r.one();
    }
    m
}

pub fn diagonal<R: Ring>(r: &R, d: &[R::Elem]) -> Matrix<R::Elem> {
    let mut m = zeros(r, d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        m[(i, i)] = x.clone();
    }
    m
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(r, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = &b[(k, j)];
                if !r.is_zero(y) {
                    out[(i, j)] = r.add(&out[(i, j)], &r.mul(x, y));
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            a.row(i).iter().zip(v).fold(r.zero(), |acc, (x, y)| {
                if r.is_zero(x) || r.is_zero(y) {
                    acc
                } else {
                    r.add(&acc, &r.mul(x, y))
                }
            })
        })
        .collect()
}

pub fn mat_add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| r.add(x, y)).collect(),
    }
}

pub fn mat_sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| r.sub(x, y)).collect(),
    }
}

pub fn mat_scale<R: Ring>(r: &R, a: &Matrix<R::Elem>, s: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| r.mul(x, s))
}

/// `a - lambda * I`
pub fn shift<R: Ring>(r: &R, a: &Matrix<R::Elem>, lambda: &R::Elem) -> Matrix<R::Elem> {
    let mut m = a.clone();
    for i in 0..a.rows.min(a.cols) {
        m[(i, i)] = r.sub(&m[(i, i)], lambda);
    }
    m
}

pub fn is_zero_matrix<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| r.is_zero(x))
}

/// Row-major array of entry strings.
pub fn to_json<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> Value {
    let rows: Vec<Vec<String>> =
        (0..a.rows).map(|i| a.row(i).iter().map(|x| r.format(x)).collect()).collect();
    json!(rows)
}
