//! Subspaces of K^n in reduced echelon form.

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of `K^ambient` with basis in reduced echelon form:
/// `basis[i][pivots[j]]` is one when `i == j` and zero otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn from_spanning<F: Field<Elem = E>>(f: &F, vectors: Vec<Vec<E>>, ambient: usize) -> Self {
        let ech = f.echelon(vectors, ambient);
        Subspace { ambient, basis: ech.rows, pivots: ech.pivots }
    }

    /// Null space of `m`, with basis vectors indexed by the free columns.
    pub fn kernel_of<F: Field<Elem = E>>(f: &F, m: &Matrix<E>) -> Self {
        let ech = f.echelon(m.row_vecs(), m.cols());
        let free = ech.free_columns();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); m.cols()];
                v[fc] = f.one();
                for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                    if !f.is_zero(&row[fc]) {
                        v[pc] = f.neg(&row[fc]);
                    }
                }
                v
            })
            .collect();
        Subspace { ambient: m.cols(), basis, pivots: free }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        Matrix::from_columns(&self.basis, self.ambient, f.zero())
    }

    pub fn combine<F: Field<Elem = E>>(&self, f: &F, coeffs: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !f.is_zero(x) {
                    *o = f.add(o, &f.mul(c, x));
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        if v.len() != self.ambient {
            return None;
        }
        let coeffs: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.combine(f, &coeffs).as_slice() == v {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.coordinates(f, v).is_some()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(f, b))
    }

    /// Vectors `v` of this subspace with `map(v) == 0`, for a linear `map`.
    pub fn kernel_within<F: Field<Elem = E>>(&self, f: &F, map: impl Fn(&[E]) -> Vec<E>) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let images: Vec<Vec<E>> = self.basis.iter().map(|b| map(b)).collect();
        let m = images[0].len();
        let mat = Matrix::from_columns(&images, m, f.zero());
        let coeff_kernel = Subspace::kernel_of(f, &mat);
        let vectors = coeff_kernel.basis.iter().map(|c| self.combine(f, c)).collect();
        Subspace::from_spanning(f, vectors, self.ambient)
    }

    /// Vectors `v` of this subspace with `op(v) == lambda v`.
    pub fn eigen_within<F: Field<Elem = E>>(
        &self,
        f: &F,
        op: impl Fn(&[E]) -> Vec<E>,
        lambda: &E,
    ) -> Self {
        self.kernel_within(f, |v| {
            op(v).iter().zip(v).map(|(a, b)| f.sub(a, &f.mul(lambda, b))).collect()
        })
    }

    /// Matrix of `op` on this subspace in the echelon basis; fails unless invariant.
    pub fn restrict<F: Field<Elem = E>>(&self, f: &F, op: impl Fn(&[E]) -> Vec<E>) -> Result<Matrix<E>> {
        let mut columns = Vec::with_capacity(self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            let image = op(b);
            let coords = self
                .coordinates(f, &image)
                .ok_or_else(|| Error::NotInvariant(format!("image of basis vector {i} leaves the subspace")))?;
            columns.push(coords);
        }
        Ok(Matrix::from_columns(&columns, self.dim(), f.zero()))
    }

    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if other.dim() == other.ambient {
            return self.clone();
        }
        let complement = other.annihilator(f);
        self.kernel_within(f, |v| {
            complement
                .iter()
                .map(|a| a.iter().zip(v).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
                .collect()
        })
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::from_spanning(f, vectors, self.ambient)
    }

    /// Linear forms cutting out this subspace.
    pub fn annihilator<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        if self.basis.is_empty() {
            return Subspace::full(f, self.ambient).basis;
        }
        let m = Matrix::from_rows(self.basis.clone(), self.ambient).expect("rows of equal length");
        Subspace::kernel_of(f, &m).basis
    }

    pub fn map_elements<G: Clone + PartialEq>(&self, g: impl Fn(&E) -> G) -> Subspace<G> {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.iter().map(|b| b.iter().map(&g).collect()).collect(),
            pivots: self.pivots.clone(),
        }
    }
}
