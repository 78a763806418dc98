//! Unipotent action on V_w(F_ell).

use super::poly::slash_block;
use crate::cosets::IntMatrix2;
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_add, mat_mul, mat_sub, Matrix, PrimeField, Ring, Subspace};

/// Checks on V_w(F_ell) with u = (1 a; 0 1): the image of 1 - u is V_{w-1}, its
/// kernel is the constants, and 1 + u + ... + u^(ell-1) vanishes.
pub fn lemma_l3_check(w: usize, ell: u64, a: i64) -> Result<bool> {
    let f = PrimeField::new(ell)?;
    if ell as usize <= w {
        return Err(Error::Precondition(format!("need ell > w, got ell = {ell}, w = {w}")));
    }
    if a.rem_euclid(ell as i64) == 0 {
        return Err(Error::Precondition(format!("ell = {ell} divides a = {a}")));
    }
    let block = slash_block(&IntMatrix2::new(1, a, 0, 1), w);
    let rows = block.iter().map(|r| r.iter().map(|x| f.from_bigint(x)).collect()).collect();
    let u = Matrix::from_rows(rows, w + 1)?;
    let id = identity(&f, w + 1);
    let one_minus_u = mat_sub(&f, &id, &u);
    let image = Subspace::from_spanning(&f, one_minus_u.transpose().row_vecs(), w + 1);
    let lower = Subspace::from_spanning(
        &f,
        (0..w).map(|i| (0..=w).map(|j| if i == j { 1 } else { 0 }).collect()).collect(),
        w + 1,
    );
    let image_ok = image == lower;
    let kernel = Subspace::kernel_of(&f, &one_minus_u);
    let mut constant = vec![0u64; w + 1];
    constant[0] = 1;
    let kernel_ok = kernel.dim() == 1 && kernel.contains(&f, &constant);
    let mut sum = id.clone();
    let mut power = id;
    for _ in 1..ell {
        power = mat_mul(&f, &power, &u)?;
        sum = mat_add(&f, &sum, &power);
    }
    let norm_ok = sum.row_vecs().iter().all(|r| r.iter().all(|&x| x == 0));
    Ok(image_ok && kernel_ok && norm_ok)
}
