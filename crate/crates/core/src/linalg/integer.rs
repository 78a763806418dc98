//! Integer lattices: Hermite forms, saturation, Smith invariants and integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::echelon::integer_echelon;
use super::field::{Field, PrimeField};
use super::matrix::Matrix;
use super::subspace::Subspace;

/// Row Hermite normal form of the lattice spanned by `rows`; zero rows are dropped.
pub fn hnf(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    hnf_prefix(rows, ncols, ncols).0
}

/// Hermite reduction acting on the first `width` columns only. Returns the rows
/// with a nonzero prefix in Hermite form and the rows whose prefix became zero.
fn hnf_prefix(mut rows: Vec<Vec<BigInt>>, width: usize, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut top = 0;
    for col in 0..width {
        loop {
            let best = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut cleared = true;
            for i in (top + 1)..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !rows[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot = rows[top].clone();
            for row in rows.iter_mut().take(top) {
                let q = row[col].div_floor(&pivot[col]);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
            top += 1;
        }
    }
    let rest = rows.split_off(top);
    (rows, rest)
}

/// All integer relations `c` with `sum c_i vectors[i] == 0`, as a lattice basis in Hermite form.
pub fn integer_relations(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = vectors.len();
    let m = vectors.first().map_or(0, |v| v.len());
    let rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut r = v.clone();
            r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let (_, zero_prefix) = hnf_prefix(rows, m, m + k);
    let relations: Vec<Vec<BigInt>> = zero_prefix.into_iter().map(|r| r[m..].to_vec()).collect();
    hnf(relations, k)
}

/// The integer kernel `{x in Z^n : M x = 0}` as a saturated lattice in Hermite form.
pub fn integer_kernel(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    let (rows, pivots) = integer_echelon(m.row_vecs(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for fc in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        // x = lcm * (e_fc - sum row[fc]/row[pc] e_pc)
        let lcm = rows
            .iter()
            .zip(&pivots)
            .filter(|(r, _)| !r[fc].is_zero())
            .fold(BigInt::one(), |acc, (r, &pc)| acc.lcm(&r[pc]));
        let mut v = vec![BigInt::zero(); m.cols()];
        v[fc] = lcm.clone();
        for (r, &pc) in rows.iter().zip(&pivots) {
            if !r[fc].is_zero() {
                v[pc] = -(&lcm / &r[pc]) * &r[fc];
            }
        }
        basis.push(v);
    }
    saturate(basis, m.cols())
}

fn left_kernel_mod(rows: &[Vec<BigInt>], q: &BigInt) -> std::result::Result<Vec<Vec<BigInt>>, BigInt> {
    // kernel of the transpose over Z/q, treating q as prime until a non-unit pivot appears
    let r = rows.len();
    let n = rows.first().map_or(0, |v| v.len());
    let mut t: Vec<Vec<BigInt>> = (0..n).map(|j| (0..r).map(|i| rows[i][j].mod_floor(q)).collect()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..r {
        let mut found = None;
        for i in top..t.len() {
            if t[i][col].is_zero() {
                continue;
            }
            let g = t[i][col].gcd(q);
            if g.is_one() {
                found = Some(i);
                break;
            }
            return Err(g);
        }
        let Some(i) = found else { continue };
        t.swap(top, i);
        let inv = t[top][col].extended_gcd(q).x.mod_floor(q);
        for x in t[top].iter_mut() {
            *x = (&*x * &inv).mod_floor(q);
        }
        let pivot = t[top].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = (&*x - &factor * y).mod_floor(q);
            }
        }
        pivots.push(col);
        top += 1;
    }
    let mut is_pivot = vec![false; r];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    Ok((0..r)
        .filter(|&c| !is_pivot[c])
        .map(|fc| {
            let mut v = vec![BigInt::zero(); r];
            v[fc] = BigInt::one();
            for (row, &pc) in t.iter().zip(&pivots) {
                v[pc] = (-&row[fc]).mod_floor(q);
            }
            v
        })
        .collect())
}

/// Saturation `Z^n ∩ Q L` of the lattice `L` spanned by independent integer rows,
/// returned in Hermite form.
pub fn saturate(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let q = super::Rationals;
    let rational_rows: Vec<Vec<crate::exactmath::Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| crate::exactmath::Rational::from_integer(x.clone())).collect())
        .collect();
    let ech = q.echelon(rational_rows, ncols);
    let mut moduli = Vec::new();
    let mut lattice = Vec::new();
    for row in &ech.rows {
        let den = super::field::common_denominator(row);
        lattice.push(row.iter().map(|x| (x * &den).to_integer()).collect::<Vec<_>>());
        if den > BigInt::one() {
            moduli.push(den);
        }
    }
    while let Some(m) = moduli.pop() {
        loop {
            match left_kernel_mod(&lattice, &m) {
                Err(g) => {
                    let other = &m / &g;
                    moduli.push(g);
                    moduli.push(other);
                    break;
                }
                Ok(kernel) if kernel.is_empty() => break,
                Ok(kernel) => {
                    let mut c = kernel[0].clone();
                    let j = c.iter().position(|x| !x.is_zero()).expect("nonzero kernel vector");
                    let inv = c[j].extended_gcd(&m).x.mod_floor(&m);
                    for x in c.iter_mut() {
                        *x = (&*x * &inv).mod_floor(&m);
                    }
                    c[j] = BigInt::one();
                    let mut v = vec![BigInt::zero(); ncols];
                    for (ci, row) in c.iter().zip(&lattice) {
                        if ci.is_zero() {
                            continue;
                        }
                        for (x, y) in v.iter_mut().zip(row) {
                            *x += ci * y;
                        }
                    }
                    lattice[j] = v.into_iter().map(|x| x / &m).collect();
                }
            }
        }
    }
    hnf(lattice, ncols)
}

/// Diagonal of the Smith normal form, nonzero entries only.
pub fn smith_invariants(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut cur = m.row_vecs();
    let mut ncols = m.cols();
    loop {
        let h = hnf(cur, ncols);
        let diagonal = h.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        if diagonal {
            let mut d: Vec<BigInt> = h.iter().enumerate().map(|(i, r)| r[i].abs()).collect();
            for i in 0..d.len() {
                for j in (i + 1)..d.len() {
                    let g = d[i].gcd(&d[j]);
                    let l = d[i].lcm(&d[j]);
                    d[i] = g;
                    d[j] = l;
                }
            }
            return d;
        }
        let rows = h.len();
        cur = (0..ncols).map(|j| h.iter().map(|r| r[j].clone()).collect()).collect();
        ncols = rows;
    }
}

/// Some `x` in `Z^k` with `A x = b`, if one exists.
pub fn solve_integer(a: &Matrix<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut vectors = vec![b.iter().map(|x| -x).collect::<Vec<_>>()];
    vectors.extend((0..a.cols()).map(|j| a.column(j)));
    let relations = integer_relations(&vectors);
    let first = relations.first()?;
    if first[0].is_one() {
        Some(first[1..].to_vec())
    } else {
        None
    }
}

/// Reduction mod `ell` of an integer lattice, as a subspace of F_ell^n.
pub fn reduce_mod(rows: &[Vec<BigInt>], ncols: usize, ell: u64) -> Subspace<u64> {
    let f = PrimeField::new(ell).expect("prime modulus");
    let big = BigInt::from(ell);
    let reduced = rows
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&big).to_u64().expect("reduced")).collect())
        .collect();
    Subspace::from_spanning(&f, reduced, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_row_two_four() {
        let m = Matrix::from_rows(vec![b(&[2, 4])], 2).unwrap();
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &b(&[2, -1]) || v == &b(&[-2, 1]));
    }

    #[test]
    fn saturation_of_scaled_vector() {
        let s = saturate(vec![b(&[4, 6, 10])], 3);
        assert_eq!(s, vec![b(&[2, 3, 5])]);
        let s = saturate(vec![b(&[1, 1, 0]), b(&[1, -1, 0])], 3);
        assert_eq!(s, vec![b(&[1, 0, 0]), b(&[0, 1, 0])]);
    }

    #[test]
    fn smith_of_small_matrices() {
        let m = Matrix::from_rows(vec![b(&[2, 4]), b(&[6, 8])], 2).unwrap();
        assert_eq!(smith_invariants(&m), b(&[2, 4]));
        let m = Matrix::from_rows(vec![b(&[2, 0]), b(&[0, 3])], 2).unwrap();
        assert_eq!(smith_invariants(&m), b(&[1, 6]));
    }

    #[test]
    fn integer_solving() {
        let a = Matrix::from_rows(vec![b(&[2, 3])], 2).unwrap();
        let x = solve_integer(&a, &b(&[1])).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::from(1));
        let a = Matrix::from_rows(vec![b(&[2, 4])], 2).unwrap();
        assert!(solve_integer(&a, &b(&[1])).is_none());
    }

    #[test]
    fn reduction_can_drop_rank() {
        let s = reduce_mod(&[b(&[5, 5])], 2, 5);
        assert_eq!(s.dim(), 0);
        let s = reduce_mod(&[b(&[1, 1]), b(&[1, 6])], 2, 5);
        assert_eq!(s.dim(), 1);
    }
}
