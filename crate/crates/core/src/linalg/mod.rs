//! Exact linear algebra over Z, Q and F_p.

mod charpoly;
mod echelon;
mod field;
mod integer;
mod matrix;
mod subspace;

pub use charpoly::{charpoly, eval_poly, poly_mul, roots_mod_p};
pub use echelon::{gauss_jordan, integer_echelon, Echelon};
pub use field::{common_denominator, make_primitive, primitive_integer_vector, Field, Integers, PrimeField, Rationals, Ring};
pub use integer::{hnf, integer_kernel, integer_relations, reduce_mod, saturate, smith_invariants, solve_integer};
pub use matrix::{
    diagonal, identity, is_zero_matrix, mat_add, mat_mul, mat_scale, mat_sub, mat_vec, shift, to_json, zeros, Matrix,
};
pub use subspace::Subspace;

/// Null space of `m` over the field `f`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::kernel_of(f, m)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    f.echelon(m.row_vecs(), m.cols()).rank()
}

/// Kernel of `m - lambda I`.
pub fn eigenspace<F: Field>(f: &F, m: &Matrix<F::Elem>, lambda: &F::Elem) -> Subspace<F::Elem> {
    kernel(f, &shift(f, m, lambda))
}

/// Common kernel of `m_i - lambda_i I` for all pairs.
pub fn common_eigenspace<F: Field>(f: &F, pairs: &[(Matrix<F::Elem>, F::Elem)]) -> crate::Result<Subspace<F::Elem>> {
    let Some((first, _)) = pairs.first() else {
        return Err(crate::Error::Precondition("no operators given".into()));
    };
    let n = first.cols();
    let mut stacked: Option<Matrix<F::Elem>> = None;
    for (m, lambda) in pairs {
        if m.rows() != n || m.cols() != n {
            return Err(crate::Error::DimensionMismatch("operators of different sizes".into()));
        }
        let s = shift(f, m, lambda);
        stacked = Some(match stacked {
            None => s,
            Some(acc) => acc.vstack(&s)?,
        });
    }
    Ok(kernel(f, &stacked.expect("nonempty")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use proptest::prelude::*;

    #[test]
    fn eigenspaces_of_diagonal() {
        let q = Rationals;
        let m = diagonal(&q, &[int(1), int(2), int(2)]);
        assert_eq!(eigenspace(&q, &m, &int(2)).dim(), 2);
        let m2 = diagonal(&q, &[int(5), int(5), int(7)]);
        let common = common_eigenspace(&q, &[(m, int(2)), (m2, int(5))]).unwrap();
        assert_eq!(common.dim(), 1);
        assert_eq!(common.basis()[0], vec![int(0), int(1), int(0)]);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<num_bigint::BigInt>> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let rows = v.chunks(n).map(|c| c.iter().map(|&x| num_bigint::BigInt::from(x)).collect()).collect();
            Matrix::from_rows(rows, n).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-3i64..=3, 30)) {
            let q = Rationals;
            let data: Vec<Vec<crate::exactmath::Rational>> = (0..rows)
                .map(|i| (0..cols).map(|j| int(seed[(i * cols + j) % seed.len()] * ((i + j) as i64 % 2 + 1))).collect())
                .collect();
            let m = Matrix::from_rows(data, cols).unwrap();
            prop_assert_eq!(rank(&q, &m) + kernel(&q, &m).dim(), cols);
            let f = PrimeField::new(5).unwrap();
            let mf = m.map(|x| f.from_rational(x).unwrap());
            prop_assert_eq!(rank(&f, &mf) + kernel(&f, &mf).dim(), cols);
        }

        #[test]
        fn charpoly_is_similarity_invariant(a in small_matrix(3), shear in -3i64..=3) {
            let q = Rationals;
            let a = a.map(|x| crate::exactmath::Rational::from_integer(x.clone()));
            let mut p = identity(&q, 3);
            p[(0, 2)] = int(shear);
            let mut pinv = identity(&q, 3);
            pinv[(0, 2)] = int(-shear);
            let conj = mat_mul(&q, &mat_mul(&q, &p, &a).unwrap(), &pinv).unwrap();
            prop_assert_eq!(charpoly(&q, &a).unwrap(), charpoly(&q, &conj).unwrap());
        }

        #[test]
        fn charpoly_annihilates_matrix(a in small_matrix(3)) {
            let q = Rationals;
            let a = a.map(|x| crate::exactmath::Rational::from_integer(x.clone()));
            let cp = charpoly(&q, &a).unwrap();
            let mut acc = zeros(&q, 3, 3);
            let mut power = identity(&q, 3);
            for c in &cp {
                acc = mat_add(&q, &acc, &mat_scale(&q, &power, c));
                power = mat_mul(&q, &power, &a).unwrap();
            }
            prop_assert!(is_zero_matrix(&q, &acc));
        }

        #[test]
        fn saturation_has_trivial_smith_form(a in small_matrix(3), scale in 1i64..6) {
            let rows: Vec<Vec<num_bigint::BigInt>> = a.row_vecs().into_iter()
                .map(|r| r.into_iter().map(|x| x * scale).collect()).collect();
            let q = Rationals;
            let rq: Vec<Vec<crate::exactmath::Rational>> = rows.iter()
                .map(|r| r.iter().map(|x| crate::exactmath::Rational::from_integer(x.clone())).collect()).collect();
            let ech = q.echelon(rq, 3);
            let independent: Vec<Vec<num_bigint::BigInt>> = ech.rows.iter().map(|r| primitive_integer_vector(r)).collect();
            let scaled: Vec<Vec<num_bigint::BigInt>> = independent.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
            let sat = saturate(scaled, 3);
            prop_assert_eq!(sat.len(), ech.rank());
            if !sat.is_empty() {
                let m = Matrix::from_rows(sat.clone(), 3).unwrap();
                prop_assert!(smith_invariants(&m).iter().all(|d| d == &num_bigint::BigInt::from(1)));
            }
            let original = Subspace::from_spanning(&q, ech.rows.clone(), 3);
            for r in &sat {
                let rq: Vec<crate::exactmath::Rational> = r.iter().map(|x| crate::exactmath::Rational::from_integer(x.clone())).collect();
                prop_assert!(original.contains(&q, &rq));
            }
        }

        #[test]
        fn fraction_free_matches_gauss_jordan(a in small_matrix(4)) {
            let q = Rationals;
            let a = a.map(|x| crate::exactmath::Rational::from_integer(x.clone()));
            let ff = q.echelon(a.row_vecs(), 4);
            let gj = gauss_jordan(&q, a.row_vecs(), 4);
            prop_assert_eq!(ff.rows, gj.rows);
            prop_assert_eq!(ff.pivots, gj.pivots);
        }
    }
}
