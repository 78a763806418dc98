//! Double cosets and their action on period polynomial tuples.

use num_bigint::BigInt;
use serde::Serialize;

use super::element::{cz_defect, hecke_element};
use super::formal::{coset_reps_infty, FormalMatrixSum};
use crate::cosets::{CosetLabel, IntMatrix2, ProjLine};
use crate::error::{Error, Result};
use crate::exactmath::gcd_i64;
use crate::linalg::{Field, Matrix, Subspace};
use crate::periodspace::{CosetOperator, VectorPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DoubleCosetSpec {
    /// Determinant-n matrices in Delta_0(N), gcd(n, N) = 1.
    HeckeCoprime { n: i64, level: u64 },
    /// Theta_Q = Gamma_0(N) w_Q for an exact divisor Q of N.
    AtkinLehner { q: i64, level: u64 },
}

impl DoubleCosetSpec {
    pub fn hecke(n: i64, level: u64) -> Result<Self> {
        let s = DoubleCosetSpec::HeckeCoprime { n, level };
        s.validate()?;
        Ok(s)
    }

    pub fn atkin_lehner(q: i64, level: u64) -> Result<Self> {
        let s = DoubleCosetSpec::AtkinLehner { q, level };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DoubleCosetSpec::HeckeCoprime { n, level } => {
                if n < 1 || level < 1 || gcd_i64(n, level as i64) != 1 {
                    return Err(Error::Precondition(format!("need gcd(n, N) = 1, got n = {n}, N = {level}")));
                }
            }
            DoubleCosetSpec::AtkinLehner { q, level } => {
                IntMatrix2::atkin_lehner(level as i64, q)?;
            }
        }
        Ok(())
    }

    pub fn determinant(&self) -> i64 {
        match *self {
            DoubleCosetSpec::HeckeCoprime { n, .. } => n,
            DoubleCosetSpec::AtkinLehner { q, .. } => q,
        }
    }

    pub fn level(&self) -> u64 {
        match *self {
            DoubleCosetSpec::HeckeCoprime { level, .. } | DoubleCosetSpec::AtkinLehner { level, .. } => level,
        }
    }

    /// Membership of an integer matrix in the double coset.
    pub fn contains(&self, x: &IntMatrix2) -> bool {
        let n = self.level() as i64;
        match *self {
            DoubleCosetSpec::HeckeCoprime { n: det, .. } => {
                x.det() == det && x.c % n == 0 && gcd_i64(x.a, n) == 1
            }
            DoubleCosetSpec::AtkinLehner { q, .. } => {
                let w = IntMatrix2::atkin_lehner(n, q).expect("validated");
                let y = x.mul(&w.adj());
                x.det() == q && y.all_divisible_by(q) && {
                    let g = y.div_exact(q);
                    g.det() == 1 && g.c % n == 0
                }
            }
        }
    }
}

/// Index of A_M for the coset with index `i`, or `None` when M a^-1 lies outside Gamma_1 Sigma.
pub fn decompose_index(line: &ProjLine, m: &IntMatrix2, i: usize, spec: &DoubleCosetSpec) -> Option<usize> {
    match *spec {
        DoubleCosetSpec::HeckeCoprime { .. } => {
            let label = line.label(i);
            let (c, d) = (label.c as i64, label.d as i64);
            // first column of M a^-1, with a^-1 having first column (d, -c)
            let x11 = m.a * d - m.b * c;
            let x21 = m.c * d - m.d * c;
            line.index_of(-x21, x11)
        }
        DoubleCosetSpec::AtkinLehner { q, level } => {
            let a = line.lift(i);
            let x = m.mul(&a.inverse().expect("unimodular lift"));
            let w = IntMatrix2::atkin_lehner(level as i64, q).expect("validated");
            let y = w.mul(&x.adj());
            if !y.all_divisible_by(q) {
                return None;
            }
            let g = y.div_exact(q);
            line.index_of(g.c, g.d)
        }
    }
}

pub fn decompose(m: &IntMatrix2, a: &CosetLabel, spec: &DoubleCosetSpec) -> Result<Option<CosetLabel>> {
    spec.validate()?;
    if m.det() != spec.determinant() || a.n != spec.level() {
        return Err(Error::Precondition(format!("{m} does not match {spec:?}")));
    }
    let line = ProjLine::get(a.n);
    Ok(decompose_index(&line, m, line.index_of_label(a), spec).map(|j| line.label(j)))
}

/// Count, per right coset Gamma_1 R of M_n, of the Gamma_0(N)-cosets of Sigma
/// inside it. The map from Gamma_0(N)-cosets of Sigma to Gamma_1-cosets of
/// Gamma_1 Sigma is bijective iff no count exceeds one.
#[derive(Clone, Debug, Serialize)]
pub struct EqStarReport {
    pub ok: bool,
    pub counts: Vec<usize>,
}

pub fn eq_star_check(spec: &DoubleCosetSpec) -> Result<EqStarReport> {
    spec.validate()?;
    let line = ProjLine::get(spec.level());
    let mut counts = Vec::new();
    for r in coset_reps_infty(spec.determinant()) {
        let count = (0..line.len()).filter(|&i| spec.contains(&line.lift(i).mul(&r))).count();
        counts.push(count);
    }
    let ok = counts.iter().all(|&c| c <= 1) && counts.iter().any(|&c| c == 1);
    Ok(EqStarReport { ok, counts })
}

/// The operator `P -> sum_M c_M P(A_M)|M` on V_w(N).
pub fn sigma_operator(w: usize, spec: &DoubleCosetSpec, t: &FormalMatrixSum) -> Result<CosetOperator<BigInt>> {
    spec.validate()?;
    if t.n != spec.determinant() {
        return Err(Error::Precondition(format!("element determinant {} does not match {spec:?}", t.n)));
    }
    if !cz_defect(t, t.n)?.ok {
        return Err(Error::HeckeElement("element fails the defining relation".into()));
    }
    let star = eq_star_check(spec)?;
    if !star.ok {
        return Err(Error::Precondition(format!("coset bijectivity fails for {spec:?}: {:?}", star.counts)));
    }
    let n = spec.level();
    let line = ProjLine::get(n);
    let mut terms = Vec::new();
    for (m, c) in t.terms() {
        for i in 0..line.len() {
            if let Some(j) = decompose_index(&line, m, i, spec) {
                terms.push((i, j, c.clone(), *m));
            }
        }
    }
    Ok(CosetOperator::from_terms(n, w, terms))
}

pub fn act_sigma<F: Field>(
    f: &F,
    p: &VectorPoly<F::Elem>,
    spec: &DoubleCosetSpec,
    t: &FormalMatrixSum,
) -> Result<VectorPoly<F::Elem>> {
    if p.n != spec.level() {
        return Err(Error::Precondition("tuple level does not match the double coset".into()));
    }
    let op = sigma_operator(p.w, spec, t)?.over(f);
    Ok(VectorPoly { n: p.n, w: p.w, coeffs: op.apply(f, &p.coeffs) })
}

/// Hecke operator T_n on V_w(N) for gcd(n, N) = 1.
pub fn hecke_operator(level: u64, w: usize, n: i64) -> Result<CosetOperator<BigInt>> {
    let spec = DoubleCosetSpec::hecke(n, level)?;
    sigma_operator(w, &spec, &*hecke_element(n)?)
}

/// Unnormalized action of Theta_Q with the Hecke element of determinant Q.
pub fn theta_operator(level: u64, w: usize, q: i64) -> Result<CosetOperator<BigInt>> {
    let spec = DoubleCosetSpec::atkin_lehner(q, level)?;
    sigma_operator(w, &spec, &*hecke_element(q)?)
}

/// Scalar Q^(-w/2) in the field, if Q is invertible there.
pub fn atkin_lehner_scale<F: Field>(f: &F, q: i64, w: usize) -> Result<F::Elem> {
    let qw = f.pow(&f.from_i64(q), (w / 2) as u64);
    f.inv(&qw).ok_or_else(|| Error::NotInvertible(format!("{q}^{} in {}", w / 2, f.name())))
}

/// Matrix of a linear map on `space` in its echelon basis.
pub fn restrict_to<F: Field>(
    f: &F,
    space: &Subspace<F::Elem>,
    op: impl Fn(&[F::Elem]) -> Vec<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    space.restrict(f, op)
}

pub fn hecke_matrix<F: Field>(f: &F, space: &Subspace<F::Elem>, level: u64, w: usize, n: i64) -> Result<Matrix<F::Elem>> {
    let op = hecke_operator(level, w, n)?.over(f);
    space.restrict(f, |v| op.apply(f, v))
}

/// Normalized Atkin-Lehner operator Q^(-w/2) Theta_Q on `space`.
pub fn atkin_lehner_matrix<F: Field>(
    f: &F,
    space: &Subspace<F::Elem>,
    level: u64,
    w: usize,
    q: i64,
) -> Result<Matrix<F::Elem>> {
    let scale = atkin_lehner_scale(f, q, w)?;
    let op = theta_operator(level, w, q)?.over(f);
    space.restrict(f, |v| op.apply(f, v).iter().map(|x| f.mul(x, &scale)).collect())
}
