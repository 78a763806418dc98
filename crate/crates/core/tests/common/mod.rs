//! Structural checks shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use num_bigint::BigInt;
use periodpoly::cosets::ProjLine;
use periodpoly::congruence::dim_oracle;
use periodpoly::eisenstein::{eis_plus, p_zero, pal_tuple, trace_identity_check, EpsSystem};
use periodpoly::exactmath::{gcd_i64, int, prime_divisors, sigma, Rational};
use periodpoly::hecke::{
    act_sigma, atkin_lehner_scale, cz_defect, hecke_element, hecke_operator, heilbronn_element, sigma_operator,
    solve_hecke_element, theta_operator, DoubleCosetSpec,
};
use periodpoly::linalg::{PrimeField, Rationals};
use periodpoly::periodspace::{
    build_w, build_w_rational, include, lemma_l3_check, satisfies_relations, split_pm, trace, CosetOperator, VectorPoly,
};

pub type Check = std::result::Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: periodpoly::Error) -> String {
    e.to_string()
}

fn to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

type Op = Box<dyn Fn(&[Rational]) -> Vec<Rational>>;

fn q_op(op: CosetOperator<BigInt>) -> Op {
    let q = Rationals;
    let op = op.over(&q);
    Box::new(move |v| op.apply(&q, v))
}

fn normalized_al(n: u64, w: usize, qd: u64) -> std::result::Result<Op, String> {
    let q = Rationals;
    let scale = atkin_lehner_scale(&q, qd as i64, w).map_err(err)?;
    let op = theta_operator(n, w, qd as i64).map_err(err)?.over(&q);
    Ok(Box::new(move |v| op.apply(&q, v).iter().map(|x| x * &scale).collect()))
}

fn exact_divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n % d == 0 && gcd_i64(*d as i64, (n / d) as i64) == 1).collect()
}

/// Hecke images of W stay in the relation kernel.
pub fn hecke_preserves_w(n: u64, w: usize, ns: &[i64]) -> Check {
    let q = Rationals;
    let space = build_w_rational(n, w).map_err(err)?;
    for &m in ns.iter().filter(|&&m| gcd_i64(m, n as i64) == 1) {
        let op = hecke_operator(n, w, m).map_err(err)?.over(&q);
        for b in space.basis() {
            ensure(satisfies_relations(&q, n, w, &op.apply(&q, b)), || format!("T_{m} leaves W_{w}({n})"))?;
        }
    }
    Ok(())
}

/// T_2 from the Heilbronn element and from the solver agree on W.
pub fn two_hecke_realizations_agree(n: u64, w: usize, m: i64) -> Check {
    let q = Rationals;
    let spec = DoubleCosetSpec::hecke(m, n).map_err(err)?;
    let solved = (1..=m + 2).find_map(|b| solve_hecke_element(m, b)).ok_or("solver found no element")?;
    let a = sigma_operator(w, &spec, &heilbronn_element(m)).map_err(err)?.over(&q);
    let b = sigma_operator(w, &spec, &solved).map_err(err)?.over(&q);
    let space = build_w_rational(n, w).map_err(err)?;
    let ma = space.restrict(&q, |v| a.apply(&q, v)).map_err(err)?;
    let mb = space.restrict(&q, |v| b.apply(&q, v)).map_err(err)?;
    ensure(ma == mb, || format!("two T_{m} realizations differ on W_{w}({n})"))
}

fn commute_on(space: &[Vec<Rational>], a: &Op, b: &Op) -> bool {
    space.iter().all(|v| a(&b(v)) == b(&a(v)))
}

/// Hecke, delta and normalized Atkin-Lehner operators commute on W.
pub fn operators_commute(n: u64, w: usize) -> Check {
    let space = build_w_rational(n, w).map_err(err)?;
    let basis = space.basis();
    let mut ops: Vec<(String, Op)> = vec![("delta".into(), q_op(CosetOperator::delta(n, w)))];
    for m in [2i64, 3, 5].into_iter().filter(|&m| gcd_i64(m, n as i64) == 1) {
        ops.push((format!("T_{m}"), q_op(hecke_operator(n, w, m).map_err(err)?)));
    }
    for qd in exact_divisors(n) {
        ops.push((format!("W_{qd}"), normalized_al(n, w, qd)?));
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            ensure(commute_on(basis, &ops[i].1, &ops[j].1), || {
                format!("{} and {} do not commute on W_{w}({n})", ops[i].0, ops[j].0)
            })?;
        }
    }
    Ok(())
}

/// Normalized Atkin-Lehner operators are involutions on W and multiply as W_Q1 W_Q2 = W_Q1Q2.
pub fn atkin_lehner_involutions(n: u64, w: usize) -> Check {
    let space = build_w_rational(n, w).map_err(err)?;
    let basis = space.basis();
    let divisors = exact_divisors(n);
    for &qd in &divisors {
        let op = normalized_al(n, w, qd)?;
        ensure(basis.iter().all(|v| op(&op(v)) == *v), || format!("W_{qd} is not an involution on W_{w}({n})"))?;
    }
    for &q1 in &divisors {
        for &q2 in &divisors {
            if q1 < q2 && gcd_i64(q1 as i64, q2 as i64) == 1 {
                let (a, b, c) = (normalized_al(n, w, q1)?, normalized_al(n, w, q2)?, normalized_al(n, w, q1 * q2)?);
                ensure(basis.iter().all(|v| a(&b(v)) == c(v)), || format!("W_{q1} W_{q2} != W_{} at level {n}", q1 * q2))?;
            }
        }
    }
    Ok(())
}

/// trace(include(v)) = index * v and delta commutes with both maps.
pub fn trace_include(m: u64, n: u64, w: usize) -> Check {
    let q = Rationals;
    let index: u64 = prime_divisors(n / m).iter().map(|p| p + 1).product();
    let small = ProjLine::get(m).len() * (w + 1);
    let big = ProjLine::get(n).len() * (w + 1);
    let delta_small = CosetOperator::delta(m, w).over(&q);
    let delta_big = CosetOperator::delta(n, w).over(&q);
    for i in 0..small {
        let mut v = vec![int(0); small];
        v[i] = int(i as i64 + 1);
        let back = trace(&q, &include(&q, &v, m, w, n).map_err(err)?, n, w, m).map_err(err)?;
        let expected: Vec<Rational> = v.iter().map(|x| x * int(index as i64)).collect();
        ensure(back == expected, || format!("trace o include != {index} on V_{w}({m})"))?;
        let a = include(&q, &delta_small.apply(&q, &v), m, w, n).map_err(err)?;
        let b = delta_big.apply(&q, &include(&q, &v, m, w, n).map_err(err)?);
        ensure(a == b, || "delta does not commute with include".into())?;
    }
    for i in (0..big).step_by(3) {
        let mut v = vec![int(0); big];
        v[i] = int(1);
        let a = trace(&q, &delta_big.apply(&q, &v), n, w, m).map_err(err)?;
        let b = delta_small.apply(&q, &trace(&q, &v, n, w, m).map_err(err)?);
        ensure(a == b, || "delta does not commute with trace".into())?;
    }
    Ok(())
}

/// The closed form for P_0 acted on by Theta_N matches the generic double-coset action.
pub fn pal_matches_action(n: u64, w: usize) -> Check {
    let q = Rationals;
    let p0 = p_zero(n, w).map_err(err)?;
    let p0 = VectorPoly { n, w, coeffs: to_q(&p0.coeffs) };
    let spec = DoubleCosetSpec::atkin_lehner(n as i64, n).map_err(err)?;
    let acted = act_sigma(&q, &p0, &spec, &*hecke_element(n as i64).map_err(err)?).map_err(err)?;
    let closed = pal_tuple(n, w).map_err(err)?;
    ensure(acted.coeffs == to_q(&closed.coeffs), || format!("closed form differs from the action at N = {n}, w = {w}"))
}

/// Relation membership, delta-evenness, Hecke and Atkin-Lehner eigenvalues of the even Eisenstein class.
pub fn eisenstein_eigen_relations(eps: &EpsSystem, w: usize) -> Check {
    let q = Rationals;
    let n = eps.n;
    let e = to_q(&eis_plus(eps, w).map_err(err)?.coeffs);
    ensure(satisfies_relations(&q, n, w, &e), || format!("even class at {n} violates the relations"))?;
    let delta = CosetOperator::delta(n, w).over(&q);
    ensure(delta.apply(&q, &e) == e, || "even class is not delta-even".into())?;
    for m in [2u64, 3, 5].into_iter().filter(|m| n % m != 0) {
        let image = hecke_operator(n, w, m as i64).map_err(err)?.over(&q).apply(&q, &e);
        let s = Rational::from_integer(sigma(m, (w + 1) as u32));
        ensure(image == e.iter().map(|x| x * &s).collect::<Vec<_>>(), || format!("T_{m} eigenvalue wrong at level {n}"))?;
    }
    for qd in exact_divisors(n) {
        let op = normalized_al(n, w, qd)?;
        let s = int(eps.eval(qd) as i64);
        ensure(op(&e) == e.iter().map(|x| x * &s).collect::<Vec<_>>(), || format!("W_{qd} eigenvalue wrong at level {n}"))?;
    }
    Ok(())
}

pub fn all_eps(n: u64) -> Vec<EpsSystem> {
    let primes = prime_divisors(n);
    (0..1u32 << primes.len())
        .map(|mask| {
            let signs = primes.iter().enumerate().map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }));
            EpsSystem::new(n, signs).expect("square-free")
        })
        .collect()
}

pub fn trace_identity(m: u64, p: u64, k: usize) -> Check {
    for eps in all_eps(m * p) {
        let r = trace_identity_check(m, p, &eps, k).map_err(err)?;
        ensure(r.pass, || format!("trace identity fails for M = {m}, p = {p}, eps = {:?}", eps.signs))?;
    }
    Ok(())
}

pub fn unipotent_action(w: usize, ell: u64) -> Check {
    for a in 1..ell as i64 {
        ensure(lemma_l3_check(w, ell, a).map_err(err)?, || format!("unipotent checks fail at w = {w}, ell = {ell}, a = {a}"))?;
    }
    Ok(())
}

pub fn hecke_elements_valid(max_n: i64) -> Check {
    for n in 1..=max_n {
        let t = hecke_element(n).map_err(err)?;
        ensure(cz_defect(&t, n).map_err(err)?.ok, || format!("element for n = {n} fails the defining relation"))?;
    }
    Ok(())
}

/// Relation membership for every constructed class at level N.
pub fn classes_in_kernel(n: u64, w: usize) -> Check {
    let q = Rationals;
    let mut classes = vec![to_q(&p_zero(n, w).map_err(err)?.coeffs), to_q(&pal_tuple(n, w).map_err(err)?.coeffs)];
    for eps in all_eps(n) {
        classes.push(to_q(&eis_plus(&eps, w).map_err(err)?.coeffs));
    }
    classes.extend(build_w_rational(n, w).map_err(err)?.basis().iter().cloned());
    for (i, c) in classes.iter().enumerate() {
        ensure(satisfies_relations(&q, n, w, c), || format!("class {i} at level {n}, w = {w} violates the relations"))?;
    }
    Ok(())
}

/// dim W+ = dim M_k and dim W- = dim S_k.
pub fn eichler_shimura(n: u64, k: u64) -> Check {
    let q = Rationals;
    let w = (k - 2) as usize;
    let space = build_w_rational(n, w).map_err(err)?;
    let (plus, minus) = split_pm(&q, n, w, &space).map_err(err)?;
    let d = dim_oracle(n, k).map_err(err)?;
    ensure(plus.dim() as i64 == d.dim_m && minus.dim() as i64 == d.dim_s, || {
        format!("N = {n}, k = {k}: W+ = {}, W- = {}, oracle M = {}, S = {}", plus.dim(), minus.dim(), d.dim_m, d.dim_s)
    })
}

pub fn dims_agree_mod(n: u64, w: usize, ell: u64) -> Check {
    let f = PrimeField::new(ell).map_err(err)?;
    let dq = build_w_rational(n, w).map_err(err)?.dim();
    let df = build_w(&f, n, w).map_err(err)?.dim();
    ensure(dq == df, || format!("W_{w}({n}): dim over Q = {dq}, over F_{ell} = {df}"))
}
