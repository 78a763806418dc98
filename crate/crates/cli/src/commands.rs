use num_bigint::BigInt;
use num_traits::Pow;
use periodpoly::congruence::{self, dim_oracle, dim_p_new, new_subspace, NewSpaceSpec, Selector};
use periodpoly::cosets::ProjLine;
use periodpoly::eisenstein::{eis_plus, trace_identity_check, EpsSystem};
use periodpoly::exactmath::{gcd_i64, is_squarefree, parse_rational, sigma, Rational};
use periodpoly::hecke::{atkin_lehner_matrix, hecke_matrix as restricted_hecke, hecke_operator, theta_operator, atkin_lehner_scale};
use periodpoly::linalg::{
    charpoly, identity, mat_mul, primitive_integer_vector, saturate, to_json, Field, PrimeField, Rationals, Subspace,
};
use periodpoly::periodspace::{build_w, poly_to_json, satisfies_relations, CosetOperator};
use serde_json::{json, Value};

use crate::output::{usage, Outcome, Report};
use crate::{Space, Weight};

type Res = Result<Report, Outcome>;

/// (k, w) from either flag.
pub fn resolve_weight(weight: &Weight) -> Result<(u64, usize), Outcome> {
    let k = match (weight.k, weight.w) {
        (Some(k), None) => k,
        (None, Some(w)) => w + 2,
        (Some(k), Some(w)) if k == w + 2 => k,
        (Some(_), Some(_)) => return Err(usage("--weight and --w disagree")),
        (None, None) => return Err(usage("a weight is required (--weight k or --w w)")),
    };
    if k < 4 || k % 2 != 0 {
        return Err(usage(format!("weight k = {k} must be even and at least 4")));
    }
    Ok((k, (k - 2) as usize))
}

pub fn parse_sign(s: &str) -> Result<i8, Outcome> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(usage(format!("bad sign {other:?}: expected +1 or -1"))),
    }
}

fn parse_parity(p: &Option<String>) -> Result<Option<i8>, Outcome> {
    p.as_deref().map(parse_sign).transpose()
}

/// Field selector: `None` for Q, otherwise F_ell.
fn parse_field(s: &str) -> Result<Option<PrimeField>, Outcome> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(None);
    }
    let ell: u64 = s.parse().map_err(|_| usage(format!("--mod must be Q or a prime, got {s:?}")))?;
    Ok(Some(PrimeField::new(ell)?))
}

fn check_field_char(f: &Option<PrimeField>, level: u64, w: usize) -> Result<(), Outcome> {
    if let Some(f) = f {
        let ell = f.modulus();
        if ell as usize <= w || (6 * level) % ell == 0 {
            return Err(usage(format!("ell = {ell} must exceed w = {w} and not divide 6N = {}", 6 * level)));
        }
    }
    Ok(())
}

fn space_params(cmd: &str, s: &Space, k: u64, w: usize) -> Report {
    let mut r = Report::new(cmd).param("level", s.level).param("weight", k).param("w", w as u64).param("mod", s.field.clone());
    if let Some(p) = &s.parity {
        r = r.param("parity", p.clone());
    }
    r
}

fn with_parity<F: Field>(f: &F, level: u64, w: usize, space: Subspace<F::Elem>, parity: Option<i8>) -> Subspace<F::Elem> {
    match parity {
        None => space,
        Some(s) => {
            let delta = CosetOperator::delta(level, w).over(f);
            space.eigen_within(f, |v| delta.apply(f, v), &f.from_i64(s as i64))
        }
    }
}

fn space_over<F: Field>(f: &F, s: &Space, w: usize) -> Result<Subspace<F::Elem>, Outcome> {
    let full = build_w(f, s.level, w)?;
    Ok(with_parity(f, s.level, w, full, parse_parity(&s.parity)?))
}

fn coset_labels(n: u64) -> Value {
    json!(ProjLine::get(n).labels().iter().map(|l| l.to_string()).collect::<Vec<_>>())
}

pub fn dim(s: &Space) -> Res {
    let (k, w) = resolve_weight(&s.weight)?;
    let field = parse_field(&s.field)?;
    check_field_char(&field, s.level, w)?;
    let mut r = space_params("dim", s, k, w);
    let dims = match &field {
        None => dims_over(&Rationals, s.level, w)?,
        Some(f) => dims_over(f, s.level, w)?,
    };
    r.result("dimW", dims.0 as u64);
    r.result("dimWplus", dims.1 as u64);
    r.result("dimWminus", dims.2 as u64);
    if is_squarefree(s.level) {
        let o = dim_oracle(s.level, k)?;
        r.result("dimM", o.dim_m);
        r.result("dimS", o.dim_s);
        r.check("plus_equals_dim_M", dims.1 as i64 == o.dim_m, json!({ "dimWplus": dims.1, "dimM": o.dim_m }));
        r.check("minus_equals_dim_S", dims.2 as i64 == o.dim_s, json!({ "dimWminus": dims.2, "dimS": o.dim_s }));
    }
    Ok(r)
}

fn dims_over<F: Field>(f: &F, level: u64, w: usize) -> Result<(usize, usize, usize), Outcome> {
    let full = build_w(f, level, w)?;
    let plus = with_parity(f, level, w, full.clone(), Some(1)).dim();
    let minus = with_parity(f, level, w, full.clone(), Some(-1)).dim();
    Ok((full.dim(), plus, minus))
}

pub fn basis(s: &Space) -> Res {
    let (k, w) = resolve_weight(&s.weight)?;
    let field = parse_field(&s.field)?;
    check_field_char(&field, s.level, w)?;
    let mut r = space_params("basis", s, k, w);
    r.result("cosets", coset_labels(s.level));
    let (vectors, ok, ambient) = match &field {
        None => {
            let q = Rationals;
            let space = space_over(&q, s, w)?;
            let rows: Vec<Vec<BigInt>> = space.basis().iter().map(|b| primitive_integer_vector(b)).collect();
            let rows = saturate(rows, space.ambient_dim());
            let ok = rows.iter().all(|v| {
                let qv: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
                satisfies_relations(&q, s.level, w, &qv)
            });
            let out: Vec<Vec<String>> = rows.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            (json!(out), ok, space.ambient_dim())
        }
        Some(f) => {
            let space = space_over(f, s, w)?;
            let ok = space.basis().iter().all(|v| satisfies_relations(f, s.level, w, v));
            (json!(space.basis()), ok, space.ambient_dim())
        }
    };
    r.result("ambient_dim", ambient as u64);
    r.result("dim", vectors.as_array().map_or(0, |a| a.len()) as u64);
    r.result("basis", vectors);
    r.check("relations", ok, Value::Null);
    Ok(r)
}

fn matrix_report<F: Field>(f: &F, r: &mut Report, m: &periodpoly::linalg::Matrix<F::Elem>) -> Result<(), Outcome> {
    let cp = charpoly(f, m)?;
    r.result("dim", m.rows() as u64);
    r.result("matrix", to_json(f, m));
    r.result("charpoly", json!(cp.iter().map(|c| f.format(c)).collect::<Vec<_>>()));
    Ok(())
}

pub fn hecke_matrix(s: &Space, n: u64) -> Res {
    let (k, w) = resolve_weight(&s.weight)?;
    if n == 0 || gcd_i64(n as i64, s.level as i64) != 1 {
        return Err(usage(format!("n = {n} must be positive and coprime to N = {}", s.level)));
    }
    let field = parse_field(&s.field)?;
    check_field_char(&field, s.level, w)?;
    let mut r = space_params("hecke-matrix", s, k, w).param("n", n);
    match &field {
        None => {
            let space = space_over(&Rationals, s, w)?;
            let m = restricted_hecke(&Rationals, &space, s.level, w, n as i64)?;
            matrix_report(&Rationals, &mut r, &m)?;
        }
        Some(f) => {
            let space = space_over(f, s, w)?;
            let m = restricted_hecke(f, &space, s.level, w, n as i64)?;
            matrix_report(f, &mut r, &m)?;
        }
    }
    r.check("space_invariant", true, Value::Null);
    Ok(r)
}

fn involution_check<F: Field>(f: &F, r: &mut Report, m: &periodpoly::linalg::Matrix<F::Elem>) -> Result<(), Outcome> {
    let sq = mat_mul(f, m, m)?;
    r.check("involution", sq == identity(f, m.rows()), Value::Null);
    matrix_report(f, r, m)
}

pub fn al_matrix(s: &Space, q: u64) -> Res {
    let (k, w) = resolve_weight(&s.weight)?;
    if q < 2 || s.level % q != 0 || gcd_i64(q as i64, (s.level / q) as i64) != 1 {
        return Err(usage(format!("Q = {q} must exactly divide N = {}", s.level)));
    }
    let field = parse_field(&s.field)?;
    check_field_char(&field, s.level, w)?;
    let mut r = space_params("al-matrix", s, k, w).param("q", q);
    match &field {
        None => {
            let space = space_over(&Rationals, s, w)?;
            let m = atkin_lehner_matrix(&Rationals, &space, s.level, w, q as i64)?;
            involution_check(&Rationals, &mut r, &m)?;
        }
        Some(f) => {
            let space = space_over(f, s, w)?;
            let m = atkin_lehner_matrix(f, &space, s.level, w, q as i64)?;
            involution_check(f, &mut r, &m)?;
        }
    }
    Ok(r)
}

fn tuple_json<F: Field>(f: &F, n: u64, w: usize, v: &[F::Elem]) -> Value {
    let line = ProjLine::get(n);
    let mut map = serde_json::Map::new();
    for (i, c) in v.chunks(w + 1).enumerate() {
        map.insert(line.label(i).to_string(), poly_to_json(f, c));
    }
    Value::Object(map)
}

fn eisenstein_checks<F: Field>(f: &F, r: &mut Report, eps: &EpsSystem, w: usize) -> Result<(), Outcome> {
    let n = eps.n;
    let e: Vec<F::Elem> = eis_plus(eps, w)?.coeffs.iter().map(|c| f.from_bigint(c)).collect();
    r.result("class", tuple_json(f, n, w, &e));
    r.check("relations", satisfies_relations(f, n, w, &e), Value::Null);
    let delta = CosetOperator::delta(n, w).over(f);
    r.check("delta_even", delta.apply(f, &e) == e, Value::Null);
    for m in [2u64, 3, 5].into_iter().filter(|m| n % m != 0) {
        let lambda = f.from_bigint(&sigma(m, (w + 1) as u32));
        let image = hecke_operator(n, w, m as i64)?.over(f).apply(f, &e);
        let expected: Vec<F::Elem> = e.iter().map(|x| f.mul(x, &lambda)).collect();
        r.check(&format!("T{m}_eigenvalue"), image == expected, json!({ "eigenvalue": f.format(&lambda) }));
    }
    for q in (2..=n).filter(|q| n % q == 0 && gcd_i64(*q as i64, (n / q) as i64) == 1) {
        let scale = atkin_lehner_scale(f, q as i64, w)?;
        let image: Vec<F::Elem> = theta_operator(n, w, q as i64)?.over(f).apply(f, &e).iter().map(|x| f.mul(x, &scale)).collect();
        let s = f.from_i64(eps.eval(q) as i64);
        let expected: Vec<F::Elem> = e.iter().map(|x| f.mul(x, &s)).collect();
        r.check(&format!("W{q}_eigenvalue"), image == expected, json!({ "sign": eps.eval(q) }));
    }
    Ok(())
}

pub fn eisenstein(level: u64, weight: &Weight, field: &str, eps: &str) -> Res {
    let (k, w) = resolve_weight(weight)?;
    let eps_sys = EpsSystem::parse(level, eps)?;
    let field_name = field;
    let field = parse_field(field)?;
    check_field_char(&field, level, w)?;
    let mut r = Report::new("eisenstein")
        .param("level", level)
        .param("weight", k)
        .param("w", w as u64)
        .param("mod", field_name)
        .param("eps", eps);
    match &field {
        None => eisenstein_checks(&Rationals, &mut r, &eps_sys, w)?,
        Some(f) => eisenstein_checks(f, &mut r, &eps_sys, w)?,
    }
    Ok(r)
}

pub fn trace(level: u64, weight: &Weight, to: u64, eps: &str) -> Res {
    let (k, _) = resolve_weight(weight)?;
    if to == 0 || level % to != 0 || !periodpoly::exactmath::is_prime(level / to) || to % (level / to) == 0 {
        return Err(usage(format!("N / M must be a prime p not dividing M (N = {level}, M = {to})")));
    }
    let p = level / to;
    let eps_sys = EpsSystem::parse(level, eps)?;
    let mut r = Report::new("trace").param("level", level).param("weight", k).param("to", to).param("eps", eps);
    let rep = trace_identity_check(to, p, &eps_sys, k as usize)?;
    r.result("factor", rep.factor.clone());
    r.check("trace_identity", rep.pass, json!({ "factor": rep.factor }));
    Ok(r)
}

fn parse_al(level: u64, al: Option<&str>) -> Result<Vec<(u64, i8)>, Outcome> {
    let mut out = Vec::new();
    let Some(al) = al else { return Ok(out) };
    for part in al.split(',').filter(|p| !p.trim().is_empty()) {
        let (q, s) = part.split_once('=').ok_or_else(|| usage(format!("bad Atkin-Lehner constraint {part:?}")))?;
        let q: u64 = q.trim().parse().map_err(|_| usage(format!("bad divisor {q:?}")))?;
        if level % q != 0 {
            return Err(usage(format!("{q} does not divide {level}")));
        }
        out.push((q, parse_sign(s)?));
    }
    Ok(out)
}

pub fn new_dim(s: &Space, p: u64, al: Option<&str>) -> Res {
    let (k, w) = resolve_weight(&s.weight)?;
    let field = parse_field(&s.field)?;
    let parity = parse_parity(&s.parity)?;
    let mut spec = NewSpaceSpec::new(s.level, w, p);
    spec.al_signs = parse_al(s.level, al)?;
    spec.parity = parity;
    let mut r = space_params("new-dim", s, k, w).param("p", p);
    if let Some(al) = al {
        r = r.param("al", al);
    }
    let d = match &field {
        None => new_subspace(&Rationals, &spec)?.dim(),
        Some(f) => new_subspace(f, &spec)?.dim(),
    };
    r.result("dim", d as u64);
    if spec.al_signs.is_empty() && is_squarefree(s.level) {
        let classical = dim_p_new(s.level, k, p)?;
        let expected = if parity.is_some() { classical } else { 2 * classical };
        r.result("expected_dim", expected);
        if field.is_none() {
            r.check("matches_dimension_formula", d as i64 == expected, json!({ "dim": d, "expected": expected }));
        }
    }
    Ok(r)
}

pub fn verify_t1(weight: &Weight, p: u64, eps: &str, ell: u64) -> Res {
    let (k, _) = resolve_weight(weight)?;
    let e = parse_sign(eps)?;
    let rep = congruence::verify_t1(k, p, e, ell)?;
    let mut r = Report::new("verify-t1").param("k", k).param("p", p).param("eps", e as i64).param("ell", ell);
    r.result("report", serde_json::to_value(&rep).expect("serializable"));
    r.extend("", rep.assertions());
    Ok(r)
}

pub fn verify_t2(level: u64, p: u64, weight: &Weight, ell: u64) -> Res {
    let (_, w) = resolve_weight(weight)?;
    let rep = congruence::verify_t2(level, p, w, ell)?;
    let mut r = Report::new("verify-t2").param("level", level).param("p", p).param("w", w as u64).param("ell", ell);
    r.result("report", serde_json::to_value(&rep).expect("serializable"));
    r.extend("", rep.assertions());
    Ok(r)
}

pub fn parse_selector(s: &str) -> Result<Selector, Outcome> {
    let (n, l) = s.split_once('=').ok_or_else(|| usage(format!("selector {s:?} must look like n=lambda")))?;
    let n: u64 = n.trim().parse().map_err(|_| usage(format!("bad selector index {n:?}")))?;
    Ok(Selector { n, lambda: parse_rational(l.trim())? })
}

pub fn verify_t3(m: u64, p: u64, weight: &Weight, eps: &str, ell: u64, select: &str) -> Res {
    let (k, _) = resolve_weight(weight)?;
    let e = parse_sign(eps)?;
    let sel = parse_selector(select)?;
    let g = congruence::rational_newform_eigendata(m, k, &sel)?;
    let rep = congruence::verify_t3(m, p, k, e, ell, &g)?;
    let mut r = Report::new("verify-t3")
        .param("level", m)
        .param("p", p)
        .param("k", k)
        .param("eps", e as i64)
        .param("ell", ell)
        .param("select", select);
    r.result("eigendata", g.to_json());
    r.result("report", serde_json::to_value(&rep).expect("serializable"));
    r.extend("", rep.assertions());
    let lambda_p = g.eigenvalue(p)?;
    if rep.lambda_congruence && lambda_p.is_integer() {
        let lp = lambda_p.to_integer();
        let mut ok = true;
        let mut witness = Vec::new();
        for j in 1..=3u32 {
            let c = congruence::al_power_coeffs(&lp, p, e, k, j)?;
            ok &= c.divisible;
            witness.push(json!({ "m": j, "old": c.old.to_string(), "new": c.new.to_string() }));
        }
        let newform_ap: BigInt = -BigInt::from(e) * Pow::pow(BigInt::from(p), (k / 2 - 1) as u32);
        r.result("newform_a_p", newform_ap.to_string());
        r.check("prime_power_coefficients", ok, Value::Array(witness));
    }
    Ok(r)
}
