//! Period polynomial spaces W_w(N) inside V_w(N).

mod unipotent;
mod operator;
mod poly;
mod space;

pub use unipotent::lemma_l3_check;
pub use operator::CosetOperator;
pub use poly::{format_poly, poly_to_json, slash, slash_block, ExtPoly};
pub use space::{
    ambient_dim, build_w, build_w_integral, build_w_rational, include, relation_operators, satisfies_relations,
    split_pm, trace, VectorPoly,
};

use crate::cosets::IntMatrix2;
use crate::linalg::Ring;

/// `(P|g)(A) = P(A g^-1)|g` for g in SL_2(Z).
pub fn group_act<R: Ring>(r: &R, p: &VectorPoly<R::Elem>, g: &IntMatrix2) -> VectorPoly<R::Elem> {
    let op = CosetOperator::group_action(p.n, p.w, g).over_ring(r);
    VectorPoly { n: p.n, w: p.w, coeffs: op.apply(r, &p.coeffs) }
}

/// `(P|delta)(A) = P(delta A delta)|delta`.
pub fn delta_act<R: Ring>(r: &R, p: &VectorPoly<R::Elem>) -> VectorPoly<R::Elem> {
    let op = CosetOperator::delta(p.n, p.w).over_ring(r);
    VectorPoly { n: p.n, w: p.w, coeffs: op.apply(r, &p.coeffs) }
}
