//! Hecke elements, double cosets and the operators they induce on W_w(N).

mod action;
mod element;
mod formal;

pub use action::{
    act_sigma, atkin_lehner_matrix, atkin_lehner_scale, decompose, decompose_index, eq_star_check, hecke_matrix,
    hecke_operator, restrict_to, sigma_operator, theta_operator, DoubleCosetSpec, EqStarReport,
};
pub use element::{cz_defect, hecke_element, heilbronn_element, solve_hecke_element, t_orbit_key, DefectReport};
pub use formal::{coset_reps_infty, normalize_sign, FormalMatrixSum};
