//! Period polynomials for Gamma_0(N) over Q and F_ell.
//!
//! The crate builds the spaces W_w(N) of period polynomials, the Hecke and
//! Atkin-Lehner operators acting on them, trace maps and new subspaces, the
//! closed-form Eisenstein classes, and checkers for Eisenstein and
//! level-raising congruences.

pub mod error;
pub mod exactmath;
pub mod hecke;
pub mod cosets;
pub mod eisenstein;
pub mod linalg;
pub mod periodspace;
pub mod congruence;

pub use error::{Error, Result};
