//! New subspaces, congruence verifiers and scans.

mod newspace;

pub use newspace::{dim_oracle, dim_p_new, index, new_subspace, new_subspace_in, DimRecord, NewSpaceSpec};
mod verify;

pub use verify::{
    al_power_coeffs, eigensystem_roots, rational_newform_eigendata, scan_cell, scan_t1, verify_t1, verify_t2, verify_t3,
    w_dim_mod, AlPowerCoeffs, Assertion, EigenData, IdentityComparison, RootCheck, ScanRow, Selector, T1Report, T2Report,
    T3Report,
};
