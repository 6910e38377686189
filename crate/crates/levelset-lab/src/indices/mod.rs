//! Subordination indices γ*, γ_inf, γ_sup and the d-set measure models the
//! index integrals are tested against.

pub mod gamma;
pub mod measure;
pub mod probe;

pub use gamma::{
    gamma_inf, gamma_star, gamma_sup_dset, gamma_sup_for_measure, GammaEstimate, GAMMA_TOL,
};
pub use measure::{check_d_measure, DSetAudit, SetMeasureKind, SetMeasureModel};
pub use probe::{convergence_probe, ConvergenceVerdict, Verdict, DEFAULT_PROBE_DEPTH};
