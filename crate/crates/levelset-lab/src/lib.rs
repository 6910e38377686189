//! Numerical laboratory for Lévy-type Feller processes: symbol envelopes and
//! oscillation indices, subordination indices for level sets, Kato-class and
//! polarity classifiers, stable-process path simulation, and fractal
//! dimension estimation of level and collision sets.
//!
//! The crate is organised around five subsystems:
//!
//! * [`symbol`] — Lévy measure models, the comparison symbol
//!   q(ξ) = ∫ (1 − cos ξ·h) μ(dh), its envelopes q^U/q^L, the spherical
//!   supremum q^*, κ and α = 2/κ, the scaling function ρ_t and power fits.
//! * [`indices`] — convergence probes for the subordination indices γ*,
//!   γ_inf, γ_sup, plus d-set measures and their ball-mass audits.
//! * [`potential`] — Kato-class membership, polarity and regularity of
//!   points and d-sets, Chung–Fuchs and drift recurrence criteria.
//! * [`simulate`] — seeded samplers for stable subordinators, symmetric
//!   stable paths, state-dependent Lévy-type paths, and subordinate
//!   compositions.
//! * [`fractal`] — level/collision set extraction, box-counting dimension,
//!   and the subordinator-range probe that brackets dimensions.
//!
//! The [`experiment`] module wires these into config-driven experiments with
//! reproducible CSV/JSON reports; the `levelset-lab` binary exposes them on
//! the command line.

pub mod error;
pub mod quad;
pub mod stats;
pub mod symbol;

pub mod fractal;
pub mod indices;
pub mod potential;
pub mod simulate;

pub mod experiment;

pub use error::{Error, Result};
