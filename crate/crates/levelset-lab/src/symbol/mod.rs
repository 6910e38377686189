//! Characteristic exponents of symmetric Lévy measures and everything the
//! heat-kernel comparison machinery derives from them: the envelopes q^U and
//! q^L, the spherical supremum q^*, the oscillation bound κ with its index
//! α = 2/κ, the inverse scaling function ρ_t, and two-sided power fits.

pub mod measure;
pub mod profile;

pub use measure::{closed, Drift, LevyMeasureModel, MeasureFamily, Modulation, TabulatedDensity};
pub use profile::{
    comparison_kappa, comparison_kappa_with, q_lower_inf_of_model, q_star_of_model,
    sphere_extremum, KappaEstimate, PowerEnvelope, ProfileConfig, SymbolProfile,
};
