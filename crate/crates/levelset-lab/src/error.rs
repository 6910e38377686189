//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument fell outside its admissible range.
    #[error("{name} = {value} outside admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Model construction rejected the supplied data.
    #[error("invalid Lévy measure model: {0}")]
    Model(String),

    /// A tabulated density failed the Lévy-measure integrability check.
    #[error("tabulated density is not a Lévy measure: {0}")]
    NonIntegrableDensity(String),

    /// The declared modulation envelope was violated (acceptance probability > 1).
    #[error("modulation m(x,h) = {observed} exceeds declared upper bound {declared} at x={x}, h={h}")]
    ModulationEnvelope {
        observed: f64,
        declared: f64,
        x: f64,
        h: f64,
    },

    /// Fewer tabulated radii than a fit requires.
    #[error("insufficient data: {needed} grid points needed above r = 1, found {found}")]
    InsufficientData { needed: usize, found: usize },

    /// An operation requiring a declared d-set exponent got a measure without one.
    #[error("measure carries no d-set exponent; operation is restricted to d-sets")]
    UnsupportedMeasure,

    /// The convergence probe could not classify the integral.
    #[error("convergence probe inconclusive: {0}")]
    InconclusiveProbe(String),

    /// Two paths that must share a grid do not.
    #[error("path grids differ: {0}")]
    GridMismatch(String),

    /// Box counting needs at least four usable scales.
    #[error("only {found} usable scales in the requested band, need at least {needed}")]
    TooFewScales { found: usize, needed: usize },

    /// The measure has no first moment at infinity, D(x) is infinite.
    #[error("first tail moment of the Lévy measure is infinite ({0}); drift criterion undefined")]
    InfiniteMoment(String),

    /// Subordinator ran past the horizon of the path it time-changes.
    #[error("subordinator reached {reached} but the subordinand path ends at {horizon}")]
    SubordinatorExceedsHorizon { reached: f64, horizon: f64 },

    /// Profile does not cover the radii an evaluation needs.
    #[error("symbol profile covers [{r_min}, {r_max}] but r = {requested} was requested")]
    ProfileCoverage {
        r_min: f64,
        r_max: f64,
        requested: f64,
    },

    /// Unsupported ambient dimension for this operation.
    #[error("dimension n = {n} not supported here ({context})")]
    UnsupportedDimension { n: usize, context: &'static str },

    /// An experiment configuration was rejected.
    #[error("experiment config rejected: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
