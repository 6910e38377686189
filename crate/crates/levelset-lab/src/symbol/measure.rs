//! Lévy measure models and evaluation of the comparison symbol
//! q(ξ) = ∫ (1 − cos(ξ·h)) μ(dh) together with its integral envelopes
//!
//!   q^U(ξ) = ∫ ((ξ·h)² ∧ 1) μ(dh),
//!   q^L(ξ) = ∫_{0<|ξ·h|≤1} (ξ·h)² μ(dh).
//!
//! All families are symmetric (μ(dh) = μ(−dh)). One-dimensional and
//! axis-product measures reduce to one-sided radial integrals; isotropic
//! measures in dimension 2 or 3 reduce to a sphere average of the same
//! one-sided kernel.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{adaptive, integrate_tail, integrate_to_zero, one_minus_cos};

const KERNEL_TOL: f64 = 1e-10;
/// Periods of the cosine tail integrated explicitly before switching to the
/// two-term integration-by-parts remainder.
const OSC_PERIODS: usize = 48;

/// Tabulated symmetric density: samples (h, g(h)) on an ascending grid,
/// interpolated as piecewise power laws in log-log coordinates and
/// extrapolated by the edge exponents.
#[derive(Debug, Clone)]
pub struct TabulatedDensity {
    nodes: Vec<(f64, f64)>,
    seg_exponent: Vec<f64>,
    lo_exponent: f64,
    hi_exponent: f64,
}

impl TabulatedDensity {
    pub fn new(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.len() < 4 {
            return Err(Error::NonIntegrableDensity(
                "need at least 4 density samples".into(),
            ));
        }
        for w in nodes.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::NonIntegrableDensity(
                    "radii must be strictly increasing".into(),
                ));
            }
        }
        if nodes.iter().any(|&(h, g)| h <= 0.0 || g <= 0.0 || !h.is_finite() || !g.is_finite()) {
            return Err(Error::NonIntegrableDensity(
                "radii and density values must be positive and finite".into(),
            ));
        }
        let seg_exponent: Vec<f64> = nodes
            .windows(2)
            .map(|w| (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln())
            .collect();
        let lo_exponent = seg_exponent[0];
        let hi_exponent = *seg_exponent.last().unwrap();
        // Lévy integrability: ∫ (1 ∧ h²) g(h) dh < ∞ under power-law
        // extrapolation needs h² g integrable at 0 and g integrable at ∞.
        if lo_exponent <= -3.0 {
            return Err(Error::NonIntegrableDensity(format!(
                "small-radius exponent {lo_exponent:.3} makes h² g(h) non-integrable at 0"
            )));
        }
        if hi_exponent >= -1.0 {
            return Err(Error::NonIntegrableDensity(format!(
                "tail exponent {hi_exponent:.3} makes g(h) non-integrable at infinity"
            )));
        }
        Ok(Self {
            nodes,
            seg_exponent,
            lo_exponent,
            hi_exponent,
        })
    }

    pub fn eval(&self, h: f64) -> f64 {
        let n = &self.nodes;
        if h <= n[0].0 {
            return n[0].1 * (h / n[0].0).powf(self.lo_exponent);
        }
        if h >= n[n.len() - 1].0 {
            let (h0, g0) = n[n.len() - 1];
            return g0 * (h / h0).powf(self.hi_exponent);
        }
        let idx = match n.binary_search_by(|probe| probe.0.total_cmp(&h)) {
            Ok(i) => return n[i].1,
            Err(i) => i - 1,
        };
        n[idx].1 * (h / n[idx].0).powf(self.seg_exponent[idx])
    }

    /// Whether `h` lies outside the sampled grid (evaluation extrapolates).
    pub fn extrapolates_at(&self, h: f64) -> bool {
        h < self.nodes[0].0 || h > self.nodes[self.nodes.len() - 1].0
    }

    pub fn grid_range(&self) -> (f64, f64) {
        (self.nodes[0].0, self.nodes[self.nodes.len() - 1].0)
    }
}

/// Parametric (plus tabulated) families of symmetric Lévy measures.
///
/// All radial densities are one-sided (h > 0); the symmetric measure puts the
/// mirror image on h < 0. `AxisStable` is the product of independent
/// one-dimensional stable components along the coordinate axes.
#[derive(Debug, Clone)]
pub enum MeasureFamily {
    StablePower { alpha: f64 },
    TemperedStable { alpha: f64, tempering: f64 },
    TruncatedStable { alpha: f64, cutoff: f64 },
    Tabulated(TabulatedDensity),
    AxisStable { alphas: Vec<f64> },
}

impl MeasureFamily {
    fn validate(&self, dim: usize) -> Result<()> {
        let check_alpha = |alpha: f64| -> Result<()> {
            if !(alpha > 0.0 && alpha < 2.0) {
                return Err(Error::Domain {
                    name: "alpha",
                    value: alpha,
                    range: "(0, 2)",
                });
            }
            Ok(())
        };
        match self {
            MeasureFamily::StablePower { alpha } => check_alpha(*alpha),
            MeasureFamily::TemperedStable { alpha, tempering } => {
                check_alpha(*alpha)?;
                if *tempering <= 0.0 {
                    return Err(Error::Domain {
                        name: "tempering",
                        value: *tempering,
                        range: "(0, ∞)",
                    });
                }
                Ok(())
            }
            MeasureFamily::TruncatedStable { alpha, cutoff } => {
                check_alpha(*alpha)?;
                if *cutoff <= 0.0 {
                    return Err(Error::Domain {
                        name: "cutoff",
                        value: *cutoff,
                        range: "(0, ∞)",
                    });
                }
                Ok(())
            }
            MeasureFamily::Tabulated(_) => {
                if dim != 1 {
                    return Err(Error::UnsupportedDimension {
                        n: dim,
                        context: "tabulated densities are one-dimensional",
                    });
                }
                Ok(())
            }
            MeasureFamily::AxisStable { alphas } => {
                if alphas.len() != dim || dim < 2 {
                    return Err(Error::Model(format!(
                        "axis-stable needs one exponent per axis in dimension ≥ 2, got {} for n = {dim}",
                        alphas.len()
                    )));
                }
                for &a in alphas {
                    check_alpha(a)?;
                }
                Ok(())
            }
        }
    }

    /// One-sided radial density at unit intensity. For isotropic use in
    /// dimension n this is already the reduced kernel s^{n-1} G(s), which for
    /// every family here coincides with the one-dimensional density.
    fn radial_density(&self, h: f64) -> f64 {
        debug_assert!(h > 0.0);
        match self {
            MeasureFamily::StablePower { alpha } => h.powf(-1.0 - alpha),
            MeasureFamily::TemperedStable { alpha, tempering } => {
                (-tempering * h).exp() * h.powf(-1.0 - alpha)
            }
            MeasureFamily::TruncatedStable { alpha, cutoff } => {
                if h <= *cutoff {
                    h.powf(-1.0 - alpha)
                } else {
                    0.0
                }
            }
            MeasureFamily::Tabulated(t) => t.eval(h),
            MeasureFamily::AxisStable { .. } => {
                unreachable!("axis-stable has no single radial density")
            }
        }
    }

    fn support_hi(&self) -> f64 {
        match self {
            MeasureFamily::TruncatedStable { cutoff, .. } => *cutoff,
            _ => f64::INFINITY,
        }
    }

    /// Small-radius stability exponent: g(h) ~ h^{-1-a} as h → 0.
    fn small_exponent(&self) -> f64 {
        match self {
            MeasureFamily::StablePower { alpha }
            | MeasureFamily::TemperedStable { alpha, .. }
            | MeasureFamily::TruncatedStable { alpha, .. } => *alpha,
            MeasureFamily::Tabulated(t) => -1.0 - t.lo_exponent,
            MeasureFamily::AxisStable { alphas } => {
                alphas.iter().cloned().fold(f64::NAN, f64::min)
            }
        }
    }
}

/// State-dependent drift a(x) with its declared bound c₁.
#[derive(Clone)]
pub struct Drift {
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub bound: f64,
}

impl std::fmt::Debug for Drift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Drift").field("bound", &self.bound).finish()
    }
}

/// Jump modulation m(x, h) with declared bounds c₂ ≤ m ≤ c₃, Hölder index,
/// and a claimed evenness in h.
#[derive(Clone)]
pub struct Modulation {
    pub f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub lower: f64,
    pub upper: f64,
    pub holder_index: f64,
    pub even_in_h: bool,
}

impl std::fmt::Debug for Modulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Modulation")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("holder_index", &self.holder_index)
            .field("even_in_h", &self.even_in_h)
            .finish()
    }
}

/// A symmetric Lévy measure μ plus the state-dependent data (drift a(x),
/// modulation m(x,h)) of the generator it drives.
#[derive(Debug, Clone)]
pub struct LevyMeasureModel {
    family: MeasureFamily,
    dim: usize,
    intensity: f64,
    drift: Option<Drift>,
    modulation: Option<Modulation>,
}

impl LevyMeasureModel {
    pub fn new(family: MeasureFamily, dim: usize, intensity: f64) -> Result<Self> {
        if dim == 0 || dim > 3 {
            return Err(Error::UnsupportedDimension {
                n: dim,
                context: "models support n ∈ {1, 2, 3}",
            });
        }
        if !(intensity > 0.0) || !intensity.is_finite() {
            return Err(Error::Domain {
                name: "intensity",
                value: intensity,
                range: "(0, ∞)",
            });
        }
        family.validate(dim)?;
        Ok(Self {
            family,
            dim,
            intensity,
            drift: None,
            modulation: None,
        })
    }

    /// Shorthand for the pure power family in one dimension.
    pub fn stable_1d(alpha: f64, intensity: f64) -> Result<Self> {
        Self::new(MeasureFamily::StablePower { alpha }, 1, intensity)
    }

    /// Attach a drift. Requires α > 1 (the generator loses its martingale
    /// structure otherwise) and audits the declared bound on a grid.
    pub fn with_drift(mut self, drift: Drift) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension {
                n: self.dim,
                context: "state-dependent drift is one-dimensional here",
            });
        }
        if !(self.min_alpha() > 1.0) {
            return Err(Error::Model(format!(
                "drift requires index alpha > 1, model has alpha = {}",
                self.min_alpha()
            )));
        }
        for i in 0..=40 {
            let x = -10.0 + 0.5 * i as f64;
            let v = (drift.f)(x);
            if !(v.abs() <= drift.bound + 1e-12) {
                return Err(Error::Model(format!(
                    "declared drift bound {} violated: |a({x})| = {}",
                    drift.bound,
                    v.abs()
                )));
            }
        }
        self.drift = Some(drift);
        Ok(self)
    }

    /// Attach a jump modulation. Declared bounds and evenness are audited on
    /// a log grid of jump sizes and a lattice of states.
    pub fn with_modulation(mut self, m: Modulation) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension {
                n: self.dim,
                context: "state-dependent modulation is one-dimensional here",
            });
        }
        if !(m.lower > 0.0 && m.lower <= m.upper) {
            return Err(Error::Model(format!(
                "modulation bounds must satisfy 0 < c2 ≤ c3, got ({}, {})",
                m.lower, m.upper
            )));
        }
        if !(m.holder_index > 0.0 && m.holder_index <= 1.0) {
            return Err(Error::Domain {
                name: "holder_index",
                value: m.holder_index,
                range: "(0, 1]",
            });
        }
        if !m.even_in_h && !(self.min_alpha() > 1.0) {
            return Err(Error::Model(
                "asymmetric modulation requires index alpha > 1".into(),
            ));
        }
        for i in 0..=20 {
            let x = -10.0 + i as f64;
            for j in 0..=24 {
                let h = 1e-6_f64 * 10f64.powf(j as f64 * 9.0 / 24.0);
                for s in [h, -h] {
                    let v = (m.f)(x, s);
                    if !(v >= m.lower - 1e-12 && v <= m.upper + 1e-12) {
                        return Err(Error::Model(format!(
                            "declared modulation bounds [{}, {}] violated: m({x}, {s}) = {v}",
                            m.lower, m.upper
                        )));
                    }
                }
                if m.even_in_h {
                    let d = ((m.f)(x, h) - (m.f)(x, -h)).abs();
                    if d > 1e-10 * m.upper {
                        return Err(Error::Model(format!(
                            "modulation declared even but m({x}, ±{h}) differ by {d}"
                        )));
                    }
                }
            }
        }
        self.modulation = Some(m);
        Ok(self)
    }

    pub fn family(&self) -> &MeasureFamily {
        &self.family
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn intensity(&self) -> f64 {
        self.intensity
    }
    pub fn drift(&self) -> Option<&Drift> {
        self.drift.as_ref()
    }
    pub fn modulation(&self) -> Option<&Modulation> {
        self.modulation.as_ref()
    }

    /// Whether the full generator data is symmetric (no drift, even m, μ is
    /// symmetric by construction).
    pub fn is_symmetric(&self) -> bool {
        self.drift.is_none() && self.modulation.as_ref().map_or(true, |m| m.even_in_h)
    }

    /// Smallest stability index driving the small-jump activity.
    pub fn min_alpha(&self) -> f64 {
        self.family.small_exponent()
    }

    /// One-sided jump density c·g(h), h > 0 (one-dimensional families only).
    pub fn density_oneside(&self, h: f64) -> f64 {
        debug_assert!(self.dim == 1);
        self.intensity * self.family.radial_density(h)
    }

    pub fn support_hi(&self) -> f64 {
        self.family.support_hi()
    }

    // ------------------------------------------------------------------
    // Symbol evaluation
    // ------------------------------------------------------------------

    /// q(ξ) = ∫ (1 − cos(ξ·h)) μ(dh).
    pub fn eval_q(&self, xi: &[f64]) -> f64 {
        assert_eq!(xi.len(), self.dim, "ξ must have the model dimension");
        match &self.family {
            MeasureFamily::AxisStable { alphas } => {
                let c = self.intensity;
                xi.iter()
                    .zip(alphas)
                    .map(|(&t, &a)| {
                        let fam = MeasureFamily::StablePower { alpha: a };
                        2.0 * c * oneside_q(&fam, t.abs())
                    })
                    .sum()
            }
            fam => match self.dim {
                1 => 2.0 * self.intensity * oneside_q(fam, xi[0].abs()),
                n => self.intensity * sphere_average(n, norm(xi), |b| oneside_q(fam, b)),
            },
        }
    }

    /// q^U(ξ) = ∫ ((ξ·h)² ∧ 1) μ(dh).
    pub fn eval_q_upper(&self, xi: &[f64]) -> f64 {
        assert_eq!(xi.len(), self.dim);
        match &self.family {
            MeasureFamily::AxisStable { alphas } => {
                let c = self.intensity;
                xi.iter()
                    .zip(alphas)
                    .map(|(&t, &a)| {
                        let fam = MeasureFamily::StablePower { alpha: a };
                        2.0 * c * oneside_q_upper(&fam, t.abs())
                    })
                    .sum()
            }
            fam => match self.dim {
                1 => 2.0 * self.intensity * oneside_q_upper(fam, xi[0].abs()),
                n => self.intensity * sphere_average(n, norm(xi), |b| oneside_q_upper(fam, b)),
            },
        }
    }

    /// q^L(ξ) = ∫_{0<|ξ·h|≤1} (ξ·h)² μ(dh).
    pub fn eval_q_lower(&self, xi: &[f64]) -> f64 {
        assert_eq!(xi.len(), self.dim);
        match &self.family {
            MeasureFamily::AxisStable { alphas } => {
                let c = self.intensity;
                xi.iter()
                    .zip(alphas)
                    .map(|(&t, &a)| {
                        let fam = MeasureFamily::StablePower { alpha: a };
                        2.0 * c * oneside_q_lower(&fam, t.abs())
                    })
                    .sum()
            }
            fam => match self.dim {
                1 => 2.0 * self.intensity * oneside_q_lower(fam, xi[0].abs()),
                n => self.intensity * sphere_average(n, norm(xi), |b| oneside_q_lower(fam, b)),
            },
        }
    }

    // Scalar conveniences for one-dimensional models.
    pub fn q1(&self, t: f64) -> f64 {
        self.eval_q(&[t])
    }
    pub fn q1_upper(&self, t: f64) -> f64 {
        self.eval_q_upper(&[t])
    }
    pub fn q1_lower(&self, t: f64) -> f64 {
        self.eval_q_lower(&[t])
    }

    // ------------------------------------------------------------------
    // Moments used by the samplers and the recurrence criteria
    // ------------------------------------------------------------------

    /// ∫_{|h| < δ} h² μ(dh) (one-dimensional).
    pub fn second_moment_below(&self, delta: f64) -> f64 {
        debug_assert!(self.dim == 1 && delta > 0.0);
        match &self.family {
            MeasureFamily::StablePower { alpha } => {
                2.0 * self.intensity * delta.powf(2.0 - alpha) / (2.0 - alpha)
            }
            MeasureFamily::TruncatedStable { alpha, cutoff } => {
                let d = delta.min(*cutoff);
                2.0 * self.intensity * d.powf(2.0 - alpha) / (2.0 - alpha)
            }
            fam => {
                let g = |h: f64| h * h * fam.radial_density(h);
                2.0 * self.intensity * integrate_to_zero(&g, delta.min(fam.support_hi()), KERNEL_TOL)
            }
        }
    }

    /// μ({|h| > δ}) (one-dimensional).
    pub fn mass_above(&self, delta: f64) -> f64 {
        debug_assert!(self.dim == 1 && delta > 0.0);
        match &self.family {
            MeasureFamily::StablePower { alpha } => {
                2.0 * self.intensity * delta.powf(-alpha) / alpha
            }
            MeasureFamily::TruncatedStable { alpha, cutoff } => {
                if delta >= *cutoff {
                    0.0
                } else {
                    2.0 * self.intensity * (delta.powf(-alpha) - cutoff.powf(-alpha)) / alpha
                }
            }
            fam => {
                let hi = fam.support_hi();
                if hi.is_finite() {
                    if delta >= hi {
                        0.0
                    } else {
                        2.0 * self.intensity
                            * adaptive(&|h| fam.radial_density(h), delta, hi, KERNEL_TOL, 0.0, 512)
                    }
                } else {
                    2.0 * self.intensity * integrate_tail(&|h| fam.radial_density(h), delta, KERNEL_TOL)
                }
            }
        }
    }

    /// ∫_{|z| ≥ a} |z| μ(dz); infinite for untempered stable tails with α ≤ 1.
    pub fn first_moment_above(&self, a: f64) -> Result<f64> {
        debug_assert!(self.dim == 1 && a > 0.0);
        match &self.family {
            MeasureFamily::StablePower { alpha } => {
                if *alpha <= 1.0 {
                    Err(Error::InfiniteMoment(format!(
                        "stable tail with alpha = {alpha} ≤ 1"
                    )))
                } else {
                    Ok(2.0 * self.intensity * a.powf(1.0 - alpha) / (alpha - 1.0))
                }
            }
            MeasureFamily::Tabulated(t) if t.hi_exponent >= -2.0 => Err(Error::InfiniteMoment(
                format!("tabulated tail exponent {} ≥ -2", t.hi_exponent),
            )),
            fam => {
                let hi = fam.support_hi();
                let g = |h: f64| h * fam.radial_density(h);
                let v = if hi.is_finite() {
                    if a >= hi {
                        0.0
                    } else {
                        adaptive(&g, a, hi, KERNEL_TOL, 0.0, 512)
                    }
                } else {
                    integrate_tail(&g, a, KERNEL_TOL)
                };
                Ok(2.0 * self.intensity * v)
            }
        }
    }
}

fn norm(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Average of `kernel(t·|cos θ|)` over the unit sphere in dimension `n`
/// (surface measure, not normalised), reduced to a polar integral.
fn sphere_average<F: Fn(f64) -> f64>(n: usize, t: f64, kernel: F) -> f64 {
    use std::f64::consts::PI;
    match n {
        2 => 4.0 * adaptive(&|th: f64| kernel(t * th.cos()), 0.0, PI / 2.0, 1e-9, 0.0, 64),
        3 => {
            4.0 * PI
                * adaptive(
                    &|th: f64| kernel(t * th.cos()) * th.sin(),
                    0.0,
                    PI / 2.0,
                    1e-9,
                    0.0,
                    64,
                )
        }
        _ => unreachable!("dimension checked at construction"),
    }
}

/// ∫_0^∞ (1 − cos(t h)) g(h) dh for the one-sided density g, split at
/// h = 1/t. The inner region substitutes u = t·h and refines dyadically
/// toward the 1 − cos u ~ u²/2 regime; the oscillatory tail integrates
/// cosine periods explicitly and closes with a two-term integration by
/// parts.
fn oneside_q(fam: &MeasureFamily, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let hi = fam.support_hi();
    let end = t * hi; // upper limit in u = t·h coordinates (may be ∞)
    let gt = |u: f64| fam.radial_density(u / t) / t;

    let inner_hi = end.min(1.0);
    let inner = integrate_to_zero(&|u: f64| one_minus_cos(u) * gt(u), inner_hi, KERNEL_TOL);

    if end <= 1.0 {
        return inner;
    }

    // ∫_1^end (1 - cos u) G(u) du = ∫ G − ∫ G cos
    let flat = if end.is_finite() {
        adaptive(&gt, 1.0, end, KERNEL_TOL, 0.0, 1024)
    } else {
        integrate_tail(&gt, 1.0, KERNEL_TOL)
    };

    let two_pi = 2.0 * std::f64::consts::PI;
    let mut osc = 0.0;
    let mut lo = 1.0;
    for _ in 0..OSC_PERIODS {
        let hi_u = (lo + two_pi).min(end);
        osc += adaptive(&|u: f64| u.cos() * gt(u), lo, hi_u, 1e-11, 1e-300, 32);
        lo = hi_u;
        if lo >= end {
            break;
        }
    }
    if lo < end {
        // remainder ∫_lo^end G cos ≈ [G sin u + G' cos u]_lo^end
        let dg = |u: f64| {
            let step = u * 1e-5;
            (gt(u + step) - gt(u - step)) / (2.0 * step)
        };
        let at = |u: f64| gt(u) * u.sin() + dg(u) * u.cos();
        let upper = if end.is_finite() { at(end * (1.0 - 1e-9)) } else { 0.0 };
        osc += upper - at(lo);
    }

    inner + flat - osc
}

/// ∫_0^∞ ((t h)² ∧ 1) g(h) dh.
fn oneside_q_upper(fam: &MeasureFamily, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let hi = fam.support_hi();
    let split = (1.0 / t).min(hi);
    let quad_part =
        t * t * integrate_to_zero(&|h: f64| h * h * fam.radial_density(h), split, KERNEL_TOL);
    let tail_part = if hi <= 1.0 / t {
        0.0
    } else if hi.is_finite() {
        adaptive(&|h| fam.radial_density(h), 1.0 / t, hi, KERNEL_TOL, 0.0, 1024)
    } else {
        integrate_tail(&|h| fam.radial_density(h), 1.0 / t, KERNEL_TOL)
    };
    quad_part + tail_part
}

/// ∫_{0 < t h ≤ 1} (t h)² g(h) dh.
fn oneside_q_lower(fam: &MeasureFamily, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let split = (1.0 / t).min(fam.support_hi());
    t * t * integrate_to_zero(&|h: f64| h * h * fam.radial_density(h), split, KERNEL_TOL)
}

/// Exact power-law values for the pure `StablePower` family; the quadrature
/// path is checked against these in the test suites.
pub mod closed {
    /// ∫_0^∞ (1 − cos u) u^{-1-α} du.
    pub fn one_minus_cos_moment(alpha: f64) -> f64 {
        if (alpha - 1.0).abs() < 1e-9 {
            return std::f64::consts::FRAC_PI_2;
        }
        libm::tgamma(2.0 - alpha) * (std::f64::consts::FRAC_PI_2 * alpha).cos()
            / (alpha * (1.0 - alpha))
    }

    /// q(ξ) for the one-dimensional power family with intensity c.
    pub fn stable_q(alpha: f64, intensity: f64, t: f64) -> f64 {
        2.0 * intensity * one_minus_cos_moment(alpha) * t.abs().powf(alpha)
    }

    /// q^U(ξ) for the same family.
    pub fn stable_q_upper(alpha: f64, intensity: f64, t: f64) -> f64 {
        2.0 * intensity * t.abs().powf(alpha) * (1.0 / alpha + 1.0 / (2.0 - alpha))
    }

    /// q^L(ξ) for the same family.
    pub fn stable_q_lower(alpha: f64, intensity: f64, t: f64) -> f64 {
        2.0 * intensity * t.abs().powf(alpha) / (2.0 - alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn q_at_zero_is_zero() {
        let m = LevyMeasureModel::stable_1d(1.5, 1.0).unwrap();
        assert_eq!(m.q1(0.0), 0.0);
        assert_eq!(m.q1_upper(0.0), 0.0);
        assert_eq!(m.q1_lower(0.0), 0.0);
    }

    #[test]
    fn stable_q_matches_closed_form_across_scales() {
        for &alpha in &[0.5, 1.0, 1.5, 1.8] {
            let m = LevyMeasureModel::stable_1d(alpha, 1.0).unwrap();
            for k in 0..=12 {
                let xi = 1e-2 * 10f64.powf(k as f64 * 0.5);
                let want = closed::stable_q(alpha, 1.0, xi);
                let got = m.q1(xi);
                assert!(
                    rel_err(got, want) < 1e-6,
                    "alpha={alpha} xi={xi}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn stable_envelopes_match_closed_forms() {
        for &alpha in &[0.5, 1.0, 1.5, 1.8] {
            let m = LevyMeasureModel::stable_1d(alpha, 1.0).unwrap();
            for &xi in &[1e-2, 0.3, 1.0, 17.0, 1e4] {
                assert!(rel_err(m.q1_upper(xi), closed::stable_q_upper(alpha, 1.0, xi)) < 1e-8);
                assert!(rel_err(m.q1_lower(xi), closed::stable_q_lower(alpha, 1.0, xi)) < 1e-8);
            }
        }
    }

    #[test]
    fn envelope_ratio_is_two_over_alpha() {
        for &alpha in &[0.5, 1.2, 1.8] {
            let m = LevyMeasureModel::stable_1d(alpha, 2.3).unwrap();
            let ratio = m.q1_upper(7.0) / m.q1_lower(7.0);
            assert!((ratio - 2.0 / alpha).abs() < 1e-8, "alpha={alpha}: {ratio}");
        }
    }

    #[test]
    fn scaling_law_for_stable() {
        let alpha = 1.5;
        let m = LevyMeasureModel::stable_1d(alpha, 1.0).unwrap();
        let base = m.q1(0.7);
        for &c in &[2.0, 4.0, 8.0] {
            let got = m.q1(0.7 * c);
            assert!(
                rel_err(got, c.powf(alpha) * base) < 1e-6,
                "c={c}: {got} vs {}",
                c.powf(alpha) * base
            );
        }
    }

    #[test]
    fn tempered_q_matches_bruteforce_trapezoid() {
        // Independent oracle: trapezoid on a 10^7-node log grid over [1e-8, 50].
        let (alpha, lam, xi) = (1.5, 1.0, 3.0);
        let m = LevyMeasureModel::new(
            MeasureFamily::TemperedStable {
                alpha,
                tempering: lam,
            },
            1,
            1.0,
        )
        .unwrap();

        let n = 10_000_000usize;
        let (a, b) = (1e-8f64, 50f64);
        let step = (b / a).ln() / n as f64;
        let integrand = |h: f64| {
            2.0 * one_minus_cos(xi * h) * (-lam * h).exp() * h.powf(-1.0 - alpha)
        };
        // series head below the grid: integrand ~ ξ²h²·h^{-1-α}, so
        // ∫_0^a ≈ 2·ξ²·a^{2-α}/(2(2-α)) to O(a²) relative
        let mut acc = xi * xi * a.powf(2.0 - alpha) / (2.0 - alpha);
        let mut prev_h = a;
        let mut prev_f = integrand(a);
        for i in 1..=n {
            let h = a * (step * i as f64).exp();
            let f = integrand(h);
            acc += 0.5 * (f + prev_f) * (h - prev_h);
            prev_h = h;
            prev_f = f;
        }
        let got = m.q1(xi);
        assert!(
            rel_err(got, acc) < 1e-6,
            "quadrature {got} vs trapezoid oracle {acc}"
        );
    }

    #[test]
    fn tabulated_stable_consistent_with_parametric() {
        let alpha = 1.3;
        let nodes: Vec<(f64, f64)> = (0..=160)
            .map(|i| {
                let h = 1e-8 * 10f64.powf(i as f64 * 12.0 / 160.0);
                (h, h.powf(-1.0 - alpha))
            })
            .collect();
        let tab = LevyMeasureModel::new(
            MeasureFamily::Tabulated(TabulatedDensity::new(nodes).unwrap()),
            1,
            1.0,
        )
        .unwrap();
        let par = LevyMeasureModel::stable_1d(alpha, 1.0).unwrap();
        for &xi in &[0.5, 3.0, 40.0] {
            assert!(rel_err(tab.q1(xi), par.q1(xi)) < 1e-4, "q at {xi}");
            assert!(rel_err(tab.q1_upper(xi), par.q1_upper(xi)) < 1e-4);
            assert!(rel_err(tab.q1_lower(xi), par.q1_lower(xi)) < 1e-4);
        }
    }

    #[test]
    fn truncated_stable_small_frequency_is_quadratic() {
        let m = LevyMeasureModel::new(
            MeasureFamily::TruncatedStable {
                alpha: 1.5,
                cutoff: 1.0,
            },
            1,
            1.0,
        )
        .unwrap();
        // second moment is finite, so q(ξ) ≍ ξ² near 0
        let r = m.q1(2e-3) / m.q1(1e-3);
        assert!((r - 4.0).abs() < 1e-3, "ratio {r}");
    }

    #[test]
    fn isotropic_two_dimensional_ratio() {
        let alpha = 1.2;
        let m = LevyMeasureModel::new(MeasureFamily::StablePower { alpha }, 2, 1.0).unwrap();
        let qu = m.eval_q_upper(&[3.0, 4.0]);
        let ql = m.eval_q_lower(&[3.0, 4.0]);
        assert!((qu / ql - 2.0 / alpha).abs() < 1e-6);
        // rotation invariance
        let qu_rot = m.eval_q_upper(&[5.0, 0.0]);
        assert!(rel_err(qu, qu_rot) < 1e-8);
    }

    #[test]
    fn non_integrable_tabulated_rejected() {
        // tail exponent -0.5 : not a Lévy measure
        let nodes: Vec<(f64, f64)> = (0..=10)
            .map(|i| {
                let h = 0.1 * 10f64.powf(i as f64 * 0.3);
                (h, h.powf(-0.5))
            })
            .collect();
        assert!(matches!(
            TabulatedDensity::new(nodes),
            Err(Error::NonIntegrableDensity(_))
        ));
    }

    #[test]
    fn asymmetric_modulation_needs_heavy_index() {
        let m = LevyMeasureModel::stable_1d(0.8, 1.0).unwrap();
        let odd = Modulation {
            f: Arc::new(|_x, h: f64| if h > 0.0 { 1.5 } else { 1.0 }),
            lower: 1.0,
            upper: 1.5,
            holder_index: 1.0,
            even_in_h: false,
        };
        assert!(m.with_modulation(odd).is_err());
    }
}
