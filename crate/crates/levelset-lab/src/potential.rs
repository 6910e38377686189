//! Potential-theoretic classifiers: Kato-class membership of target
//! measures, polarity and self-regularity of points, regularity of d-sets,
//! resolvent-ratio surrogates, and the two recurrence criteria
//! (Chung–Fuchs and the drift/tail condition).
//!
//! Heat-kernel bounds enter only through the reduced integral criteria: the
//! convolution family in the upper bound is absorbed by a supremum over
//! centres, so every test below is an integral of ball masses against powers
//! of the envelope q^* and the scaling function ρ.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::measure::SetMeasureModel;
use crate::indices::probe::{convergence_probe, ConvergenceVerdict, Verdict, DEFAULT_PROBE_DEPTH};
use crate::quad::{adaptive, integrate_to_zero};
use crate::symbol::{LevyMeasureModel, SymbolProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Polarity {
    NonPolar,
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    AllBoundaryRegular,
    Unknown,
}

/// Kato-class test: probes
/// ∫_0^1 sup_x ϖ(B(x,r)) (q^*)^{-γ}(1/r) dr/r^{n+1}.
/// Convergence is sufficient for ϖ ∈ K with respect to the γ-subordinate
/// kernel; divergence of the same integrand fails the necessary small-time
/// condition. γ = 1 is the unsubordinated case.
pub fn kato_check(
    profile: &SymbolProfile,
    measure: &SetMeasureModel,
    gamma: f64,
) -> Result<ConvergenceVerdict> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            range: "(0, 1]",
        });
    }
    let n = profile.dim();
    if measure.dim() != n {
        return Err(Error::GridMismatch(format!(
            "profile dimension {n} vs measure dimension {}",
            measure.dim()
        )));
    }
    Ok(convergence_probe(
        |r: f64| {
            measure.sup_ball_mass(r) * profile.q_star_env_at(1.0 / r).powf(-gamma)
                / r.powf(n as f64 + 1.0)
        },
        DEFAULT_PROBE_DEPTH,
    ))
}

/// Truncated Kato integral ∫_0^t of the same integrand (lower cutoff at
/// 2^{-40}); the caller inspects decay to 0 along a t ↓ 0 ladder.
pub fn kato_limit(
    profile: &SymbolProfile,
    measure: &SetMeasureModel,
    gamma: f64,
    t: f64,
) -> Result<f64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            range: "(0, 1]",
        });
    }
    let n = profile.dim() as f64;
    let integrand = |r: f64| {
        measure.sup_ball_mass(r) * profile.q_star_env_at(1.0 / r).powf(-gamma) / r.powf(n + 1.0)
    };
    let floor = 2f64.powi(-40);
    let mut total = 0.0;
    let mut hi = t;
    while hi > floor {
        let lo = (0.5 * hi).max(floor);
        total += adaptive(&integrand, lo, hi, 1e-9, 1e-300, 128);
        hi = lo;
    }
    Ok(total)
}

/// Point polarity: in dimension one a point is non-polar exactly when
/// ∫_1^∞ ds/q^*(s) converges; in dimension ≥ 2 points are always polar.
pub fn point_polarity(profile: &SymbolProfile) -> Result<Polarity> {
    if profile.dim() >= 2 {
        return Ok(Polarity::Polar);
    }
    // substitute s = 1/u to probe on (0, 1]
    let v = convergence_probe(
        |u: f64| profile.q_star_env_at(1.0 / u).recip() / (u * u),
        DEFAULT_PROBE_DEPTH,
    );
    match v.verdict {
        Verdict::Converges => Ok(Polarity::NonPolar),
        Verdict::Diverges => Ok(Polarity::Polar),
        Verdict::Inconclusive => Err(Error::InconclusiveProbe(
            "point polarity integral ∫ ds/q^*(s)".into(),
        )),
    }
}

/// Boundary regularity of a d-set: certified when d > n − α strictly (α from
/// the profile's κ) and the d-collapsed Kato integral at γ = 1 converges;
/// everything else, including d = n − α exactly, stays `Unknown`.
pub fn regularity_dset(profile: &SymbolProfile, d: f64) -> Result<Regularity> {
    let n = profile.dim();
    if !(0.0..=n as f64).contains(&d) {
        return Err(Error::Domain {
            name: "d",
            value: d,
            range: "[0, n]",
        });
    }
    let kappa = profile.kappa();
    if !kappa.holds {
        return Ok(Regularity::Unknown);
    }
    let alpha = kappa.alpha_index;
    if !(d - (n as f64 - alpha) > 1e-12) {
        return Ok(Regularity::Unknown);
    }
    let v = convergence_probe(
        |r: f64| r.powf(d - n as f64 - 1.0) * profile.q_star_env_at(1.0 / r).recip(),
        DEFAULT_PROBE_DEPTH,
    );
    Ok(if v.converges() {
        Regularity::AllBoundaryRegular
    } else {
        Regularity::Unknown
    })
}

/// One rung of the resolvent-ratio ladder.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResolventPoint {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

/// Shared surrogate resolvent G(λ) = λ^{-1} ∫_0^λ e^{-u} ρ_{u/λ}^{n-d} du,
/// the reduced form both heat-kernel bounds collapse to for a d-measure.
pub fn surrogate_resolvent(profile: &SymbolProfile, d: f64, lambda: f64) -> Result<f64> {
    let n = profile.dim() as f64;
    let kappa = profile.kappa();
    if kappa.holds && n - d >= kappa.alpha_index {
        return Err(Error::Domain {
            name: "d",
            value: d,
            range: "d > n - alpha (surrogate resolvent integrable)",
        });
    }
    // substitute u = λ v: G = ∫_0^1 e^{-λ v} ρ_v^{n-d} dv
    let f = |v: f64| {
        let rho = profile.rho(v).expect("v in (0,1]");
        (-lambda * v).exp() * rho.powf(n - d)
    };
    Ok(integrate_to_zero(&f, 1.0, 1e-9))
}

/// Resolvent-ratio surrogate for point/set regularity: for each λ the ratio
/// of the lower-bound resolvent at a support point to the upper-bound
/// supremum, both through `surrogate_resolvent`. Positivity of the liminf is
/// reported as "bounded below on the audited ladder"; the constants use unit
/// kernel amplitudes.
pub fn regularity_ratio(
    profile: &SymbolProfile,
    measure: &SetMeasureModel,
    lambdas: &[f64],
) -> Result<Vec<ResolventPoint>> {
    let d = measure.d_exponent().ok_or(Error::UnsupportedMeasure)?;
    let mass = measure.mass();
    let c_low = 1.0 / (d + 1.0); // ∫_0^1 r^d dr
    let c_up = libm::tgamma(d + 1.0); // ∫_0^∞ r^d e^{-r} dr
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if !(lambda > 0.0) {
            return Err(Error::Domain {
                name: "lambda",
                value: lambda,
                range: "(0, ∞)",
            });
        }
        let g = surrogate_resolvent(profile, d, lambda)?;
        let lower = mass * c_low * g;
        let tail = (-lambda).exp() / (1.0 - (-lambda).exp());
        let upper = mass * c_up * (1.0 + tail) * g;
        out.push(ResolventPoint {
            lambda,
            lower,
            upper,
            ratio: lower / upper,
        });
    }
    Ok(out)
}

/// Chung–Fuchs recurrence for one-dimensional symbols:
/// recurrent ⇔ ∫_{|ξ|≤1} dξ / q(ξ) = ∞.
pub fn chung_fuchs_recurrent(profile: &SymbolProfile) -> Result<bool> {
    if profile.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            n: profile.dim(),
            context: "Chung–Fuchs criterion is one-dimensional",
        });
    }
    let v = convergence_probe(|xi: f64| profile.q_at(xi).recip(), DEFAULT_PROBE_DEPTH);
    match v.verdict {
        Verdict::Diverges => Ok(true),
        Verdict::Converges => Ok(false),
        Verdict::Inconclusive => Err(Error::InconclusiveProbe(
            "Chung–Fuchs integral ∫ dξ/q(ξ)".into(),
        )),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DriftRecurrence {
    /// sup over the audited grid of B(x)·x + D(x)·|x|.
    pub sup_value: f64,
    /// Whether the quantity stays bounded (no growth trend across the grid).
    pub holds: bool,
    pub points: Vec<(f64, f64)>,
}

/// Drift/tail recurrence condition: B(x)·x + D(x)·|x| ≤ C for large |x|,
/// with B(x) = b(x) + ∫_{1<|z|≤|x|} z m(x,z) μ(dz) and
/// D(x) = ∫_{|z|≥|x|} |z| m(x,z) μ(dz), audited on the supplied grid of
/// large |x|. `holds` compares the outer half of the grid against the inner
/// half to detect growth.
pub fn drift_recurrence_check(model: &LevyMeasureModel, x_grid: &[f64]) -> Result<DriftRecurrence> {
    if model.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            n: model.dim(),
            context: "drift recurrence condition is one-dimensional",
        });
    }
    if x_grid.len() < 4 {
        return Err(Error::InsufficientData {
            needed: 4,
            found: x_grid.len(),
        });
    }
    let b = |x: f64| model.drift().map_or(0.0, |d| (d.f)(x));
    let modulate = |x: f64, z: f64| model.modulation().map_or(1.0, |m| (m.f)(x, z));

    let mut points = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let ax = x.abs();
        // B(x): odd part of the modulated density over 1 < z ≤ |x|
        let mut bx = b(x);
        if ax > 1.0 {
            let f = |z: f64| {
                let g = model.density_oneside(z);
                z * g * (modulate(x, z) - modulate(x, -z))
            };
            bx += adaptive(&f, 1.0, ax.min(model.support_hi()), 1e-9, 1e-300, 256);
        }
        // D(x): first tail moment with modulation (errors if the base moment
        // is infinite)
        model.first_moment_above(ax.max(1e-9))?;
        let hi = model.support_hi();
        let d_integrand = |z: f64| {
            let g = model.density_oneside(z);
            z * g * (modulate(x, z) + modulate(x, -z))
        };
        let dx = if hi.is_finite() {
            if ax >= hi {
                0.0
            } else {
                adaptive(&d_integrand, ax.max(1e-9), hi, 1e-9, 1e-300, 256)
            }
        } else {
            crate::quad::integrate_tail(&d_integrand, ax.max(1e-9), 1e-9)
        };
        points.push((x, bx * x + dx * ax));
    }

    let sup_value = points.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
    let mut sorted: Vec<(f64, f64)> = points.clone();
    sorted.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    let half = sorted.len() / 2;
    let inner_max = sorted[..half]
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let outer_max = sorted[half..]
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let scale = sup_value.abs().max(1e-12);
    let holds = outer_max <= inner_max + 0.05 * scale || sup_value <= 1e-12;
    Ok(DriftRecurrence {
        sup_value,
        holds,
        points,
    })
}

/// Audit of the three tail/monotonicity conditions a)–c) on a jump kernel
/// profile 𝔤 (even, one-sided argument):
///   a) 𝔤(h) ≤ C h^{-1-η} for h ≥ 1 with η > 1,
///   b) h^{2+ε} 𝔤(h) nondecreasing on (0, 1] for some ε ∈ (0, 1),
///   c) h^δ 𝔤(h) nonincreasing on (0, 1] for some δ > 1.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailConditions {
    pub tail_bound: bool,
    pub small_scale_increasing: bool,
    pub small_scale_decreasing: bool,
}

pub fn example_kernel_conditions<F: Fn(f64) -> f64>(
    g: F,
    eta: f64,
    epsilon: f64,
    delta: f64,
) -> TailConditions {
    // a) envelope h^{1+η} 𝔤(h) must not grow on [1, 1e4]
    let tail_bound = if eta > 1.0 {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..=48 {
            let h = 10f64.powf(4.0 * i as f64 / 48.0);
            let v = g(h) * h.powf(1.0 + eta);
            if v > 0.0 && v.is_finite() {
                xs.push(h.ln());
                ys.push(v.ln());
            } else if !v.is_finite() {
                xs.clear();
                break;
            }
        }
        !xs.is_empty() && crate::stats::linear_fit(&xs, &ys).slope <= 5e-3
    } else {
        false
    };

    let monotone_on_unit = |exponent: f64, increasing: bool| -> bool {
        let mut prev = f64::NAN;
        for i in 0..=96 {
            let h = 10f64.powf(-4.0 + 4.0 * i as f64 / 96.0); // (1e-4, 1]
            let v = h.powf(exponent) * g(h);
            if prev.is_finite() {
                let ok = if increasing {
                    v >= prev * (1.0 - 1e-10)
                } else {
                    v <= prev * (1.0 + 1e-10)
                };
                if !ok {
                    return false;
                }
            }
            prev = v;
        }
        true
    };

    let small_scale_increasing =
        epsilon > 0.0 && epsilon < 1.0 && monotone_on_unit(2.0 + epsilon, true);
    let small_scale_decreasing = delta > 1.0 && monotone_on_unit(delta, false);
    TailConditions {
        tail_bound,
        small_scale_increasing,
        small_scale_decreasing,
    }
}

/// Lower potential comparison for the paired process:
/// ∫_sep^{1/ρ₁} dr / (r³ q^U(1/r)), zero when the range is empty.
pub fn collision_potential_lower(profile: &SymbolProfile, separation: f64) -> Result<f64> {
    if !(separation > 0.0 && separation < 1.0) {
        return Err(Error::Domain {
            name: "separation",
            value: separation,
            range: "(0, 1)",
        });
    }
    let rho1 = profile.rho(1.0)?;
    let upper = 1.0 / rho1;
    if separation >= upper {
        return Ok(0.0);
    }
    let integrand = |r: f64| (r.powi(3) * profile.q_upper_at(1.0 / r)).recip();
    // log panels across the possibly wide range
    let mut total = 0.0;
    let mut lo = separation;
    while lo < upper {
        let hi = (lo * 4.0).min(upper);
        total += adaptive(&integrand, lo, hi, 1e-10, 1e-300, 128);
        lo = hi;
    }
    Ok(total)
}
