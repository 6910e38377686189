//! Euler scheme for the state-dependent generator: per step, drift plus a
//! thinned compound-Poisson draw of the jumps above a cutoff plus a Gaussian
//! replacement of the jumps below it (Asmussen–Rosiński style), with the
//! compensator of the (δ, 1] band subtracted when the data is asymmetric.

use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quad::adaptive;
use crate::simulate::rng::{path_rng, poisson, std_normal, unit_open01, SeedInfo};
use crate::simulate::{PathGrid, PathSample, SchemeTag};
use crate::symbol::{LevyMeasureModel, MeasureFamily};

#[derive(Debug, Clone, Copy)]
pub struct EulerOptions {
    /// Jump-size cutoff between the compound-Poisson and Gaussian regimes.
    /// `None` picks δ so the expected jump count per step is `jumps_per_step`.
    pub jump_cutoff: Option<f64>,
    /// Target mean number of candidate jumps per step for the automatic cutoff.
    pub jumps_per_step: f64,
    /// Replace the sub-cutoff jumps by a matched-variance Gaussian.
    pub gaussian_correction: bool,
}

impl Default for EulerOptions {
    fn default() -> Self {
        Self {
            jump_cutoff: None,
            jumps_per_step: 4.0,
            gaussian_correction: true,
        }
    }
}

/// Euler path for the Lévy-type model with default options.
pub fn sample_levy_type(
    model: &LevyMeasureModel,
    grid: PathGrid,
    seed: SeedInfo,
) -> Result<PathSample> {
    sample_levy_type_with(model, grid, seed, &EulerOptions::default())
}

pub fn sample_levy_type_with(
    model: &LevyMeasureModel,
    grid: PathGrid,
    seed: SeedInfo,
    opts: &EulerOptions,
) -> Result<PathSample> {
    if model.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            n: model.dim(),
            context: "the Euler scheme is one-dimensional",
        });
    }
    if matches!(model.family(), MeasureFamily::AxisStable { .. }) {
        return Err(Error::Model(
            "axis-product measures have no one-dimensional Euler scheme".into(),
        ));
    }
    let dt = grid.dt;
    let cutoff = match opts.jump_cutoff {
        Some(d) if d > 0.0 => d,
        Some(d) => {
            return Err(Error::Domain {
                name: "jump_cutoff",
                value: d,
                range: "(0, ∞)",
            })
        }
        None => auto_cutoff(model, dt, opts.jumps_per_step),
    };

    let tail_mass = model.mass_above(cutoff);
    let small_var = model.second_moment_below(cutoff);
    let c_upper = model.modulation().map_or(1.0, |m| m.upper);
    let candidate_rate = c_upper * tail_mass;
    let sampler = TailJumpSampler::new(model, cutoff)?;
    // the (δ, 1] band carries a compensator only when m is odd-asymmetric
    let m_even = model.modulation().map_or(true, |m| m.even_in_h);

    let mut rng = path_rng(seed);
    let mut values = Vec::with_capacity(grid.steps + 1);
    let mut x = 0.0f64;
    values.push(x);
    for _ in 0..grid.steps {
        let mut next = x;

        // drift
        if let Some(d) = model.drift() {
            next += (d.f)(x) * dt;
        }

        // compensator of the (δ, 1] band
        if !m_even && cutoff < 1.0 {
            let f = |h: f64| {
                let g = model.density_oneside(h);
                let m_plus = model.modulation().map_or(1.0, |m| (m.f)(x, h));
                let m_minus = model.modulation().map_or(1.0, |m| (m.f)(x, -h));
                h * g * (m_plus - m_minus)
            };
            let hi = 1.0f64.min(model.support_hi());
            if hi > cutoff {
                next -= dt * adaptive(&f, cutoff, hi, 1e-8, 1e-300, 128);
            }
        }

        // thinned compound Poisson above the cutoff
        let n_jumps = poisson(&mut rng, candidate_rate * dt);
        for _ in 0..n_jumps {
            let h = sampler.sample(&mut rng);
            let m_val = model.modulation().map_or(1.0, |m| (m.f)(x, h));
            if m_val > c_upper * (1.0 + 1e-12) {
                return Err(Error::ModulationEnvelope {
                    observed: m_val,
                    declared: c_upper,
                    x,
                    h,
                });
            }
            if unit_open01(&mut rng) < m_val / c_upper {
                next += h;
            }
        }

        // Gaussian replacement of the sub-cutoff activity
        if opts.gaussian_correction && small_var > 0.0 {
            let probe = cutoff * 1e-3;
            let m_near_zero = model.modulation().map_or(1.0, |m| {
                0.5 * ((m.f)(x, probe) + (m.f)(x, -probe))
            });
            let sigma = (dt * m_near_zero * small_var).sqrt();
            next += sigma * std_normal(&mut rng);
        }

        x = next;
        values.push(x);
    }
    let mut p = PathSample::new(grid, 1, values, SchemeTag::LevyTypeEuler, seed, Some(cutoff))?;
    p.jump_cutoff = Some(cutoff);
    Ok(p)
}

/// Cutoff with expected candidate count per step ≈ `target` (bisection on the
/// tail mass).
fn auto_cutoff(model: &LevyMeasureModel, dt: f64, target: f64) -> f64 {
    let want = target / dt;
    let mut lo = 1e-12f64;
    let mut hi = model.support_hi().min(1e6);
    if model.mass_above(lo) <= want {
        return lo;
    }
    for _ in 0..200 {
        let mid = (lo.ln() + hi.ln()).mul_add(0.5, 0.0).exp();
        if model.mass_above(mid) > want {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo < 1.0 + 1e-12 {
            break;
        }
    }
    hi
}

/// Inverse-CDF (or rejection) sampler for |h| from μ restricted to
/// {|h| > δ}, with a symmetric sign flip.
struct TailJumpSampler {
    cutoff: f64,
    kind: TailKind,
}

enum TailKind {
    Power {
        alpha: f64,
    },
    PowerTruncated {
        alpha: f64,
        cutoff_hi: f64,
    },
    TemperedRejection {
        alpha: f64,
        tempering: f64,
    },
    /// Piecewise power-law segments (tabulated): (cumulative mass, h_lo,
    /// exponent, density at h_lo, segment mass).
    Segments {
        total: f64,
        segs: Vec<Segment>,
    },
}

struct Segment {
    cum_before: f64,
    mass: f64,
    h_lo: f64,
    h_hi: f64,
    exponent: f64,
}

impl TailJumpSampler {
    fn new(model: &LevyMeasureModel, cutoff: f64) -> Result<Self> {
        let kind = match model.family() {
            MeasureFamily::StablePower { alpha } => TailKind::Power { alpha: *alpha },
            MeasureFamily::TruncatedStable { alpha, cutoff: hi } => {
                if cutoff >= *hi {
                    return Err(Error::Model(
                        "jump cutoff at or above the truncation radius leaves no jumps".into(),
                    ));
                }
                TailKind::PowerTruncated {
                    alpha: *alpha,
                    cutoff_hi: *hi,
                }
            }
            MeasureFamily::TemperedStable { alpha, tempering } => TailKind::TemperedRejection {
                alpha: *alpha,
                tempering: *tempering,
            },
            MeasureFamily::Tabulated(t) => {
                // one-sided piecewise power segments above the cutoff, plus a
                // power-law tail segment from the last node
                let mut segs: Vec<Segment> = Vec::new();
                let mut cum = 0.0f64;
                let eval = |h: f64| t.eval(h);
                let (grid_lo, grid_hi) = t.grid_range();
                let mut edges: Vec<f64> = vec![cutoff.max(grid_lo.min(cutoff))];
                // sub-grid part handled as one extrapolated segment
                if cutoff < grid_lo {
                    edges.push(grid_lo);
                }
                let mut h = grid_lo;
                while h < grid_hi {
                    let next = (h * 10f64.powf(0.05)).min(grid_hi);
                    if next > cutoff {
                        edges.push(next.max(cutoff));
                    }
                    h = next;
                }
                edges.sort_by(f64::total_cmp);
                edges.dedup_by(|a, b| (*a - *b).abs() < 1e-15 * b.abs());
                for w in edges.windows(2) {
                    let (lo, hi) = (w[0], w[1]);
                    if hi <= lo {
                        continue;
                    }
                    let (glo, ghi) = (eval(lo), eval(hi));
                    let p = (ghi / glo).ln() / (hi / lo).ln();
                    let mass = power_segment_mass(glo, lo, hi, p);
                    segs.push(Segment {
                        cum_before: cum,
                        mass,
                        h_lo: lo,
                        h_hi: hi,
                        exponent: p,
                    });
                    cum += mass;
                }
                // tail beyond the grid: exact power-law segment to infinity
                let p_tail = {
                    let h0 = grid_hi;
                    (eval(h0 * 1.01) / eval(h0)).ln() / 1.01f64.ln()
                };
                let g_hi = eval(grid_hi);
                let tail_mass = -g_hi * grid_hi / (p_tail + 1.0); // p_tail < -1
                segs.push(Segment {
                    cum_before: cum,
                    mass: tail_mass,
                    h_lo: grid_hi,
                    h_hi: f64::INFINITY,
                    exponent: p_tail,
                });
                cum += tail_mass;
                TailKind::Segments {
                    total: cum,
                    segs,
                }
            }
            MeasureFamily::AxisStable { .. } => unreachable!("guarded by caller"),
        };
        Ok(Self { cutoff, kind })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
        let u = unit_open01(rng);
        let mag = match &self.kind {
            TailKind::Power { alpha } => self.cutoff * u.powf(-1.0 / alpha),
            TailKind::PowerTruncated { alpha, cutoff_hi } => {
                let a = self.cutoff.powf(-alpha);
                let b = cutoff_hi.powf(-alpha);
                (a - u * (a - b)).powf(-1.0 / alpha)
            }
            TailKind::TemperedRejection { alpha, tempering } => {
                let mut u = u;
                loop {
                    let y = self.cutoff * u.powf(-1.0 / alpha);
                    if unit_open01(rng) < (-tempering * (y - self.cutoff)).exp() {
                        break y;
                    }
                    u = unit_open01(rng);
                }
            }
            TailKind::Segments { total, segs } => {
                let target = u * total;
                let idx = segs
                    .partition_point(|s| s.cum_before + s.mass < target)
                    .min(segs.len() - 1);
                let s = &segs[idx];
                let w = ((target - s.cum_before) / s.mass).clamp(0.0, 1.0);
                invert_power_segment(s, w)
            }
        };
        sign * mag
    }
}

/// ∫_lo^hi g_lo (h/lo)^p dh.
fn power_segment_mass(g_lo: f64, lo: f64, hi: f64, p: f64) -> f64 {
    if (p + 1.0).abs() < 1e-12 {
        g_lo * lo * (hi / lo).ln()
    } else {
        g_lo * lo / (p + 1.0) * ((hi / lo).powf(p + 1.0) - 1.0)
    }
}

/// Inverse CDF within one power-law segment at mass fraction w.
fn invert_power_segment(s: &Segment, w: f64) -> f64 {
    let p = s.exponent;
    if s.h_hi.is_finite() {
        if (p + 1.0).abs() < 1e-12 {
            s.h_lo * (s.h_hi / s.h_lo).powf(w)
        } else {
            let span = (s.h_hi / s.h_lo).powf(p + 1.0) - 1.0;
            s.h_lo * (1.0 + w * span).powf(1.0 / (p + 1.0))
        }
    } else {
        // tail segment, p < -1: survival (h/h_lo)^{p+1}
        s.h_lo * (1.0 - w).powf(1.0 / (p + 1.0))
    }
}
