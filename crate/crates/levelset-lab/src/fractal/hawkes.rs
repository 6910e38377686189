//! Subordinator-range probe: bracket the dimension of a time set by testing,
//! for a grid of indices γ, whether the range of an independent γ-stable
//! subordinator meets the set.
//!
//! The range of a sparser subordinator (small γ) only meets large sets, so
//! the hit probability p̂(γ) rises with γ and crosses 1/2 near γ = 1 − dim.
//! The estimate is 1 − γ at the interpolated crossing; the returned interval
//! brackets the crossing on the grid and is diagnostic, not a confidence
//! interval.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fractal::{DimMethod, DimensionEstimate, EstimateFlags, PointSet};
use crate::simulate::rng::{path_rng, SeedInfo};
use crate::simulate::kanter_positive_stable;

/// Safety cap on steps per probe trajectory.
const MAX_STEPS: usize = 2_000_000;

/// A start component at least this many resolution units long is real
/// interval structure, not a fattened point, and is a sure hit.
const SURE_HIT_LENGTHS: f64 = 4.0;

/// Micro-components ending within this many resolution units of the start
/// are artifacts of the accumulation region and are excluded.
const START_EXCLUSION_LENGTHS: f64 = 32.0;

/// One probe trajectory: does the range of a γ-subordinator started at 0
/// meet the interval union? Steps are exact stable increments over
/// position-adapted time steps (so the law is exact); the step-size target
/// shrinks to ε/8 near interval edges, and a jump that straddles an interval
/// counts as a miss — the range is the closure of visited points, and a
/// straddling jump never visits the interval.
fn range_hits(intervals: &[(f64, f64)], gamma: f64, eps: f64, rng: &mut ChaCha8Rng) -> bool {
    let end = intervals.last().map(|&(_, hi)| hi).unwrap_or(0.0);
    // exp(E log S) for the Kanter variate: the geometric-mean step scale
    let log_scale = (1.0 / gamma - 1.0) * 0.577_215_664_901_532_9;
    let s0 = log_scale.exp();
    let mut v = 0.0f64;
    let mut idx = 0usize;
    for _ in 0..MAX_STEPS {
        // skip intervals the path has already passed
        while idx < intervals.len() && intervals[idx].1 < v {
            idx += 1;
        }
        if idx >= intervals.len() || v > end {
            return false;
        }
        let (lo, hi) = intervals[idx];
        if v >= lo && v <= hi {
            return true;
        }
        let dist = lo - v;
        let target = (0.5 * dist).max(eps / 8.0);
        let dt = (target / s0).powf(gamma);
        v += dt.powf(1.0 / gamma) * kanter_positive_stable(gamma, rng);
    }
    false
}

/// Probe a point set with `m_samples` independent subordinator ranges per γ.
///
/// The set is normalised to [0, 1] and its leading edge is pushed off the
/// origin by one resolution unit: the subordinator accumulates at its start
/// point, so any fattened set touching 0 would register free hits there and
/// saturate the probe regardless of its dimension. Truncating the start
/// component keeps a genuinely full interval saturating (crossing a tiny
/// level lands inside it with probability → 1) while thin sets are probed by
/// their structure.
pub fn hawkes_probe_dim(
    set: &PointSet,
    gamma_grid: &[f64],
    m_samples: usize,
    master_seed: u64,
) -> Result<DimensionEstimate> {
    if gamma_grid.len() < 2 || m_samples == 0 {
        return Err(Error::Domain {
            name: "gamma_grid/m_samples",
            value: gamma_grid.len() as f64,
            range: "≥ 2 gammas, ≥ 1 sample",
        });
    }
    let mut grid: Vec<f64> = gamma_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    if grid[0] <= 0.0 || grid[grid.len() - 1] >= 1.0 {
        return Err(Error::Domain {
            name: "gamma",
            value: grid[0],
            range: "(0, 1)",
        });
    }

    if set.is_empty() {
        return Ok(DimensionEstimate {
            estimate: 0.0,
            std_error: 0.0,
            band: (0, 0),
            interval: (0.0, 0.0),
            method: DimMethod::HawkesProbe,
            table: grid.iter().map(|&g| (g, 0.0)).collect(),
            flags: EstimateFlags {
                degenerate: true,
                ..Default::default()
            },
        });
    }

    // normalise to [0, 1]
    let (a, b) = set.ambient();
    let span = b - a;
    let eps = (set.resolution() / span).max(1e-12);
    let raw: Vec<(f64, f64)> = set
        .intervals()
        .iter()
        .map(|&(lo, hi)| (((lo - a) / span).max(0.0), (hi - a) / span))
        .collect();

    // Start handling. The subordinator accumulates at its start point, so a
    // component that touches 0 and has genuine interval structure (length
    // well above the resolution) is visited almost surely: such sets
    // saturate the probe at every γ. Components at sub-resolution distance
    // from 0 are fattening artifacts of the accumulation region instead;
    // they would award free hits at every γ and are excluded.
    let start_is_sure_hit = raw
        .first()
        .is_some_and(|&(lo, hi)| lo <= eps && (hi - lo) >= SURE_HIT_LENGTHS * eps);
    let exclusion = START_EXCLUSION_LENGTHS * eps;
    let intervals: Vec<(f64, f64)> = raw
        .iter()
        .filter_map(|&(lo, hi)| {
            if hi <= exclusion && (hi - lo) < SURE_HIT_LENGTHS * eps {
                return None;
            }
            let lo = lo.max(eps);
            (hi > lo).then_some((lo, hi))
        })
        .collect();

    if start_is_sure_hit {
        let table: Vec<(f64, f64)> = grid.iter().map(|&g| (g, 1.0)).collect();
        return Ok(DimensionEstimate {
            estimate: 1.0 - grid[0],
            std_error: 0.0,
            band: (0, 0),
            interval: (1.0 - grid[0], 1.0),
            method: DimMethod::HawkesProbe,
            table,
            flags: EstimateFlags {
                degenerate: false,
                monotonicity_violation: false,
                saturated: true,
            },
        });
    }
    if intervals.is_empty() {
        return Ok(DimensionEstimate {
            estimate: 0.0,
            std_error: 0.0,
            band: (0, 0),
            interval: (0.0, 0.0),
            method: DimMethod::HawkesProbe,
            table: grid.iter().map(|&g| (g, 0.0)).collect(),
            flags: EstimateFlags {
                degenerate: true,
                ..Default::default()
            },
        });
    }

    let mut table: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    let mut ses: Vec<f64> = Vec::with_capacity(grid.len());
    for (gi, &gamma) in grid.iter().enumerate() {
        let hits: usize = crate::simulate::sample_batch(m_samples, master_seed, |seed| {
            let mut rng = path_rng(SeedInfo {
                master: seed.master ^ ((gi as u64 + 1) << 32),
                path_index: seed.path_index,
            });
            range_hits(&intervals, gamma, eps, &mut rng) as usize
        })
        .into_iter()
        .sum();
        let p = hits as f64 / m_samples as f64;
        table.push((gamma, p));
        ses.push((p * (1.0 - p) / m_samples as f64).sqrt());
    }

    // monotonicity of p̂ in γ (nondecreasing) within 3 standard errors
    let mut monotonicity_violation = false;
    for i in 1..table.len() {
        let tol = 3.0 * (ses[i].powi(2) + ses[i - 1].powi(2)).sqrt();
        if table[i].1 < table[i - 1].1 - tol {
            monotonicity_violation = true;
        }
    }

    // threshold crossing (p̂ rises through 1/2)
    let threshold = 0.5;
    let below = table.iter().rposition(|&(_, p)| p < threshold);
    let above = table.iter().position(|&(_, p)| p >= threshold);
    let (estimate, interval, std_error, band, saturated) = match (below, above) {
        (Some(bi), Some(ai)) if ai > 0 && bi + 1 >= ai => {
            // interpolate between the last sub-threshold point and the first
            // super-threshold point
            let (g0, p0) = table[ai - 1];
            let (g1, p1) = table[ai];
            let w = if p1 > p0 { (threshold - p0) / (p1 - p0) } else { 0.5 };
            let g_cross = g0 + w * (g1 - g0);
            let slope = (p1 - p0) / (g1 - g0);
            let se_p = 0.5 * (ses[ai] + ses[ai - 1]);
            let se = if slope.abs() > 1e-9 {
                (se_p / slope).abs()
            } else {
                g1 - g0
            };
            let mut lo_dim = 1.0 - g1;
            let mut hi_dim = 1.0 - g0;
            if monotonicity_violation {
                // widen to the full undecided range
                lo_dim = 1.0 - table.iter().filter(|&&(_, p)| p >= threshold).map(|&(g, _)| g).fold(f64::NEG_INFINITY, f64::max).max(g1);
                hi_dim = 1.0 - table.iter().filter(|&&(_, p)| p < threshold).map(|&(g, _)| g).fold(f64::INFINITY, f64::min).min(g0);
            }
            (
                1.0 - g_cross,
                (lo_dim, hi_dim),
                se,
                (ai as u32 - 1, ai as u32),
                false,
            )
        }
        (None, Some(_)) => {
            // saturated high: even the sparsest probe hits
            let g = grid[0];
            (1.0 - g, (1.0 - g, 1.0), 0.0, (0, 0), true)
        }
        (Some(_), None) => {
            // saturated low: even the densest probe misses
            let g = grid[grid.len() - 1];
            (
                1.0 - g,
                (0.0, 1.0 - g),
                0.0,
                ((grid.len() - 1) as u32, (grid.len() - 1) as u32),
                true,
            )
        }
        _ => unreachable!("table is non-empty"),
    };

    Ok(DimensionEstimate {
        estimate,
        std_error,
        band,
        interval,
        method: DimMethod::HawkesProbe,
        table,
        flags: EstimateFlags {
            degenerate: false,
            monotonicity_violation,
            saturated,
        },
    })
}
