//! Level/collision set extraction and fractal dimension estimation.

pub mod boxdim;
pub mod extract;
pub mod hawkes;

use serde::Serialize;

use crate::error::{Error, Result};

pub use boxdim::{box_counting_dim, suggest_band};
pub use extract::{
    collision_locations, collision_times, extraction_epsilon, level_set_times,
};
pub use hawkes::hawkes_probe_dim;

/// Sorted, deduplicated finite set of reals inside an ambient interval,
/// carrying the resolution at which it was extracted.
#[derive(Debug, Clone, Serialize)]
pub struct PointSet {
    points: Vec<f64>,
    ambient: (f64, f64),
    resolution: f64,
}

impl PointSet {
    pub fn new(mut points: Vec<f64>, ambient: (f64, f64), resolution: f64) -> Result<Self> {
        if !(ambient.1 > ambient.0) {
            return Err(Error::Domain {
                name: "ambient",
                value: ambient.1 - ambient.0,
                range: "non-degenerate interval",
            });
        }
        if !(resolution >= 0.0) {
            return Err(Error::Domain {
                name: "resolution",
                value: resolution,
                range: "[0, ∞)",
            });
        }
        points.retain(|v| v.is_finite());
        points.sort_by(f64::total_cmp);
        if points
            .first()
            .is_some_and(|&x| x < ambient.0 - 1e-12 * ambient.1.abs().max(1.0))
            || points
                .last()
                .is_some_and(|&x| x > ambient.1 + 1e-12 * ambient.1.abs().max(1.0))
        {
            return Err(Error::Domain {
                name: "points",
                value: f64::NAN,
                range: "inside the ambient interval",
            });
        }
        // dedup at half the extraction resolution, so grid-spaced points
        // survive while crossing refinements collapse onto their grid node
        let mut dedup: Vec<f64> = Vec::with_capacity(points.len());
        for x in points {
            match dedup.last() {
                Some(&last) if x - last < 0.5 * resolution => {}
                _ => dedup.push(x),
            }
        }
        Ok(Self {
            points: dedup,
            ambient,
            resolution,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
    pub fn ambient(&self) -> (f64, f64) {
        self.ambient
    }
    pub fn resolution(&self) -> f64 {
        self.resolution
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The set as a union of closed intervals: each point fattened by half
    /// the resolution, overlaps coalesced.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        let w = 0.5 * self.resolution.max(f64::MIN_POSITIVE);
        let mut out: Vec<(f64, f64)> = Vec::new();
        for &x in &self.points {
            let (lo, hi) = (x - w, x + w);
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = hi,
                _ => out.push((lo, hi)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DimMethod {
    BoxCount,
    HawkesProbe,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct EstimateFlags {
    /// Set for empty or single-point inputs where no scaling range exists.
    pub degenerate: bool,
    /// Probe only: p̂(γ) broke monotonicity beyond 3 standard errors.
    pub monotonicity_violation: bool,
    /// Probe only: the hit probability never crossed the threshold on the
    /// supplied γ grid.
    pub saturated: bool,
}

/// A dimension estimate with its diagnostic trail: the per-scale count table
/// for box counting, or the (γ, p̂) curve for the subordinator-range probe.
/// The probe's `interval` is a diagnostic bracket, not a confidence interval.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Dyadic scale band used by box counting (k_min, k_max); the probe
    /// stores the index range of the γ grid it crossed on.
    pub band: (u32, u32),
    pub interval: (f64, f64),
    pub method: DimMethod,
    /// (log₂ scale, log₂ count) rows for box counting; (γ, p̂) for the probe.
    pub table: Vec<(f64, f64)>,
    pub flags: EstimateFlags,
}
