//! Box-counting dimension: occupied dyadic intervals at scales 2^{-k},
//! regression of log₂ N_k against k over a middle band of scales.

use crate::error::{Error, Result};
use crate::fractal::{DimMethod, DimensionEstimate, EstimateFlags, PointSet};
use crate::stats::linear_fit;

/// Count distinct dyadic boxes of width 2^{-k} occupied by the normalised
/// points (exactly; points are sorted).
fn count_boxes(normalised: &[f64], k: u32) -> u64 {
    let scale = 2f64.powi(k as i32);
    let top = scale as u64 - 1;
    let mut count = 0u64;
    let mut last: Option<u64> = None;
    for &x in normalised {
        let cell = ((x * scale) as u64).min(top);
        if last != Some(cell) {
            count += 1;
            last = Some(cell);
        }
    }
    count
}

/// Slope of log₂ N_k versus k over k ∈ [k_min, k_max]. Counts are computed
/// on coordinates normalised to the ambient interval, so the estimate is
/// exactly invariant under affine rescaling of points and ambient together.
pub fn box_counting_dim(set: &PointSet, k_min: u32, k_max: u32) -> Result<DimensionEstimate> {
    if set.is_empty() {
        return Err(Error::TooFewScales {
            found: 0,
            needed: 4,
        });
    }
    if k_max < k_min + 3 {
        return Err(Error::TooFewScales {
            found: (k_max.saturating_sub(k_min) + 1) as usize,
            needed: 4,
        });
    }
    let (a, b) = set.ambient();
    let span = b - a;
    let normalised: Vec<f64> = set.points().iter().map(|&x| (x - a) / span).collect();

    let mut ks = Vec::new();
    let mut logs = Vec::new();
    let mut table = Vec::new();
    for k in k_min..=k_max {
        let n = count_boxes(&normalised, k);
        let log_n = (n as f64).log2();
        ks.push(k as f64);
        logs.push(log_n);
        table.push((k as f64, log_n));
    }
    let fit = linear_fit(&ks, &logs);
    let estimate = fit.slope.clamp(0.0, 1.0);
    let flags = EstimateFlags {
        degenerate: set.len() < 2,
        ..Default::default()
    };
    Ok(DimensionEstimate {
        estimate,
        std_error: fit.slope_se,
        band: (k_min, k_max),
        interval: (estimate - fit.slope_se, estimate + fit.slope_se),
        method: DimMethod::BoxCount,
        table,
        flags,
    })
}

/// Default regression band for a point set: the feasible dyadic range runs
/// from k = 0 down to the set's resolution; the two finest and two coarsest
/// octaves are excluded (fine scales are corrupted by ε-fattening, coarse
/// ones by saturation).
pub fn suggest_band(set: &PointSet) -> (u32, u32) {
    let (a, b) = set.ambient();
    let span = b - a;
    let res = set.resolution().max(span * 2f64.powi(-40));
    let k_res = (span / res).log2().floor().max(4.0) as u32;
    let k_min = 2u32;
    let k_max = k_res.saturating_sub(2).max(k_min + 3);
    (k_min, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn set_of(points: Vec<f64>, ambient: (f64, f64), res: f64) -> PointSet {
        PointSet::new(points, ambient, res).unwrap()
    }

    #[test]
    fn dense_grid_has_dimension_one() {
        let pts: Vec<f64> = (0..(1 << 20)).map(|i| i as f64 * 2f64.powi(-20)).collect();
        let set = set_of(pts, (0.0, 1.0), 0.0);
        let est = box_counting_dim(&set, 2, 16).unwrap();
        assert!((est.estimate - 1.0).abs() < 0.01, "{}", est.estimate);
    }

    #[test]
    fn single_point_has_dimension_zero() {
        let set = set_of(vec![0.37], (0.0, 1.0), 0.0);
        let est = box_counting_dim(&set, 2, 12).unwrap();
        assert!(est.estimate.abs() < 0.01);
        assert!(est.flags.degenerate);
    }

    /// Left endpoints of the depth-`depth` middle-thirds construction.
    fn cantor_endpoints(depth: u32) -> Vec<f64> {
        let mut pts = vec![0.0f64];
        for level in 1..=depth {
            let offset = 2.0 * 3f64.powi(-(level as i32)); // (1-ρ)·ρ^{level-1}, ρ=1/3
            let mut next = Vec::with_capacity(pts.len() * 2);
            for &p in &pts {
                next.push(p);
                next.push(p + offset);
            }
            pts = next;
        }
        pts
    }

    #[test]
    fn ternary_cantor_dimension_recovered() {
        let depth = 12;
        let set = set_of(cantor_endpoints(depth), (0.0, 1.0), 0.0);
        // band up to depth·log₂3 ≈ 19
        let est = box_counting_dim(&set, 4, 19).unwrap();
        let want = 2f64.ln() / 3f64.ln();
        assert!(
            (est.estimate - want).abs() < 0.03,
            "{} vs {want}",
            est.estimate
        );
    }

    #[test]
    fn counts_match_bruteforce_hash_oracle() {
        let set = set_of(cantor_endpoints(8), (0.0, 1.0), 0.0);
        let est = box_counting_dim(&set, 2, 10).unwrap();
        for &(kf, log_n) in &est.table {
            let k = kf as i32;
            let brute: HashSet<u64> = set
                .points()
                .iter()
                .map(|&x| ((x * 2f64.powi(k)) as u64).min((1u64 << k) - 1))
                .collect();
            assert_eq!(log_n, (brute.len() as f64).log2(), "k={k}");
        }
    }

    #[test]
    fn affine_rescaling_leaves_the_count_table_unchanged() {
        let base = cantor_endpoints(10);
        let set1 = set_of(base.clone(), (0.0, 1.0), 0.0);
        let moved: Vec<f64> = base.iter().map(|&x| 7.0 + 3.0 * x).collect();
        let set2 = set_of(moved, (7.0, 10.0), 0.0);
        let e1 = box_counting_dim(&set1, 3, 14).unwrap();
        let e2 = box_counting_dim(&set2, 3, 14).unwrap();
        assert_eq!(e1.table, e2.table);
        assert_eq!(e1.estimate, e2.estimate);
    }

    #[test]
    fn cantor_family_across_ratios() {
        // middle-gap families with ratio ρ: dimension log 2 / log(1/ρ)
        for &(ratio, depth) in &[(1.0f64 / 3.0, 12u32), (0.25, 10), (0.2, 9)] {
            let mut pts = vec![0.0f64];
            for level in 1..=depth {
                let offset = (1.0 - ratio) * ratio.powi(level as i32 - 1);
                let mut next = Vec::with_capacity(pts.len() * 2);
                for &p in &pts {
                    next.push(p);
                    next.push(p + offset);
                }
                pts = next;
            }
            let set = set_of(pts, (0.0, 1.0), 0.0);
            let k_max = ((depth as f64) * (1.0 / ratio).log2()).floor() as u32;
            let est = box_counting_dim(&set, 4, k_max).unwrap();
            let want = 2f64.ln() / (1.0 / ratio).ln();
            assert!(
                (est.estimate - want).abs() < 0.03,
                "ratio={ratio}: {} vs {want}",
                est.estimate
            );
        }
    }

    #[test]
    fn too_few_scales_is_an_error() {
        let set = set_of(vec![0.1, 0.5], (0.0, 1.0), 0.0);
        assert!(matches!(
            box_counting_dim(&set, 3, 5),
            Err(Error::TooFewScales { .. })
        ));
    }
}
