//! Extraction of level and collision sets from sampled paths.

use crate::error::{Error, Result};
use crate::fractal::PointSet;
use crate::indices::measure::{SetMeasureKind, SetMeasureModel};
use crate::simulate::PathSample;

/// Space threshold tied to the path's own scaling: ε = c·Δt^{1/α}, so the
/// ε-neighbourhood does not tilt the count-versus-scale slope inside the
/// regression band.
pub fn extraction_epsilon(dt: f64, alpha: f64, c_eps: f64) -> f64 {
    c_eps * dt.powf(1.0 / alpha)
}

/// All grid times with dist(X_s, supp D) ≤ ε, with linear-interpolation
/// crossing refinement between nodes for point targets.
pub fn level_set_times(
    path: &PathSample,
    target: &SetMeasureModel,
    eps: f64,
) -> Result<PointSet> {
    if path.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            n: path.dim(),
            context: "level sets are extracted from scalar paths",
        });
    }
    if !(eps > 0.0) {
        return Err(Error::Domain {
            name: "eps",
            value: eps,
            range: "(0, ∞)",
        });
    }
    let dt = path.grid().dt;
    let mut times = Vec::new();
    for k in 0..path.len() {
        if target.support_distance(path.value1(k)) <= eps {
            times.push(path.grid().time(k));
        }
    }
    if let SetMeasureKind::Dirac { atom } = target.kind() {
        for k in 0..path.grid().steps {
            let (a, b) = (path.value1(k) - atom, path.value1(k + 1) - atom);
            if a.signum() != b.signum() && a != 0.0 && b != 0.0 {
                times.push(path.grid().time(k) + dt * a.abs() / (a - b).abs());
            }
        }
    }
    PointSet::new(times, (0.0, path.horizon()), dt)
}

fn check_common_grid(p1: &PathSample, p2: &PathSample) -> Result<()> {
    if p1.grid() != p2.grid() || p1.dim() != 1 || p2.dim() != 1 {
        return Err(Error::GridMismatch(format!(
            "{:?} vs {:?}",
            p1.grid(),
            p2.grid()
        )));
    }
    Ok(())
}

/// Times with |X¹_t − X²_t| ≤ ε (crossing-refined).
pub fn collision_times(p1: &PathSample, p2: &PathSample, eps: f64) -> Result<PointSet> {
    check_common_grid(p1, p2)?;
    let dt = p1.grid().dt;
    let mut times = Vec::new();
    for k in 0..p1.len() {
        if (p1.value1(k) - p2.value1(k)).abs() <= eps {
            times.push(p1.grid().time(k));
        }
    }
    for k in 0..p1.grid().steps {
        let a = p1.value1(k) - p2.value1(k);
        let b = p1.value1(k + 1) - p2.value1(k + 1);
        if a.signum() != b.signum() && a != 0.0 && b != 0.0 {
            times.push(p1.grid().time(k) + dt * a.abs() / (a - b).abs());
        }
    }
    PointSet::new(times, (0.0, p1.horizon()), dt)
}

/// Midpoint locations (X¹ + X²)/2 at the collision times.
pub fn collision_locations(p1: &PathSample, p2: &PathSample, eps: f64) -> Result<PointSet> {
    check_common_grid(p1, p2)?;
    let mut locations = Vec::new();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut push = |x: f64| {
        lo = lo.min(x);
        hi = hi.max(x);
        locations.push(x);
    };
    for k in 0..p1.len() {
        if (p1.value1(k) - p2.value1(k)).abs() <= eps {
            push(0.5 * (p1.value1(k) + p2.value1(k)));
        }
    }
    for k in 0..p1.grid().steps {
        let a = p1.value1(k) - p2.value1(k);
        let b = p1.value1(k + 1) - p2.value1(k + 1);
        if a.signum() != b.signum() && a != 0.0 && b != 0.0 {
            let w = a.abs() / (a - b).abs();
            let x1 = p1.value1(k) + w * (p1.value1(k + 1) - p1.value1(k));
            let x2 = p2.value1(k) + w * (p2.value1(k + 1) - p2.value1(k));
            push(0.5 * (x1 + x2));
        }
    }
    if locations.is_empty() {
        return PointSet::new(Vec::new(), (0.0, 1.0), eps);
    }
    let pad = eps.max(1e-12 * (hi - lo).abs().max(1.0));
    PointSet::new(locations, (lo - pad, hi + pad), eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::{
        sample_batch, sample_symmetric_stable, PathGrid, PathSample, SchemeTag, SeedInfo,
    };

    fn flat_path(value: f64, steps: usize) -> PathSample {
        PathSample::new(
            PathGrid::new(1.0 / steps as f64, steps).unwrap(),
            1,
            vec![value; steps + 1],
            SchemeTag::LevyTypeEuler,
            SeedInfo {
                master: 0,
                path_index: 0,
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn constant_path_inside_target_keeps_all_times() {
        let path = flat_path(0.25, 64);
        let target = SetMeasureModel::uniform_interval(0.0, 1.0, 1.0).unwrap();
        let set = level_set_times(&path, &target, 0.01).unwrap();
        assert_eq!(set.len(), 65);
    }

    #[test]
    fn linear_crossing_is_refined_to_the_root() {
        // path -1 → +1 over [0, 1]: the zero crossing sits at t = 1/2
        let steps = 4;
        let values: Vec<f64> = (0..=steps)
            .map(|k| -1.0 + 2.0 * k as f64 / steps as f64)
            .collect();
        let path = PathSample::new(
            PathGrid::new(0.25, steps).unwrap(),
            1,
            values,
            SchemeTag::LevyTypeEuler,
            SeedInfo {
                master: 0,
                path_index: 0,
            },
            None,
        )
        .unwrap();
        let target = SetMeasureModel::dirac(0.0, 1.0).unwrap();
        let set = level_set_times(&path, &target, 1e-9).unwrap();
        assert_eq!(set.len(), 1);
        assert!((set.points()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn stable_zero_set_nonempty_and_revisited() {
        // α > 1: the origin is regular for itself. Every extracted set is
        // non-empty (the path starts on the target), and across a batch the
        // zero set keeps collecting visits long after the start.
        let alpha = 1.5;
        let grid = PathGrid::new(2f64.powi(-14), 1 << 14).unwrap();
        let eps = extraction_epsilon(grid.dt, alpha, 1.0);
        let target = SetMeasureModel::dirac(0.0, 1.0).unwrap();
        let late_counts: Vec<usize> = sample_batch(16, 51, |seed| {
            let p = sample_symmetric_stable(alpha, grid, seed).unwrap();
            let set = level_set_times(&p, &target, eps).unwrap();
            assert!(!set.is_empty());
            set.points().iter().filter(|&&t| t > 0.1).count()
        });
        let total: usize = late_counts.iter().sum();
        let revisiting = late_counts.iter().filter(|&&c| c > 0).count();
        assert!(total >= 80, "only {total} late visits across the batch");
        assert!(revisiting >= 10, "only {revisiting}/16 paths revisited");
    }

    #[test]
    fn collisions_of_identical_paths_cover_the_grid() {
        let p = sample_symmetric_stable(
            1.5,
            PathGrid::new(1e-3, 256).unwrap(),
            SeedInfo {
                master: 52,
                path_index: 0,
            },
        )
        .unwrap();
        let set = collision_times(&p, &p, 1e-9).unwrap();
        assert_eq!(set.len(), 257);
        let locs = collision_locations(&p, &p, 1e-9).unwrap();
        assert!(!locs.is_empty());
    }

    #[test]
    fn far_apart_paths_never_collide() {
        let p1 = flat_path(0.0, 64);
        let p2 = flat_path(10.0, 64);
        let set = collision_times(&p1, &p2, 0.1).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn independent_stable_pairs_collide_with_high_probability() {
        // the difference of two independent copies is point recurrent for
        // α > 1: collision sets are non-empty (trivially at the common start)
        // in every pair, and most pairs keep colliding well after the start
        let alpha = 1.5;
        let grid = PathGrid::new(2f64.powi(-13), 1 << 13).unwrap();
        let eps = extraction_epsilon(grid.dt, alpha, 1.0);
        let outcomes: Vec<(bool, bool)> = sample_batch(50, 53, |seed| {
            let p1 = sample_symmetric_stable(alpha, grid, seed).unwrap();
            let p2 = sample_symmetric_stable(
                alpha,
                grid,
                SeedInfo {
                    master: seed.master ^ 0x5555_AAAA,
                    path_index: seed.path_index,
                },
            )
            .unwrap();
            let set = collision_times(&p1, &p2, eps).unwrap();
            (
                !set.is_empty(),
                set.points().iter().any(|&t| t > 0.05),
            )
        });
        let nonempty = outcomes.iter().filter(|o| o.0).count();
        let late = outcomes.iter().filter(|o| o.1).count();
        assert!(nonempty >= 48, "only {nonempty}/50 pairs collided at all");
        assert!(late >= 25, "only {late}/50 pairs collided after the start");
    }

    #[test]
    fn collision_sets_shrink_as_eps_decreases() {
        let grid = PathGrid::new(2f64.powi(-12), 1 << 12).unwrap();
        let p1 = sample_symmetric_stable(
            1.5,
            grid,
            SeedInfo {
                master: 54,
                path_index: 0,
            },
        )
        .unwrap();
        let p2 = sample_symmetric_stable(
            1.5,
            grid,
            SeedInfo {
                master: 54,
                path_index: 1,
            },
        )
        .unwrap();
        let mut prev = usize::MAX;
        for &eps in &[0.05, 0.01, 0.002] {
            let n = collision_times(&p1, &p2, eps).unwrap().len();
            assert!(n <= prev, "eps={eps}: {n} > {prev}");
            prev = n;
        }
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let p1 = flat_path(0.0, 64);
        let p2 = flat_path(0.0, 128);
        assert!(matches!(
            collision_times(&p1, &p2, 0.1),
            Err(Error::GridMismatch(_))
        ));
    }
}
