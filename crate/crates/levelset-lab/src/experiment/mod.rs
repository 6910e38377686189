//! Config-driven experiment runner: wires symbols, indices, classifiers,
//! samplers and estimators into reproducible experiments with JSON + CSV
//! reports and explicit pass/fail gates.

pub mod config;
pub mod report;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fractal::{
    box_counting_dim, collision_locations, collision_times, extraction_epsilon, level_set_times,
    suggest_band,
};
use crate::indices::{gamma_inf, gamma_star, gamma_sup_dset, SetMeasureModel};
use crate::potential::{
    chung_fuchs_recurrent, drift_recurrence_check, kato_check, point_polarity, regularity_dset,
};
use crate::simulate::{
    sample_batch, sample_stable_subordinator, sample_symmetric_stable, PathGrid, SeedInfo,
};
use crate::stats::{ks_distance_sorted, quantile_sorted};
use crate::symbol::{LevyMeasureModel, ProfileConfig, SymbolProfile};

pub use config::{ExperimentConfig, ModelConfig, TargetConfig};
pub use report::{read_path_binary, write_path_binary, CsvCell, CsvTable, ExperimentReport};

fn profile_for(
    model: &LevyMeasureModel,
    r_min: f64,
    r_max: f64,
    npd: usize,
) -> Result<SymbolProfile> {
    SymbolProfile::build(
        model,
        &ProfileConfig {
            r_min,
            r_max,
            nodes_per_decade: npd,
            sphere_points: 512,
        },
    )
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

fn finish(
    cfg: &ExperimentConfig,
    pass: bool,
    summary: serde_json::Value,
    tables: Vec<(String, String)>,
) -> ExperimentReport {
    let canonical = serde_json::to_vec(cfg).expect("config serialises");
    ExperimentReport {
        experiment: cfg.name().to_string(),
        config_hash: format!("{:016x}", report::fnv1a64(&canonical)),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed(),
        pass,
        summary,
        tables,
    }
}

/// Run one experiment to completion. The report carries the gate verdict;
/// writing files is the caller's choice via [`ExperimentReport::write_to`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg {
        ExperimentConfig::SymbolReport {
            model,
            r_min,
            r_max,
            nodes_per_decade,
            ..
        } => run_symbol_report(cfg, model, *r_min, *r_max, *nodes_per_decade),
        ExperimentConfig::Indices {
            model,
            d,
            r_min,
            r_max,
            nodes_per_decade,
            ..
        } => run_indices(cfg, model, *d, *r_min, *r_max, *nodes_per_decade),
        ExperimentConfig::Classify {
            model,
            target,
            kato_gammas,
            r_min,
            r_max,
            nodes_per_decade,
            ..
        } => run_classify(
            cfg,
            model,
            target,
            kato_gammas,
            *r_min,
            *r_max,
            *nodes_per_decade,
        ),
        ExperimentConfig::SubordinatorValidate {
            gammas,
            samples,
            scaling_samples,
            seed,
            ks_tolerance,
            scaling_tolerance,
        } => run_subordinator_validate(
            cfg,
            gammas,
            *samples,
            *scaling_samples,
            *seed,
            *ks_tolerance,
            *scaling_tolerance,
        ),
        ExperimentConfig::ZeroLevelDim {
            model,
            seed,
            paths,
            steps,
            horizon,
            c_eps,
            tolerance,
        } => run_zero_level(cfg, model, *seed, *paths, *steps, *horizon, *c_eps, *tolerance),
        ExperimentConfig::CollisionTimesDim {
            model,
            seed,
            pairs,
            steps,
            horizon,
            c_eps,
            tolerance,
        } => run_collision_times(cfg, model, *seed, *pairs, *steps, *horizon, *c_eps, *tolerance),
        ExperimentConfig::CollisionSetDim {
            model,
            seed,
            pairs,
            steps,
            horizon,
            c_eps,
            tolerance,
        } => run_collision_set(cfg, model, *seed, *pairs, *steps, *horizon, *c_eps, *tolerance),
        ExperimentConfig::LevelSetBounds {
            model,
            target,
            seed,
            paths,
            steps,
            horizon,
            c_eps,
            tolerance,
        } => run_level_set_bounds(
            cfg, model, target, *seed, *paths, *steps, *horizon, *c_eps, *tolerance,
        ),
    }
}

fn run_symbol_report(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    r_min: f64,
    r_max: f64,
    npd: usize,
) -> Result<ExperimentReport> {
    let model = model_cfg.build()?;
    let profile = profile_for(&model, r_min, r_max, npd)?;
    let audit = profile.audit_invariants();
    let kappa = profile.kappa();
    let power = profile.power();

    let mut table = CsvTable::new(&["r", "q", "qU", "qL", "qstar"]);
    for (i, &r) in profile.radii().iter().enumerate() {
        table.row(&[
            CsvCell::Float(r),
            CsvCell::Float(profile.q_values()[i]),
            CsvCell::Float(profile.q_upper_values()[i]),
            CsvCell::Float(profile.q_lower_values()[i]),
            CsvCell::Float(profile.q_star_values()[i]),
        ]);
    }

    let pass = audit.is_ok() && kappa.holds;
    let summary = json!({
        "kappa": kappa.kappa,
        "alpha": kappa.alpha_index,
        "alpha_fit": power.map(|p| p.alpha_fit),
        "beta_fit": power.map(|p| p.beta_fit),
        "comparison_holds_on_grid": kappa.holds,
        "envelope_invariants": audit.is_ok(),
        "extrapolation_warning": profile.extrapolation_warning(),
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![("symbol.csv".into(), table.finish())],
    ))
}

fn run_indices(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    d: f64,
    r_min: f64,
    r_max: f64,
    npd: usize,
) -> Result<ExperimentReport> {
    let model = model_cfg.build()?;
    let n = model.dim();
    let profile = profile_for(&model, r_min, r_max, npd)?;
    let gs = gamma_star(&profile);
    let gi = gamma_inf(&profile, d, n)?;
    let gsup = gamma_sup_dset(&profile, d, n)?;
    let pass = !gs.ambiguous && !gi.ambiguous && !gsup.ambiguous;
    let summary = json!({
        "gamma_star": gs.value,
        "gamma_inf": gi.value,
        "gamma_sup": gsup.value,
        "dim_lower": 1.0 - gi.value,
        "dim_upper": 1.0 - gsup.value,
        "d": d,
        "n": n,
        "brackets": {
            "gamma_star": gs.bracket,
            "gamma_inf": gi.bracket,
            "gamma_sup": gsup.bracket,
        },
    });
    Ok(finish(cfg, pass, summary, Vec::new()))
}

fn run_classify(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    target_cfg: &TargetConfig,
    kato_gammas: &[f64],
    r_min: f64,
    r_max: f64,
    npd: usize,
) -> Result<ExperimentReport> {
    let model = model_cfg.build()?;
    let target = target_cfg.build()?;
    let profile = profile_for(&model, r_min, r_max, npd)?;

    let mut kato = Vec::new();
    let mut conclusive = true;
    for &g in kato_gammas {
        let v = kato_check(&profile, &target, g)?;
        conclusive &= !matches!(v.verdict, crate::indices::Verdict::Inconclusive);
        kato.push(json!({
            "gamma": g,
            "verdict": v.verdict,
            "divergence_exponent": v.divergence_exponent,
        }));
    }

    let polarity = point_polarity(&profile)?;
    let regularity = target
        .d_exponent()
        .map(|d| regularity_dset(&profile, d))
        .transpose()?;
    let chung_fuchs = if profile.dim() == 1 {
        Some(chung_fuchs_recurrent(&profile)?)
    } else {
        None
    };
    let drift_cond = if model.dim() == 1 {
        let grid: Vec<f64> = (0..12).map(|i| 4.0 * 1.7f64.powi(i)).collect();
        match drift_recurrence_check(&model, &grid) {
            Ok(d) => json!({"sup_value": d.sup_value, "holds": d.holds}),
            Err(Error::InfiniteMoment(msg)) => json!({"infinite_first_moment": msg}),
            Err(e) => return Err(e),
        }
    } else {
        serde_json::Value::Null
    };

    let summary = json!({
        "kato": kato,
        "polarity": polarity,
        "regularity": regularity,
        "recurrence": {
            "chung_fuchs": chung_fuchs,
            "drift_condition": drift_cond,
        },
        "alpha_index": profile.kappa().alpha_index,
    });
    Ok(finish(cfg, conclusive, summary, Vec::new()))
}

#[allow(clippy::too_many_arguments)]
fn run_subordinator_validate(
    cfg: &ExperimentConfig,
    gammas: &[f64],
    samples: usize,
    scaling_samples: usize,
    seed: u64,
    ks_tolerance: f64,
    scaling_tolerance: f64,
) -> Result<ExperimentReport> {
    let mut pass = true;
    let mut laplace_rows = CsvTable::new(&["gamma", "mean_exp", "std_error", "target", "pass"]);
    let mut scaling_rows = CsvTable::new(&["gamma", "quantile", "t2", "scaled_t1", "rel_dev"]);
    let mut summary_gammas = Vec::new();

    for (gi, &gamma) in gammas.iter().enumerate() {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Domain {
                name: "gamma",
                value: gamma,
                range: "(0, 1)",
            });
        }
        let master = seed ^ ((gi as u64 + 1) << 40);

        // Laplace transform of T_1: mean of e^{-T_1} against e^{-1}
        let evals: Vec<f64> = sample_batch(samples, master, |s| {
            let p = sample_stable_subordinator(gamma, PathGrid::new(1.0, 1).unwrap(), s).unwrap();
            (-p.value1(1)).exp()
        });
        let (mean, std) = mean_std(&evals);
        let se = std / (samples as f64).sqrt();
        let target = (-1.0f64).exp();
        let laplace_ok = (mean - target).abs() <= 3.0 * se;
        pass &= laplace_ok;
        laplace_rows.row(&[
            CsvCell::Float(gamma),
            CsvCell::Float(mean),
            CsvCell::Float(se),
            CsvCell::Float(target),
            CsvCell::Text(laplace_ok.to_string()),
        ]);

        // KS against the closed-form γ = 1/2 law
        let mut ks: Option<f64> = None;
        if (gamma - 0.5).abs() < 1e-12 {
            let mut t1: Vec<f64> = sample_batch(samples, master ^ 0x4B53, |s| {
                sample_stable_subordinator(gamma, PathGrid::new(1.0, 1).unwrap(), s)
                    .unwrap()
                    .value1(1)
            });
            t1.sort_by(f64::total_cmp);
            let d = ks_distance_sorted(&t1, crate::simulate::half_stable_cdf);
            pass &= d <= ks_tolerance;
            ks = Some(d);
        }

        // scaling: quantiles of T_2 against 2^{1/γ} times quantiles of T_1
        let pairs: Vec<(f64, f64)> = sample_batch(scaling_samples, master ^ 0x5CA1E, |s| {
            let p = sample_stable_subordinator(gamma, PathGrid::new(1.0, 2).unwrap(), s).unwrap();
            (p.value1(1), p.value1(2))
        });
        let mut t1: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut t2: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        t1.sort_by(f64::total_cmp);
        t2.sort_by(f64::total_cmp);
        let factor = 2f64.powf(1.0 / gamma);
        let mut worst = 0.0f64;
        for &p in &[0.1, 0.25, 0.5, 0.75] {
            let q2 = quantile_sorted(&t2, p);
            let scaled = factor * quantile_sorted(&t1, p);
            let rel = (q2 - scaled).abs() / scaled;
            worst = worst.max(rel);
            scaling_rows.row(&[
                CsvCell::Float(gamma),
                CsvCell::Float(p),
                CsvCell::Float(q2),
                CsvCell::Float(scaled),
                CsvCell::Float(rel),
            ]);
        }
        pass &= worst <= scaling_tolerance;

        summary_gammas.push(json!({
            "gamma": gamma,
            "laplace_mean": mean,
            "laplace_se": se,
            "laplace_pass": laplace_ok,
            "ks_distance": ks,
            "scaling_worst_rel_dev": worst,
        }));
    }

    let summary = json!({
        "gammas": summary_gammas,
        "samples": samples,
        "ks_tolerance": ks_tolerance,
        "scaling_tolerance": scaling_tolerance,
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![
            ("laplace.csv".into(), laplace_rows.finish()),
            ("scaling.csv".into(), scaling_rows.finish()),
        ],
    ))
}

/// Stability index of a model intended as a symmetric stable driver;
/// experiments that need non-polar points reject α ≤ 1.
fn require_heavy_index(model_cfg: &ModelConfig, context: &str) -> Result<f64> {
    let model = model_cfg.build()?;
    let alpha = model.min_alpha();
    if model.dim() != 1 {
        return Err(Error::Config(format!(
            "{context} needs a one-dimensional model"
        )));
    }
    if alpha <= 1.0 {
        return Err(Error::Config(format!(
            "{context} rejected: alpha = {alpha} ≤ 1 makes points polar in dimension one, \
             so the zero level set is almost surely trivial"
        )));
    }
    Ok(alpha)
}

struct PathDimRow {
    index: usize,
    points: usize,
    estimate: Option<(f64, f64)>,
}

fn dim_rows_to_csv(rows: &[PathDimRow]) -> String {
    let mut table = CsvTable::new(&["path_index", "points", "estimate", "std_error"]);
    for r in rows {
        match r.estimate {
            Some((e, se)) => table.row(&[
                CsvCell::Int(r.index as i64),
                CsvCell::Int(r.points as i64),
                CsvCell::Float(e),
                CsvCell::Float(se),
            ]),
            None => table.row(&[
                CsvCell::Int(r.index as i64),
                CsvCell::Int(r.points as i64),
                CsvCell::Text(String::new()),
                CsvCell::Text(String::new()),
            ]),
        }
    }
    table.finish()
}

fn summarize_rows(rows: &[PathDimRow]) -> Result<(f64, f64, usize)> {
    let estimates: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.estimate.map(|e| e.0))
        .collect();
    if estimates.len() * 2 < rows.len() {
        return Err(Error::TooFewScales {
            found: estimates.len(),
            needed: rows.len().div_ceil(2),
        });
    }
    let (mean, std) = mean_std(&estimates);
    Ok((mean, std / (estimates.len() as f64).sqrt(), estimates.len()))
}

#[allow(clippy::too_many_arguments)]
fn run_zero_level(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    seed: u64,
    paths: usize,
    steps: usize,
    horizon: f64,
    c_eps: f64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let alpha = require_heavy_index(model_cfg, "zero-level-dim")?;
    let model = model_cfg.build()?;
    let profile = profile_for(&model, 1e-3, 1e6, 16)?;
    let gs = gamma_star(&profile);
    let predicted = 1.0 - gs.value;

    let grid = PathGrid::new(horizon / steps as f64, steps)?;
    let eps = extraction_epsilon(grid.dt, alpha, c_eps);
    let target = SetMeasureModel::dirac(0.0, 1.0)?;

    let rows: Vec<PathDimRow> = sample_batch(paths, seed, |s| {
        let path = sample_symmetric_stable(alpha, grid, s).expect("alpha validated");
        let set = level_set_times(&path, &target, eps).expect("extraction");
        let (k_min, k_max) = suggest_band(&set);
        let estimate = box_counting_dim(&set, k_min, k_max)
            .ok()
            .map(|e| (e.estimate, e.std_error));
        PathDimRow {
            index: s.path_index as usize,
            points: set.len(),
            estimate,
        }
    });

    let (mean, se, used) = summarize_rows(&rows)?;
    let pass = (mean - predicted).abs() <= tolerance;
    let summary = json!({
        "alpha": alpha,
        "gamma_star": gs.value,
        "predicted_dimension": predicted,
        "empirical_mean": mean,
        "empirical_se": se,
        "paths_used": used,
        "epsilon": eps,
        "tolerance": tolerance,
        "abs_deviation": (mean - predicted).abs(),
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![("paths.csv".into(), dim_rows_to_csv(&rows))],
    ))
}

#[allow(clippy::too_many_arguments)]
fn run_collision_times(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    seed: u64,
    pairs: usize,
    steps: usize,
    horizon: f64,
    c_eps: f64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let alpha = require_heavy_index(model_cfg, "collision-times-dim")?;
    let model = model_cfg.build()?;
    let profile = profile_for(&model, 1e-3, 1e6, 16)?;
    let gs = gamma_star(&profile);
    let predicted = 1.0 - gs.value;

    let grid = PathGrid::new(horizon / steps as f64, steps)?;
    let eps = extraction_epsilon(grid.dt, alpha, c_eps);

    let rows: Vec<PathDimRow> = sample_batch(pairs, seed, |s| {
        let p1 = sample_symmetric_stable(
            alpha,
            grid,
            SeedInfo {
                master: s.master,
                path_index: 2 * s.path_index,
            },
        )
        .expect("alpha validated");
        let p2 = sample_symmetric_stable(
            alpha,
            grid,
            SeedInfo {
                master: s.master,
                path_index: 2 * s.path_index + 1,
            },
        )
        .expect("alpha validated");
        let set = collision_times(&p1, &p2, eps).expect("common grid");
        let (k_min, k_max) = suggest_band(&set);
        let estimate = box_counting_dim(&set, k_min, k_max)
            .ok()
            .map(|e| (e.estimate, e.std_error));
        PathDimRow {
            index: s.path_index as usize,
            points: set.len(),
            estimate,
        }
    });

    let (mean, se, used) = summarize_rows(&rows)?;
    let pass = (mean - predicted).abs() <= tolerance;
    let summary = json!({
        "alpha": alpha,
        "gamma_star": gs.value,
        "predicted_dimension": predicted,
        "empirical_mean": mean,
        "empirical_se": se,
        "pairs_used": used,
        "epsilon": eps,
        "tolerance": tolerance,
        "abs_deviation": (mean - predicted).abs(),
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![("pairs.csv".into(), dim_rows_to_csv(&rows))],
    ))
}

#[allow(clippy::too_many_arguments)]
fn run_collision_set(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    seed: u64,
    pairs: usize,
    steps: usize,
    horizon: f64,
    c_eps: f64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let alpha = require_heavy_index(model_cfg, "collision-set-dim")?;
    let model = model_cfg.build()?;
    let profile = profile_for(&model, 1e-3, 1e6, 16)?;
    let power = profile.power().ok_or(Error::InsufficientData {
        needed: 8,
        found: 0,
    })?;
    // the collision-set dimension sits in the band [α − 1, β − 1]
    let predicted_lo = (power.alpha_fit - 1.0).max(0.0);
    let predicted_hi = (power.beta_fit - 1.0).max(0.0);

    let grid = PathGrid::new(horizon / steps as f64, steps)?;
    let eps = extraction_epsilon(grid.dt, alpha, c_eps);

    let rows: Vec<PathDimRow> = sample_batch(pairs, seed, |s| {
        let p1 = sample_symmetric_stable(
            alpha,
            grid,
            SeedInfo {
                master: s.master,
                path_index: 2 * s.path_index,
            },
        )
        .expect("alpha validated");
        let p2 = sample_symmetric_stable(
            alpha,
            grid,
            SeedInfo {
                master: s.master,
                path_index: 2 * s.path_index + 1,
            },
        )
        .expect("alpha validated");
        let set = collision_locations(&p1, &p2, eps).expect("common grid");
        let (k_min, k_max) = suggest_band(&set);
        let estimate = box_counting_dim(&set, k_min, k_max)
            .ok()
            .map(|e| (e.estimate, e.std_error));
        PathDimRow {
            index: s.path_index as usize,
            points: set.len(),
            estimate,
        }
    });

    let (mean, se, used) = summarize_rows(&rows)?;
    let pass = mean >= predicted_lo - tolerance && mean <= predicted_hi + tolerance;
    let summary = json!({
        "alpha": alpha,
        "predicted_band": [predicted_lo, predicted_hi],
        "empirical_mean": mean,
        "empirical_se": se,
        "pairs_used": used,
        "epsilon": eps,
        "tolerance": tolerance,
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![("pairs.csv".into(), dim_rows_to_csv(&rows))],
    ))
}

#[allow(clippy::too_many_arguments)]
fn run_level_set_bounds(
    cfg: &ExperimentConfig,
    model_cfg: &ModelConfig,
    target_cfg: &TargetConfig,
    seed: u64,
    paths: usize,
    steps: usize,
    horizon: f64,
    c_eps: f64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let alpha = require_heavy_index(model_cfg, "level-set-bounds")?;
    let model = model_cfg.build()?;
    let target = target_cfg.build()?;
    let d = target.d_exponent().ok_or(Error::UnsupportedMeasure)?;
    let n = model.dim();

    let profile = profile_for(&model, 1e-3, 1e6, 16)?;
    let gi = gamma_inf(&profile, d, n)?;
    let gsup = gamma_sup_dset(&profile, d, n)?;
    let dim_lower = 1.0 - gi.value;
    let dim_upper = 1.0 - gsup.value;

    let grid = PathGrid::new(horizon / steps as f64, steps)?;
    let eps = extraction_epsilon(grid.dt, alpha, c_eps);

    let rows: Vec<PathDimRow> = sample_batch(paths, seed, |s| {
        let path = sample_symmetric_stable(alpha, grid, s).expect("alpha validated");
        let set = level_set_times(&path, &target, eps).expect("extraction");
        let (k_min, k_max) = suggest_band(&set);
        let estimate = box_counting_dim(&set, k_min, k_max)
            .ok()
            .map(|e| (e.estimate, e.std_error));
        PathDimRow {
            index: s.path_index as usize,
            points: set.len(),
            estimate,
        }
    });

    let (mean, se, used) = summarize_rows(&rows)?;
    let pass = mean >= dim_lower - tolerance && mean <= dim_upper + tolerance;
    let summary = json!({
        "alpha": alpha,
        "d": d,
        "gamma_inf": gi.value,
        "gamma_sup": gsup.value,
        "dim_lower": dim_lower,
        "dim_upper": dim_upper,
        "empirical_mean": mean,
        "empirical_se": se,
        "paths_used": used,
        "epsilon": eps,
        "tolerance": tolerance,
    });
    Ok(finish(
        cfg,
        pass,
        summary,
        vec![("paths.csv".into(), dim_rows_to_csv(&rows))],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_zero_level_cfg(seed: u64) -> ExperimentConfig {
        ExperimentConfig::from_json(&format!(
            r#"{{"experiment":"zero-level-dim",
                 "model":{{"family":"stable","alpha":1.5}},
                 "paths":4,"steps":16384,"seed":{seed}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn reports_are_byte_identical_across_worker_counts() {
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_experiment(&tiny_zero_level_cfg(7)).unwrap())
        };
        let a = run(1);
        let b = run(2);
        let c = run(8);
        assert_eq!(a.tables, b.tables);
        assert_eq!(a.tables, c.tables);
        assert_eq!(a.summary, b.summary);
        assert_eq!(a.summary, c.summary);
        assert_eq!(a.config_hash, b.config_hash);
    }

    #[test]
    fn polar_regime_is_rejected_with_reason() {
        let cfg = ExperimentConfig::from_json(
            r#"{"experiment":"zero-level-dim","model":{"family":"stable","alpha":0.8},"paths":2,"steps":1024}"#,
        )
        .unwrap();
        match run_experiment(&cfg) {
            Err(Error::Config(msg)) => assert!(msg.contains("polar"), "{msg}"),
            other => panic!("expected config rejection, got {other:?}"),
        }
    }

    #[test]
    fn indices_summary_has_dimension_bounds() {
        let cfg = ExperimentConfig::from_json(
            r#"{"experiment":"indices","model":{"family":"stable","alpha":1.5},"d":0.0,
                "r_min":1e-3,"r_max":1e5,"nodes_per_decade":12}"#,
        )
        .unwrap();
        let rep = run_experiment(&cfg).unwrap();
        assert!(rep.pass);
        let gs = rep.summary["gamma_star"].as_f64().unwrap();
        assert!((gs - 2.0 / 3.0).abs() < 0.01);
        let lo = rep.summary["dim_lower"].as_f64().unwrap();
        assert!((lo - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn classify_summary_structure() {
        let cfg = ExperimentConfig::from_json(
            r#"{"experiment":"classify","model":{"family":"stable","alpha":1.5},
                "r_min":1e-3,"r_max":1e5,"nodes_per_decade":12}"#,
        )
        .unwrap();
        let rep = run_experiment(&cfg).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.summary["polarity"], "NonPolar");
        assert_eq!(rep.summary["recurrence"]["chung_fuchs"], true);
        assert_eq!(rep.summary["kato"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn symbol_report_emits_csv_and_kappa() {
        let cfg = ExperimentConfig::from_json(
            r#"{"experiment":"symbol-report","model":{"family":"stable","alpha":1.2},
                "r_min":0.01,"r_max":1000.0,"nodes_per_decade":8}"#,
        )
        .unwrap();
        let rep = run_experiment(&cfg).unwrap();
        assert!(rep.pass);
        let kappa = rep.summary["kappa"].as_f64().unwrap();
        assert!((kappa - 2.0 / 1.2).abs() / (2.0 / 1.2) < 0.1);
        let (name, body) = &rep.tables[0];
        assert_eq!(name, "symbol.csv");
        assert!(body.starts_with("r,q,qU,qL,qstar\n"));
    }
}
