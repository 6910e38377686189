//! JSON-facing configuration types for models, targets, and experiments.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::SetMeasureModel;
use crate::symbol::{Drift, LevyMeasureModel, MeasureFamily, Modulation};

fn one() -> f64 {
    1.0
}
fn one_usize() -> usize {
    1
}

/// Flat model description, e.g.
/// `{"family":"stable","alpha":1.5,"n":1,"intensity":1.0}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tempering: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(default = "one_usize")]
    pub n: usize,
    #[serde(default = "one")]
    pub intensity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drift: Option<DriftConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulation: Option<ModulationConfig>,
}

impl ModelConfig {
    pub fn stable(alpha: f64) -> Self {
        Self {
            family: "stable".into(),
            alpha: Some(alpha),
            alphas: None,
            tempering: None,
            cutoff: None,
            n: 1,
            intensity: 1.0,
            drift: None,
            modulation: None,
        }
    }

    pub fn build(&self) -> Result<LevyMeasureModel> {
        let need_alpha = || {
            self.alpha.ok_or_else(|| {
                Error::Config(format!("family '{}' needs an 'alpha' field", self.family))
            })
        };
        let family = match self.family.as_str() {
            "stable" => MeasureFamily::StablePower {
                alpha: need_alpha()?,
            },
            "tempered-stable" => MeasureFamily::TemperedStable {
                alpha: need_alpha()?,
                tempering: self.tempering.ok_or_else(|| {
                    Error::Config("tempered-stable needs a 'tempering' field".into())
                })?,
            },
            "truncated-stable" => MeasureFamily::TruncatedStable {
                alpha: need_alpha()?,
                cutoff: self
                    .cutoff
                    .ok_or_else(|| Error::Config("truncated-stable needs a 'cutoff' field".into()))?,
            },
            "axis-stable" => MeasureFamily::AxisStable {
                alphas: self
                    .alphas
                    .clone()
                    .ok_or_else(|| Error::Config("axis-stable needs an 'alphas' field".into()))?,
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown family '{other}' (stable | tempered-stable | truncated-stable | axis-stable)"
                )))
            }
        };
        let mut model = LevyMeasureModel::new(family, self.n, self.intensity)?;
        if let Some(d) = &self.drift {
            model = model.with_drift(d.build()?)?;
        }
        if let Some(m) = &self.modulation {
            model = model.with_modulation(m.build()?)?;
        }
        Ok(model)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DriftConfig {
    Constant { value: f64 },
    Sign { magnitude: f64 },
}

impl DriftConfig {
    fn build(&self) -> Result<Drift> {
        Ok(match *self {
            DriftConfig::Constant { value } => Drift {
                f: Arc::new(move |_| value),
                bound: value.abs(),
            },
            DriftConfig::Sign { magnitude } => Drift {
                f: Arc::new(move |x: f64| magnitude * x.signum()),
                bound: magnitude.abs(),
            },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModulationConfig {
    Constant { value: f64 },
}

impl ModulationConfig {
    fn build(&self) -> Result<Modulation> {
        Ok(match *self {
            ModulationConfig::Constant { value } => Modulation {
                f: Arc::new(move |_, _| value),
                lower: value,
                upper: value,
                holder_index: 1.0,
                even_in_h: true,
            },
        })
    }
}

/// Target set/measure description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TargetConfig {
    Dirac {
        #[serde(default)]
        atom: f64,
        #[serde(default = "one")]
        mass: f64,
    },
    Interval {
        a: f64,
        b: f64,
        #[serde(default = "one")]
        mass: f64,
    },
    Cantor {
        ratio: f64,
        depth: u32,
        #[serde(default = "one")]
        mass: f64,
    },
}

impl TargetConfig {
    pub fn build(&self) -> Result<SetMeasureModel> {
        match *self {
            TargetConfig::Dirac { atom, mass } => SetMeasureModel::dirac(atom, mass),
            TargetConfig::Interval { a, b, mass } => SetMeasureModel::uniform_interval(a, b, mass),
            TargetConfig::Cantor { ratio, depth, mass } => {
                SetMeasureModel::cantor(ratio, depth, mass)
            }
        }
    }
}

impl Default for TargetConfig {
    fn default() -> Self {
        TargetConfig::Dirac {
            atom: 0.0,
            mass: 1.0,
        }
    }
}

// ---------------------------------------------------------------------
// experiment configs
// ---------------------------------------------------------------------

fn default_seed() -> u64 {
    20_260_808
}
fn default_paths() -> usize {
    32
}
fn default_steps() -> usize {
    1 << 20
}
fn d_horizon() -> f64 {
    1.0
}
fn d_c_eps() -> f64 {
    1.0
}
fn d_tol_zero() -> f64 {
    0.08
}
fn d_tol_coll() -> f64 {
    0.10
}
fn d_tol_bounds() -> f64 {
    0.12
}
fn d_samples() -> usize {
    100_000
}
fn d_scaling_samples() -> usize {
    1_000_000
}
fn d_gammas() -> Vec<f64> {
    vec![0.3, 0.5, 0.7]
}
fn d_kato_gammas() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0]
}
fn d_r_min() -> f64 {
    1e-3
}
fn d_r_max() -> f64 {
    1e6
}
fn d_npd() -> usize {
    16
}
fn d_ks_tol() -> f64 {
    0.01
}
fn d_scaling_tol() -> f64 {
    0.02
}
fn d_cantor_target() -> TargetConfig {
    TargetConfig::Cantor {
        ratio: 1.0 / 3.0,
        depth: 10,
        mass: 1.0,
    }
}

/// One experiment, tagged by name; every tolerance is explicit here so the
/// pass/fail gate is auditable from the config alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentConfig {
    SymbolReport {
        model: ModelConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "d_r_min")]
        r_min: f64,
        #[serde(default = "d_r_max")]
        r_max: f64,
        #[serde(default = "d_npd")]
        nodes_per_decade: usize,
    },
    Indices {
        model: ModelConfig,
        d: f64,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "d_r_min")]
        r_min: f64,
        #[serde(default = "d_r_max")]
        r_max: f64,
        #[serde(default = "d_npd")]
        nodes_per_decade: usize,
    },
    Classify {
        model: ModelConfig,
        #[serde(default)]
        target: TargetConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "d_kato_gammas")]
        kato_gammas: Vec<f64>,
        #[serde(default = "d_r_min")]
        r_min: f64,
        #[serde(default = "d_r_max")]
        r_max: f64,
        #[serde(default = "d_npd")]
        nodes_per_decade: usize,
    },
    SubordinatorValidate {
        #[serde(default = "d_gammas")]
        gammas: Vec<f64>,
        #[serde(default = "d_samples")]
        samples: usize,
        #[serde(default = "d_scaling_samples")]
        scaling_samples: usize,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "d_ks_tol")]
        ks_tolerance: f64,
        #[serde(default = "d_scaling_tol")]
        scaling_tolerance: f64,
    },
    ZeroLevelDim {
        model: ModelConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_paths")]
        paths: usize,
        #[serde(default = "default_steps")]
        steps: usize,
        #[serde(default = "d_horizon")]
        horizon: f64,
        #[serde(default = "d_c_eps")]
        c_eps: f64,
        #[serde(default = "d_tol_zero")]
        tolerance: f64,
    },
    CollisionTimesDim {
        model: ModelConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_paths")]
        pairs: usize,
        #[serde(default = "default_steps")]
        steps: usize,
        #[serde(default = "d_horizon")]
        horizon: f64,
        #[serde(default = "d_c_eps")]
        c_eps: f64,
        #[serde(default = "d_tol_coll")]
        tolerance: f64,
    },
    CollisionSetDim {
        model: ModelConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_paths")]
        pairs: usize,
        #[serde(default = "default_steps")]
        steps: usize,
        #[serde(default = "d_horizon")]
        horizon: f64,
        #[serde(default = "d_c_eps")]
        c_eps: f64,
        #[serde(default = "d_tol_coll")]
        tolerance: f64,
    },
    LevelSetBounds {
        model: ModelConfig,
        #[serde(default = "d_cantor_target")]
        target: TargetConfig,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_paths")]
        paths: usize,
        #[serde(default = "default_steps")]
        steps: usize,
        #[serde(default = "d_horizon")]
        horizon: f64,
        #[serde(default = "d_c_eps")]
        c_eps: f64,
        #[serde(default = "d_tol_bounds")]
        tolerance: f64,
    },
}

impl ExperimentConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentConfig::SymbolReport { .. } => "symbol-report",
            ExperimentConfig::Indices { .. } => "indices",
            ExperimentConfig::Classify { .. } => "classify",
            ExperimentConfig::SubordinatorValidate { .. } => "subordinator-validate",
            ExperimentConfig::ZeroLevelDim { .. } => "zero-level-dim",
            ExperimentConfig::CollisionTimesDim { .. } => "collision-times-dim",
            ExperimentConfig::CollisionSetDim { .. } => "collision-set-dim",
            ExperimentConfig::LevelSetBounds { .. } => "level-set-bounds",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ExperimentConfig::SymbolReport { seed, .. }
            | ExperimentConfig::Indices { seed, .. }
            | ExperimentConfig::Classify { seed, .. }
            | ExperimentConfig::SubordinatorValidate { seed, .. }
            | ExperimentConfig::ZeroLevelDim { seed, .. }
            | ExperimentConfig::CollisionTimesDim { seed, .. }
            | ExperimentConfig::CollisionSetDim { seed, .. }
            | ExperimentConfig::LevelSetBounds { seed, .. } => *seed,
        }
    }

    pub fn set_seed(&mut self, new_seed: u64) {
        match self {
            ExperimentConfig::SymbolReport { seed, .. }
            | ExperimentConfig::Indices { seed, .. }
            | ExperimentConfig::Classify { seed, .. }
            | ExperimentConfig::SubordinatorValidate { seed, .. }
            | ExperimentConfig::ZeroLevelDim { seed, .. }
            | ExperimentConfig::CollisionTimesDim { seed, .. }
            | ExperimentConfig::CollisionSetDim { seed, .. }
            | ExperimentConfig::LevelSetBounds { seed, .. } => *seed = new_seed,
        }
    }

    /// Parse from JSON with serde's line/column diagnostics preserved.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("malformed experiment config: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_model_json_parses() {
        let cfg: ModelConfig =
            serde_json::from_str(r#"{"family":"stable","alpha":1.5,"n":1,"intensity":1.0}"#)
                .unwrap();
        let model = cfg.build().unwrap();
        assert_eq!(model.dim(), 1);
        assert!((model.min_alpha() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn experiment_tag_dispatch() {
        let cfg = ExperimentConfig::from_json(
            r#"{"experiment":"zero-level-dim","model":{"family":"stable","alpha":1.5},"paths":4,"steps":1024}"#,
        )
        .unwrap();
        assert_eq!(cfg.name(), "zero-level-dim");
        assert_eq!(cfg.seed(), 20_260_808);
    }

    #[test]
    fn malformed_config_reports_position() {
        let err = ExperimentConfig::from_json("{\"experiment\":\n\"zero-level-dim\",").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line"), "diagnostics missing: {msg}");
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(ExperimentConfig::from_json(
            r#"{"experiment":"indices","model":{"family":"stable","alpha":1.5},"d":0.5,"bogus":1}"#
        )
        .is_err());
    }
}
