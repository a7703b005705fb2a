//! Training hyperparameters and the flat key-value config file format.
//!
//! Config files are plain text, one `key = value` per line with `#`
//! comments; keys mirror the [`TrainConfig`] field names. Every field has a
//! default, so an empty file is a valid config.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::SchedulerConfig;

/// Which training objective the loop optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Scheduled paired + pseudo-labeled objective.
    Sspo,
    /// Paired margin loss only.
    Simpo,
    /// Frozen-reference preference loss only.
    Dpo,
    /// Frozen-reference preference loss plus SFT on unpaired data.
    DpoSft,
    /// Paired margin loss plus length-normalized SFT on unpaired data.
    SimpoSft,
}

impl Objective {
    /// Whether the objective consumes the unpaired pool.
    pub fn uses_unpaired(self) -> bool {
        matches!(self, Objective::Sspo | Objective::DpoSft | Objective::SimpoSft)
    }

    /// Whether the objective needs a frozen copy of the initial policy.
    pub fn needs_reference(self) -> bool {
        matches!(self, Objective::Dpo | Objective::DpoSft)
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sspo" => Ok(Objective::Sspo),
            "simpo" => Ok(Objective::Simpo),
            "dpo" => Ok(Objective::Dpo),
            "dpo_sft" => Ok(Objective::DpoSft),
            "simpo_sft" => Ok(Objective::SimpoSft),
            other => Err(format!(
                "unknown objective {other:?} (expected sspo, simpo, dpo, dpo_sft, or simpo_sft)"
            )),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Objective::Sspo => "sspo",
            Objective::Simpo => "simpo",
            Objective::Dpo => "dpo",
            Objective::DpoSft => "dpo_sft",
            Objective::SimpoSft => "simpo_sft",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerKind {
    Sgd,
    Adam,
}

impl FromStr for OptimizerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sgd" => Ok(OptimizerKind::Sgd),
            "adam" => Ok(OptimizerKind::Adam),
            other => Err(format!("unknown optimizer {other:?} (expected sgd or adam)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub kind: OptimizerKind,
    pub learning_rate: f64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            kind: OptimizerKind::Adam,
            learning_rate: 1e-2,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
        }
    }
}

/// All hyperparameters of a training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Reward scale.
    pub beta: f64,
    /// Reward margin of the paired loss.
    pub delta: f64,
    /// Prior probability that an unpaired response is winning.
    pub p_win: f64,
    /// Initial curriculum coefficient.
    pub gamma0: f64,
    /// Curriculum decay rate per optimizer step.
    pub lambda: f64,
    /// Curriculum floor; defaults to the paired data fraction
    /// `n_L / (n_L + n_U)` when unset.
    pub gamma_min: Option<f64>,
    /// EMA momentum for reward statistics and the threshold.
    pub momentum: f64,
    /// Grid points of the Bayes-risk search.
    pub grid_points: usize,
    /// Passes over the paired training set.
    pub epochs: usize,
    pub batch_paired: usize,
    /// May be zero, which recovers supervised-only training.
    pub batch_unpaired: usize,
    pub optimizer: OptimizerConfig,
    pub seed: u64,
    pub objective: Objective,
    /// Weight of the SFT term in the `+SFT` baselines.
    pub lambda_sft: f64,
    /// Standard deviation of the Gaussian logit initialization.
    pub init_scale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            beta: 10.0,
            delta: 2.0,
            p_win: 0.5,
            gamma0: 1.0,
            lambda: 0.03,
            gamma_min: None,
            momentum: 0.95,
            grid_points: 200,
            epochs: 10,
            batch_paired: 8,
            batch_unpaired: 8,
            optimizer: OptimizerConfig::default(),
            seed: 0,
            objective: Objective::Sspo,
            lambda_sft: 1.0,
            init_scale: 0.1,
        }
    }
}

fn field_err<E: fmt::Display>(field: &str) -> impl Fn(E) -> Error + '_ {
    move |e| Error::Config { field: field.to_string(), message: e.to_string() }
}

impl TrainConfig {
    /// Parses a flat key-value config file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_kv_str(&text)
    }

    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut config = TrainConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                field: format!("line {}", idx + 1),
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            config.set(key.trim(), value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Sets one field from its textual form; used for both config files and
    /// command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "beta" => self.beta = value.parse().map_err(field_err(key))?,
            "delta" => self.delta = value.parse().map_err(field_err(key))?,
            "p_win" => self.p_win = value.parse().map_err(field_err(key))?,
            "gamma0" => self.gamma0 = value.parse().map_err(field_err(key))?,
            "lambda" => self.lambda = value.parse().map_err(field_err(key))?,
            "gamma_min" => self.gamma_min = Some(value.parse().map_err(field_err(key))?),
            "momentum" => self.momentum = value.parse().map_err(field_err(key))?,
            "grid_points" => self.grid_points = value.parse().map_err(field_err(key))?,
            "epochs" => self.epochs = value.parse().map_err(field_err(key))?,
            "batch_paired" => self.batch_paired = value.parse().map_err(field_err(key))?,
            "batch_unpaired" => self.batch_unpaired = value.parse().map_err(field_err(key))?,
            "optimizer" => self.optimizer.kind = value.parse().map_err(field_err(key))?,
            "learning_rate" => {
                self.optimizer.learning_rate = value.parse().map_err(field_err(key))?
            }
            "adam_beta1" => self.optimizer.adam_beta1 = value.parse().map_err(field_err(key))?,
            "adam_beta2" => self.optimizer.adam_beta2 = value.parse().map_err(field_err(key))?,
            "adam_eps" => self.optimizer.adam_eps = value.parse().map_err(field_err(key))?,
            "seed" => self.seed = value.parse().map_err(field_err(key))?,
            "objective" => self.objective = value.parse().map_err(field_err(key))?,
            "lambda_sft" => self.lambda_sft = value.parse().map_err(field_err(key))?,
            "init_scale" => self.init_scale = value.parse().map_err(field_err(key))?,
            other => {
                return Err(Error::Config {
                    field: other.to_string(),
                    message: "unknown field".into(),
                })
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &str, v: f64| {
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config {
                    field: field.to_string(),
                    message: format!("must be positive, got {v}"),
                })
            }
        };
        positive("beta", self.beta)?;
        positive("lambda", self.lambda)?;
        positive("learning_rate", self.optimizer.learning_rate)?;
        if !(self.p_win > 0.0 && self.p_win < 1.0) {
            return Err(Error::Config {
                field: "p_win".into(),
                message: format!("must lie strictly between 0 and 1, got {}", self.p_win),
            });
        }
        if !(self.gamma0 > 0.0 && self.gamma0 <= 1.0) {
            return Err(Error::Config {
                field: "gamma0".into(),
                message: format!("must lie in (0, 1], got {}", self.gamma0),
            });
        }
        if let Some(gm) = self.gamma_min {
            if !(gm > 0.0 && gm <= self.gamma0) {
                return Err(Error::Config {
                    field: "gamma_min".into(),
                    message: format!("must lie in (0, gamma0], got {gm}"),
                });
            }
        }
        if !(self.momentum > 0.0 && self.momentum < 1.0) {
            return Err(Error::Config {
                field: "momentum".into(),
                message: format!("must lie strictly between 0 and 1, got {}", self.momentum),
            });
        }
        if self.grid_points < 3 {
            return Err(Error::Config {
                field: "grid_points".into(),
                message: format!("must be at least 3, got {}", self.grid_points),
            });
        }
        for (field, v) in [("epochs", self.epochs), ("batch_paired", self.batch_paired)] {
            if v == 0 {
                return Err(Error::Config {
                    field: field.to_string(),
                    message: "must be at least 1".into(),
                });
            }
        }
        if self.lambda_sft < 0.0 {
            return Err(Error::Config {
                field: "lambda_sft".into(),
                message: format!("must be non-negative, got {}", self.lambda_sft),
            });
        }
        if self.init_scale < 0.0 {
            return Err(Error::Config {
                field: "init_scale".into(),
                message: format!("must be non-negative, got {}", self.init_scale),
            });
        }
        Ok(())
    }

    /// Resolves the curriculum schedule against the dataset sizes: the
    /// floor defaults to the paired fraction, clamped to `gamma0` so a
    /// run without unpaired data stays valid.
    pub fn scheduler(&self, n_paired: usize, n_unpaired: usize) -> Result<SchedulerConfig> {
        let default_floor = if n_unpaired == 0 {
            self.gamma0
        } else {
            (n_paired as f64 / (n_paired + n_unpaired) as f64).min(self.gamma0)
        };
        let gamma_min = self.gamma_min.unwrap_or(default_floor);
        SchedulerConfig::new(self.gamma0, self.lambda, gamma_min)
    }

    /// FNV-1a hash of the canonical JSON form; stored in checkpoints so a
    /// resumed run cannot silently continue under different
    /// hyperparameters.
    pub fn fingerprint(&self) -> u64 {
        let json = serde_json::to_string(self).expect("serializable config");
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in json.as_bytes() {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        TrainConfig::default().validate().unwrap();
    }

    #[test]
    fn kv_parsing_overrides_defaults() {
        let text = "\
# toy run
beta = 2.0
objective = simpo_sft
batch_unpaired = 0
learning_rate = 1e-3
seed = 9
";
        let config = TrainConfig::from_kv_str(text).unwrap();
        assert_eq!(config.beta, 2.0);
        assert_eq!(config.objective, Objective::SimpoSft);
        assert_eq!(config.batch_unpaired, 0);
        assert_eq!(config.optimizer.learning_rate, 1e-3);
        assert_eq!(config.seed, 9);
        assert_eq!(config.delta, 2.0); // untouched default
    }

    #[test]
    fn unknown_field_is_named() {
        match TrainConfig::from_kv_str("learning_rte = 0.1") {
            Err(Error::Config { field, .. }) => assert_eq!(field, "learning_rte"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn bad_value_is_named() {
        match TrainConfig::from_kv_str("epochs = many") {
            Err(Error::Config { field, .. }) => assert_eq!(field, "epochs"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_range_is_rejected() {
        assert!(TrainConfig::from_kv_str("p_win = 1.5").is_err());
        assert!(TrainConfig::from_kv_str("momentum = 0").is_err());
        assert!(TrainConfig::from_kv_str("batch_paired = 0").is_err());
    }

    #[test]
    fn scheduler_floor_defaults_to_paired_fraction() {
        let config = TrainConfig::default();
        let sched = config.scheduler(10, 990).unwrap();
        assert!((sched.gamma_min - 0.01).abs() < 1e-12);
        let supervised = config.scheduler(10, 0).unwrap();
        assert_eq!(supervised.gamma_min, 1.0);
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = TrainConfig::default();
        let mut b = TrainConfig::default();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.seed = 1;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
