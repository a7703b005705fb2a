//! Semi-supervised preference optimization on a toy character policy.
//!
//! Trains a small autoregressive policy from a handful of labeled
//! preference pairs plus a large pool of unpaired responses. Unpaired
//! responses are pseudo-labeled by comparing their length-normalized reward
//! against a Bayes-risk-minimizing threshold estimated by kernel density
//! estimation and stabilized with exponential moving averages; an
//! exponentially decaying curriculum coefficient shifts the loss weight from
//! the paired to the pseudo-labeled term over training.
//!
//! The crate is organized as:
//!
//! - [`corpus`] — dataset types, the synthetic word-length toy task, label
//!   noise injection, splitting, and JSONL persistence;
//! - [`policy`] — the bigram character policy, its exact log-likelihood,
//!   the length-normalized reward, and analytic gradients;
//! - [`threshold`] — Gaussian KDE, Bayes-risk threshold search, EMA
//!   stabilization, pseudo-labeling, and the separation-probability check;
//! - [`objectives`] — paired and pseudo-labeled losses, the curriculum
//!   scheduler, the combined objective, and toy-scale baselines;
//! - [`config`] — training hyperparameters and the flat key-value config
//!   file format;
//! - [`trainer`] — the end-to-end training loop, optimizers, checkpoints;
//! - [`metrics`] — per-step training records and their CSV/JSONL streams;
//! - [`eval`] — pairwise test accuracy and reward-distribution snapshots.

pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod metrics;
pub mod objectives;
pub mod policy;
pub mod threshold;
pub mod trainer;

pub use config::{Objective, OptimizerConfig, OptimizerKind, TrainConfig};
pub use corpus::{PairedExample, ToySpec, UnpairedExample};
pub use error::{Error, Result};
pub use eval::{EvalReport, Snapshot};
pub use metrics::MetricsRecord;
pub use objectives::{LossBreakdown, SchedulerConfig};
pub use policy::{Gradient, PolicyParams, Vocab, VOCAB_SIZE};
pub use threshold::{KdeModel, Priors, ThresholdState};
pub use trainer::{Checkpoint, TrainOutcome};
