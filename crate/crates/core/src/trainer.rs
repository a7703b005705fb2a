//! The end-to-end training loop.
//!
//! Each optimizer step draws a paired minibatch (one epoch = one shuffled
//! pass over the paired set) and, for objectives that use it, a minibatch
//! from the independently cycled unpaired pool. For the scheduled
//! semi-supervised objective the step then:
//!
//! 1. computes raw rewards for every response in both minibatches,
//! 2. folds the pooled batch mean/stdev into the EMA statistics,
//! 3. fits winning/losing KDEs on the EMA-normalized paired rewards and
//!    EMA-updates the Bayes-risk threshold,
//! 4. pseudo-labels each unpaired response against the EMA threshold,
//! 5. takes one optimizer step on
//!    `gamma_t * paired_risk + (1 - gamma_t) * unpaired_risk`.
//!
//! Pseudo-labels, the threshold, and the EMA statistics are constants
//! within a step; the gradient flows only through the rewards.
//!
//! Every source of randomness is derived from `(config.seed, role, index)`,
//! so runs are bitwise reproducible and a checkpoint can rebuild its exact
//! position in the data streams from the step counter alone. Validation
//! loss is evaluated at each epoch end and the checkpoint minimizing it is
//! returned alongside the final state.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Objective, OptimizerConfig, OptimizerKind, TrainConfig};
use crate::corpus::{PairedExample, UnpairedExample};
use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;
use crate::objectives::{
    self, combined_loss, dpo_loss, paired_loss, LossBreakdown, SchedulerConfig,
};
use crate::policy::{Gradient, PolicyParams, Vocab};
use crate::threshold::{estimate_threshold, Priors, ThresholdState};

const CHECKPOINT_FORMAT_VERSION: u32 = 1;

/// Everything needed to continue or evaluate a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format_version: u32,
    pub vocab_hash: u64,
    pub config_hash: u64,
    /// Completed optimizer steps.
    pub step: u64,
    pub params: PolicyParams,
    pub threshold: ThresholdState,
    pub optimizer: OptimizerState,
    /// Frozen initial policy, kept only for reference-anchored objectives.
    pub reference: Option<PolicyParams>,
}

impl Checkpoint {
    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string(self).expect("serializable checkpoint"))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let ckpt: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("unreadable checkpoint: {e}")))?;
        if ckpt.format_version != CHECKPOINT_FORMAT_VERSION {
            return Err(Error::Checkpoint(format!(
                "format version {} (expected {CHECKPOINT_FORMAT_VERSION})",
                ckpt.format_version
            )));
        }
        if ckpt.vocab_hash != Vocab::default().fingerprint() {
            return Err(Error::Checkpoint("vocabulary hash mismatch".into()));
        }
        if !ckpt.params.is_finite() {
            return Err(Error::Checkpoint("non-finite parameters".into()));
        }
        Ok(ckpt)
    }
}

/// First/second-moment state for Adam; empty vectors for SGD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerState {
    config: OptimizerConfig,
    steps: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl OptimizerState {
    pub fn new(config: OptimizerConfig, n_params: usize) -> Self {
        let (m, v) = match config.kind {
            OptimizerKind::Sgd => (Vec::new(), Vec::new()),
            OptimizerKind::Adam => (vec![0.0; n_params], vec![0.0; n_params]),
        };
        OptimizerState { config, steps: 0, m, v }
    }

    /// One update step; errors on a non-finite gradient instead of
    /// corrupting the parameters.
    pub fn apply(&mut self, params: &mut PolicyParams, grad: &Gradient) -> Result<()> {
        if !grad.is_finite() {
            return Err(Error::NonFinite { context: "gradient" });
        }
        let lr = self.config.learning_rate;
        match self.config.kind {
            OptimizerKind::Sgd => {
                for (p, g) in params.logits_mut().iter_mut().zip(grad.values()) {
                    *p -= lr * g;
                }
            }
            OptimizerKind::Adam => {
                assert_eq!(self.m.len(), params.logits().len(), "moment shape mismatch");
                self.steps += 1;
                let b1 = self.config.adam_beta1;
                let b2 = self.config.adam_beta2;
                let eps = self.config.adam_eps;
                let bias1 = 1.0 - b1.powi(self.steps as i32);
                let bias2 = 1.0 - b2.powi(self.steps as i32);
                for (i, (p, g)) in params
                    .logits_mut()
                    .iter_mut()
                    .zip(grad.values())
                    .enumerate()
                {
                    self.m[i] = b1 * self.m[i] + (1.0 - b1) * g;
                    self.v[i] = b2 * self.v[i] + (1.0 - b2) * g * g;
                    let m_hat = self.m[i] / bias1;
                    let v_hat = self.v[i] / bias2;
                    *p -= lr * m_hat / (v_hat.sqrt() + eps);
                }
            }
        }
        Ok(())
    }
}

/// Result of a training run.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    /// Checkpoint with the minimum validation loss (ties go to the earlier
    /// epoch); the final state when no validation set was given.
    pub best: Checkpoint,
    pub best_validation_loss: Option<f64>,
    /// State after the last executed step; the input for resumption.
    pub final_state: Checkpoint,
    pub metrics: Vec<MetricsRecord>,
}

/// Runs the configured objective to completion.
pub fn train(
    config: &TrainConfig,
    paired_train: &[PairedExample],
    unpaired: &[UnpairedExample],
    validation: &[PairedExample],
) -> Result<TrainOutcome> {
    run(config, paired_train, unpaired, validation, None, None)
}

/// As [`train`] but stops after `max_steps` optimizer steps in total; used
/// to exercise checkpoint resumption.
pub fn train_with_limit(
    config: &TrainConfig,
    paired_train: &[PairedExample],
    unpaired: &[UnpairedExample],
    validation: &[PairedExample],
    max_steps: u64,
) -> Result<TrainOutcome> {
    run(config, paired_train, unpaired, validation, None, Some(max_steps))
}

/// Continues an interrupted run from its final-state checkpoint. The config
/// must hash-match the one the checkpoint was created under; the data
/// streams are rebuilt from the step counter, so the continuation
/// reproduces the uninterrupted run bitwise.
pub fn resume(
    checkpoint: Checkpoint,
    config: &TrainConfig,
    paired_train: &[PairedExample],
    unpaired: &[UnpairedExample],
    validation: &[PairedExample],
) -> Result<TrainOutcome> {
    run(config, paired_train, unpaired, validation, Some(checkpoint), None)
}

/// Deterministic per-role stream seed: FNV-1a over (role, seed, index).
fn stream_seed(seed: u64, role: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in role
        .as_bytes()
        .iter()
        .chain(&seed.to_le_bytes())
        .chain(&index.to_le_bytes())
    {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn permutation(seed: u64, role: &str, index: u64, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, role, index));
    rand::seq::index::sample(&mut rng, n, n).into_vec()
}

/// Infinite shuffled stream over the unpaired pool: block `b` is an
/// independent permutation, and the position is a pure function of how many
/// items have been consumed.
struct UnpairedCursor {
    seed: u64,
    n: usize,
    consumed: u64,
    block: Vec<usize>,
    block_index: u64,
}

impl UnpairedCursor {
    fn at(seed: u64, n: usize, consumed: u64) -> Self {
        let block_index = consumed / n as u64;
        UnpairedCursor {
            seed,
            n,
            consumed,
            block: permutation(seed, "unpaired", block_index, n),
            block_index,
        }
    }

    fn next_index(&mut self) -> usize {
        let block_index = self.consumed / self.n as u64;
        if block_index != self.block_index {
            self.block = permutation(self.seed, "unpaired", block_index, self.n);
            self.block_index = block_index;
        }
        let offset = (self.consumed % self.n as u64) as usize;
        self.consumed += 1;
        self.block[offset]
    }
}

struct StepOutput {
    breakdown: LossBreakdown,
    pseudo_win_fraction: f64,
}

fn run(
    config: &TrainConfig,
    paired_train: &[PairedExample],
    unpaired: &[UnpairedExample],
    validation: &[PairedExample],
    start: Option<Checkpoint>,
    max_steps: Option<u64>,
) -> Result<TrainOutcome> {
    config.validate()?;
    if paired_train.is_empty() {
        return Err(Error::Empty { what: "paired training set" });
    }
    let objective = config.objective;
    let batch_unpaired = if objective.uses_unpaired() { config.batch_unpaired } else { 0 };
    if batch_unpaired > 0 && unpaired.is_empty() {
        return Err(Error::Empty { what: "unpaired pool" });
    }

    let vocab = Vocab::default();
    let n_paired = paired_train.len();
    let batch_paired = config.batch_paired.min(n_paired);
    let steps_per_epoch = n_paired.div_ceil(batch_paired) as u64;
    let total_steps = steps_per_epoch * config.epochs as u64;
    let n_unpaired_effective = if batch_unpaired > 0 { unpaired.len() } else { 0 };
    let scheduler = config.scheduler(n_paired, n_unpaired_effective)?;
    let priors = Priors::new(config.p_win)?;
    let config_hash = config.fingerprint();

    // Fresh state or a hash-checked continuation.
    let (mut params, mut state, mut optimizer, reference, start_step) = match start {
        None => {
            let params = PolicyParams::init(config.init_scale, stream_seed(config.seed, "init", 0));
            let reference = objective.needs_reference().then(|| params.clone());
            let optimizer = OptimizerState::new(config.optimizer, params.logits().len());
            let state = ThresholdState::new(config.momentum)?;
            (params, state, optimizer, reference, 0)
        }
        Some(ckpt) => {
            if ckpt.config_hash != config_hash {
                return Err(Error::Checkpoint(
                    "config hash mismatch: checkpoint was created under different settings".into(),
                ));
            }
            if objective.needs_reference() && ckpt.reference.is_none() {
                return Err(Error::Checkpoint("missing reference policy".into()));
            }
            (ckpt.params, ckpt.threshold, ckpt.optimizer, ckpt.reference, ckpt.step)
        }
    };

    let stop_at = max_steps.map_or(total_steps, |m| m.min(total_steps));
    let mut cursor = (batch_unpaired > 0)
        .then(|| UnpairedCursor::at(config.seed, unpaired.len(), start_step * batch_unpaired as u64));

    let mut metrics = Vec::new();
    let mut epoch_order: Vec<usize> = Vec::new();
    let mut current_epoch = u64::MAX;
    let mut best: Option<(f64, Checkpoint)> = None;

    let snapshot = |step: u64,
                    params: &PolicyParams,
                    state: &ThresholdState,
                    optimizer: &OptimizerState,
                    reference: &Option<PolicyParams>| Checkpoint {
        format_version: CHECKPOINT_FORMAT_VERSION,
        vocab_hash: vocab.fingerprint(),
        config_hash,
        step,
        params: params.clone(),
        threshold: state.clone(),
        optimizer: optimizer.clone(),
        reference: reference.clone(),
    };

    for step in start_step..stop_at {
        let epoch = step / steps_per_epoch;
        if epoch != current_epoch {
            epoch_order = permutation(config.seed, "paired", epoch, n_paired);
            current_epoch = epoch;
        }
        let pos = (step % steps_per_epoch) as usize;
        let lo = pos * batch_paired;
        let hi = ((pos + 1) * batch_paired).min(n_paired);
        let batch: Vec<&PairedExample> = epoch_order[lo..hi].iter().map(|&i| &paired_train[i]).collect();
        let unpaired_batch: Vec<&UnpairedExample> = match cursor.as_mut() {
            Some(c) => (0..batch_unpaired).map(|_| &unpaired[c.next_index()]).collect(),
            None => Vec::new(),
        };

        let mut grad = Gradient::zeros(params.size());
        let out = step_objective(
            config,
            &scheduler,
            priors,
            &vocab,
            &params,
            reference.as_ref(),
            &mut state,
            step,
            &batch,
            &unpaired_batch,
            &mut grad,
        )?;
        optimizer.apply(&mut params, &grad)?;

        let end_of_epoch = pos as u64 == steps_per_epoch - 1;
        let validation_loss = if end_of_epoch && !validation.is_empty() {
            Some(validation_loss_for(config, &vocab, &params, reference.as_ref(), validation)?)
        } else {
            None
        };
        if let Some(v) = validation_loss {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, snapshot(step + 1, &params, &state, &optimizer, &reference)));
            }
        }

        metrics.push(MetricsRecord {
            step,
            epoch,
            gamma: out.breakdown.gamma,
            paired_risk: out.breakdown.paired_risk,
            unpaired_risk: out.breakdown.unpaired_risk,
            total: out.breakdown.total,
            contribution_ratio: out.breakdown.paired_contribution_ratio,
            mu_t: state.mu(),
            sigma_t: state.sigma(),
            delta_t: state.delta(),
            pseudo_win_fraction: out.pseudo_win_fraction,
            validation_loss,
        });
    }

    let final_state = snapshot(stop_at, &params, &state, &optimizer, &reference);
    let (best_validation_loss, best) = match best {
        Some((v, ckpt)) => (Some(v), ckpt),
        None => (None, final_state.clone()),
    };
    Ok(TrainOutcome { best, best_validation_loss, final_state, metrics })
}

/// Loss and gradient of one step under the configured objective. The
/// gradient is accumulated into `grad` with the batch-mean scaling already
/// applied.
#[allow(clippy::too_many_arguments)]
fn step_objective(
    config: &TrainConfig,
    scheduler: &SchedulerConfig,
    priors: Priors,
    vocab: &Vocab,
    params: &PolicyParams,
    reference: Option<&PolicyParams>,
    state: &mut ThresholdState,
    step: u64,
    batch: &[&PairedExample],
    unpaired_batch: &[&UnpairedExample],
    grad: &mut Gradient,
) -> Result<StepOutput> {
    let beta = config.beta;
    let margin = config.delta;
    match config.objective {
        Objective::Sspo => {
            // Raw rewards for everything in the two minibatches.
            let mut win_raw = Vec::with_capacity(batch.len());
            let mut lose_raw = Vec::with_capacity(batch.len());
            for pair in batch {
                win_raw.push(params.reward(vocab, &pair.prompt, &pair.chosen, beta)?);
                lose_raw.push(params.reward(vocab, &pair.prompt, &pair.rejected, beta)?);
            }
            let mut unpaired_raw = Vec::with_capacity(unpaired_batch.len());
            for ex in unpaired_batch {
                unpaired_raw.push(params.reward(vocab, &ex.prompt, &ex.response, beta)?);
            }

            // EMA statistics over the pooled batch rewards.
            let pooled: Vec<f64> = win_raw
                .iter()
                .chain(&lose_raw)
                .chain(&unpaired_raw)
                .copied()
                .collect();
            let mu_b = pooled.iter().sum::<f64>() / pooled.len() as f64;
            let sigma_b = (pooled.iter().map(|r| (r - mu_b) * (r - mu_b)).sum::<f64>()
                / pooled.len() as f64)
                .sqrt();
            state.update_stats(mu_b, sigma_b);

            // Batch threshold from the normalized paired rewards.
            let win_norm: Vec<f64> = win_raw.iter().map(|&r| state.normalize(r)).collect();
            let lose_norm: Vec<f64> = lose_raw.iter().map(|&r| state.normalize(r)).collect();
            match estimate_threshold(&win_norm, &lose_norm, priors, config.grid_points) {
                Ok(est) => state.update_delta(est.delta),
                Err(e) => log::warn!("threshold estimate unavailable, reusing previous: {e}"),
            }

            let labels: Vec<bool> = unpaired_raw.iter().map(|&r| state.pseudo_label(r)).collect();
            let gamma = scheduler.gamma(step);

            let paired_scale = gamma / batch.len().max(1) as f64;
            let mut paired_losses = Vec::with_capacity(batch.len());
            for pair in batch {
                paired_losses.push(objectives::paired_loss_with_grad(
                    params, vocab, pair, beta, margin, paired_scale, grad,
                )?);
            }
            let unpaired_scale = (1.0 - gamma) / unpaired_batch.len().max(1) as f64;
            let mut unpaired_losses = Vec::with_capacity(unpaired_batch.len());
            for (ex, &winning) in unpaired_batch.iter().zip(&labels) {
                unpaired_losses.push(objectives::unpaired_loss_with_grad(
                    params, vocab, ex, winning, priors, state, beta, unpaired_scale, grad,
                )?);
            }

            let breakdown = combined_loss(&paired_losses, &unpaired_losses, gamma)?;
            let pseudo_win_fraction = if labels.is_empty() {
                0.0
            } else {
                labels.iter().filter(|&&w| w).count() as f64 / labels.len() as f64
            };
            Ok(StepOutput { breakdown, pseudo_win_fraction })
        }
        Objective::Simpo | Objective::Dpo => {
            let losses = paired_part(config, vocab, params, reference, batch, 1.0, grad)?;
            let breakdown = combined_loss(&losses, &[], 1.0)?;
            Ok(StepOutput { breakdown, pseudo_win_fraction: 0.0 })
        }
        Objective::DpoSft | Objective::SimpoSft => {
            let losses = paired_part(config, vocab, params, reference, batch, 1.0, grad)?;
            let length_normalized = config.objective == Objective::SimpoSft;
            let sft_scale = config.lambda_sft / unpaired_batch.len().max(1) as f64;
            let mut sft_losses = Vec::with_capacity(unpaired_batch.len());
            for ex in unpaired_batch {
                sft_losses.push(objectives::sft_loss_with_grad(
                    params, vocab, ex, length_normalized, sft_scale, grad,
                )?);
            }
            let paired_risk = losses.iter().sum::<f64>() / losses.len() as f64;
            let sft_risk = if sft_losses.is_empty() {
                0.0
            } else {
                sft_losses.iter().sum::<f64>() / sft_losses.len() as f64
            };
            let total = paired_risk + config.lambda_sft * sft_risk;
            let breakdown = LossBreakdown {
                total,
                paired_risk,
                unpaired_risk: sft_risk,
                gamma: 1.0,
                paired_contribution_ratio: if total > 0.0 { paired_risk / total } else { 0.0 },
                paired_batch_empty: losses.is_empty(),
                unpaired_batch_empty: sft_losses.is_empty(),
            };
            Ok(StepOutput { breakdown, pseudo_win_fraction: 0.0 })
        }
    }
}

/// Per-example preference losses (margin or reference-anchored) with the
/// batch-mean gradient scaling.
fn paired_part(
    config: &TrainConfig,
    vocab: &Vocab,
    params: &PolicyParams,
    reference: Option<&PolicyParams>,
    batch: &[&PairedExample],
    weight: f64,
    grad: &mut Gradient,
) -> Result<Vec<f64>> {
    let scale = weight / batch.len().max(1) as f64;
    let mut losses = Vec::with_capacity(batch.len());
    for pair in batch {
        let loss = match config.objective {
            Objective::Dpo | Objective::DpoSft => {
                let reference = reference.expect("reference present for dpo objectives");
                objectives::dpo_loss_with_grad(
                    params, reference, vocab, pair, config.beta, scale, grad,
                )?
            }
            _ => objectives::paired_loss_with_grad(
                params, vocab, pair, config.beta, config.delta, scale, grad,
            )?,
        };
        losses.push(loss);
    }
    Ok(losses)
}

/// Mean validation loss under the objective's own paired loss, so model
/// selection matches what is being trained.
fn validation_loss_for(
    config: &TrainConfig,
    vocab: &Vocab,
    params: &PolicyParams,
    reference: Option<&PolicyParams>,
    validation: &[PairedExample],
) -> Result<f64> {
    let mut total = 0.0;
    for pair in validation {
        total += match config.objective {
            Objective::Dpo | Objective::DpoSft => {
                let reference = reference.expect("reference present for dpo objectives");
                dpo_loss(params, reference, vocab, pair, config.beta)?
            }
            _ => {
                let r_w = params.reward(vocab, &pair.prompt, &pair.chosen, config.beta)?;
                let r_l = params.reward(vocab, &pair.prompt, &pair.rejected, config.beta)?;
                paired_loss(r_w, r_l, config.delta)
            }
        };
    }
    Ok(total / validation.len() as f64)
}
