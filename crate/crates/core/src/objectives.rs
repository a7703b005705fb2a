//! Loss functions and the curriculum scheduler.
//!
//! The paired risk is the margin preference loss
//! `-log sigmoid(r_w - r_l - margin)`; the unpaired risk is a prior-weighted
//! binary cross-entropy against the pseudo-label, evaluated in the
//! EMA-normalized reward space. Both are combined as
//!
//! ```text
//! L = gamma * paired_risk + (1 - gamma) * unpaired_risk
//! gamma = max(gamma_min, gamma0 * exp(-lambda * tau))
//! ```
//!
//! so training focuses on the labeled pairs first and shifts toward the
//! pseudo-labeled pool as the schedule decays. Pseudo-labels, the
//! threshold, and the EMA statistics are constants with respect to the
//! policy inside a step; gradients flow only through the reward.
//!
//! The toy-scale baselines live here too: a frozen-reference DPO loss and
//! SFT losses (plain and length-normalized) for the `+SFT` variants.

use serde::{Deserialize, Serialize};

use crate::corpus::{PairedExample, UnpairedExample};
use crate::error::{Error, Result};
use crate::policy::{Gradient, PolicyParams, Vocab};
use crate::threshold::{Priors, ThresholdState};

/// Numerically stable `log(1 + exp(x))`.
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Numerically stable logistic sigmoid.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Margin preference loss `-log sigmoid(r_w - r_l - margin)`, computed as
/// `softplus(-(r_w - r_l - margin))`; non-negative and overflow-free for
/// any finite inputs.
pub fn paired_loss(r_w: f64, r_l: f64, margin: f64) -> f64 {
    softplus(-(r_w - r_l - margin))
}

/// Pseudo-label cross-entropy scaled by the label's prior probability:
/// `P(label) * bce(sigmoid(r_norm - delta_hat), label)` with `winning`
/// standing for label 1.
pub fn unpaired_loss(r_norm: f64, delta_hat: f64, winning: bool, priors: Priors) -> f64 {
    let z = r_norm - delta_hat;
    let bce = if winning { softplus(-z) } else { softplus(z) };
    priors.label_prob(winning) * bce
}

/// Exponential-decay curriculum coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchedulerConfig {
    /// Initial coefficient; 1 focuses entirely on paired data at the start.
    pub gamma0: f64,
    /// Decay rate per optimizer step.
    pub lambda: f64,
    /// Floor; conventionally the paired fraction `n_L / (n_L + n_U)`.
    pub gamma_min: f64,
}

impl SchedulerConfig {
    pub fn new(gamma0: f64, lambda: f64, gamma_min: f64) -> Result<Self> {
        if gamma0.is_nan() || gamma0 <= 0.0 || gamma0 > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "gamma0 must lie in (0, 1], got {gamma0}"
            )));
        }
        if lambda.is_nan() || lambda <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !(gamma_min > 0.0 && gamma_min <= gamma0) {
            return Err(Error::InvalidArgument(format!(
                "gamma_min must lie in (0, gamma0], got {gamma_min}"
            )));
        }
        Ok(SchedulerConfig { gamma0, lambda, gamma_min })
    }

    /// `max(gamma_min, gamma0 * exp(-lambda * tau))` at optimizer step
    /// `tau`.
    pub fn gamma(&self, tau: u64) -> f64 {
        (self.gamma0 * (-self.lambda * tau as f64).exp()).max(self.gamma_min)
    }
}

/// Per-step decomposition of the combined objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossBreakdown {
    pub total: f64,
    pub paired_risk: f64,
    pub unpaired_risk: f64,
    pub gamma: f64,
    /// `gamma * paired_risk / total` when `total > 0`, else 0.
    pub paired_contribution_ratio: f64,
    pub paired_batch_empty: bool,
    pub unpaired_batch_empty: bool,
}

/// Combines per-example losses into the scheduled objective. Risks are
/// batch means; an empty batch contributes zero and is flagged.
pub fn combined_loss(
    paired_losses: &[f64],
    unpaired_losses: &[f64],
    gamma: f64,
) -> Result<LossBreakdown> {
    if paired_losses.is_empty() && unpaired_losses.is_empty() {
        return Err(Error::Empty { what: "combined loss batch" });
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )));
    }
    let mean = |xs: &[f64]| {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        }
    };
    let paired_risk = mean(paired_losses);
    let unpaired_risk = mean(unpaired_losses);
    let total = gamma * paired_risk + (1.0 - gamma) * unpaired_risk;
    let paired_contribution_ratio = if total > 0.0 {
        gamma * paired_risk / total
    } else {
        0.0
    };
    Ok(LossBreakdown {
        total,
        paired_risk,
        unpaired_risk,
        gamma,
        paired_contribution_ratio,
        paired_batch_empty: paired_losses.is_empty(),
        unpaired_batch_empty: unpaired_losses.is_empty(),
    })
}

/// Reference-anchored preference loss
/// `-log sigmoid(beta * [(log pi - log pi_ref)(y_w) - (log pi - log pi_ref)(y_l)])`
/// with a frozen reference copy.
pub fn dpo_loss(
    policy: &PolicyParams,
    reference: &PolicyParams,
    vocab: &Vocab,
    pair: &PairedExample,
    beta: f64,
) -> Result<f64> {
    let gap = dpo_logit_gap(policy, reference, vocab, pair, beta)?;
    Ok(softplus(-gap))
}

fn dpo_logit_gap(
    policy: &PolicyParams,
    reference: &PolicyParams,
    vocab: &Vocab,
    pair: &PairedExample,
    beta: f64,
) -> Result<f64> {
    let lp_w = policy.log_prob(vocab, &pair.chosen)?;
    let lp_l = policy.log_prob(vocab, &pair.rejected)?;
    let lr_w = reference.log_prob(vocab, &pair.chosen)?;
    let lr_l = reference.log_prob(vocab, &pair.rejected)?;
    Ok(beta * ((lp_w - lr_w) - (lp_l - lr_l)))
}

/// Supervised fine-tuning loss `-log pi(y_u)`, divided by `|y_u|` when
/// `length_normalized` is set.
pub fn sft_loss(
    policy: &PolicyParams,
    vocab: &Vocab,
    example: &UnpairedExample,
    length_normalized: bool,
) -> Result<f64> {
    let lp = policy.log_prob(vocab, &example.response)?;
    let denom = if length_normalized {
        example.response.chars().count() as f64 + 1.0
    } else {
        1.0
    };
    Ok(-lp / denom)
}

// ---------------------------------------------------------------------------
// Loss-and-gradient forms used by the trainer. Each adds
// `scale * dL/dlogits` into `grad` and returns the loss value.
// ---------------------------------------------------------------------------

/// Paired margin loss with its analytic gradient.
pub fn paired_loss_with_grad(
    policy: &PolicyParams,
    vocab: &Vocab,
    pair: &PairedExample,
    beta: f64,
    margin: f64,
    scale: f64,
    grad: &mut Gradient,
) -> Result<f64> {
    let r_w = policy.reward(vocab, &pair.prompt, &pair.chosen, beta)?;
    let r_l = policy.reward(vocab, &pair.prompt, &pair.rejected, beta)?;
    let z = r_w - r_l - margin;
    // dL/dz = -sigmoid(-z); the chain through each reward carries beta/|y|.
    let weight = sigmoid(-z);
    let len_w = pair.chosen.chars().count() as f64 + 1.0;
    let len_l = pair.rejected.chars().count() as f64 + 1.0;
    policy.accumulate_log_prob_grad(
        vocab,
        &pair.chosen,
        -scale * weight * beta / len_w,
        grad,
    )?;
    policy.accumulate_log_prob_grad(
        vocab,
        &pair.rejected,
        scale * weight * beta / len_l,
        grad,
    )?;
    Ok(paired_loss(r_w, r_l, margin))
}

/// Pseudo-labeled loss with its analytic gradient. The EMA statistics and
/// the label are constants; the chain rule contributes `1 / sigma_t` from
/// the normalization.
#[allow(clippy::too_many_arguments)]
pub fn unpaired_loss_with_grad(
    policy: &PolicyParams,
    vocab: &Vocab,
    example: &UnpairedExample,
    winning: bool,
    priors: Priors,
    state: &ThresholdState,
    beta: f64,
    scale: f64,
    grad: &mut Gradient,
) -> Result<f64> {
    let r_raw = policy.reward(vocab, &example.prompt, &example.response, beta)?;
    let r_norm = state.normalize(r_raw);
    let z = r_norm - state.delta();
    let label = if winning { 1.0 } else { 0.0 };
    let dl_dz = priors.label_prob(winning) * (sigmoid(z) - label);
    let len = example.response.chars().count() as f64 + 1.0;
    policy.accumulate_log_prob_grad(
        vocab,
        &example.response,
        scale * dl_dz / state.sigma() * beta / len,
        grad,
    )?;
    Ok(unpaired_loss(r_norm, state.delta(), winning, priors))
}

/// Frozen-reference preference loss with its analytic gradient.
pub fn dpo_loss_with_grad(
    policy: &PolicyParams,
    reference: &PolicyParams,
    vocab: &Vocab,
    pair: &PairedExample,
    beta: f64,
    scale: f64,
    grad: &mut Gradient,
) -> Result<f64> {
    let gap = dpo_logit_gap(policy, reference, vocab, pair, beta)?;
    let weight = sigmoid(-gap);
    policy.accumulate_log_prob_grad(vocab, &pair.chosen, -scale * weight * beta, grad)?;
    policy.accumulate_log_prob_grad(vocab, &pair.rejected, scale * weight * beta, grad)?;
    Ok(softplus(-gap))
}

/// SFT loss with its analytic gradient.
pub fn sft_loss_with_grad(
    policy: &PolicyParams,
    vocab: &Vocab,
    example: &UnpairedExample,
    length_normalized: bool,
    scale: f64,
    grad: &mut Gradient,
) -> Result<f64> {
    let denom = if length_normalized {
        example.response.chars().count() as f64 + 1.0
    } else {
        1.0
    };
    policy.accumulate_log_prob_grad(vocab, &example.response, -scale / denom, grad)?;
    sft_loss(policy, vocab, example, length_normalized)
}
