//! A minimal trainable autoregressive policy over characters.
//!
//! The policy is a bigram table: a `V x V` matrix of logits whose row-wise
//! softmax gives `pi(next | prev)`. Responses are scored by chaining from a
//! BOS sentinel through an appended EOS, so the exact sequence likelihood is
//!
//! ```text
//! log pi(y) = sum_k log softmax(logits[prev_k])[tok_k]
//! ```
//!
//! and the length-normalized reward is
//!
//! ```text
//! r(x, y) = (beta / |y|) * log pi(y)
//! ```
//!
//! where `|y|` counts the appended EOS. The table conditions only on the
//! previous token, so the prompt does not enter the likelihood; the reward
//! interface still accepts it so richer policies can be dropped in behind
//! the same signature.
//!
//! Everything here is exactly differentiable in closed form; gradients are
//! assembled with the softmax identity `d log softmax(x)[t] / dx[c] =
//! onehot(t)[c] - softmax(x)[c]` and verified against finite differences in
//! the tests.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Character vocabulary: lowercase `a`-`z`, space, plus BOS and EOS
/// sentinels. Token ids are `0..=25` for letters, `26` for space, `27` for
/// BOS, `28` for EOS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocab {
    symbols: Vec<char>,
}

/// Number of symbols including the BOS/EOS sentinels.
pub const VOCAB_SIZE: usize = 29;

const BOS_ID: usize = 27;
const EOS_ID: usize = 28;

impl Default for Vocab {
    fn default() -> Self {
        let mut symbols: Vec<char> = ('a'..='z').collect();
        symbols.push(' ');
        symbols.push('^'); // BOS marker, display only
        symbols.push('$'); // EOS marker, display only
        Vocab { symbols }
    }
}

impl Vocab {
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn bos(&self) -> usize {
        BOS_ID
    }

    pub fn eos(&self) -> usize {
        EOS_ID
    }

    /// Token id of a character, or `None` for out-of-vocabulary input and
    /// for the sentinel display markers (BOS/EOS are not encodable text).
    pub fn id_of(&self, ch: char) -> Option<usize> {
        match ch {
            'a'..='z' => Some(ch as usize - 'a' as usize),
            ' ' => Some(26),
            _ => None,
        }
    }

    /// Encodes a response: one id per character plus a terminating EOS.
    /// `|y|` is the length of the returned sequence, EOS included.
    pub fn encode(&self, text: &str) -> Result<Vec<usize>> {
        let mut ids = Vec::with_capacity(text.len() + 1);
        for (pos, ch) in text.char_indices() {
            let id = self
                .id_of(ch)
                .ok_or(Error::OutOfVocab { ch, pos })?;
            ids.push(id);
        }
        ids.push(EOS_ID);
        Ok(ids)
    }

    /// FNV-1a hash of the symbol list; stored in checkpoints so that a
    /// table trained against one vocabulary is never scored with another.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for ch in &self.symbols {
            let mut buf = [0u8; 4];
            for b in ch.encode_utf8(&mut buf).as_bytes() {
                h ^= u64::from(*b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

/// Trainable bigram logits. Row = previous token, column = next token;
/// the row-wise softmax defines the transition distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyParams {
    v: usize,
    logits: Vec<f64>,
}

impl PolicyParams {
    /// All-zero logits: the uniform policy.
    pub fn zeros() -> Self {
        PolicyParams {
            v: VOCAB_SIZE,
            logits: vec![0.0; VOCAB_SIZE * VOCAB_SIZE],
        }
    }

    /// I.i.d. Gaussian logits with mean 0 and standard deviation
    /// `init_scale`; deterministic given `seed`. `init_scale = 0` yields the
    /// uniform policy.
    pub fn init(init_scale: f64, seed: u64) -> Self {
        assert!(init_scale >= 0.0, "init_scale must be non-negative");
        if init_scale == 0.0 {
            return Self::zeros();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, init_scale).expect("valid stdev");
        let logits = (0..VOCAB_SIZE * VOCAB_SIZE)
            .map(|_| normal.sample(&mut rng))
            .collect();
        PolicyParams { v: VOCAB_SIZE, logits }
    }

    pub fn size(&self) -> usize {
        self.v
    }

    pub fn logits(&self) -> &[f64] {
        &self.logits
    }

    pub fn logits_mut(&mut self) -> &mut [f64] {
        &mut self.logits
    }

    pub fn row(&self, prev: usize) -> &[f64] {
        &self.logits[prev * self.v..(prev + 1) * self.v]
    }

    pub fn is_finite(&self) -> bool {
        self.logits.iter().all(|x| x.is_finite())
    }

    /// Softmax of one row; sums to 1 up to rounding.
    pub fn transition_probs(&self, prev: usize) -> Vec<f64> {
        let row = self.row(prev);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut out: Vec<f64> = row.iter().map(|x| (x - max).exp()).collect();
        let sum: f64 = out.iter().sum();
        for p in &mut out {
            *p /= sum;
        }
        out
    }

    /// Exact log-likelihood of a response, chaining BOS -> chars -> EOS.
    /// Always `<= 0`; errors if non-finite parameters contaminate the
    /// result.
    pub fn log_prob(&self, vocab: &Vocab, response: &str) -> Result<f64> {
        let ids = vocab.encode(response)?;
        let mut total = 0.0;
        let mut prev = vocab.bos();
        for &tok in &ids {
            total += self.log_transition(prev, tok);
            prev = tok;
        }
        if !total.is_finite() {
            return Err(Error::NonFinite { context: "log_prob" });
        }
        Ok(total)
    }

    fn log_transition(&self, prev: usize, next: usize) -> f64 {
        let row = self.row(prev);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = row.iter().map(|x| (x - max).exp()).sum::<f64>().ln() + max;
        row[next] - lse
    }

    /// Length-normalized reward `(beta / |y|) * log pi(y)` where `|y|`
    /// includes the terminating EOS. The prompt is accepted for interface
    /// symmetry; the bigram table conditions only on BOS.
    pub fn reward(&self, vocab: &Vocab, _prompt: &str, response: &str, beta: f64) -> Result<f64> {
        assert!(beta > 0.0, "beta must be positive");
        let len = response.chars().count() + 1;
        Ok(beta / len as f64 * self.log_prob(vocab, response)?)
    }

    /// Exact gradient of `reward` with respect to the logits.
    pub fn reward_grad(
        &self,
        vocab: &Vocab,
        _prompt: &str,
        response: &str,
        beta: f64,
    ) -> Result<Gradient> {
        assert!(beta > 0.0, "beta must be positive");
        let mut grad = Gradient::zeros(self.v);
        let len = response.chars().count() + 1;
        self.accumulate_log_prob_grad(vocab, response, beta / len as f64, &mut grad)?;
        Ok(grad)
    }

    /// Adds `scale * d log pi(y) / d logits` into `grad`. For each
    /// transition, row `prev` receives `scale * (onehot(tok) -
    /// softmax(logits[prev]))`; every touched row therefore sums to zero.
    pub fn accumulate_log_prob_grad(
        &self,
        vocab: &Vocab,
        response: &str,
        scale: f64,
        grad: &mut Gradient,
    ) -> Result<()> {
        let ids = vocab.encode(response)?;
        let mut prev = vocab.bos();
        for &tok in &ids {
            let probs = self.transition_probs(prev);
            let row = grad.row_mut(prev);
            for (c, p) in probs.iter().enumerate() {
                row[c] -= scale * p;
            }
            row[tok] += scale;
            prev = tok;
        }
        Ok(())
    }

    /// Writes the table as JSON with a header guarding vocabulary and
    /// format compatibility. The float round trip is exact.
    pub fn save(&self, path: &Path, vocab: &Vocab) -> Result<()> {
        let file = ParamsFile {
            format_version: PARAMS_FORMAT_VERSION,
            vocab_hash: vocab.fingerprint(),
            v: self.v,
            logits: self.logits.clone(),
        };
        fs::write(path, serde_json::to_string(&file).expect("serializable"))?;
        Ok(())
    }

    pub fn load(path: &Path, vocab: &Vocab) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let file: ParamsFile = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("unreadable parameter file: {e}")))?;
        file.into_params(vocab)
    }
}

const PARAMS_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ParamsFile {
    format_version: u32,
    vocab_hash: u64,
    v: usize,
    logits: Vec<f64>,
}

impl ParamsFile {
    fn into_params(self, vocab: &Vocab) -> Result<PolicyParams> {
        if self.format_version != PARAMS_FORMAT_VERSION {
            return Err(Error::Checkpoint(format!(
                "format version {} (expected {PARAMS_FORMAT_VERSION})",
                self.format_version
            )));
        }
        if self.vocab_hash != vocab.fingerprint() {
            return Err(Error::Checkpoint("vocabulary hash mismatch".into()));
        }
        if self.v != vocab.size() || self.logits.len() != self.v * self.v {
            return Err(Error::Checkpoint("logit table shape mismatch".into()));
        }
        if !self.logits.iter().all(|x| x.is_finite()) {
            return Err(Error::Checkpoint("non-finite logits".into()));
        }
        Ok(PolicyParams { v: self.v, logits: self.logits })
    }
}

/// Gradient with the same shape as the logit table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gradient {
    v: usize,
    values: Vec<f64>,
}

impl Gradient {
    pub fn zeros(v: usize) -> Self {
        Gradient { v, values: vec![0.0; v * v] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, prev: usize) -> &[f64] {
        &self.values[prev * self.v..(prev + 1) * self.v]
    }

    pub fn row_mut(&mut self, prev: usize) -> &mut [f64] {
        &mut self.values[prev * self.v..(prev + 1) * self.v]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Gradient, scale: f64) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += scale * b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for a in &mut self.values {
            *a *= factor;
        }
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}
