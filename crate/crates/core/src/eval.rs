//! Held-out evaluation and reward-distribution snapshots.
//!
//! Accuracy counts a pair as correct only when the chosen response's reward
//! strictly exceeds the rejected one's; ties are incorrect, so the uniform
//! policy scores exactly zero. Snapshots package the EMA-normalized reward
//! samples of a paired set together with display KDE curves and the current
//! threshold, as a long-format CSV for external plotting.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::corpus::PairedExample;
use crate::error::{Error, Result};
use crate::policy::{PolicyParams, Vocab};
use crate::threshold::{silverman_bandwidth, KdeModel, ThresholdState};

/// Held-out ranking accuracy with per-example reward margins.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub n_test: usize,
    /// `reward(chosen) - reward(rejected)` per test pair.
    pub margins: Vec<f64>,
}

/// Scores every test pair and reports the fraction ranked correctly.
pub fn pairwise_accuracy(
    params: &PolicyParams,
    vocab: &Vocab,
    test_pairs: &[PairedExample],
    beta: f64,
) -> Result<EvalReport> {
    if test_pairs.is_empty() {
        return Err(Error::Empty { what: "test set" });
    }
    let mut margins = Vec::with_capacity(test_pairs.len());
    for pair in test_pairs {
        let r_w = params.reward(vocab, &pair.prompt, &pair.chosen, beta)?;
        let r_l = params.reward(vocab, &pair.prompt, &pair.rejected, beta)?;
        margins.push(r_w - r_l);
    }
    let correct = margins.iter().filter(|&&m| m > 0.0).count();
    Ok(EvalReport {
        accuracy: correct as f64 / test_pairs.len() as f64,
        n_test: test_pairs.len(),
        margins,
    })
}

/// Normalized reward samples, display densities, and the active threshold
/// at one training step.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub win_rewards: Vec<f64>,
    pub lose_rewards: Vec<f64>,
    pub grid: Vec<f64>,
    pub win_density: Vec<f64>,
    pub lose_density: Vec<f64>,
    pub delta_t: f64,
}

const SNAPSHOT_GRID_POINTS: usize = 200;

/// Builds a snapshot from a paired sample: rewards are EMA-normalized with
/// the given state, both densities share the Silverman bandwidth of the
/// pooled sample, and the grid spans the pooled range padded by three
/// bandwidths.
pub fn snapshot(
    params: &PolicyParams,
    vocab: &Vocab,
    sample: &[PairedExample],
    state: &ThresholdState,
    beta: f64,
    step: u64,
) -> Result<Snapshot> {
    if sample.is_empty() {
        return Err(Error::Empty { what: "snapshot sample" });
    }
    if !state.is_initialized() {
        return Err(Error::InvalidArgument(
            "snapshot requires an initialized threshold state".into(),
        ));
    }
    let mut win_rewards = Vec::with_capacity(sample.len());
    let mut lose_rewards = Vec::with_capacity(sample.len());
    for pair in sample {
        win_rewards
            .push(state.normalize(params.reward(vocab, &pair.prompt, &pair.chosen, beta)?));
        lose_rewards
            .push(state.normalize(params.reward(vocab, &pair.prompt, &pair.rejected, beta)?));
    }
    let pooled: Vec<f64> = win_rewards.iter().chain(&lose_rewards).copied().collect();
    let h = silverman_bandwidth(&pooled);
    let lo = pooled.iter().cloned().fold(f64::INFINITY, f64::min) - 3.0 * h;
    let hi = pooled.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 3.0 * h;
    let step_width = (hi - lo) / (SNAPSHOT_GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SNAPSHOT_GRID_POINTS)
        .map(|i| lo + i as f64 * step_width)
        .collect();
    let win_kde = KdeModel::new(win_rewards.clone(), h)?;
    let lose_kde = KdeModel::new(lose_rewards.clone(), h)?;
    Ok(Snapshot {
        step,
        win_rewards,
        lose_rewards,
        win_density: grid.iter().map(|&r| win_kde.density(r)).collect(),
        lose_density: grid.iter().map(|&r| lose_kde.density(r)).collect(),
        grid,
        delta_t: state.delta(),
    })
}

impl Snapshot {
    /// Trapezoid integral of the pointwise minimum of the two densities; 1
    /// for identical distributions and 0 for fully separated ones.
    pub fn overlap_area(&self) -> f64 {
        let mut area = 0.0;
        for i in 1..self.grid.len() {
            let prev = self.win_density[i - 1].min(self.lose_density[i - 1]);
            let next = self.win_density[i].min(self.lose_density[i]);
            area += 0.5 * (prev + next) * (self.grid[i] - self.grid[i - 1]);
        }
        area
    }

    /// Long-format CSV: `series,x,y` rows for samples, density curves, the
    /// threshold, and the step index.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "series,x,y")?;
        writeln!(w, "step,0,{}", self.step)?;
        writeln!(w, "threshold,0,{}", self.delta_t)?;
        for (i, r) in self.win_rewards.iter().enumerate() {
            writeln!(w, "win_sample,{i},{r}")?;
        }
        for (i, r) in self.lose_rewards.iter().enumerate() {
            writeln!(w, "lose_sample,{i},{r}")?;
        }
        for (g, d) in self.grid.iter().zip(&self.win_density) {
            writeln!(w, "win_density,{g},{d}")?;
        }
        for (g, d) in self.grid.iter().zip(&self.lose_density) {
            writeln!(w, "lose_density,{g},{d}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut lines = BufReader::new(File::open(path)?).lines();
        let header = lines.next().transpose()?;
        if header.as_deref() != Some("series,x,y") {
            return Err(Error::MalformedRecord {
                line: 1,
                message: "missing snapshot header".into(),
            });
        }
        let mut step = None;
        let mut delta_t = None;
        let mut win_rewards = Vec::new();
        let mut lose_rewards = Vec::new();
        let mut grid = Vec::new();
        let mut win_density = Vec::new();
        let mut lose_density = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let number = idx + 2;
            let bad = |message: String| Error::MalformedRecord { line: number, message };
            let mut parts = line.splitn(3, ',');
            let series = parts.next().unwrap_or_default().to_string();
            let x = parts
                .next()
                .ok_or_else(|| bad("missing x column".into()))?
                .to_string();
            let y: f64 = parts
                .next()
                .ok_or_else(|| bad("missing y column".into()))?
                .parse()
                .map_err(|e| bad(format!("bad y value: {e}")))?;
            match series.as_str() {
                "step" => step = Some(y as u64),
                "threshold" => delta_t = Some(y),
                "win_sample" => win_rewards.push(y),
                "lose_sample" => lose_rewards.push(y),
                "win_density" => {
                    grid.push(x.parse().map_err(|e| bad(format!("bad x value: {e}")))?);
                    win_density.push(y);
                }
                "lose_density" => lose_density.push(y),
                other => return Err(bad(format!("unknown series {other:?}"))),
            }
        }
        let step = step.ok_or(Error::MalformedRecord {
            line: 1,
            message: "missing step row".into(),
        })?;
        let delta_t = delta_t.ok_or(Error::MalformedRecord {
            line: 1,
            message: "missing threshold row".into(),
        })?;
        if win_density.len() != grid.len() || lose_density.len() != grid.len() {
            return Err(Error::MalformedRecord {
                line: 1,
                message: "density curves have mismatched lengths".into(),
            });
        }
        Ok(Snapshot { step, win_rewards, lose_rewards, grid, win_density, lose_density, delta_t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{default_vocabulary, generate_toy, ToySpec};
    use crate::policy::VOCAB_SIZE;
    use crate::threshold::estimate_threshold;
    use crate::threshold::Priors;

    /// Policy that prefers stopping early: a large EOS logit in every row
    /// makes continuation transitions expensive, so shorter responses get
    /// higher average log-likelihood.
    fn short_loving_params(strength: f64) -> PolicyParams {
        let vocab = Vocab::default();
        let mut params = PolicyParams::zeros();
        for prev in 0..VOCAB_SIZE {
            params.logits_mut()[prev * VOCAB_SIZE + vocab.eos()] = strength;
        }
        params
    }

    #[test]
    fn oracle_policy_scores_perfectly() {
        let vocab = Vocab::default();
        let data = generate_toy(&ToySpec { n_test: 200, ..ToySpec::new(0, 0, 3) }).unwrap();
        let params = short_loving_params(5.0);
        let report = pairwise_accuracy(&params, &vocab, &data.test, 10.0).unwrap();
        assert_eq!(report.accuracy, 1.0);
        assert!(report.margins.iter().all(|&m| m > 0.0));
    }

    #[test]
    fn uniform_policy_ties_count_as_incorrect() {
        let vocab = Vocab::default();
        // Equal-length pairs score identically under the uniform model, so
        // every margin is exactly zero; the strict rule counts them wrong.
        let pairs: Vec<PairedExample> = [("cat", "dog"), ("ab", "xy"), ("horse", "mouse")]
            .iter()
            .map(|(c, r)| PairedExample {
                prompt: format!("{c} {r}"),
                chosen: c.to_string(),
                rejected: r.to_string(),
            })
            .collect();
        let report =
            pairwise_accuracy(&PolicyParams::zeros(), &vocab, &pairs, 10.0).unwrap();
        assert_eq!(report.accuracy, 0.0);
        assert!(report.margins.iter().all(|&m| m == 0.0));

        // Across different lengths the uniform margins are only tied up to
        // rounding: the length normalization cancels analytically, leaving
        // ulp-level residue.
        let data = generate_toy(&ToySpec { n_test: 50, ..ToySpec::new(0, 0, 4) }).unwrap();
        let toy =
            pairwise_accuracy(&PolicyParams::zeros(), &vocab, &data.test, 10.0).unwrap();
        assert!(toy.margins.iter().all(|&m| m.abs() < 1e-9));
    }

    #[test]
    fn random_policies_average_to_a_coin_flip() {
        // One fixed random table scores a table-specific accuracy (its
        // entries systematically favor some letter patterns), but the
        // average over random tables is symmetric around one half.
        let vocab = Vocab::default();
        let data = generate_toy(&ToySpec { n_test: 400, ..ToySpec::new(0, 0, 5) }).unwrap();
        let mut total = 0.0;
        let seeds = 50;
        for seed in 0..seeds {
            let params = PolicyParams::init(0.1, 9000 + seed);
            total += pairwise_accuracy(&params, &vocab, &data.test, 10.0)
                .unwrap()
                .accuracy;
        }
        let mean = total / seeds as f64;
        assert!((mean - 0.5).abs() <= 0.05, "mean accuracy = {mean}");
    }

    #[test]
    fn empty_test_set_is_rejected() {
        let vocab = Vocab::default();
        assert!(pairwise_accuracy(&PolicyParams::zeros(), &vocab, &[], 10.0).is_err());
    }

    /// Vocabulary with lengths 1, 6, and 15 only: every valid prompt has
    /// exactly one shortest and one longest word, and under
    /// [`short_loving_params`] the reward depends only on length, so the
    /// winning and losing rewards form two separated point masses.
    fn two_length_class_data(n: usize, seed: u64) -> Vec<PairedExample> {
        let mut vocabulary: Vec<String> = vec!["a".into(), "i".into()];
        vocabulary.extend(
            default_vocabulary()
                .into_iter()
                .filter(|w| w.len() == 6)
                .take(30),
        );
        vocabulary.extend(
            default_vocabulary()
                .into_iter()
                .filter(|w| w.len() == 15)
                .take(6),
        );
        let spec = ToySpec {
            n_paired: n,
            n_unpaired: 0,
            n_test: 0,
            words_per_prompt: 10,
            vocabulary,
            seed,
        };
        generate_toy(&spec).unwrap().paired
    }

    /// State fitted from a strongly separating policy: EMA statistics from
    /// the pooled rewards, threshold estimated from the normalized winning
    /// and losing samples the same way the trainer does.
    fn separated_snapshot() -> Snapshot {
        let vocab = Vocab::default();
        let params = short_loving_params(8.0);
        let paired = two_length_class_data(40, 6);
        let mut win = Vec::new();
        let mut lose = Vec::new();
        for pair in &paired {
            win.push(params.reward(&vocab, &pair.prompt, &pair.chosen, 10.0).unwrap());
            lose.push(params.reward(&vocab, &pair.prompt, &pair.rejected, 10.0).unwrap());
        }
        let pooled: Vec<f64> = win.iter().chain(&lose).copied().collect();
        let mu = pooled.iter().sum::<f64>() / pooled.len() as f64;
        let sd = (pooled.iter().map(|r| (r - mu) * (r - mu)).sum::<f64>()
            / pooled.len() as f64)
            .sqrt();
        let win_norm: Vec<f64> = win.iter().map(|r| (r - mu) / sd).collect();
        let lose_norm: Vec<f64> = lose.iter().map(|r| (r - mu) / sd).collect();
        let est =
            estimate_threshold(&win_norm, &lose_norm, Priors::new(0.5).unwrap(), 200).unwrap();
        let mut state = ThresholdState::new(0.95).unwrap();
        state.ema_update(mu, sd, est.delta);
        snapshot(&params, &vocab, &paired, &state, 10.0, 17).unwrap()
    }

    #[test]
    fn separated_rewards_straddle_the_threshold() {
        let snap = separated_snapshot();
        let min_win = snap.win_rewards.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_lose = snap.lose_rewards.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(max_lose < min_win, "rewards should separate");
        assert!(
            max_lose < snap.delta_t && snap.delta_t < min_win,
            "lose max {max_lose}, threshold {}, win min {min_win}",
            snap.delta_t
        );
    }

    #[test]
    fn overlap_shrinks_as_distributions_separate() {
        // Near-uniform policy: winning and losing rewards are drawn from
        // nearly identical distributions, so the density overlap is large;
        // the separating policy drives it down.
        let vocab = Vocab::default();
        let data = generate_toy(&ToySpec { n_test: 0, ..ToySpec::new(40, 0, 6) }).unwrap();
        let params = PolicyParams::init(0.05, 3);
        let mut rewards = Vec::new();
        for pair in &data.paired {
            rewards.push(params.reward(&vocab, &pair.prompt, &pair.chosen, 10.0).unwrap());
            rewards.push(params.reward(&vocab, &pair.prompt, &pair.rejected, 10.0).unwrap());
        }
        let mu = rewards.iter().sum::<f64>() / rewards.len() as f64;
        let sd = (rewards.iter().map(|r| (r - mu) * (r - mu)).sum::<f64>()
            / rewards.len() as f64)
            .sqrt();
        let mut state = ThresholdState::new(0.95).unwrap();
        state.ema_update(mu, sd, 0.0);
        let blurred = snapshot(&params, &vocab, &data.paired, &state, 10.0, 0).unwrap();
        let separated = separated_snapshot();
        assert!(blurred.overlap_area() > 0.6, "overlap = {}", blurred.overlap_area());
        assert!(separated.overlap_area() < 0.3 * blurred.overlap_area());
    }

    #[test]
    fn snapshot_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("snapshot.csv");
        let snap = separated_snapshot();
        snap.write_csv(&path).unwrap();
        let loaded = Snapshot::read_csv(&path).unwrap();
        assert_eq!(loaded, snap);
    }
}
