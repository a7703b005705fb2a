//! Reward thresholding for pseudo-labels.
//!
//! Winning and losing reward samples are turned into Gaussian kernel
//! density estimates with a shared Silverman bandwidth, and the decision
//! threshold is the grid point minimizing the estimated Bayes risk
//!
//! ```text
//! R(delta) = P(win) * integral_{-inf}^{delta} p_w
//!          + P(lose) * integral_{delta}^{inf} p_l
//! ```
//!
//! with both integrals taken by the trapezoid rule on the same grid. Batch
//! statistics and the threshold itself are stabilized across minibatches
//! with exponential moving averages; pseudo-label comparisons happen in the
//! EMA-normalized reward space `(r - mu_t) / sigma_t`, which is also the
//! space the KDE inputs live in so the comparison is well-typed.
//!
//! [`TheoremCheck`] backs the separation claim with a Monte-Carlo
//! experiment: for sub-Gaussian rewards the probability that some threshold
//! splits all losing from all winning samples is at least `1 - alpha` with
//! `alpha = n_L * (exp(-t1^2/2*sigma_l^2) + exp(-t2^2/2*sigma_w^2))`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower bound applied to EMA standard deviations; guards divisions in
/// degenerate batches without materially moving estimates.
pub const SIGMA_FLOOR: f64 = 1e-6;

/// Bandwidth used when the sample spread is zero.
pub const BANDWIDTH_FLOOR: f64 = 1e-3;

/// Default number of grid points for the risk search.
pub const DEFAULT_GRID_POINTS: usize = 200;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Silverman's rule of thumb, `1.06 * stdev * n^(-1/5)`, with the
/// population standard deviation; degenerate samples fall back to
/// [`BANDWIDTH_FLOOR`].
pub fn silverman_bandwidth(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return BANDWIDTH_FLOOR;
    }
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let sd = var.sqrt();
    if sd == 0.0 {
        return BANDWIDTH_FLOOR;
    }
    1.06 * sd * n.powf(-0.2)
}

/// Gaussian kernel density estimate over a fixed sample set.
#[derive(Debug, Clone)]
pub struct KdeModel {
    samples: Vec<f64>,
    bandwidth: f64,
}

impl KdeModel {
    pub fn new(samples: Vec<f64>, bandwidth: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty { what: "KDE sample set" });
        }
        if bandwidth.is_nan() || bandwidth <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        Ok(KdeModel { samples, bandwidth })
    }

    /// Fits with the Silverman bandwidth of the samples themselves.
    pub fn fit(samples: Vec<f64>) -> Result<Self> {
        let h = silverman_bandwidth(&samples);
        KdeModel::new(samples, h)
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `(1 / n h) * sum_i K((r - s_i) / h)` with the standard Gaussian
    /// kernel.
    pub fn density(&self, r: f64) -> f64 {
        let h = self.bandwidth;
        let sum: f64 = self
            .samples
            .iter()
            .map(|s| {
                let u = (r - s) / h;
                (-0.5 * u * u).exp()
            })
            .sum();
        INV_SQRT_2PI * sum / (self.samples.len() as f64 * h)
    }
}

/// Prior probability that an unpaired response is a winning one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Priors {
    p_win: f64,
}

impl Priors {
    pub fn new(p_win: f64) -> Result<Self> {
        if !(p_win > 0.0 && p_win < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "p_win must lie strictly between 0 and 1, got {p_win}"
            )));
        }
        Ok(Priors { p_win })
    }

    pub fn p_win(&self) -> f64 {
        self.p_win
    }

    pub fn p_lose(&self) -> f64 {
        1.0 - self.p_win
    }

    /// Probability of the given pseudo-label under the prior.
    pub fn label_prob(&self, winning: bool) -> f64 {
        if winning {
            self.p_win
        } else {
            self.p_lose()
        }
    }
}

/// Result of the Bayes-risk grid search, with the full curves kept for
/// snapshot output.
#[derive(Debug, Clone)]
pub struct ThresholdEstimate {
    /// Grid point of minimum estimated risk; ties go to the smallest value.
    pub delta: f64,
    pub grid: Vec<f64>,
    pub risk: Vec<f64>,
    pub win_density: Vec<f64>,
    pub lose_density: Vec<f64>,
}

/// Estimates the risk-minimizing threshold from winning and losing reward
/// samples. Both densities share the Silverman bandwidth of the pooled
/// samples, and the grid spans the pooled range padded by three bandwidths.
pub fn estimate_threshold(
    win_rewards: &[f64],
    lose_rewards: &[f64],
    priors: Priors,
    grid_points: usize,
) -> Result<ThresholdEstimate> {
    if win_rewards.is_empty() {
        return Err(Error::Empty { what: "winning reward sample" });
    }
    if lose_rewards.is_empty() {
        return Err(Error::Empty { what: "losing reward sample" });
    }
    if grid_points < 3 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 3 points, got {grid_points}"
        )));
    }

    let pooled: Vec<f64> = win_rewards.iter().chain(lose_rewards).copied().collect();
    let h = silverman_bandwidth(&pooled);
    let lo = pooled.iter().cloned().fold(f64::INFINITY, f64::min) - 3.0 * h;
    let hi = pooled.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 3.0 * h;

    let p_w = KdeModel::new(win_rewards.to_vec(), h)?;
    let p_l = KdeModel::new(lose_rewards.to_vec(), h)?;

    let step = (hi - lo) / (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points).map(|i| lo + i as f64 * step).collect();
    let win_density: Vec<f64> = grid.iter().map(|&r| p_w.density(r)).collect();
    let lose_density: Vec<f64> = grid.iter().map(|&r| p_l.density(r)).collect();

    // Cumulative trapezoid integrals from the left edge of the grid; the
    // mass below `lo` is negligible at three bandwidths of padding.
    let mut cum_w = vec![0.0; grid_points];
    let mut cum_l = vec![0.0; grid_points];
    for i in 1..grid_points {
        cum_w[i] = cum_w[i - 1] + 0.5 * (win_density[i - 1] + win_density[i]) * step;
        cum_l[i] = cum_l[i - 1] + 0.5 * (lose_density[i - 1] + lose_density[i]) * step;
    }
    let total_l = cum_l[grid_points - 1];

    let risk: Vec<f64> = (0..grid_points)
        .map(|i| priors.p_win() * cum_w[i] + priors.p_lose() * (total_l - cum_l[i]))
        .collect();

    let mut best = 0;
    for (i, &r) in risk.iter().enumerate() {
        if r < risk[best] {
            best = i;
        }
    }

    Ok(ThresholdEstimate {
        delta: grid[best],
        grid,
        risk,
        win_density,
        lose_density,
    })
}

/// EMA-tracked reward statistics and threshold. The first batch is adopted
/// directly; later batches blend in with weight `1 - momentum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdState {
    mu: f64,
    sigma: f64,
    delta: f64,
    momentum: f64,
    stats_initialized: bool,
    delta_initialized: bool,
}

impl ThresholdState {
    pub fn new(momentum: f64) -> Result<Self> {
        if !(momentum > 0.0 && momentum < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "momentum must lie strictly between 0 and 1, got {momentum}"
            )));
        }
        Ok(ThresholdState {
            mu: 0.0,
            sigma: 1.0,
            delta: 0.0,
            momentum,
            stats_initialized: false,
            delta_initialized: false,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn is_initialized(&self) -> bool {
        self.stats_initialized && self.delta_initialized
    }

    /// Blends batch mean/stdev into the EMA; the standard deviation is
    /// floored at [`SIGMA_FLOOR`].
    pub fn update_stats(&mut self, batch_mu: f64, batch_sigma: f64) {
        assert!(batch_sigma >= 0.0, "batch sigma must be non-negative");
        if self.stats_initialized {
            let m = self.momentum;
            self.mu = m * self.mu + (1.0 - m) * batch_mu;
            self.sigma = (m * self.sigma + (1.0 - m) * batch_sigma).max(SIGMA_FLOOR);
        } else {
            self.mu = batch_mu;
            self.sigma = batch_sigma.max(SIGMA_FLOOR);
            self.stats_initialized = true;
        }
    }

    /// Blends a batch threshold estimate into the EMA threshold.
    pub fn update_delta(&mut self, delta_b: f64) {
        if self.delta_initialized {
            let m = self.momentum;
            self.delta = m * self.delta + (1.0 - m) * delta_b;
        } else {
            self.delta = delta_b;
            self.delta_initialized = true;
        }
    }

    /// One full EMA step over mean, stdev, and threshold.
    pub fn ema_update(&mut self, batch_mu: f64, batch_sigma: f64, delta_b: f64) {
        self.update_stats(batch_mu, batch_sigma);
        self.update_delta(delta_b);
    }

    /// Maps a raw reward into the EMA-normalized space.
    pub fn normalize(&self, raw_reward: f64) -> f64 {
        (raw_reward - self.mu) / self.sigma
    }

    /// Pseudo-label: winning iff the normalized reward strictly exceeds the
    /// EMA threshold; a reward exactly at the threshold is losing.
    pub fn pseudo_label(&self, raw_reward: f64) -> bool {
        assert!(self.is_initialized(), "pseudo_label requires an initialized state");
        self.normalize(raw_reward) > self.delta
    }
}

/// Parameterization of the separation experiment: `n_l` losing rewards from
/// `N(mu_l, sigma_l^2)` and `n_l` winning rewards from `N(mu_w, sigma_w^2)`
/// per trial, with the candidate threshold interval
/// `[mu_l + t1, mu_w - t2]`.
#[derive(Debug, Clone, Copy)]
pub struct TheoremCheck {
    pub mu_l: f64,
    pub mu_w: f64,
    pub sigma_l: f64,
    pub sigma_w: f64,
    pub n_l: usize,
    pub t1: f64,
    pub t2: f64,
}

/// Outcome of the Monte-Carlo separation experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoremReport {
    /// `n_l * (exp(-t1^2 / 2 sigma_l^2) + exp(-t2^2 / 2 sigma_w^2))`.
    pub alpha_bound: f64,
    /// Fraction of trials where the left endpoint `mu_l + t1` separated all
    /// losing from all winning rewards.
    pub empirical_separation_prob: f64,
    /// Fraction of trials where some point of the candidate interval
    /// separated them; always at least the left-endpoint probability.
    pub interval_separation_prob: f64,
    pub trials: usize,
}

impl TheoremReport {
    /// Whether the empirical probability meets `1 - alpha_bound`, allowing
    /// the given number of binomial standard errors of Monte-Carlo slack.
    pub fn meets_bound(&self, slack_sigmas: f64) -> bool {
        let e = self.empirical_separation_prob;
        let stderr = (e * (1.0 - e) / self.trials as f64).sqrt();
        e >= 1.0 - self.alpha_bound - slack_sigmas * stderr
    }
}

impl TheoremCheck {
    fn validate(&self) -> Result<()> {
        if self.t1 < 0.0 || self.t2 < 0.0 {
            return Err(Error::InvalidArgument(
                "t1 and t2 must be non-negative".into(),
            ));
        }
        if !(self.sigma_l > 0.0 && self.sigma_w > 0.0) {
            return Err(Error::InvalidArgument(
                "sigma_l and sigma_w must be positive".into(),
            ));
        }
        if self.n_l == 0 {
            return Err(Error::InvalidArgument("n_l must be at least 1".into()));
        }
        if self.mu_l + self.t1 > self.mu_w - self.t2 {
            return Err(Error::InvalidArgument(format!(
                "threshold interval is empty: mu_l + t1 = {} exceeds mu_w - t2 = {}",
                self.mu_l + self.t1,
                self.mu_w - self.t2
            )));
        }
        Ok(())
    }

    /// Union-bound failure probability for this parameterization.
    pub fn alpha_bound(&self) -> f64 {
        self.n_l as f64
            * ((-self.t1 * self.t1 / (2.0 * self.sigma_l * self.sigma_l)).exp()
                + (-self.t2 * self.t2 / (2.0 * self.sigma_w * self.sigma_w)).exp())
    }

    /// Runs the Monte-Carlo experiment. Gaussians stand in for the
    /// sub-Gaussian assumption (a Gaussian is sub-Gaussian with variance
    /// proxy equal to its variance).
    pub fn run(&self, trials: usize, seed: u64) -> Result<TheoremReport> {
        self.validate()?;
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let losing = Normal::new(self.mu_l, self.sigma_l).expect("valid normal");
        let winning = Normal::new(self.mu_w, self.sigma_w).expect("valid normal");
        let left = self.mu_l + self.t1;
        let right = self.mu_w - self.t2;

        let mut left_hits = 0usize;
        let mut interval_hits = 0usize;
        for _ in 0..trials {
            let mut max_l = f64::NEG_INFINITY;
            let mut min_w = f64::INFINITY;
            for _ in 0..self.n_l {
                max_l = max_l.max(losing.sample(&mut rng));
                min_w = min_w.min(winning.sample(&mut rng));
            }
            if max_l <= left && left <= min_w {
                left_hits += 1;
            }
            if max_l.max(left) <= min_w.min(right) {
                interval_hits += 1;
            }
        }
        Ok(TheoremReport {
            alpha_bound: self.alpha_bound(),
            empirical_separation_prob: left_hits as f64 / trials as f64,
            interval_separation_prob: interval_hits as f64 / trials as f64,
            trials,
        })
    }
}
