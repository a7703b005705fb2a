//! Throughput of the pieces that dominate a training step: reward scoring,
//! gradient accumulation, the KDE threshold search, and the end-to-end loop
//! at toy scale.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use sspo_core::config::{Objective, TrainConfig};
use sspo_core::corpus::{self, ToySpec};
use sspo_core::eval::pairwise_accuracy;
use sspo_core::policy::{Gradient, PolicyParams, Vocab};
use sspo_core::threshold::{estimate_threshold, Priors};
use sspo_core::trainer;

fn bench_policy(c: &mut Criterion) {
    let vocab = Vocab::default();
    let params = PolicyParams::init(0.3, 1);
    c.bench_function("reward/word", |b| {
        b.iter(|| {
            params
                .reward(&vocab, black_box("prompt"), black_box("representative"), 10.0)
                .unwrap()
        })
    });
    c.bench_function("reward_grad/word", |b| {
        b.iter(|| {
            params
                .reward_grad(&vocab, black_box("prompt"), black_box("representative"), 10.0)
                .unwrap()
        })
    });
    c.bench_function("log_prob_grad_accumulate/word", |b| {
        let mut grad = Gradient::zeros(params.size());
        b.iter(|| {
            params
                .accumulate_log_prob_grad(&vocab, black_box("representative"), 0.5, &mut grad)
                .unwrap()
        })
    });
}

fn bench_threshold(c: &mut Criterion) {
    let priors = Priors::new(0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let win = Normal::new(1.0, 0.5).unwrap();
    let lose = Normal::new(-1.0, 0.5).unwrap();
    for n in [8usize, 500] {
        let w: Vec<f64> = (0..n).map(|_| win.sample(&mut rng)).collect();
        let l: Vec<f64> = (0..n).map(|_| lose.sample(&mut rng)).collect();
        c.bench_function(&format!("estimate_threshold/n{n}_g200"), |b| {
            b.iter(|| estimate_threshold(black_box(&w), black_box(&l), priors, 200).unwrap())
        });
    }
}

fn bench_training(c: &mut Criterion) {
    let spec = ToySpec { n_test: 200, ..ToySpec::new(10, 200, 3) };
    let data = corpus::generate_toy(&spec).unwrap();
    let (train, validation) = corpus::split(&data.paired, 0.8, 3).unwrap();
    let config = TrainConfig {
        objective: Objective::Sspo,
        epochs: 40,
        batch_paired: 8,
        batch_unpaired: 4,
        lambda: 0.3,
        seed: 3,
        ..TrainConfig::default()
    };
    c.bench_function("train/sspo_40_steps", |b| {
        b.iter(|| trainer::train(&config, &train, &data.unpaired, &validation).unwrap())
    });

    let outcome = trainer::train(&config, &train, &data.unpaired, &validation).unwrap();
    let vocab = Vocab::default();
    c.bench_function("eval/200_pairs", |b| {
        b.iter(|| pairwise_accuracy(&outcome.best.params, &vocab, &data.test, 10.0).unwrap())
    });

    let mut group = c.benchmark_group("kde_grid");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let w: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..2.0)).collect();
    let l: Vec<f64> = (0..8).map(|_| rng.random_range(-2.0..0.0)).collect();
    for g in [50usize, 200, 800] {
        group.bench_function(format!("g{g}"), |b| {
            b.iter(|| estimate_threshold(black_box(&w), black_box(&l), Priors::new(0.5).unwrap(), g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_policy, bench_threshold, bench_training);
criterion_main!(benches);
