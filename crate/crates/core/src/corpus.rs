//! Datasets for preference training: paired comparisons, unpaired
//! responses, the synthetic word-length toy task, label-noise injection,
//! deterministic splitting, and JSONL persistence.
//!
//! The toy task samples prompts of `words_per_prompt` distinct words; the
//! strictly shortest word is the preferred response and the strictly
//! longest the rejected one. Prompts whose shortest or longest word is not
//! unique are resampled, so every emitted pair satisfies
//! `len(chosen) < len(rejected)`.
//!
//! All operations are pure functions of `(input, seed)`.

mod wordlist;

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labeled preference comparison: `chosen` beat `rejected` for `prompt`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairedExample {
    pub prompt: String,
    pub chosen: String,
    pub rejected: String,
}

impl PairedExample {
    fn check(&self) -> std::result::Result<(), String> {
        if self.prompt.is_empty() || self.chosen.is_empty() || self.rejected.is_empty() {
            return Err("all fields must be non-empty".into());
        }
        if self.chosen == self.rejected {
            return Err("chosen and rejected must differ".into());
        }
        Ok(())
    }
}

/// An unlabeled prompt-response pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnpairedExample {
    pub prompt: String,
    pub response: String,
}

impl UnpairedExample {
    fn check(&self) -> std::result::Result<(), String> {
        if self.prompt.is_empty() || self.response.is_empty() {
            return Err("all fields must be non-empty".into());
        }
        Ok(())
    }
}

/// Parameters of the synthetic toy task.
#[derive(Debug, Clone)]
pub struct ToySpec {
    pub n_paired: usize,
    pub n_unpaired: usize,
    pub n_test: usize,
    pub words_per_prompt: usize,
    pub vocabulary: Vec<String>,
    pub seed: u64,
}

impl ToySpec {
    /// Spec with the bundled vocabulary, ten words per prompt, and a
    /// 1,000-example test set.
    pub fn new(n_paired: usize, n_unpaired: usize, seed: u64) -> Self {
        ToySpec {
            n_paired,
            n_unpaired,
            n_test: 1000,
            words_per_prompt: 10,
            vocabulary: default_vocabulary(),
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.words_per_prompt < 2 {
            return Err(Error::InvalidArgument(
                "words_per_prompt must be at least 2".into(),
            ));
        }
        if self.vocabulary.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidArgument(
                "vocabulary words must be non-empty".into(),
            ));
        }
        let mut distinct: Vec<&str> = self.vocabulary.iter().map(String::as_str).collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < self.words_per_prompt {
            return Err(Error::InvalidArgument(format!(
                "vocabulary has {} distinct words but prompts need {}",
                distinct.len(),
                self.words_per_prompt
            )));
        }
        Ok(())
    }
}

/// The bundled word list: lowercase words of lengths 1 through 15.
pub fn default_vocabulary() -> Vec<String> {
    wordlist::WORDS.iter().map(|w| w.to_string()).collect()
}

/// Output of [`generate_toy`].
#[derive(Debug, Clone)]
pub struct ToyDatasets {
    pub paired: Vec<PairedExample>,
    pub unpaired: Vec<UnpairedExample>,
    pub test: Vec<PairedExample>,
}

const RESAMPLE_BUDGET: usize = 1000;

/// Generates the word-length toy datasets. Prompts are `words_per_prompt`
/// distinct words sampled uniformly without replacement and joined by
/// single spaces; paired/test examples prefer the strictly shortest word
/// over the strictly longest, and unpaired responses are one uniformly
/// sampled word of the prompt. RNG consumption order is paired, then
/// unpaired, then test, so outputs are deterministic given the seed.
pub fn generate_toy(spec: &ToySpec) -> Result<ToyDatasets> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut paired = Vec::with_capacity(spec.n_paired);
    for _ in 0..spec.n_paired {
        paired.push(sample_pair(spec, &mut rng)?);
    }
    let mut unpaired = Vec::with_capacity(spec.n_unpaired);
    for _ in 0..spec.n_unpaired {
        let words = sample_prompt_words(spec, &mut rng)?;
        let response = words[rng.random_range(0..words.len())].clone();
        unpaired.push(UnpairedExample { prompt: words.join(" "), response });
    }
    let mut test = Vec::with_capacity(spec.n_test);
    for _ in 0..spec.n_test {
        test.push(sample_pair(spec, &mut rng)?);
    }
    Ok(ToyDatasets { paired, unpaired, test })
}

fn sample_pair(spec: &ToySpec, rng: &mut ChaCha8Rng) -> Result<PairedExample> {
    let words = sample_prompt_words(spec, rng)?;
    let shortest = words
        .iter()
        .min_by_key(|w| w.chars().count())
        .expect("non-empty prompt");
    let longest = words
        .iter()
        .max_by_key(|w| w.chars().count())
        .expect("non-empty prompt");
    Ok(PairedExample {
        prompt: words.join(" "),
        chosen: shortest.clone(),
        rejected: longest.clone(),
    })
}

/// Samples distinct words until the shortest and longest lengths are both
/// unique within the prompt; errors once the resample budget is exhausted.
fn sample_prompt_words(spec: &ToySpec, rng: &mut ChaCha8Rng) -> Result<Vec<String>> {
    for _ in 0..RESAMPLE_BUDGET {
        let picks = sample_indices(rng, spec.vocabulary.len(), spec.words_per_prompt);
        let words: Vec<String> = picks
            .iter()
            .map(|i| spec.vocabulary[i].clone())
            .collect();
        let lens: Vec<usize> = words.iter().map(|w| w.chars().count()).collect();
        let min = *lens.iter().min().expect("non-empty");
        let max = *lens.iter().max().expect("non-empty");
        let min_count = lens.iter().filter(|&&l| l == min).count();
        let max_count = lens.iter().filter(|&&l| l == max).count();
        if min < max && min_count == 1 && max_count == 1 {
            return Ok(words);
        }
    }
    Err(Error::PromptTies { attempts: RESAMPLE_BUDGET })
}

/// Swaps the chosen/rejected designations of exactly `floor(rate * n)`
/// examples, selected uniformly without replacement; deterministic given
/// the seed. Applying the same call twice restores the input.
pub fn inject_noise(
    paired: &[PairedExample],
    rate: f64,
    seed: u64,
) -> Result<Vec<PairedExample>> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidArgument(format!(
            "noise rate must lie in [0, 1], got {rate}"
        )));
    }
    let mut out = paired.to_vec();
    let count = (rate * paired.len() as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in sample_indices(&mut rng, paired.len(), count) {
        let ex = &mut out[i];
        std::mem::swap(&mut ex.chosen, &mut ex.rejected);
    }
    Ok(out)
}

/// Deterministic shuffle-then-split; train side gets `floor(train_frac * n)`
/// examples and validation the rest.
pub fn split(
    paired: &[PairedExample],
    train_frac: f64,
    seed: u64,
) -> Result<(Vec<PairedExample>, Vec<PairedExample>)> {
    if paired.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 examples to split, got {}",
            paired.len()
        )));
    }
    if !(train_frac > 0.0 && train_frac < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train_frac must lie strictly between 0 and 1, got {train_frac}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = sample_indices(&mut rng, paired.len(), paired.len());
    let n_train = (train_frac * paired.len() as f64).floor() as usize;
    let mut train = Vec::with_capacity(n_train);
    let mut validation = Vec::with_capacity(paired.len() - n_train);
    for (k, i) in order.iter().enumerate() {
        if k < n_train {
            train.push(paired[i].clone());
        } else {
            validation.push(paired[i].clone());
        }
    }
    Ok((train, validation))
}

/// One JSON object per line, UTF-8, LF line endings.
pub fn save_paired(path: &Path, examples: &[PairedExample]) -> Result<()> {
    save_jsonl(path, examples)
}

pub fn save_unpaired(path: &Path, examples: &[UnpairedExample]) -> Result<()> {
    save_jsonl(path, examples)
}

fn save_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for record in records {
        let line = serde_json::to_string(record).expect("serializable record");
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Loads paired records, rejecting unknown fields and records that violate
/// the type invariants; errors carry the 1-based line number.
pub fn load_paired(path: &Path) -> Result<Vec<PairedExample>> {
    load_jsonl(path, |ex: &PairedExample| ex.check())
}

pub fn load_unpaired(path: &Path) -> Result<Vec<UnpairedExample>> {
    load_jsonl(path, |ex: &UnpairedExample| ex.check())
}

fn load_jsonl<T, F>(path: &Path, check: F) -> Result<Vec<T>>
where
    T: for<'de> Deserialize<'de>,
    F: Fn(&T) -> std::result::Result<(), String>,
{
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let number = idx + 1;
        let record: T = serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
            line: number,
            message: e.to_string(),
        })?;
        check(&record).map_err(|message| Error::MalformedRecord { line: number, message })?;
        out.push(record);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tiny_spec(seed: u64) -> ToySpec {
        ToySpec {
            n_paired: 10,
            n_unpaired: 50,
            n_test: 20,
            words_per_prompt: 10,
            vocabulary: default_vocabulary(),
            seed,
        }
    }

    #[test]
    fn generate_toy_produces_requested_sizes() {
        let data = generate_toy(&tiny_spec(7)).unwrap();
        assert_eq!(data.paired.len(), 10);
        assert_eq!(data.unpaired.len(), 50);
        assert_eq!(data.test.len(), 20);
    }

    #[test]
    fn chosen_is_strictly_shorter_and_both_in_prompt() {
        let data = generate_toy(&tiny_spec(3)).unwrap();
        for ex in data.paired.iter().chain(&data.test) {
            assert!(ex.chosen.chars().count() < ex.rejected.chars().count());
            let words: Vec<&str> = ex.prompt.split(' ').collect();
            assert_eq!(words.len(), 10);
            assert!(words.contains(&ex.chosen.as_str()));
            assert!(words.contains(&ex.rejected.as_str()));
        }
        for ex in &data.unpaired {
            assert!(ex.prompt.split(' ').any(|w| w == ex.response));
        }
    }

    #[test]
    fn all_distinct_lengths_force_unique_minimum() {
        let vocabulary: Vec<String> = (1..=12).map(|n| "z".repeat(n)).collect();
        let spec = ToySpec {
            n_paired: 5,
            n_unpaired: 0,
            n_test: 0,
            words_per_prompt: 10,
            vocabulary,
            seed: 1,
        };
        let data = generate_toy(&spec).unwrap();
        for ex in &data.paired {
            let min = ex.prompt.split(' ').map(str::len).min().unwrap();
            assert_eq!(ex.chosen.len(), min);
        }
    }

    #[test]
    fn generate_toy_is_deterministic() {
        let a = generate_toy(&tiny_spec(42)).unwrap();
        let b = generate_toy(&tiny_spec(42)).unwrap();
        assert_eq!(a.paired, b.paired);
        assert_eq!(a.unpaired, b.unpaired);
        assert_eq!(a.test, b.test);
        let c = generate_toy(&tiny_spec(43)).unwrap();
        assert_ne!(a.paired, c.paired);
    }

    #[test]
    fn tie_heavy_vocabulary_is_rejected() {
        // Every word has length 3: no prompt can have a unique extreme.
        let vocabulary: Vec<String> =
            (0..30).map(|i| format!("w{:02}", i)).collect();
        let spec = ToySpec {
            n_paired: 1,
            n_unpaired: 0,
            n_test: 0,
            words_per_prompt: 5,
            vocabulary,
            seed: 0,
        };
        assert!(matches!(generate_toy(&spec), Err(Error::PromptTies { .. })));
    }

    #[test]
    fn noise_zero_is_identity_and_full_rate_swaps_all() {
        let data = generate_toy(&tiny_spec(5)).unwrap();
        let untouched = inject_noise(&data.paired, 0.0, 9).unwrap();
        assert_eq!(untouched, data.paired);

        let four: Vec<PairedExample> = data.paired[..4].to_vec();
        let swapped = inject_noise(&four, 1.0, 9).unwrap();
        for (orig, noisy) in four.iter().zip(&swapped) {
            assert_eq!(orig.chosen, noisy.rejected);
            assert_eq!(orig.rejected, noisy.chosen);
        }
        let restored = inject_noise(&swapped, 1.0, 9).unwrap();
        assert_eq!(restored, four);
    }

    #[test]
    fn noise_swaps_exactly_floor_rate_n() {
        let spec = ToySpec { n_paired: 100, ..tiny_spec(11) };
        let data = generate_toy(&spec).unwrap();
        let noisy = inject_noise(&data.paired, 0.5, 2).unwrap();
        let swapped = data
            .paired
            .iter()
            .zip(&noisy)
            .filter(|(a, b)| a.chosen != b.chosen)
            .count();
        assert_eq!(swapped, 50);
    }

    #[test]
    fn noise_is_involutive_for_same_seed() {
        let data = generate_toy(&tiny_spec(13)).unwrap();
        let once = inject_noise(&data.paired, 0.3, 77).unwrap();
        let twice = inject_noise(&once, 0.3, 77).unwrap();
        assert_eq!(twice, data.paired);
    }

    #[test]
    fn split_sizes_and_determinism() {
        let data = generate_toy(&tiny_spec(21)).unwrap();
        let (train, val) = split(&data.paired, 0.8, 4).unwrap();
        assert_eq!((train.len(), val.len()), (8, 2));
        let mut all: Vec<_> = train.iter().chain(&val).cloned().collect();
        let mut orig = data.paired.clone();
        all.sort_by(|a, b| a.prompt.cmp(&b.prompt));
        orig.sort_by(|a, b| a.prompt.cmp(&b.prompt));
        assert_eq!(all, orig);
        let (train2, val2) = split(&data.paired, 0.8, 4).unwrap();
        assert_eq!(train, train2);
        assert_eq!(val, val2);
    }

    #[test]
    fn split_rejects_singletons() {
        let one = vec![PairedExample {
            prompt: "p".into(),
            chosen: "a".into(),
            rejected: "bb".into(),
        }];
        assert!(split(&one, 0.8, 0).is_err());
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("paired.jsonl");
        let data = generate_toy(&tiny_spec(2)).unwrap();
        save_paired(&path, &data.paired[..3]).unwrap();
        let loaded = load_paired(&path).unwrap();
        assert_eq!(loaded, data.paired[..3]);
    }

    #[test]
    fn empty_file_loads_as_empty_list() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        std::fs::write(&path, "").unwrap();
        assert_eq!(load_paired(&path).unwrap(), vec![]);
    }

    #[test]
    fn missing_field_is_reported_with_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(
            &path,
            "{\"prompt\":\"p\",\"chosen\":\"a\",\"rejected\":\"bb\"}\n{\"prompt\":\"p\",\"chosen\":\"a\"}\n",
        )
        .unwrap();
        match load_paired(&path) {
            Err(Error::MalformedRecord { line: 2, .. }) => {}
            other => panic!("expected malformed record at line 2, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("extra.jsonl");
        std::fs::write(
            &path,
            "{\"prompt\":\"p\",\"response\":\"a\",\"score\":1}\n",
        )
        .unwrap();
        assert!(matches!(
            load_unpaired(&path),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn jsonl_round_trip_preserves_arbitrary_text(
            records in proptest::collection::vec(
                ("[a-z ]{1,20}", "[a-z]{1,10}", "[a-z]{11,20}"),
                0..8,
            )
        ) {
            let examples: Vec<PairedExample> = records
                .into_iter()
                .map(|(prompt, chosen, rejected)| PairedExample { prompt, chosen, rejected })
                .collect();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("prop.jsonl");
            save_paired(&path, &examples).unwrap();
            prop_assert_eq!(load_paired(&path).unwrap(), examples);
        }

        #[test]
        fn noise_count_is_exact(rate in 0.0f64..=1.0, seed in 0u64..1000) {
            let data = generate_toy(&tiny_spec(1)).unwrap();
            let noisy = inject_noise(&data.paired, rate, seed).unwrap();
            let swapped = data.paired.iter().zip(&noisy)
                .filter(|(a, b)| a.chosen != b.chosen)
                .count();
            prop_assert_eq!(swapped, (rate * data.paired.len() as f64).floor() as usize);
        }
    }
}
