//! Resampling statistics over per-sentence score records.
//!
//! Scores here are fractions in 0..=1 (hits / tokens, micro-averaged over
//! units); multiply by 100 for percentage points. The resampling unit is
//! one record; callers choose sentences (the default) or tokens by
//! exploding records with [`token_units`].
//!
//! Replicate `i` draws its randomness from an RNG derived purely from
//! `(seed, i)`, so results are bit-identical regardless of execution
//! strategy or thread count. Floating-point reductions run sequentially
//! over the ordered replicate vector for the same reason.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metrics::{Metric, ScoreReport};

/// One resampling unit: hit and token counts for a sentence (or a single
/// token when token-level resampling is requested).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceStat {
    pub unit: String,
    pub hits: u64,
    pub tokens: u64,
}

impl SentenceStat {
    pub fn new(unit: impl Into<String>, hits: u64, tokens: u64) -> Self {
        SentenceStat {
            unit: unit.into(),
            hits,
            tokens,
        }
    }
}

/// Extracts per-sentence records for one metric from a score report.
pub fn sentence_stats(report: &ScoreReport, metric: Metric) -> Vec<SentenceStat> {
    report
        .sentences
        .iter()
        .map(|s| {
            let hits = match metric {
                Metric::Uas => s.uas_hits,
                Metric::Las => s.las_hits,
                Metric::Full => s.full_hits,
            };
            SentenceStat::new(s.sent_id.clone(), hits as u64, s.n_tokens as u64)
        })
        .collect()
}

/// Explodes sentence records into one unit per token.
pub fn token_units(stats: &[SentenceStat]) -> Vec<SentenceStat> {
    let mut units = Vec::new();
    for stat in stats {
        for t in 0..stat.tokens {
            let hit = u64::from(t < stat.hits);
            units.push(SentenceStat::new(
                format!("{}#{}", stat.unit, t + 1),
                hit,
                1,
            ));
        }
    }
    units
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    /// Plug-in score of the input data (fraction).
    pub statistic: f64,
    /// Mean of the replicate scores.
    pub replicate_mean: f64,
    /// Standard deviation over replicates.
    pub stddev: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermutationResult {
    /// score(A) - score(B) on the original grouping (fraction).
    pub observed_diff: f64,
    /// One-sided add-one-smoothed p-value in (0, 1].
    pub p_value: f64,
    pub samples: usize,
    pub seed: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

/// RNG for replicate `index`, a pure function of `(seed, index)`.
fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mixed = splitmix64(seed.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    ChaCha8Rng::seed_from_u64(mixed)
}

fn validate_units(stats: &[SentenceStat], what: &str) -> Result<()> {
    if stats.is_empty() {
        return Err(Error::EmptyInput(format!("{what} has no units")));
    }
    for stat in stats {
        if stat.tokens == 0 {
            return Err(Error::InvalidArgument(format!(
                "unit `{}` has zero tokens",
                stat.unit
            )));
        }
        if stat.hits > stat.tokens {
            return Err(Error::InvalidArgument(format!(
                "unit `{}` has more hits than tokens",
                stat.unit
            )));
        }
    }
    Ok(())
}

fn micro_score(stats: &[SentenceStat]) -> f64 {
    let hits: u64 = stats.iter().map(|s| s.hits).sum();
    let tokens: u64 = stats.iter().map(|s| s.tokens).sum();
    hits as f64 / tokens as f64
}

/// Bootstrap standard deviation of the micro-average score: each
/// replicate redraws the units with replacement.
pub fn bootstrap_stddev(
    stats: &[SentenceStat],
    samples: usize,
    seed: u64,
) -> Result<BootstrapResult> {
    bootstrap_stddev_with(stats, samples, seed, Execution::default())
}

pub fn bootstrap_stddev_with(
    stats: &[SentenceStat],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<BootstrapResult> {
    validate_units(stats, "bootstrap input")?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let hits: Vec<u64> = stats.iter().map(|s| s.hits).collect();
    let tokens: Vec<u64> = stats.iter().map(|s| s.tokens).collect();
    let n = stats.len();

    let scores = exec.map_indexed(samples, |i| {
        let mut rng = replicate_rng(seed, i as u64);
        let mut h: u64 = 0;
        let mut t: u64 = 0;
        for _ in 0..n {
            let pick = rng.random_range(0..n);
            h += hits[pick];
            t += tokens[pick];
        }
        h as f64 / t as f64
    });

    // Welford over the ordered replicate vector: deterministic under any
    // execution strategy and exactly zero for constant scores.
    let mut mean = 0.0_f64;
    let mut m2 = 0.0_f64;
    for (i, &score) in scores.iter().enumerate() {
        let delta = score - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (score - mean);
    }
    Ok(BootstrapResult {
        statistic: micro_score(stats),
        replicate_mean: mean,
        stddev: (m2 / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// One-sided Monte Carlo permutation test of score(A) > score(B): each
/// replicate pools the units and reassigns them to groups of the original
/// sizes uniformly at random.
pub fn permutation_test(
    group_a: &[SentenceStat],
    group_b: &[SentenceStat],
    samples: usize,
    seed: u64,
) -> Result<PermutationResult> {
    permutation_test_with(group_a, group_b, samples, seed, Execution::default())
}

pub fn permutation_test_with(
    group_a: &[SentenceStat],
    group_b: &[SentenceStat],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<PermutationResult> {
    validate_units(group_a, "group A")?;
    validate_units(group_b, "group B")?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let observed_diff = micro_score(group_a) - micro_score(group_b);

    let pooled: Vec<(u64, u64)> = group_a
        .iter()
        .chain(group_b)
        .map(|s| (s.hits, s.tokens))
        .collect();
    let n = pooled.len();
    let n_a = group_a.len();
    let total_h: u64 = pooled.iter().map(|&(h, _)| h).sum();
    let total_t: u64 = pooled.iter().map(|&(_, t)| t).sum();

    let exceed = exec.map_indexed(samples, |i| {
        let mut rng = replicate_rng(seed, i as u64);
        // Selection sampling: uniformly choose n_a of the pooled units.
        let mut need = n_a;
        let mut h: u64 = 0;
        let mut t: u64 = 0;
        for (idx, &(uh, ut)) in pooled.iter().enumerate() {
            if need == 0 {
                break;
            }
            let remaining = n - idx;
            if rng.random_range(0..remaining) < need {
                h += uh;
                t += ut;
                need -= 1;
            }
        }
        let score_a = h as f64 / t as f64;
        let score_b = (total_h - h) as f64 / (total_t - t) as f64;
        u64::from(score_a - score_b >= observed_diff)
    });

    let count: u64 = exceed.iter().sum();
    Ok(PermutationResult {
        observed_diff,
        p_value: (1.0 + count as f64) / (1.0 + samples as f64),
        samples,
        seed,
    })
}
