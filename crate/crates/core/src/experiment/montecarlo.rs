use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counts::{sample_counts, CoincidenceCounts, ExpectedCounts};
use super::rng::{derive_seed, STREAM_RESAMPLE};
use crate::error::{invalid, Error, Result};

/// Sample mean and sample standard deviation over Poisson resamples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub resamples: usize,
    pub seed: u64,
}

/// Seed handed to resample `r`.
pub fn resample_seed(seed: u64, r: usize) -> u64 {
    derive_seed(seed, &[STREAM_RESAMPLE, r as u64])
}

fn summarize(values: &[f64], resamples: usize, seed: u64) -> MonteCarloEstimate {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    MonteCarloEstimate {
        mean,
        std_error: var.sqrt(),
        resamples,
        seed,
    }
}

/// Runs `trial(sub_seed)` for every resample (in parallel) and summarizes each
/// returned component. Resample `r` always receives [`resample_seed`]`(seed, r)`,
/// and the reduction runs in index order, so results are independent of scheduling.
pub fn monte_carlo_vector<F>(resamples: usize, seed: u64, trial: F) -> Result<Vec<MonteCarloEstimate>>
where
    F: Fn(u64) -> Result<Vec<f64>> + Sync,
{
    if resamples < 2 {
        return Err(invalid!("Monte Carlo needs at least 2 resamples, got {resamples}"));
    }
    let draws: Vec<Result<Vec<f64>>> = (0..resamples)
        .into_par_iter()
        .map(|r| trial(resample_seed(seed, r)))
        .collect();
    let mut rows = Vec::with_capacity(resamples);
    for (index, draw) in draws.into_iter().enumerate() {
        rows.push(draw.map_err(|e| Error::Resample {
            index,
            source: Box::new(e),
        })?);
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(invalid!("trial returned a varying number of scalars"));
    }
    Ok((0..width)
        .map(|j| {
            let column: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            summarize(&column, resamples, seed)
        })
        .collect())
}

/// Re-draws Poisson counts from `expected` and pushes each draw through `pipeline`.
pub fn monte_carlo<F>(pipeline: F, expected: &ExpectedCounts, resamples: usize, seed: u64) -> Result<MonteCarloEstimate>
where
    F: Fn(&CoincidenceCounts) -> Result<f64> + Sync,
{
    let est = monte_carlo_vector(resamples, seed, |sub| {
        let counts = sample_counts(expected, sub)?;
        Ok(vec![pipeline(&counts)?])
    })?;
    Ok(est[0])
}
