//! Monte-Carlo risk of reference estimators.
//!
//! Trials are grouped in fixed blocks; block `i` draws from ChaCha8 seeded
//! with the user seed on stream `i`. Blocks run in parallel, and their
//! partial sums are merged in block order, so the estimate is bit-for-bit
//! reproducible for any thread count.

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MIN_TRIALS: usize = 10_000;
const BLOCK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    SampleMean,
    PosteriorMedian,
    PosteriorMean,
}

impl Estimator {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SampleMean => "sample-mean",
            Self::PosteriorMedian => "posterior-median",
            Self::PosteriorMean => "posterior-mean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Draws one `(W, X)` pair and returns the loss of the estimate.
pub type TrialFn<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> f64 + Send + Sync + 'a>;

/// A setting that can be simulated.
pub trait RiskModel {
    fn trial(&self, estimator: Estimator) -> Result<TrialFn<'_>>;
}

/// Running moments of one block, merged with Chan's update.
#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn of(xs: &[f64]) -> Self {
        let count = xs.len() as f64;
        let mean = pairwise_sum(xs) / count;
        let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
        Self { count, mean, m2: pairwise_sum(&dev) }
    }

    fn merge(self, o: Self) -> Self {
        let count = self.count + o.count;
        let delta = o.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * o.count / count,
            m2: self.m2 + o.m2 + delta * delta * self.count * o.count / count,
        }
    }
}

pub fn mc_risk(model: &dyn RiskModel, estimator: Estimator, trials: usize, seed: u64) -> Result<RiskEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials(trials));
    }
    let trial = model.trial(estimator)?;
    let blocks = trials.div_ceil(BLOCK);
    let parts: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let len = BLOCK.min(trials - i * BLOCK);
            let losses: Vec<f64> = (0..len).map(|_| trial(&mut rng)).collect();
            Moments::of(&losses)
        })
        .collect();
    let total = parts.into_iter().reduce(Moments::merge).expect("at least one block");
    let var = total.m2 / (total.count - 1.0);
    Ok(RiskEstimate { mean: total.mean, std_error: (var / total.count).sqrt(), samples: trials, seed })
}
