//! Simulators for the worked settings.

use super::mc::{Estimator, RiskModel, TrialFn};
use crate::error::{Error, Result};
use crate::models::{BernoulliUniformModel, GaussianModel, HideAndSeekModel, NoisyBernoulliModel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};

/// Loss of a lookup-table estimator indexed by the head count.
fn count_trial<'a, Q>(n: u32, heads: Q, table: Vec<f64>) -> TrialFn<'a>
where
    Q: Fn(f64) -> f64 + Send + Sync + 'a,
{
    Box::new(move |rng: &mut ChaCha8Rng| {
        let w: f64 = rng.gen();
        let k = Binomial::new(n as u64, heads(w).clamp(0.0, 1.0)).expect("valid probability").sample(rng);
        (w - table[k as usize]).abs()
    })
}

impl RiskModel for BernoulliUniformModel {
    fn trial(&self, estimator: Estimator) -> Result<TrialFn<'_>> {
        let n = self.n();
        let table: Vec<f64> = (0..=n)
            .map(|k| match estimator {
                Estimator::SampleMean => k as f64 / n as f64,
                Estimator::PosteriorMedian => self.posterior_median(k),
                Estimator::PosteriorMean => self.posterior_mean(k),
            })
            .collect();
        Ok(count_trial(n, |w| w, table))
    }
}

impl RiskModel for NoisyBernoulliModel {
    fn trial(&self, estimator: Estimator) -> Result<TrialFn<'_>> {
        let n = self.n();
        let table = (0..=n)
            .map(|k| match estimator {
                Estimator::SampleMean => Ok(self.debiased_mean(k)),
                Estimator::PosteriorMedian => self.posterior_median(k),
                Estimator::PosteriorMean => self.posterior_mean(k),
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(count_trial(n, move |w| self.head_probability(w), table))
    }
}

impl RiskModel for GaussianModel {
    fn trial(&self, estimator: Estimator) -> Result<TrialFn<'_>> {
        let n = self.n();
        if n == 0 && estimator == Estimator::SampleMean {
            return Err(Error::UnsupportedEstimator(estimator.name()));
        }
        let sw = self.sigma_w_sq().sqrt();
        let noise = if n == 0 { 0.0 } else { (self.sigma_sq() / n as f64).sqrt() };
        Ok(Box::new(move |rng: &mut ChaCha8Rng| {
            let z1: f64 = StandardNormal.sample(rng);
            let z2: f64 = StandardNormal.sample(rng);
            let w = sw * z1;
            let xbar = w + noise * z2;
            let est = match estimator {
                Estimator::SampleMean => xbar,
                // the posterior is normal, so its mean and median coincide
                Estimator::PosteriorMean | Estimator::PosteriorMedian => self.posterior_mean(xbar),
            };
            (w - est).abs()
        }))
    }
}

impl RiskModel for HideAndSeekModel {
    fn trial(&self, estimator: Estimator) -> Result<TrialFn<'_>> {
        Err(Error::UnsupportedEstimator(estimator.name()))
    }
}
