//! The coin model observed through a binary symmetric channel: every toss
//! is flipped independently with probability `λ` before it is seen.

use super::bernoulli::{log_binomial_pmf, BernoulliUniformModel};
use crate::bounds::{optimize_bound, sdpi_bound, BoundResult, MeasureParams, Method, ParamGrid, SmallBallFn};
use crate::error::{Error, Result};
use crate::measures::PhiSpec;
use crate::numeric::optimize::bisect;
use crate::numeric::quadrature::{integrate, Tolerance};
use crate::numeric::log_binomial;
use crate::sdpi::{eta_operator_convex_bsc, tensorize_eta, TensorMode};

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyBernoulliModel {
    clean: BernoulliUniformModel,
    lambda: f64,
}

impl NoisyBernoulliModel {
    pub fn new(n: u32, lambda: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        Ok(Self { clean: BernoulliUniformModel::new(n)?, lambda })
    }

    pub fn n(&self) -> u32 {
        self.clean.n()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn clean(&self) -> &BernoulliUniformModel {
        &self.clean
    }

    pub fn small_ball(&self) -> SmallBallFn {
        self.clean.small_ball()
    }

    /// Contraction of the `n`-fold channel for operator-convex φ. The product
    /// kernel contracts like a single copy under the product prior.
    pub fn eta(&self) -> Result<f64> {
        tensorize_eta(eta_operator_convex_bsc(self.lambda)?, self.n(), TensorMode::MaxPreserving)
    }

    /// `(2/27) / ((1-2λ)² χ² + 1)`: the `p = 2` Hellinger bound on the clean
    /// model, contracted through the channel.
    pub fn bound(&self) -> Result<BoundResult> {
        self.bound_order(2.0)
    }

    /// Contracted Hellinger bound of order `p ∈ (1, 2]`, where `(1-2λ)²` is
    /// the exact coefficient.
    pub fn bound_order(&self, p: f64) -> Result<BoundResult> {
        if !(p > 1.0 && p <= 2.0) {
            return Err(Error::InvalidParameter { name: "p", value: p });
        }
        let h = self.clean.hellinger(p)?;
        sdpi_bound(h, self.eta()?, &PhiSpec::Hellinger { p }, &self.small_ball())
    }

    /// Best contracted Hellinger bound over `grid`, restricted to `p ≤ 2`.
    pub fn bound_optimized(&self, grid: &[f64]) -> Result<BoundResult> {
        let grid: Vec<f64> = grid.iter().copied().filter(|&p| p > 1.0 && p <= 2.0).collect();
        let eta = self.eta()?;
        let cb = |mp: MeasureParams| match mp {
            MeasureParams::Order { p } => Ok(eta * self.clean.hellinger(p.min(2.0))?),
            _ => Err(Error::CallbackFailure("expected an order".into())),
        };
        let mut r = optimize_bound(cb, Method::Hellinger, &ParamGrid::Order(grid), &self.small_ball())?;
        r.method = Method::Sdpi;
        Ok(r)
    }

    /// `sqrt((1/2 - E[q²]) / n) / (1 - 2λ)` with `q = λ + (1-2λ)W`: the
    /// root-mean-square error of the debiased sample mean. Infinite at `λ = 1/2`.
    pub fn upper_bound(&self) -> f64 {
        let l = self.lambda;
        let s = 1.0 - 2.0 * l;
        if s == 0.0 {
            return f64::INFINITY;
        }
        let eq2 = l * l + l * s + s * s / 3.0;
        ((0.5 - eq2) / self.n() as f64).sqrt() / s
    }

    /// Probability that an observed toss shows heads.
    pub fn head_probability(&self, w: f64) -> f64 {
        self.lambda + (1.0 - 2.0 * self.lambda) * w
    }

    fn log_posterior(&self, k: u32) -> impl Fn(f64) -> f64 + '_ {
        let n = self.n();
        let lb = log_binomial(n as u64, k as u64);
        move |w| log_binomial_pmf(lb, n, k, self.head_probability(w))
    }

    fn posterior_normalizer(&self, k: u32) -> Result<(f64, f64)> {
        let lp = self.log_posterior(k);
        // shift by the log-likelihood maximum to keep the integrand O(1)
        let peak = (0..=512).map(|i| lp(i as f64 / 512.0)).fold(f64::NEG_INFINITY, f64::max);
        let z = integrate(|w| (lp(w) - peak).exp(), 0.0, 1.0, Tolerance::tight(1e-13))?.value;
        Ok((peak, z))
    }

    /// Posterior median of `W` after `k` observed heads.
    pub fn posterior_median(&self, k: u32) -> Result<f64> {
        let (peak, z) = self.posterior_normalizer(k)?;
        let lp = self.log_posterior(k);
        let cdf = |x: f64| {
            integrate(|w| (lp(w) - peak).exp(), 0.0, x, Tolerance::tight(1e-13)).map(|i| i.value / z).unwrap_or(f64::NAN)
        };
        bisect(|x| cdf(x) - 0.5, 0.0, 1.0, 1e-10).ok_or(Error::QuadratureFailure { estimate: f64::NAN, error: f64::NAN })
    }

    pub fn posterior_mean(&self, k: u32) -> Result<f64> {
        let (peak, z) = self.posterior_normalizer(k)?;
        let lp = self.log_posterior(k);
        Ok(integrate(|w| w * (lp(w) - peak).exp(), 0.0, 1.0, Tolerance::tight(1e-13))?.value / z)
    }

    /// Debiased sample mean of the observed tosses, clipped to `[0, 1]`.
    pub fn debiased_mean(&self, k: u32) -> f64 {
        let s = 1.0 - 2.0 * self.lambda;
        if s == 0.0 {
            return 0.5;
        }
        ((k as f64 / self.n() as f64 - self.lambda) / s).clamp(0.0, 1.0)
    }
}
