//! Bias of a coin with a uniform prior, `n` tosses, absolute loss. All
//! computations run on the head count `k`, a sufficient statistic.

use crate::bounds::SmallBallFn;
use crate::error::{Error, Result};
use crate::measures::{MixedJoint, QuadraturePolicy};
use crate::numeric::optimize::bisect;
use crate::numeric::{log_binomial, logsumexp, pairwise_sum};
use serde::{Deserialize, Serialize};
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::ln_gamma;
use std::sync::Arc;

/// Exact leakage and the closed-form upper bound used in tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leakage {
    /// `ln Σ_k C(n,k) (k/n)^k (1-k/n)^{n-k}`
    pub exact: f64,
    /// `ln(2 + sqrt(πn/2))`
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliUniformModel {
    n: u32,
    log_binom: Arc<[f64]>,
}

/// `ln P(k | w) = ln C(n,k) + k ln w + (n-k) ln(1-w)` with `0 ln 0 = 0`.
pub(crate) fn log_binomial_pmf(log_binom: f64, n: u32, k: u32, w: f64) -> f64 {
    let a = if k == 0 { 0.0 } else { k as f64 * w.ln() };
    let b = if k == n { 0.0 } else { (n - k) as f64 * (-w).ln_1p() };
    log_binom + a + b
}

impl BernoulliUniformModel {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter { name: "n", value: 0.0 });
        }
        let log_binom = (0..=n).map(|k| log_binomial(n as u64, k as u64)).collect();
        Ok(Self { n, log_binom })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `P(|W - ŵ| < ρ) ≤ min(2ρ, 1)`.
    pub fn small_ball(&self) -> SmallBallFn {
        SmallBallFn::Linear { c: 2.0 }
    }

    pub fn likelihood(&self, w: f64, k: u32) -> f64 {
        log_binomial_pmf(self.log_binom[k as usize], self.n, k, w).exp()
    }

    /// The sufficient-statistic joint, for quadrature-based measures.
    pub fn mixed_joint(&self, policy: QuadraturePolicy) -> Result<MixedJoint> {
        let me = self.clone();
        MixedJoint::new(
            (0.0, 1.0),
            Arc::new(|_| 1.0),
            self.n as usize + 1,
            Arc::new(move |w, k| me.likelihood(w, k as u32)),
            policy,
        )
    }

    pub fn maximal_leakage(&self) -> Leakage {
        let n = self.n;
        let terms: Vec<f64> = (0..=n)
            .map(|k| log_binomial_pmf(self.log_binom[k as usize], n, k, k as f64 / n as f64))
            .collect();
        Leakage { exact: logsumexp(&terms), upper: leakage_upper(n) }
    }

    /// `exp(((α-1)/α) I_α) = Σ_k C(n,k) (Γ(kα+1)Γ((n-k)α+1)/Γ(nα+2))^{1/α}`.
    pub fn sibson_exp_form(&self, alpha: f64) -> Result<f64> {
        Ok(self.log_sibson_exp_form(alpha)?.exp())
    }

    fn log_sibson_exp_form(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::AlphaAtMostOne(alpha));
        }
        let n = self.n as f64;
        let top = ln_gamma(n * alpha + 2.0);
        let terms: Vec<f64> = (0..=self.n)
            .map(|k| {
                let kf = k as f64;
                let g = ln_gamma(kf * alpha + 1.0) + ln_gamma((n - kf) * alpha + 1.0) - top;
                self.log_binom[k as usize] + g / alpha
            })
            .collect();
        Ok(logsumexp(&terms))
    }

    /// Sibson's `I_α(W; X^n)` for `α > 1`.
    pub fn sibson(&self, alpha: f64) -> Result<f64> {
        let log_s = self.log_sibson_exp_form(alpha)?;
        Ok((alpha / (alpha - 1.0) * log_s).max(0.0))
    }

    /// `(p-1) H_p + 1 = (n+1)^{p-1} Σ_k C(n,k)^p B(kp+1, (n-k)p+1)`.
    pub fn hellinger_moment(&self, p: f64) -> Result<f64> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::OrderAtMostOne(p));
        }
        let n = self.n as f64;
        let terms: Vec<f64> = (0..=self.n)
            .map(|k| {
                let kf = k as f64;
                p * self.log_binom[k as usize] + ln_beta(kf * p + 1.0, (n - kf) * p + 1.0)
            })
            .collect();
        Ok(((p - 1.0) * (n + 1.0).ln() + logsumexp(&terms)).exp().max(1.0))
    }

    /// `H_p(W, X^n)`.
    pub fn hellinger(&self, p: f64) -> Result<f64> {
        Ok((self.hellinger_moment(p)? - 1.0) / (p - 1.0))
    }

    /// `(n+1)/(2n+1) · 4^n / C(2n, n)`, the `p = 2` moment in closed form.
    pub fn chi_square_moment_closed_form(&self) -> f64 {
        let n = self.n as f64;
        ((n + 1.0).ln() - (2.0 * n + 1.0).ln() + n * 4f64.ln() - log_binomial(2 * self.n as u64, self.n as u64)).exp()
    }

    /// `E_{γ,ζ}(W, X^n)`. Given `k`, the ratio `P(k|w)/P(k)` is the
    /// Beta(k+1, n-k+1) density `f_k`, whose super-level set is an interval
    /// `[a, b]`, so each term is `ζ(I_b - I_a) - γ(b - a)` in regularized
    /// incomplete Beta functions.
    pub fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        crate::measures::PhiSpec::e_gamma_zeta(gamma, zeta)?;
        let m = (zeta - gamma).max(0.0);
        if gamma == 0.0 {
            return Ok(zeta - m);
        }
        let n = self.n;
        let nf = n as f64;
        let log_thr = (gamma / zeta).ln();
        let terms: Vec<f64> = (0..=n)
            .map(|k| {
                // ln f_k(w) = ln(n+1) + ln P(k|w)
                let lf = |w: f64| (nf + 1.0).ln() + log_binomial_pmf(self.log_binom[k as usize], n, k, w) - log_thr;
                let mode = k as f64 / nf;
                if lf(mode) <= 0.0 {
                    return 0.0;
                }
                let a = if lf(0.0) > 0.0 { 0.0 } else { bisect(lf, 0.0, mode, 1e-16).unwrap_or(0.0) };
                let b = if lf(1.0) > 0.0 { 1.0 } else { bisect(lf, mode, 1.0, 1e-16).unwrap_or(1.0) };
                let (ka, kb) = (k as f64 + 1.0, (n - k) as f64 + 1.0);
                let ib = if b >= 1.0 { 1.0 } else { beta_reg(ka, kb, b) };
                let ia = if a <= 0.0 { 0.0 } else { beta_reg(ka, kb, a) };
                ((zeta * (ib - ia) - gamma * (b - a)) / (nf + 1.0)).max(0.0)
            })
            .collect();
        Ok((pairwise_sum(&terms) - m).max(0.0))
    }

    /// `E_{γ,ζ}` by adaptive quadrature over the sufficient-statistic joint.
    pub fn e_gamma_zeta_quadrature(&self, gamma: f64, zeta: f64) -> Result<f64> {
        self.mixed_joint(QuadraturePolicy::default())?.e_gamma_zeta(gamma, zeta)
    }

    /// `I(W; X^n)` by quadrature.
    pub fn mutual_information(&self) -> Result<f64> {
        self.mixed_joint(QuadraturePolicy::default())?.mutual_information()
    }

    /// `1/sqrt(6n)`, the risk of the sample mean bounded through its second moment.
    pub fn upper_bound(&self) -> f64 {
        1.0 / (6.0 * self.n as f64).sqrt()
    }

    /// Median of the Beta(k+1, n-k+1) posterior, by bisection to 1e-10.
    pub fn posterior_median(&self, k: u32) -> f64 {
        let (a, b) = (k as f64 + 1.0, (self.n - k) as f64 + 1.0);
        bisect(|w| beta_reg(a, b, w) - 0.5, 0.0, 1.0, 1e-10).unwrap_or(0.5)
    }

    pub fn posterior_mean(&self, k: u32) -> f64 {
        (k as f64 + 1.0) / (self.n as f64 + 2.0)
    }
}

pub(crate) fn leakage_upper(n: u32) -> f64 {
    (2.0 + (std::f64::consts::PI * n as f64 / 2.0).sqrt()).ln()
}
