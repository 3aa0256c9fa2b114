//! Gaussian prior `W ~ N(0, σ_W²)` with `n` observations `X_i ~ N(W, σ²)`
//! and absolute loss. The sample mean is sufficient, so every measure
//! depends on the data only through `snr = n σ_W² / σ²`.

use crate::bounds::{hellinger_bound_from_moment, BoundResult, SmallBallFn};
use crate::error::{Error, Result};
use crate::measures::GaussianJoint;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel {
    n: u32,
    sigma_w_sq: f64,
    sigma_sq: f64,
}

impl GaussianModel {
    pub fn new(n: u32, sigma_w_sq: f64, sigma_sq: f64) -> Result<Self> {
        if !(sigma_w_sq > 0.0 && sigma_w_sq.is_finite()) {
            return Err(Error::InvalidParameter { name: "sigma_w_sq", value: sigma_w_sq });
        }
        if !(sigma_sq > 0.0 && sigma_sq.is_finite()) {
            return Err(Error::InvalidParameter { name: "sigma_sq", value: sigma_sq });
        }
        Ok(Self { n, sigma_w_sq, sigma_sq })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sigma_w_sq(&self) -> f64 {
        self.sigma_w_sq
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }

    pub fn snr(&self) -> f64 {
        self.n as f64 * self.sigma_w_sq / self.sigma_sq
    }

    /// `L(ρ) = min(ρ sqrt(2/(π σ_W²)), 1)`: the prior density peaks at
    /// `1/sqrt(2π σ_W²)` and the ball has width `2ρ`.
    pub fn small_ball(&self) -> SmallBallFn {
        SmallBallFn::Linear { c: (2.0 / (PI * self.sigma_w_sq)).sqrt() }
    }

    /// `I_α = ½ ln(1 + α snr)`.
    pub fn sibson(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) {
            return Err(Error::NonPositiveAlpha(alpha));
        }
        Ok(0.5 * (alpha * self.snr()).ln_1p())
    }

    pub fn mutual_information(&self) -> f64 {
        0.5 * self.snr().ln_1p()
    }

    /// `(p-1) H_p + 1 = sqrt((1+snr)^p / (1 + (2-p) p snr))`, finite only
    /// while the denominator is positive.
    pub fn hellinger_moment(&self, p: f64) -> Result<f64> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::OrderAtMostOne(p));
        }
        let s = self.snr();
        let den = 1.0 + (2.0 - p) * p * s;
        if den <= 0.0 {
            return Err(Error::DivergenceInfinite);
        }
        Ok((0.5 * (p * s.ln_1p() - den.ln())).exp())
    }

    pub fn hellinger(&self, p: f64) -> Result<f64> {
        Ok((self.hellinger_moment(p)? - 1.0) / (p - 1.0))
    }

    /// The `p = 3/2` bound after relaxing `1 + 3snr/4 ≥ 3(1+snr)/4`, which
    /// gives `(81 sqrt(2π)/2048) sqrt(σ_W²/(1+snr))`. Never above the exact
    /// `p = 3/2` bound.
    pub fn hellinger_three_halves_relaxed(&self) -> Result<BoundResult> {
        let moment = ((4.0 / 3.0) * (1.0 + self.snr()).sqrt()).sqrt();
        hellinger_bound_from_moment(moment, 1.5, &self.small_ball())
    }

    /// `E_{γ,ζ}(W, X̄)` by quadrature over the standardized pair.
    pub fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        GaussianJoint::from_snr(self.snr())?.e_gamma_zeta(gamma, zeta)
    }

    /// `sqrt(σ_W² / (1 + snr))`, the posterior standard deviation, which
    /// bounds the absolute risk of the posterior mean.
    pub fn upper_bound(&self) -> f64 {
        (self.sigma_w_sq / (1.0 + self.snr())).sqrt()
    }

    /// Posterior mean (and median) of `W` given the sample mean.
    pub fn posterior_mean(&self, xbar: f64) -> f64 {
        let s = self.snr();
        s / (1.0 + s) * xbar
    }
}
