//! Joints with a continuous parameter `W` on an interval and a finite
//! observation `X`, evaluated by adaptive quadrature in `w`.

use crate::error::{Error, Result};
use crate::measures::phi::check_gamma_zeta;
use crate::numeric::optimize::bisect;
use crate::numeric::quadrature::{integrate_with_breaks, Tolerance};
use crate::numeric::{logsumexp, pairwise_sum};
use std::fmt;
use std::sync::Arc;

pub type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Likelihood = Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePolicy {
    pub tolerance: Tolerance,
    /// Points used to locate level-set crossings before bisection.
    pub scan_points: usize,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        Self { tolerance: Tolerance::default(), scan_points: 256 }
    }
}

/// `P_{WX}` with `W` having a density on `[lo, hi]` and `X ∈ {0..outcomes}`.
#[derive(Clone)]
pub struct MixedJoint {
    lo: f64,
    hi: f64,
    density: Density,
    likelihood: Likelihood,
    outcomes: usize,
    policy: QuadraturePolicy,
    marginal: Vec<f64>,
}

impl fmt::Debug for MixedJoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedJoint")
            .field("support", &(self.lo, self.hi))
            .field("outcomes", &self.outcomes)
            .field("policy", &self.policy)
            .finish_non_exhaustive()
    }
}

impl MixedJoint {
    pub fn new(
        support: (f64, f64),
        density: Density,
        outcomes: usize,
        likelihood: Likelihood,
        policy: QuadraturePolicy,
    ) -> Result<Self> {
        let (lo, hi) = support;
        if !(lo < hi && lo.is_finite() && hi.is_finite()) || outcomes == 0 {
            return Err(Error::InvalidDistribution("empty support or no outcomes".into()));
        }
        let tol = policy.tolerance;
        let mass = integrate_with_breaks(|w| density(w), lo, hi, &[], tol)?.value;
        if (mass - 1.0).abs() > 10.0 * tol.abs.max(tol.rel) {
            return Err(Error::InvalidDistribution(format!("prior density integrates to {mass}")));
        }
        for i in 0..=32 {
            let w = lo + (hi - lo) * i as f64 / 32.0;
            let row: f64 = (0..outcomes).map(|x| likelihood(w, x)).sum();
            if (row - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidDistribution(format!("likelihood row at w={w} sums to {row}")));
            }
        }
        let mut j = Self { lo, hi, density, likelihood, outcomes, policy, marginal: Vec::new() };
        j.marginal = (0..outcomes).map(|x| j.integrate_w(|w| j.lik(w, x), &[])).collect::<Result<_>>()?;
        Ok(j)
    }

    fn lik(&self, w: f64, x: usize) -> f64 {
        (self.likelihood)(w, x)
    }

    fn integrate_w<F: Fn(f64) -> f64>(&self, g: F, breaks: &[f64]) -> Result<f64> {
        let d = &self.density;
        Ok(integrate_with_breaks(|w| d(w) * g(w), self.lo, self.hi, breaks, self.policy.tolerance)?.value)
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn policy(&self) -> QuadraturePolicy {
        self.policy
    }

    /// `P(x)` for every outcome.
    pub fn marginal(&self) -> &[f64] {
        &self.marginal
    }

    /// Crossings of `g` on the support, found by scanning then bisecting.
    fn crossings<G: Fn(f64) -> f64>(&self, g: G) -> Vec<f64> {
        let n = self.policy.scan_points.max(2);
        let step = (self.hi - self.lo) / n as f64;
        let mut out = Vec::new();
        let mut prev = g(self.lo);
        for i in 1..=n {
            let w = if i == n { self.hi } else { self.lo + step * i as f64 };
            let cur = g(w);
            if prev.signum() != cur.signum() && prev != 0.0 && cur != 0.0 {
                if let Some(r) = bisect(&g, w - step, w, 1e-14) {
                    out.push(r);
                }
            }
            prev = cur;
        }
        out
    }

    /// `D_φ(P_{WX} ‖ P_W P_X) = Σ_x P(x) ∫ p(w) φ(P(x|w)/P(x)) dw`.
    pub fn phi_divergence<F: Fn(f64) -> f64>(&self, phi: F) -> Result<f64> {
        let terms = (0..self.outcomes)
            .filter(|&x| self.marginal[x] > 0.0)
            .map(|x| {
                let px = self.marginal[x];
                Ok(px * self.integrate_w(|w| phi(self.lik(w, x) / px), &[])?)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise_sum(&terms))
    }

    pub fn mutual_information(&self) -> Result<f64> {
        let terms = (0..self.outcomes)
            .filter(|&x| self.marginal[x] > 0.0)
            .map(|x| {
                let px = self.marginal[x];
                self.integrate_w(
                    |w| {
                        let l = self.lik(w, x);
                        if l > 0.0 {
                            l * (l / px).ln()
                        } else {
                            0.0
                        }
                    },
                    &[],
                )
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise_sum(&terms).max(0.0))
    }

    /// Sibson's `I_α(W; X)` for `α > 1`.
    pub fn sibson(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::AlphaAtMostOne(alpha));
        }
        let logs = (0..self.outcomes)
            .map(|x| Ok(self.integrate_w(|w| self.lik(w, x).powf(alpha), &[])?.ln() / alpha))
            .collect::<Result<Vec<f64>>>()?;
        Ok((alpha / (alpha - 1.0) * logsumexp(&logs)).max(0.0))
    }

    /// `(p-1) H_p + 1 = Σ_x P(x)^{1-p} ∫ p(w) P(x|w)^p dw`.
    pub fn hellinger_moment(&self, p: f64) -> Result<f64> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::OrderAtMostOne(p));
        }
        let terms = (0..self.outcomes)
            .filter(|&x| self.marginal[x] > 0.0)
            .map(|x| {
                let px = self.marginal[x];
                Ok(self.integrate_w(|w| (self.lik(w, x) / px).powf(p), &[])? * px)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise_sum(&terms))
    }

    /// `E_{γ,ζ}` by direct integration of the hinge, split where
    /// `ζ P(x|w) = γ P(x)`.
    pub fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        check_gamma_zeta(gamma, zeta)?;
        let terms = (0..self.outcomes)
            .map(|x| {
                let px = self.marginal[x];
                let g = |w: f64| zeta * self.lik(w, x) - gamma * px;
                let breaks = self.crossings(g);
                self.integrate_w(|w| g(w).max(0.0), &breaks)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise_sum(&terms) - (zeta - gamma).max(0.0))
    }
}
