//! Jointly Gaussian `(W, X̄)` reduced to a standardized pair with correlation
//! `r = sqrt(snr / (1 + snr))`. Every divergence between the joint and the
//! product of marginals depends on the pair only through `r`.

use crate::error::{Error, Result};
use crate::measures::phi::check_gamma_zeta;
use crate::numeric::quadrature::{integrate_with_breaks, GaussHermite, Tolerance};
use statrs::function::erf::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Truncation of the outer integral, in standard deviations.
const OUTER_RANGE: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianJoint {
    r: f64,
    /// `1 - r²`, stored separately so it keeps full precision at large snr.
    s2: f64,
    tolerance: Tolerance,
}

fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

impl GaussianJoint {
    pub fn from_snr(snr: f64) -> Result<Self> {
        if !(snr >= 0.0 && snr.is_finite()) {
            return Err(Error::InvalidParameter { name: "snr", value: snr });
        }
        Ok(Self { r: (snr / (1.0 + snr)).sqrt(), s2: 1.0 / (1.0 + snr), tolerance: Tolerance::default() })
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn correlation(&self) -> f64 {
        self.r
    }

    /// Density ratio `p(u, v) / (φ(u) φ(v))`.
    pub fn ratio(&self, u: f64, v: f64) -> f64 {
        let (r, s2) = (self.r, self.s2);
        (-(r * r * u * u - 2.0 * r * u * v + r * r * v * v) / (2.0 * s2)).exp() / s2.sqrt()
    }

    /// Expectation over the standard normal `u`, by 64-node Gauss–Hermite
    /// when it agrees with a 48-node rule, otherwise by adaptive Simpson on
    /// `[-8, 8]` split at `breaks`.
    fn outer<F: Fn(f64) -> f64>(&self, g: F, breaks: &[f64]) -> Result<f64> {
        let hi = GaussHermite::new(64).normal_expectation(&g);
        let lo = GaussHermite::new(48).normal_expectation(&g);
        let tol = self.tolerance;
        if (hi - lo).abs() <= tol.abs.max(tol.rel * hi.abs()) {
            return Ok(hi);
        }
        Ok(integrate_with_breaks(|u| norm_pdf(u) * g(u), -OUTER_RANGE, OUTER_RANGE, breaks, tol)?.value)
    }

    /// `E_{γ,ζ}` with the inner integral over `v` in closed form: the set
    /// where `ζ R > γ` is an interval `(a, b)` for each `u`, and `φ(v) R(u, v)`
    /// is the conditional density `N(ru, 1 - r²)`.
    pub fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        check_gamma_zeta(gamma, zeta)?;
        let m = (zeta - gamma).max(0.0);
        let r = self.r;
        if r == 0.0 {
            return Ok(0.0);
        }
        if gamma == 0.0 {
            return Ok(zeta - m);
        }
        let s2 = self.s2;
        let s = s2.sqrt();
        let k = s2 * (s2.ln() + 2.0 * (gamma / zeta).ln());
        let inner = |u: f64| {
            let disc = s2 * u * u - k;
            if disc <= 0.0 {
                return 0.0;
            }
            let h = disc.sqrt();
            // b - ru = (u s2 + h) / r, written out to avoid cancellation
            let cond = norm_cdf((u * s2 + h) / (r * s)) - norm_cdf((u * s2 - h) / (r * s));
            let (a, b) = ((u - h) / r, (u + h) / r);
            let marg = if b - a < 1e-6 { norm_pdf(0.5 * (a + b)) * (b - a) } else { norm_cdf(b) - norm_cdf(a) };
            (zeta * cond - gamma * marg).max(0.0)
        };
        let breaks: Vec<f64> = if k > 0.0 {
            let u0 = (k / s2).sqrt();
            vec![-u0, u0]
        } else {
            vec![]
        };
        let total = self.outer(inner, &breaks)?;
        Ok(total - m)
    }

    /// `I(W; X̄) = E[ln R]`, evaluated numerically.
    pub fn mutual_information(&self) -> Result<f64> {
        let r = self.r;
        if r == 0.0 {
            return Ok(0.0);
        }
        let s2 = self.s2;
        let s = s2.sqrt();
        let tol = self.tolerance;
        let inner = |u: f64| -> f64 {
            let c = r * u;
            integrate_with_breaks(
                |v| {
                    let cond = norm_pdf((v - c) / s) / s;
                    cond * self.ratio(u, v).ln()
                },
                c - 12.0 * s,
                c + 12.0 * s,
                &[c],
                tol,
            )
            .map(|i| i.value)
            .unwrap_or(f64::NAN)
        };
        let v = self.outer(inner, &[])?;
        if v.is_nan() {
            return Err(Error::QuadratureFailure { estimate: v, error: f64::NAN });
        }
        Ok(v.max(0.0))
    }
}
