//! Convex generators `φ` with `φ(1) = 0` that define φ-divergences, together
//! with the pieces the φ-divergence bounds need: monotonicity, the convex
//! conjugate at zero, and a generalized inverse.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiSpec {
    /// `t ln t`
    Kl,
    /// `(t - 1)^2`
    ChiSquare,
    /// `(t^p - 1) / (p - 1)`, `p > 1`
    Hellinger { p: f64 },
    /// `max(0, ζt - γ) - max(0, ζ - γ)`
    EGammaZeta { gamma: f64, zeta: f64 },
    /// `e^{-t} - e^{-1}`, a strictly convex decreasing generator.
    ExpDecreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    NonDecreasing,
    NonIncreasing,
    Neither,
}

const INV_E: f64 = 0.367_879_441_171_442_3;

impl PhiSpec {
    pub fn hellinger(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::OrderAtMostOne(p));
        }
        Ok(Self::Hellinger { p })
    }

    pub fn e_gamma_zeta(gamma: f64, zeta: f64) -> Result<Self> {
        check_gamma_zeta(gamma, zeta)?;
        Ok(Self::EGammaZeta { gamma, zeta })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::Kl => {
                if t == 0.0 {
                    0.0
                } else {
                    t * t.ln()
                }
            }
            Self::ChiSquare => (t - 1.0) * (t - 1.0),
            Self::Hellinger { p } => (t.powf(p) - 1.0) / (p - 1.0),
            Self::EGammaZeta { gamma, zeta } => (zeta * t - gamma).max(0.0) - (zeta - gamma).max(0.0),
            Self::ExpDecreasing => (-t).exp() - INV_E,
        }
    }

    /// `lim φ(t)/t` as `t → ∞`, which prices mass the reference measure misses.
    pub fn slope_at_infinity(&self) -> f64 {
        match *self {
            Self::Kl | Self::ChiSquare | Self::Hellinger { .. } => f64::INFINITY,
            Self::EGammaZeta { zeta, .. } => zeta,
            Self::ExpDecreasing => 0.0,
        }
    }

    pub fn monotonicity(&self) -> Monotonicity {
        match self {
            Self::Hellinger { .. } | Self::EGammaZeta { .. } => Monotonicity::NonDecreasing,
            Self::ExpDecreasing => Monotonicity::NonIncreasing,
            Self::Kl | Self::ChiSquare => Monotonicity::Neither,
        }
    }

    /// `φ*(0) = sup_{t ≥ 0} -φ(t)`.
    pub fn conjugate_at_zero(&self) -> f64 {
        match *self {
            Self::Kl => INV_E,
            Self::ChiSquare => 0.0,
            Self::Hellinger { p } => 1.0 / (p - 1.0),
            Self::EGammaZeta { gamma, zeta } => (zeta - gamma).max(0.0),
            Self::ExpDecreasing => INV_E,
        }
    }

    /// Generalized inverse. For non-decreasing `φ` this is the inverse of the
    /// increasing part; for non-increasing `φ` it is `inf { t ≥ 0 : φ(t) ≤ y }`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        match *self {
            Self::Hellinger { p } => {
                let base = (p - 1.0) * y + 1.0;
                if base < 0.0 || y.is_nan() {
                    return Err(Error::InverseDomainError(y));
                }
                Ok(base.powf(1.0 / p))
            }
            Self::EGammaZeta { gamma, zeta } => {
                let m = (zeta - gamma).max(0.0);
                if y < -m || y.is_nan() {
                    return Err(Error::InverseDomainError(y));
                }
                Ok((y + m + gamma) / zeta)
            }
            Self::ExpDecreasing => {
                if y <= -INV_E || y.is_nan() {
                    return Err(Error::InverseDomainError(y));
                }
                if y >= 1.0 - INV_E {
                    Ok(0.0)
                } else {
                    Ok(-(y + INV_E).ln())
                }
            }
            Self::Kl | Self::ChiSquare => Err(Error::InverseDomainError(y)),
        }
    }
}

pub(crate) fn check_gamma_zeta(gamma: f64, zeta: f64) -> Result<()> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter { name: "gamma", value: gamma });
    }
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::InvalidParameter { name: "zeta", value: zeta });
    }
    Ok(())
}
