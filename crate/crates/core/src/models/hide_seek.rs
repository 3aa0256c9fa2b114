//! Distributed Hide-and-Seek: `m` processors each see `n` samples of a
//! `d`-dimensional ±1 vector whose hidden coordinate carries a bias `θ`,
//! and each sends `b` bits to a centre that must name the coordinate.
//! Only the closed-form bounds on the error probability are provided.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HideAndSeekModel {
    pub d: u32,
    pub m: u32,
    pub b: f64,
    pub theta: f64,
    pub n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HideAndSeekBounds {
    pub ml: f64,
    pub nips: f64,
    /// The `nips` expression is only proven for `θ ≤ 1/(4n)`.
    pub nips_valid: bool,
    pub mi: f64,
}

impl HideAndSeekModel {
    pub fn new(d: u32, m: u32, b: f64, theta: f64, n: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter { name: "d", value: d as f64 });
        }
        if !(0.0..0.5).contains(&theta) {
            return Err(Error::InvalidParameter { name: "theta", value: theta });
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter { name: "b", value: b });
        }
        Ok(Self { d, m, b, theta, n })
    }

    /// `min(nm ln(1+2θ), ln d, mb)`.
    pub fn leakage(&self) -> f64 {
        let chain = self.n as f64 * self.m as f64 * (2.0 * self.theta).ln_1p();
        chain.min((self.d as f64).ln()).min(self.m as f64 * self.b)
    }

    pub fn bounds(&self) -> HideAndSeekBounds {
        let d = self.d as f64;
        let (m, n, b, th) = (self.m as f64, self.n as f64, self.b, self.theta);
        let ml = (1.0 - (self.leakage() - d.ln()).exp()).clamp(0.0, 1.0);

        let inner = (10.0 * th * n * m * b / d).min(m * n * th * th);
        let nips = (1.0 - (3.0 / d + 5.0 * inner.sqrt())).clamp(0.0, 1.0);
        let nips_valid = th <= 1.0 / (4.0 * n.max(1.0));

        let ratio = ((1.0 - 2.0 * th) / (1.0 + 2.0 * th)).powf(n);
        let info = ((1.0 - ratio) * m * b + 1.0).min((4.0 * m * n * th * th).min(d.ln()) + 1.0);
        let mi = (1.0 - info / d.ln()).clamp(0.0, 1.0);
        HideAndSeekBounds { ml, nips, nips_valid, mi }
    }
}

/// Bias schedules used when sweeping `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ThetaRule {
    Constant(f64),
    /// `θ = n^{-e}`
    Power(f64),
    /// `θ = 1/(4n)`
    QuarterInverse,
}

impl ThetaRule {
    pub fn theta(&self, n: u32) -> f64 {
        let nf = n.max(1) as f64;
        match *self {
            Self::Constant(t) => t,
            Self::Power(e) => nf.powf(-e),
            Self::QuarterInverse => 0.25 / nf,
        }
    }
}

impl std::str::FromStr for ThetaRule {
    type Err = String;

    /// Accepts `n^-2`, `n^-1.5`, `1/(4n)`, or a constant such as `0.01`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim().replace(' ', "");
        if t == "1/(4n)" || t == "1/4n" {
            return Ok(Self::QuarterInverse);
        }
        if let Some(e) = t.strip_prefix("n^-") {
            let e: f64 = e.parse().map_err(|_| format!("bad exponent in theta rule {s:?}"))?;
            return Ok(Self::Power(e));
        }
        t.parse::<f64>().map(Self::Constant).map_err(|_| format!("unrecognised theta rule {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bias() {
        let h = HideAndSeekModel::new(512, 10, 1536.0, 0.0, 5).unwrap();
        assert_eq!(h.leakage(), 0.0);
        let b = h.bounds();
        assert!((b.ml - (1.0 - 1.0 / 512.0)).abs() < 1e-15);
        assert!((b.nips - (1.0 - 3.0 / 512.0)).abs() < 1e-15);
        assert!((b.mi - (1.0 - 1.0 / 512f64.ln())).abs() < 1e-15);
        let h = HideAndSeekModel::new(512, 10, 0.0, 0.2, 5).unwrap();
        assert_eq!(h.leakage(), 0.0);
    }

    #[test]
    fn chain_rule_term_saturates_near_half_m() {
        let n = 100_000;
        let h = HideAndSeekModel::new(512, 10, 1536.0, 0.25 / n as f64, n).unwrap();
        assert!((h.leakage() - 5.0).abs() < 1e-4);
        assert!(h.bounds().nips_valid);
        let h = HideAndSeekModel::new(512, 10, 1536.0, 0.3, 4).unwrap();
        assert!(!h.bounds().nips_valid);
    }

    #[test]
    fn theta_rules() {
        assert_eq!("n^-2".parse::<ThetaRule>().unwrap().theta(4), 1.0 / 16.0);
        assert_eq!("1/(4n)".parse::<ThetaRule>().unwrap().theta(5), 0.05);
        assert_eq!("0.01".parse::<ThetaRule>().unwrap().theta(9), 0.01);
        assert!("n^x".parse::<ThetaRule>().is_err());
        assert!(HideAndSeekModel::new(1, 1, 1.0, 0.1, 1).is_err());
        assert!(HideAndSeekModel::new(4, 1, 1.0, 0.5, 1).is_err());
    }
}
