use crate::error::{Error, Result};
use crate::numeric::optimize::bisect;
use std::fmt;
use std::sync::Arc;

pub type BallFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An upper bound on the small-ball probability
/// `L_W(ρ) = sup_ŵ P_W(ℓ(W, ŵ) < ρ)`. Values are clamped to `[0, 1]`.
#[derive(Clone)]
pub enum SmallBallFn {
    /// `L(ρ) = min(cρ, 1)`.
    Linear { c: f64 },
    /// A closed-form expression.
    Exact(BallFn),
    /// A numerically evaluated expression.
    Numeric(BallFn),
}

impl fmt::Debug for SmallBallFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { c } => write!(f, "Linear {{ c: {c} }}"),
            Self::Exact(_) => f.write_str("Exact(..)"),
            Self::Numeric(_) => f.write_str("Numeric(..)"),
        }
    }
}

impl SmallBallFn {
    pub fn linear(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter { name: "small-ball slope", value: c });
        }
        Ok(Self::Linear { c })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let v = match self {
            Self::Linear { c } => c * rho,
            Self::Exact(f) | Self::Numeric(f) => f(rho),
        };
        if v.is_nan() {
            1.0
        } else {
            v.clamp(0.0, 1.0)
        }
    }

    pub fn linear_coefficient(&self) -> Option<f64> {
        match self {
            Self::Linear { c } => Some(*c),
            _ => None,
        }
    }

    /// Smallest `ρ` with `L(ρ) = 1`; beyond it every bound bracket is
    /// non-positive. Infinite if `L` never saturates.
    pub fn rho_max(&self) -> f64 {
        if let Self::Linear { c } = self {
            return 1.0 / c;
        }
        let mut hi = 1.0;
        let mut doublings = 0;
        while self.eval(hi) < 1.0 {
            hi *= 2.0;
            doublings += 1;
            if doublings > 1000 {
                return f64::INFINITY;
            }
        }
        let lo = if doublings == 0 { 0.0 } else { hi / 2.0 };
        bisect(|r| if self.eval(r) >= 1.0 { 1.0 } else { -1.0 }, lo, hi, 1e-15 * hi).unwrap_or(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_clamps() {
        let l = SmallBallFn::linear(2.0).unwrap();
        assert!((l.eval(0.1) - 0.2).abs() < 1e-15);
        assert_eq!(l.eval(0.0), 0.0);
        assert_eq!(l.eval(1.0), 1.0);
        assert_eq!(l.rho_max(), 0.5);
        assert!(SmallBallFn::linear(0.0).is_err());
    }

    #[test]
    fn numeric_saturation_point() {
        let l = SmallBallFn::Numeric(Arc::new(|r: f64| r * r / 9.0));
        assert!((l.rho_max() - 3.0).abs() < 1e-12);
        let never = SmallBallFn::Exact(Arc::new(|r: f64| 0.5 * (1.0 - (-r).exp())));
        assert!(never.rho_max() > 1e300);
    }
}
