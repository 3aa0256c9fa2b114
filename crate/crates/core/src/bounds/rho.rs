use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The objective `ρ(1 - cρ^t - b)` shared by every bound with a linear
/// small-ball function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoObjective {
    pub c: f64,
    pub t: f64,
    pub b: f64,
}

impl RhoObjective {
    pub fn new(c: f64, t: f64, b: f64) -> Result<Self> {
        if !(c >= 0.0) {
            return Err(Error::InvalidParameter { name: "c", value: c });
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter { name: "t", value: t });
        }
        if !((0.0..1.0).contains(&b)) {
            return Err(Error::InvalidParameter { name: "b", value: b });
        }
        Ok(Self { c, t, b })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        rho * (1.0 - self.c * rho.powf(self.t) - self.b)
    }
}

/// Closed-form maximizer `ρ* = ((1-b)/((t+1)c))^{1/t}` with value
/// `(t / c^{1/t}) ((1-b)/(t+1))^{1+1/t}`. With `c = 0` the objective is
/// unbounded and both entries are `+inf`.
pub fn maximize_rho(obj: RhoObjective) -> (f64, f64) {
    let RhoObjective { c, t, b } = obj;
    if c == 0.0 {
        return (f64::INFINITY, f64::INFINITY);
    }
    if c.is_infinite() {
        return (0.0, 0.0);
    }
    let q = (1.0 - b) / (t + 1.0);
    let rho = (q / c).powf(1.0 / t);
    let value = t / c.powf(1.0 / t) * q.powf(1.0 + 1.0 / t);
    if rho.is_normal() && value.is_normal() {
        return (rho, value);
    }
    // log space keeps tiny t (α close to 1) from overflowing c^{1/t}
    let log_rho = (q.ln() - c.ln()) / t;
    let log_value = t.ln() - c.ln() / t + (1.0 + 1.0 / t) * q.ln();
    (log_rho.exp(), log_value.exp())
}

/// As [`maximize_rho`], restricted to `(0, rho_max]`. The objective is
/// concave, so a maximizer past the end moves to the boundary.
pub(crate) fn maximize_rho_bounded(obj: RhoObjective, rho_max: f64) -> (f64, f64) {
    let (rho, value) = maximize_rho(obj);
    if rho <= rho_max {
        (rho, value)
    } else {
        (rho_max, obj.eval(rho_max).max(0.0))
    }
}
