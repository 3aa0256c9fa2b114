//! One row of bounds per sample size, for each worked setting.

use super::{BernoulliUniformModel, GaussianModel, NoisyBernoulliModel};
use crate::bounds::{
    hellinger_bound, hockey_stick_bound, mi_baseline_bound, ml_bound, optimize_bound, sibson_bound, BoundResult,
    MeasureParams, Method, ParamGrid, SmallBallFn,
};
use crate::error::{Error, Result};
use crate::numeric::optimize::argmax_first;
use serde::{Deserialize, Serialize};

/// Fixed measure parameters plus the grids used when optimizing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundOptions {
    pub optimize: bool,
    pub alpha: f64,
    pub p: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub alpha_grid: ParamGrid,
    pub order_grid: ParamGrid,
    pub gamma_zeta_grid: ParamGrid,
}

impl BoundOptions {
    pub fn fixed(alpha: f64, p: f64, gamma: f64, zeta: f64) -> Self {
        Self {
            optimize: false,
            alpha,
            p,
            gamma,
            zeta,
            alpha_grid: ParamGrid::default_alpha(),
            order_grid: ParamGrid::default_order(),
            gamma_zeta_grid: ParamGrid::default_gamma_zeta(),
        }
    }

    pub fn optimized() -> Self {
        Self { optimize: true, ..Self::fixed(2.0, 2.0, 3.0, 1.5) }
    }
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self::fixed(2.0, 2.0, 3.0, 1.5)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub mi: BoundResult,
    pub ml: BoundResult,
    pub sibson: BoundResult,
    pub hellinger: BoundResult,
    pub egz: BoundResult,
    pub sdpi: Option<BoundResult>,
    pub upper: f64,
}

impl BoundRow {
    /// Bounds in column order.
    pub fn columns(&self) -> Vec<&BoundResult> {
        let mut v = vec![&self.mi, &self.ml, &self.sibson, &self.hellinger, &self.egz];
        if let Some(s) = &self.sdpi {
            v.push(s);
        }
        v
    }

    /// The largest bound; ties go to the earlier column.
    pub fn best(&self) -> Method {
        let cols = self.columns();
        let values: Vec<f64> = cols.iter().map(|b| b.value).collect();
        cols[argmax_first(&values).unwrap_or(0)].method
    }
}

/// Maps an infinite divergence to `+inf` so the bound reads as vacuous.
fn finite_or_inf(r: Result<f64>) -> Result<f64> {
    match r {
        Err(Error::DivergenceInfinite) => Ok(f64::INFINITY),
        other => other,
    }
}

struct Measures<'a> {
    sibson: &'a (dyn Fn(f64) -> Result<f64> + Sync),
    hellinger: &'a (dyn Fn(f64) -> Result<f64> + Sync),
    egz: &'a (dyn Fn(f64, f64) -> Result<f64> + Sync),
}

fn parametric(m: &Measures<'_>, l: &SmallBallFn, o: &BoundOptions) -> Result<[BoundResult; 3]> {
    if o.optimize {
        let cb = |mp: MeasureParams| match mp {
            MeasureParams::Alpha { alpha } => (m.sibson)(alpha),
            MeasureParams::Order { p } => finite_or_inf((m.hellinger)(p)),
            MeasureParams::GammaZeta { gamma, zeta } => (m.egz)(gamma, zeta),
            MeasureParams::None => Err(Error::CallbackFailure("no parameters".into())),
        };
        Ok([
            optimize_bound(cb, Method::Sibson, &o.alpha_grid, l)?,
            optimize_bound(cb, Method::Hellinger, &o.order_grid, l)?,
            optimize_bound(cb, Method::HockeyStick, &o.gamma_zeta_grid, l)?,
        ])
    } else {
        Ok([
            sibson_bound((m.sibson)(o.alpha)?, o.alpha, l)?,
            hellinger_bound(finite_or_inf((m.hellinger)(o.p))?, o.p, l)?,
            hockey_stick_bound((m.egz)(o.gamma, o.zeta)?, o.gamma, o.zeta, l)?,
        ])
    }
}

/// Coin model. The leakage column uses the closed-form upper bound on the
/// leakage, `ln(2 + sqrt(πn/2))`.
pub fn bernoulli_row(model: &BernoulliUniformModel, o: &BoundOptions) -> Result<BoundRow> {
    let l = model.small_ball();
    let m = Measures {
        sibson: &|a| model.sibson(a),
        hellinger: &|p| model.hellinger(p),
        egz: &|g, z| model.e_gamma_zeta(g, z),
    };
    let [sibson, hellinger, egz] = parametric(&m, &l, o)?;
    Ok(BoundRow {
        n: model.n(),
        mi: mi_baseline_bound(model.mutual_information()?, &l)?,
        ml: ml_bound(model.maximal_leakage().upper, &l)?,
        sibson,
        hellinger,
        egz,
        sdpi: None,
        upper: model.upper_bound(),
    })
}

/// Coin model seen through the channel. The first five columns are the
/// noiseless bounds, which stay valid because noise cannot lower the risk;
/// the contracted bound goes in `sdpi`.
pub fn noisy_row(model: &NoisyBernoulliModel, o: &BoundOptions) -> Result<BoundRow> {
    let mut row = bernoulli_row(model.clean(), o)?;
    let sdpi = if o.optimize {
        let grid = match &o.order_grid {
            ParamGrid::Order(g) => g.clone(),
            _ => return Err(Error::CallbackFailure("order grid expected".into())),
        };
        let mut g: Vec<f64> = grid.into_iter().filter(|&p| p <= 2.0).collect();
        if g.last() != Some(&2.0) {
            g.push(2.0);
        }
        model.bound_optimized(&g)?
    } else {
        model.bound_order(o.p.min(2.0))?
    };
    row.sdpi = Some(sdpi);
    row.upper = model.upper_bound();
    Ok(row)
}

/// Gaussian model. Leakage is infinite for a continuous observation, so
/// that column is vacuous.
pub fn gaussian_row(model: &GaussianModel, o: &BoundOptions) -> Result<BoundRow> {
    let l = model.small_ball();
    let m = Measures {
        sibson: &|a| model.sibson(a),
        hellinger: &|p| model.hellinger(p),
        egz: &|g, z| model.e_gamma_zeta(g, z),
    };
    let [sibson, hellinger, egz] = parametric(&m, &l, o)?;
    Ok(BoundRow {
        n: model.n(),
        mi: mi_baseline_bound(model.mutual_information(), &l)?,
        ml: ml_bound(f64::INFINITY, &l)?,
        sibson,
        hellinger,
        egz,
        sdpi: None,
        upper: model.upper_bound(),
    })
}
