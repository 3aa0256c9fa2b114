//! Lower bounds on the Bayesian risk, one per information measure.
//!
//! Each bound is a supremum over the loss threshold `ρ` of
//! `ρ · (1 - penalty(ρ))`. With a linear small-ball function the supremum
//! has a closed form; otherwise it is located numerically on `(0, ρ_max]`.

use super::rho::{maximize_rho_bounded, RhoObjective};
use super::small_ball::SmallBallFn;
use crate::error::{Error, Result};
use crate::measures::{Monotonicity, PhiSpec};
use crate::numeric::optimize::{golden_section_max, log_grid};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sibson,
    MaximalLeakage,
    Hellinger,
    HockeyStick,
    MutualInformation,
    Phi,
    Sdpi,
}

impl Method {
    /// Short tag used in tables.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Sibson => "sibson",
            Self::MaximalLeakage => "ml",
            Self::Hellinger => "hellinger",
            Self::HockeyStick => "egz",
            Self::MutualInformation => "mi",
            Self::Phi => "phi",
            Self::Sdpi => "sdpi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureParams {
    None,
    Alpha { alpha: f64 },
    Order { p: f64 },
    GammaZeta { gamma: f64, zeta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub rho_star: f64,
    pub params: MeasureParams,
    pub method: Method,
    pub evaluations: usize,
    /// Set when no `ρ` gives a positive bracket; `value` is then 0.
    pub vacuous: bool,
}

impl BoundResult {
    fn new(method: Method, params: MeasureParams, rho: f64, value: f64, evaluations: usize) -> Self {
        let vacuous = !(value > 0.0);
        Self {
            value: if vacuous { 0.0 } else { value },
            rho_star: if vacuous { 0.0 } else { rho },
            params,
            method,
            evaluations,
            vacuous,
        }
    }

    pub(crate) fn vacuous(method: Method, params: MeasureParams) -> Self {
        Self::new(method, params, 0.0, 0.0, 0)
    }
}

/// Numeric `sup_{0 < ρ ≤ ρ_max} f(ρ)`: a log-spaced scan then golden-section
/// refinement around the best scan point.
pub(crate) fn sup_over_rho<F: Fn(f64) -> f64>(f: F, rho_max: f64) -> (f64, f64, usize) {
    const SCAN: usize = 512;
    let hi = if rho_max.is_finite() { rho_max } else { 1e6 };
    let grid = log_grid(hi * 1e-12, hi, SCAN);
    let vals: Vec<f64> = grid.iter().map(|&r| f(r)).collect();
    let best = crate::numeric::optimize::argmax_first(&vals).unwrap_or(0);
    let lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let up = grid[(best + 1).min(SCAN - 1)];
    let m = golden_section_max(&f, lo.max(f64::MIN_POSITIVE), up, 1e-13 * up);
    if m.value > vals[best] {
        (m.x, m.value, SCAN + m.evaluations)
    } else {
        (grid[best], vals[best], SCAN + m.evaluations)
    }
}

fn check_divergence(name: &'static str, v: f64) -> Result<()> {
    if v.is_nan() || v < 0.0 {
        return Err(Error::InvalidParameter { name, value: v });
    }
    Ok(())
}

/// Bound from the multiplicative penalty `(C · L(ρ))^t`, the common shape of
/// the Sibson, leakage and Hellinger bounds.
fn power_bound(log_scale: f64, t: f64, l: &SmallBallFn, method: Method, params: MeasureParams) -> BoundResult {
    if log_scale.is_infinite() {
        return BoundResult::vacuous(method, params);
    }
    match l.linear_coefficient() {
        Some(cl) => {
            let direct = (log_scale.exp() * cl).powf(t);
            let c = if direct.is_normal() { direct } else { (t * (log_scale + cl.ln())).exp() };
            match RhoObjective::new(c, t, 0.0) {
                Ok(obj) => {
                    let (rho, value) = maximize_rho_bounded(obj, l.rho_max());
                    BoundResult::new(method, params, rho, value, 1)
                }
                Err(_) => BoundResult::vacuous(method, params),
            }
        }
        None => {
            let f = |rho: f64| {
                let lv = l.eval(rho);
                rho * (1.0 - (t * (log_scale + lv.ln())).exp())
            };
            let (rho, value, evals) = sup_over_rho(f, l.rho_max());
            BoundResult::new(method, params, rho, value, evals)
        }
    }
}

/// Sibson bound: `sup_ρ ρ(1 - exp(((α-1)/α)(I_α + ln L(ρ))))`.
pub fn sibson_bound(i_alpha: f64, alpha: f64, l: &SmallBallFn) -> Result<BoundResult> {
    if !(alpha > 1.0) {
        return Err(Error::AlphaAtMostOne(alpha));
    }
    check_divergence("I_alpha", i_alpha)?;
    let t = if alpha.is_infinite() { 1.0 } else { (alpha - 1.0) / alpha };
    Ok(power_bound(i_alpha, t, l, Method::Sibson, MeasureParams::Alpha { alpha }))
}

/// Maximal-leakage bound: `sup_ρ ρ(1 - exp(ML) L(ρ))`.
pub fn ml_bound(ml: f64, l: &SmallBallFn) -> Result<BoundResult> {
    check_divergence("maximal leakage", ml)?;
    Ok(power_bound(ml, 1.0, l, Method::MaximalLeakage, MeasureParams::None))
}

/// Hellinger bound: `sup_ρ ρ(1 - L(ρ)^{(p-1)/p} ((p-1)H_p + 1)^{1/p})`.
pub fn hellinger_bound(h_p: f64, p: f64, l: &SmallBallFn) -> Result<BoundResult> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::OrderAtMostOne(p));
    }
    check_divergence("H_p", h_p)?;
    let t = (p - 1.0) / p;
    let log_moment = ((p - 1.0) * h_p).ln_1p();
    // (C L)^t with C^t = M^{1/p}, so ln C = ln M / (p - 1)
    Ok(power_bound(log_moment / (p - 1.0), t, l, Method::Hellinger, MeasureParams::Order { p }))
}

/// Hellinger bound taking the moment `(p-1)H_p + 1` directly, which avoids
/// cancellation when the moment is huge.
pub fn hellinger_bound_from_moment(moment: f64, p: f64, l: &SmallBallFn) -> Result<BoundResult> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::OrderAtMostOne(p));
    }
    if moment.is_nan() || moment < 1.0 - 1e-12 {
        return Err(Error::InvalidParameter { name: "hellinger moment", value: moment });
    }
    let t = (p - 1.0) / p;
    Ok(power_bound(moment.max(1.0).ln() / (p - 1.0), t, l, Method::Hellinger, MeasureParams::Order { p }))
}

/// `E_{γ,ζ}` bound: `sup_ρ ρ(1 - (E + γL(ρ) + max(0, ζ-γ))/ζ)`.
pub fn hockey_stick_bound(e: f64, gamma: f64, zeta: f64, l: &SmallBallFn) -> Result<BoundResult> {
    crate::measures::PhiSpec::e_gamma_zeta(gamma, zeta)?;
    check_divergence("E_gamma_zeta", e)?;
    let params = MeasureParams::GammaZeta { gamma, zeta };
    let m = (zeta - gamma).max(0.0);
    let b = (e + m) / zeta;
    if !(b < 1.0) {
        return Ok(BoundResult::vacuous(Method::HockeyStick, params));
    }
    match l.linear_coefficient() {
        Some(cl) => {
            let obj = RhoObjective::new(gamma * cl / zeta, 1.0, b)?;
            let (rho, value) = maximize_rho_bounded(obj, l.rho_max());
            Ok(BoundResult::new(Method::HockeyStick, params, rho, value, 1))
        }
        None => {
            let f = |rho: f64| rho * (1.0 - b - gamma * l.eval(rho) / zeta);
            let (rho, value, evals) = sup_over_rho(f, l.rho_max());
            Ok(BoundResult::new(Method::HockeyStick, params, rho, value, evals))
        }
    }
}

/// Mutual-information baseline: `sup_ρ ρ(1 - (I + ln 2)/ln(1/L(ρ)))`.
pub fn mi_baseline_bound(i: f64, l: &SmallBallFn) -> Result<BoundResult> {
    check_divergence("mutual information", i)?;
    if i.is_infinite() {
        return Ok(BoundResult::vacuous(Method::MutualInformation, MeasureParams::None));
    }
    let a = i + std::f64::consts::LN_2;
    let f = |rho: f64| {
        let lv = l.eval(rho);
        if lv >= 1.0 {
            return 0.0;
        }
        if lv <= 0.0 {
            return rho;
        }
        rho * (1.0 - a / (-lv.ln()))
    };
    // the bracket is positive only where L(ρ) < e^{-a}
    let upper = match l.linear_coefficient() {
        Some(c) => ((-a).exp() / c).min(l.rho_max()),
        None => l.rho_max(),
    };
    let (rho, value, evals) = sup_over_rho(f, upper);
    Ok(BoundResult::new(Method::MutualInformation, MeasureParams::None, rho, value, evals))
}

/// Increasing-branch φ bound at one `ρ`:
/// `ρ(1 - L φ^{-1}((I_φ + (1-L)φ*(0))/L))`, clamped at 0.
pub fn phi_bound_increasing(i_phi: f64, phi: &PhiSpec, l_val: f64, rho: f64) -> Result<f64> {
    if phi.monotonicity() != Monotonicity::NonDecreasing {
        return Err(Error::WrongMonotonicity("non-decreasing"));
    }
    if !(l_val > 0.0 && l_val <= 1.0) {
        return Err(Error::InvalidParameter { name: "L", value: l_val });
    }
    let arg = (i_phi + (1.0 - l_val) * phi.conjugate_at_zero()) / l_val;
    let inv = phi.inverse(arg)?;
    Ok((rho * (1.0 - l_val * inv)).max(0.0))
}

/// Decreasing-branch φ bound at one `ρ`:
/// `ρ(1-L) φ^{-1}((I_φ + L φ*(0))/(1-L))`, clamped at 0.
pub fn phi_bound_decreasing(i_phi: f64, phi: &PhiSpec, l_val: f64, rho: f64) -> Result<f64> {
    if phi.monotonicity() != Monotonicity::NonIncreasing {
        return Err(Error::WrongMonotonicity("non-increasing"));
    }
    if !(0.0..=1.0).contains(&l_val) {
        return Err(Error::InvalidParameter { name: "L", value: l_val });
    }
    if l_val == 1.0 {
        return Ok(0.0);
    }
    let arg = (i_phi + l_val * phi.conjugate_at_zero()) / (1.0 - l_val);
    let inv = phi.inverse(arg)?;
    Ok((rho * (1.0 - l_val) * inv).max(0.0))
}

/// Supremum over `ρ` of the φ bound, routed to the sharper closed forms
/// for Hellinger and `E_{γ,ζ}` generators.
pub fn phi_bound(i_phi: f64, phi: &PhiSpec, l: &SmallBallFn) -> Result<BoundResult> {
    check_divergence("I_phi", i_phi)?;
    match *phi {
        PhiSpec::Hellinger { p } => hellinger_bound(i_phi, p, l),
        PhiSpec::EGammaZeta { gamma, zeta } => hockey_stick_bound(i_phi, gamma, zeta, l),
        _ => {
            let branch = phi.monotonicity();
            let f = |rho: f64| {
                let lv = l.eval(rho);
                let v = match branch {
                    Monotonicity::NonDecreasing if lv > 0.0 => phi_bound_increasing(i_phi, phi, lv, rho),
                    Monotonicity::NonDecreasing => Ok(0.0),
                    Monotonicity::NonIncreasing => phi_bound_decreasing(i_phi, phi, lv, rho),
                    Monotonicity::Neither => Err(Error::WrongMonotonicity("monotone")),
                };
                v.unwrap_or(0.0)
            };
            if branch == Monotonicity::Neither {
                return Err(Error::WrongMonotonicity("monotone"));
            }
            let (rho, value, evals) = sup_over_rho(f, l.rho_max());
            Ok(BoundResult::new(Method::Phi, MeasureParams::None, rho, value, evals))
        }
    }
}

/// φ bound for privatized observations: `I_φ` is contracted by `η` first.
pub fn sdpi_bound(i_phi: f64, eta: f64, phi: &PhiSpec, l: &SmallBallFn) -> Result<BoundResult> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    let mut r = phi_bound(eta * i_phi, phi, l)?;
    r.method = Method::Sdpi;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> SmallBallFn {
        SmallBallFn::linear(2.0).unwrap()
    }

    fn grid_sup<F: Fn(f64) -> f64>(f: F, hi: f64, n: usize) -> f64 {
        (1..=n).map(|i| f(hi * i as f64 / n as f64)).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn independence_cases() {
        // sup ρ(1 - 2ρ) is reached at ρ = 1/4
        let r = ml_bound(0.0, &two()).unwrap();
        assert!((r.value - 1.0 / 8.0).abs() < 1e-15);
        assert!((r.rho_star - 0.25).abs() < 1e-15);
        let r = hellinger_bound(0.0, 2.0, &two()).unwrap();
        assert!((r.value - 2.0 / 27.0).abs() < 1e-15);
        let r = hockey_stick_bound(0.0, 1.0, 1.0, &two()).unwrap();
        assert!((r.value - 0.125).abs() < 1e-15);
        let r = sibson_bound(0.0, 2.0, &two()).unwrap();
        // c = √2, t = 1/2
        let expect = 0.5 / 2f64.sqrt().powi(2) * (1.0f64 / 1.5).powi(3);
        assert!((r.value - expect).abs() < 1e-15);
    }

    #[test]
    fn sibson_single_coin_against_grid() {
        let i2 = 2.0 * (2.0 / 3f64.sqrt()).ln();
        let r = sibson_bound(i2, 2.0, &two()).unwrap();
        let f = |rho: f64| rho * (1.0 - (0.5 * (i2 + (2.0 * rho).ln())).exp());
        assert!((grid_sup(f, 0.5, 1_000_000) - r.value).abs() < 1e-8);
    }

    #[test]
    fn large_alpha_approaches_leakage_bound() {
        let ml = 0.7;
        let a = sibson_bound(ml, 1e9, &two()).unwrap().value;
        let b = ml_bound(ml, &two()).unwrap().value;
        assert!((a - b).abs() < 1e-8);
        assert_eq!(sibson_bound(ml, f64::INFINITY, &two()).unwrap().value, b);
    }

    #[test]
    fn mi_baseline_against_grid() {
        let r = mi_baseline_bound(0.0, &two()).unwrap();
        assert!(r.value > 0.0);
        let f = |rho: f64| {
            let l = (2.0 * rho).min(1.0);
            rho * (1.0 - 2f64.ln() / -l.ln())
        };
        let g = grid_sup(f, 0.25, 1_000_000);
        assert!((g - r.value).abs() < 1e-8 && r.value >= g - 1e-15);
        let r = mi_baseline_bound(50.0, &two()).unwrap();
        assert!(r.value < 1e-20);
    }

    #[test]
    fn vacuous_and_clamped() {
        let r = hockey_stick_bound(2.0, 3.0, 1.5, &two()).unwrap();
        assert!(r.vacuous && r.value == 0.0);
        let r = sibson_bound(f64::INFINITY, 2.0, &two()).unwrap();
        assert!(r.vacuous);
        assert!(sibson_bound(0.1, 1.0, &two()).is_err());
        assert!(sdpi_bound(0.1, 1.5, &PhiSpec::Hellinger { p: 2.0 }, &two()).is_err());
    }

    #[test]
    fn hockey_stick_closed_form_large_gamma() {
        let (e, g, z) = (0.3, 3.0, 1.5);
        let r = hockey_stick_bound(e, g, z, &two()).unwrap();
        assert!((r.value - (z - e) * (z - e) / (8.0 * g * z)).abs() < 1e-15);
        // depends on (γ, ζ) only through γ/ζ once E is rescaled by ζ
        let r2 = hockey_stick_bound(2.0 * e, 2.0 * g, 2.0 * z, &two()).unwrap();
        assert!((r.value - r2.value).abs() < 1e-15);
    }

    #[test]
    fn generic_phi_branches_reduce_to_closed_forms() {
        let phi = PhiSpec::Hellinger { p: 2.0 };
        let closed = hellinger_bound(0.4, 2.0, &two()).unwrap().value;
        let f = |rho: f64| phi_bound_increasing(0.4, &phi, (2.0 * rho).min(1.0), rho).unwrap();
        assert!((grid_sup(f, 0.5, 1_000_000) - closed).abs() < 1e-9);
        let phi = PhiSpec::EGammaZeta { gamma: 3.0, zeta: 1.5 };
        let closed = hockey_stick_bound(0.2, 3.0, 1.5, &two()).unwrap().value;
        let f = |rho: f64| phi_bound_increasing(0.2, &phi, (2.0 * rho).min(1.0), rho).unwrap();
        assert!((grid_sup(f, 0.5, 1_000_000) - closed).abs() < 1e-9);
        assert_eq!(phi_bound_increasing(0.0, &PhiSpec::Hellinger { p: 1.5 }, 1.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn decreasing_branch_edges() {
        let phi = PhiSpec::ExpDecreasing;
        assert_eq!(phi_bound_decreasing(0.3, &phi, 1.0, 0.4).unwrap(), 0.0);
        assert!((phi_bound_decreasing(0.0, &phi, 0.0, 0.4).unwrap() - 0.4).abs() < 1e-15);
        assert!(phi_bound_decreasing(0.0, &PhiSpec::Hellinger { p: 2.0 }, 0.0, 0.4).is_err());
        let r = phi_bound(0.1, &phi, &two()).unwrap();
        assert!(r.value > 0.0 && r.method == Method::Phi);
    }

    #[test]
    fn sdpi_monotone_in_eta() {
        let phi = PhiSpec::Hellinger { p: 2.0 };
        let mut prev = f64::INFINITY;
        for eta in [0.0, 0.25, 0.5, 1.0] {
            let v = sdpi_bound(0.8, eta, &phi, &two()).unwrap().value;
            assert!(v <= prev);
            prev = v;
        }
        let full = sdpi_bound(0.8, 1.0, &phi, &two()).unwrap().value;
        assert_eq!(full, phi_bound(0.8, &phi, &two()).unwrap().value);
        assert!((sdpi_bound(0.8, 0.0, &phi, &two()).unwrap().value - 2.0 / 27.0).abs() < 1e-15);
    }
}
