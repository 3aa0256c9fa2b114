//! Divergences between two finite distributions.
//!
//! Mass of `p` where `q` vanishes is priced by `lim φ(t)/t`, so KL, χ² and
//! Hellinger come back as `+inf` there rather than as an error.

use super::distribution::DiscreteDistribution;
use super::phi::{check_gamma_zeta, PhiSpec};
use crate::error::{Error, Result};
use crate::numeric::logsumexp;

fn same_len(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {} outcomes", p.len(), q.len())));
    }
    Ok(())
}

/// `Σ q φ(p/q)` over raw weight vectors.
pub fn f_divergence_weights(p: &[f64], q: &[f64], phi: &PhiSpec) -> Result<f64> {
    same_len(p, q)?;
    let slope = phi.slope_at_infinity();
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if b > 0.0 {
            total += b * phi.eval(a / b);
        } else if a > 0.0 {
            if slope.is_infinite() {
                return Ok(f64::INFINITY);
            }
            total += a * slope;
        }
    }
    Ok(total)
}

pub(crate) fn renyi_weights(p: &[f64], q: &[f64], alpha: f64) -> Result<f64> {
    check_renyi_order(alpha)?;
    same_len(p, q)?;
    let mut logs = Vec::with_capacity(p.len());
    for (&a, &b) in p.iter().zip(q) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            if alpha > 1.0 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        logs.push(alpha * a.ln() + (1.0 - alpha) * b.ln());
    }
    let d = logsumexp(&logs) / (alpha - 1.0);
    Ok(if d.is_nan() { f64::INFINITY } else { d.max(0.0) })
}

pub(crate) fn check_renyi_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha.is_nan() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if alpha == 1.0 {
        return Err(Error::AlphaOne);
    }
    Ok(())
}

pub(crate) fn kl_weights(p: &[f64], q: &[f64]) -> Result<f64> {
    same_len(p, q)?;
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += a * (a / b).ln();
    }
    Ok(total.max(0.0))
}

pub(crate) fn chi_square_weights(p: &[f64], q: &[f64]) -> Result<f64> {
    f_divergence_weights(p, q, &PhiSpec::ChiSquare)
}

pub(crate) fn hellinger_weights(p: &[f64], q: &[f64], order: f64) -> Result<f64> {
    let phi = PhiSpec::hellinger(order)?;
    Ok(f_divergence_weights(p, q, &phi)?.max(0.0))
}

pub(crate) fn e_gamma_zeta_weights(p: &[f64], q: &[f64], gamma: f64, zeta: f64) -> Result<f64> {
    check_gamma_zeta(gamma, zeta)?;
    same_len(p, q)?;
    let hinge: f64 = p.iter().zip(q).map(|(&a, &b)| (zeta * a - gamma * b).max(0.0)).sum();
    Ok(hinge - (zeta - gamma).max(0.0))
}

/// Rényi divergence `D_α(p‖q)` for `α > 0`, `α ≠ 1`.
pub fn renyi_divergence(p: &DiscreteDistribution, q: &DiscreteDistribution, alpha: f64) -> Result<f64> {
    renyi_weights(p.weights(), q.weights(), alpha)
}

pub fn kl_divergence(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    kl_weights(p.weights(), q.weights())
}

pub fn chi_square(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    chi_square_weights(p.weights(), q.weights())
}

/// Hellinger divergence of order `p_exp > 1`.
pub fn hellinger_p(p: &DiscreteDistribution, q: &DiscreteDistribution, p_exp: f64) -> Result<f64> {
    hellinger_weights(p.weights(), q.weights(), p_exp)
}

/// `E_{γ,ζ}(p‖q) = Σ max(0, ζp - γq) - max(0, ζ - γ)`.
pub fn e_gamma_zeta_pair(p: &DiscreteDistribution, q: &DiscreteDistribution, gamma: f64, zeta: f64) -> Result<f64> {
    e_gamma_zeta_weights(p.weights(), q.weights(), gamma, zeta)
}

pub fn f_divergence(p: &DiscreteDistribution, q: &DiscreteDistribution, phi: &PhiSpec) -> Result<f64> {
    f_divergence_weights(p.weights(), q.weights(), phi)
}

pub fn total_variation(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    same_len(p.weights(), q.weights())?;
    Ok(0.5 * p.weights().iter().zip(q.weights()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(w: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(w.to_vec()).unwrap()
    }

    #[test]
    fn renyi_examples() {
        let u = d(&[0.5, 0.5]);
        assert_eq!(renyi_divergence(&u, &u, 2.0).unwrap(), 0.0);
        let delta = d(&[1.0, 0.0]);
        assert!((renyi_divergence(&delta, &u, 6.0).unwrap() - 2f64.ln()).abs() < 1e-14);
        let v = renyi_divergence(&d(&[0.8, 0.2]), &u, 6.0).unwrap();
        let direct = (2f64.powi(5) * (0.8f64.powi(6) + 0.2f64.powi(6))).ln() / 5.0;
        assert!((v - direct).abs() < 1e-14);
        assert!((v - 0.425_43).abs() < 1e-5);
        assert_eq!(renyi_divergence(&u, &delta, 2.0).unwrap(), f64::INFINITY);
        assert!(renyi_divergence(&u, &delta, 0.5).unwrap().is_finite());
        assert_eq!(renyi_divergence(&u, &u, 1.0), Err(Error::AlphaOne));
        assert_eq!(renyi_divergence(&u, &u, -1.0), Err(Error::NonPositiveAlpha(-1.0)));
    }

    #[test]
    fn f_divergence_examples() {
        let u = d(&[0.5, 0.5]);
        let delta = d(&[1.0, 0.0]);
        assert_eq!(kl_divergence(&u, &u).unwrap(), 0.0);
        assert_eq!(chi_square(&u, &u).unwrap(), 0.0);
        assert_eq!(hellinger_p(&u, &u, 1.7).unwrap(), 0.0);
        assert!((chi_square(&delta, &u).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(kl_divergence(&u, &delta).unwrap(), f64::INFINITY);
        assert_eq!(chi_square(&u, &delta).unwrap(), f64::INFINITY);
        assert!(hellinger_p(&u, &u, 1.0).is_err());
    }

    #[test]
    fn hockey_stick_prices_missing_support_at_zeta() {
        let u = d(&[0.5, 0.5]);
        let delta = d(&[1.0, 0.0]);
        let direct = e_gamma_zeta_pair(&u, &delta, 1.0, 2.0).unwrap();
        let generic = f_divergence(&u, &delta, &PhiSpec::EGammaZeta { gamma: 1.0, zeta: 2.0 }).unwrap();
        assert!((direct - generic).abs() < 1e-15);
        assert!((total_variation(&u, &delta).unwrap() - e_gamma_zeta_pair(&u, &delta, 1.0, 1.0).unwrap()).abs() < 1e-15);
    }
}
