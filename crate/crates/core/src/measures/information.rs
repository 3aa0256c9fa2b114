//! Dependence measures of a finite joint: divergences between `P_XY` and
//! `P_X P_Y`, Sibson's α-mutual information and maximal leakage.

use super::distribution::DiscreteJoint;
use super::divergence::{e_gamma_zeta_weights, hellinger_weights, kl_weights, renyi_weights};
use crate::error::{Error, Result};
use crate::numeric::{logsumexp, xlogx};

/// Sibson's `I_α(X; Y)` for `α > 1`, via
/// `α/(α-1) ln Σ_y (Σ_x P(x) P(y|x)^α)^{1/α}` in log space.
pub fn sibson_mi_discrete(j: &DiscreteJoint, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::AlphaAtMostOne(alpha));
    }
    if alpha.is_infinite() {
        return maximal_leakage_discrete(j);
    }
    let mut outer = Vec::with_capacity(j.cols());
    let mut inner = Vec::with_capacity(j.rows());
    for y in 0..j.cols() {
        inner.clear();
        for x in 0..j.rows() {
            let px = j.px()[x];
            let pxy = j.get(x, y);
            if px > 0.0 && pxy > 0.0 {
                inner.push(px.ln() + alpha * (pxy / px).ln());
            }
        }
        if !inner.is_empty() {
            outer.push(logsumexp(&inner) / alpha);
        }
    }
    Ok((alpha / (alpha - 1.0) * logsumexp(&outer)).max(0.0))
}

/// `ln Σ_y max_{x : P(x) > 0} P(y|x)`.
pub fn maximal_leakage_discrete(j: &DiscreteJoint) -> Result<f64> {
    let total: f64 = (0..j.cols())
        .map(|y| (0..j.rows()).filter_map(|x| j.conditional(x, y)).fold(0.0, f64::max))
        .sum();
    Ok(total.ln().max(0.0))
}

/// `I(X; Y) = H(X) + H(Y) - H(X, Y)`.
pub fn mutual_information_discrete(j: &DiscreteJoint) -> f64 {
    let h = |w: &[f64]| -w.iter().map(|&p| xlogx(p)).sum::<f64>();
    (h(j.px()) + h(j.py()) - h(j.mass())).max(0.0)
}

pub fn kl_dependence(j: &DiscreteJoint) -> Result<f64> {
    kl_weights(j.mass(), &j.product_mass())
}

pub fn renyi_dependence(j: &DiscreteJoint, alpha: f64) -> Result<f64> {
    renyi_weights(j.mass(), &j.product_mass(), alpha)
}

pub fn hellinger_dependence(j: &DiscreteJoint, p: f64) -> Result<f64> {
    hellinger_weights(j.mass(), &j.product_mass(), p)
}

pub fn e_gamma_zeta_discrete(j: &DiscreteJoint, gamma: f64, zeta: f64) -> Result<f64> {
    e_gamma_zeta_weights(j.mass(), &j.product_mass(), gamma, zeta)
}

/// Change of measure through Rényi divergence: an upper bound on `P_XY(E)`
/// from the product-measure probability of the same event.
pub fn renyi_event_bound(product_prob: f64, renyi: f64, alpha: f64) -> f64 {
    let s = (alpha - 1.0) / alpha;
    (product_prob.powf(s) * (s * renyi).exp()).min(1.0)
}

/// The Sibson variant, driven by the worst slice `max_y P_X(E_y)`.
pub fn sibson_event_bound(max_slice_prob: f64, sibson: f64, alpha: f64) -> f64 {
    renyi_event_bound(max_slice_prob, sibson, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::DiscreteDistribution;

    fn correlated() -> DiscreteJoint {
        DiscreteJoint::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap()
    }

    fn bsc() -> DiscreteJoint {
        DiscreteJoint::new(2, 2, vec![0.4, 0.1, 0.1, 0.4]).unwrap()
    }

    #[test]
    fn independent_joint_is_zero() {
        let a = DiscreteDistribution::new(vec![0.3, 0.7]).unwrap();
        let b = DiscreteDistribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let j = DiscreteJoint::independent(&a, &b).unwrap();
        assert!(sibson_mi_discrete(&j, 3.0).unwrap() < 1e-14);
        assert!(maximal_leakage_discrete(&j).unwrap() < 1e-14);
        assert!(mutual_information_discrete(&j) < 1e-14);
        assert!(e_gamma_zeta_discrete(&j, 1.0, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn correlated_binary_saturates_at_log_two() {
        let j = correlated();
        let ln2 = 2f64.ln();
        assert!((maximal_leakage_discrete(&j).unwrap() - ln2).abs() < 1e-15);
        assert!((mutual_information_discrete(&j) - ln2).abs() < 1e-15);
        assert!((sibson_mi_discrete(&j, 1e6).unwrap() - ln2).abs() < 1e-12);
    }

    #[test]
    fn bsc_leakage() {
        assert!((maximal_leakage_discrete(&bsc()).unwrap() - 1.6f64.ln()).abs() < 1e-15);
        assert_eq!(sibson_mi_discrete(&bsc(), 1.0), Err(Error::AlphaAtMostOne(1.0)));
    }

    #[test]
    fn identity_channel_leaks_log_k() {
        let k = 5;
        let mut m = vec![0.0; k * k];
        for i in 0..k {
            m[i * k + i] = 0.2;
        }
        let j = DiscreteJoint::new(k, k, m).unwrap();
        assert!((maximal_leakage_discrete(&j).unwrap() - (k as f64).ln()).abs() < 1e-14);
    }

    #[test]
    fn kl_route_matches_entropy_route() {
        let j = bsc();
        assert!((kl_dependence(&j).unwrap() - mutual_information_discrete(&j)).abs() < 1e-15);
    }
}
