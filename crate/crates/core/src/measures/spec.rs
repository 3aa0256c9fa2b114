use super::distribution::DiscreteJoint;
use super::divergence::{check_renyi_order, chi_square_weights};
use super::information::*;
use super::phi::check_gamma_zeta;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A choice of dependence measure together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DivergenceSpec {
    Renyi { alpha: f64 },
    SibsonMI { alpha: f64 },
    MaxLeakage,
    HellingerP { p: f64 },
    ChiSquare,
    Kl,
    MutualInformation,
    EGammaZeta { gamma: f64, zeta: f64 },
}

impl DivergenceSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Renyi { alpha } => check_renyi_order(alpha),
            Self::SibsonMI { alpha } if !(alpha > 0.0) => Err(Error::NonPositiveAlpha(alpha)),
            Self::SibsonMI { alpha } if alpha <= 1.0 => Err(Error::AlphaAtMostOne(alpha)),
            Self::HellingerP { p } if !(p > 1.0) => Err(Error::OrderAtMostOne(p)),
            Self::EGammaZeta { gamma, zeta } => check_gamma_zeta(gamma, zeta),
            _ => Ok(()),
        }
    }

    /// Evaluates the measure between `j` and the product of its marginals
    /// (Sibson and leakage use their own definitions).
    pub fn evaluate(&self, j: &DiscreteJoint) -> Result<f64> {
        self.validate()?;
        match *self {
            Self::Renyi { alpha } => renyi_dependence(j, alpha),
            Self::SibsonMI { alpha } => sibson_mi_discrete(j, alpha),
            Self::MaxLeakage => maximal_leakage_discrete(j),
            Self::HellingerP { p } => hellinger_dependence(j, p),
            Self::ChiSquare => chi_square_weights(j.mass(), &j.product_mass()),
            Self::Kl => kl_dependence(j),
            Self::MutualInformation => Ok(mutual_information_discrete(j)),
            Self::EGammaZeta { gamma, zeta } => e_gamma_zeta_discrete(j, gamma, zeta),
        }
    }
}
