//! Divergences and dependence measures between a joint law and the product
//! of its marginals.

mod distribution;
mod divergence;
mod gaussian;
mod information;
mod mixed;
mod phi;
mod spec;

pub use distribution::{DiscreteDistribution, DiscreteJoint, MASS_TOL};
pub use divergence::{
    chi_square, e_gamma_zeta_pair, f_divergence, f_divergence_weights, hellinger_p, kl_divergence,
    renyi_divergence, total_variation,
};
pub use gaussian::GaussianJoint;
pub use information::{
    e_gamma_zeta_discrete, hellinger_dependence, kl_dependence, maximal_leakage_discrete,
    mutual_information_discrete, renyi_dependence, renyi_event_bound, sibson_event_bound, sibson_mi_discrete,
};
pub use mixed::{Density, Likelihood, MixedJoint, QuadraturePolicy};
pub use phi::{Monotonicity, PhiSpec};
pub use spec::DivergenceSpec;

use crate::error::Result;

/// Joint laws that support the measures every model needs.
pub trait JointLaw {
    fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64>;
    fn mutual_information(&self) -> Result<f64>;
}

impl JointLaw for DiscreteJoint {
    fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        e_gamma_zeta_discrete(self, gamma, zeta)
    }
    fn mutual_information(&self) -> Result<f64> {
        Ok(mutual_information_discrete(self))
    }
}

impl JointLaw for MixedJoint {
    fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        MixedJoint::e_gamma_zeta(self, gamma, zeta)
    }
    fn mutual_information(&self) -> Result<f64> {
        MixedJoint::mutual_information(self)
    }
}

impl JointLaw for GaussianJoint {
    fn e_gamma_zeta(&self, gamma: f64, zeta: f64) -> Result<f64> {
        GaussianJoint::e_gamma_zeta(self, gamma, zeta)
    }
    fn mutual_information(&self) -> Result<f64> {
        GaussianJoint::mutual_information(self)
    }
}

/// `E_{γ,ζ}` between a joint and the product of its marginals.
pub fn e_gamma_zeta<J: JointLaw>(j: &J, gamma: f64, zeta: f64) -> Result<f64> {
    j.e_gamma_zeta(gamma, zeta)
}

pub fn mutual_information<J: JointLaw>(j: &J) -> Result<f64> {
    j.mutual_information()
}
