//! The worked estimation settings.

mod bernoulli;
mod gaussian;
mod hide_seek;
mod noisy;

pub use bernoulli::{BernoulliUniformModel, Leakage};
pub use gaussian::GaussianModel;
pub use hide_seek::{HideAndSeekBounds, HideAndSeekModel, ThetaRule};
pub use noisy::NoisyBernoulliModel;
pub mod table;
