//! Independent ground truth: simulated risk and brute-force divergences.

mod brute;
mod mc;
mod settings;

pub use brute::{brute_force_divergence, MAX_CELLS};
pub use mc::{mc_risk, Estimator, RiskEstimate, RiskModel, TrialFn, MIN_TRIALS};
