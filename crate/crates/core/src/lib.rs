//! Lower bounds on Bayesian estimation risk from information measures.
//!
//! A bound is built from two ingredients: a dependence measure between the
//! parameter `W` and the data (Sibson's α-mutual information, maximal
//! leakage, a Hellinger or `E_{γ,ζ}` divergence, or plain mutual
//! information) and the small-ball probability of the prior. The [`models`]
//! module supplies both for the worked settings, [`bounds`] turns them into
//! risk bounds, [`sdpi`] tightens them when observations pass through a
//! noisy channel, and [`oracle`] provides Monte-Carlo ground truth.
//!
//! ```
//! use riskbounds::{bounds, models::BernoulliUniformModel};
//!
//! let coin = BernoulliUniformModel::new(10).unwrap();
//! let moment = coin.hellinger_moment(2.0).unwrap();
//! let b = bounds::hellinger_bound_from_moment(moment, 2.0, &coin.small_ball()).unwrap();
//! assert!((b.value - 2.0 / 27.0 / moment).abs() < 1e-15);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod measures;
pub mod models;
pub mod numeric;
pub mod oracle;
pub mod sdpi;

pub use bounds::{BoundResult, MeasureParams, Method, SmallBallFn};
pub use error::{Error, Result};
pub use measures::{DiscreteDistribution, DiscreteJoint, DivergenceSpec, MixedJoint, PhiSpec};
pub use sdpi::MarkovKernel;
