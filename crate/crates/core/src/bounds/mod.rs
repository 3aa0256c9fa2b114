//! Risk lower bounds and their optimization over `ρ` and measure parameters.

mod optimize;
mod rho;
mod small_ball;
mod theorems;

pub use optimize::{optimize_bound, ParamGrid, REFINE_TOL};
pub use rho::{maximize_rho, RhoObjective};
pub use small_ball::{BallFn, SmallBallFn};
pub use theorems::{
    hellinger_bound, hellinger_bound_from_moment, hockey_stick_bound, mi_baseline_bound, ml_bound, phi_bound,
    phi_bound_decreasing, phi_bound_increasing, sdpi_bound, sibson_bound, BoundResult, MeasureParams, Method,
};
