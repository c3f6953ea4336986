//! Stein shrinkage estimators for the mean of a multivariate normal.
//!
//! The crate evaluates the risk of the shrinkage family
//! `δ_C(X) = (1 − C/‖X‖²)X` exactly, through the noncentral chi-square
//! inverse moment, and checks it by seeded Monte Carlo in the reduced
//! two-coordinate form `Z = (X₁, R)`. It also carries the two-point
//! conditional model and the projection geometry behind the naive
//! geometrically optimal constant `C = p − 1`.
//!
//! The observation is `X ~ N(θ, I_p)` throughout; the variance is fixed at 1.

// Range checks are written negated so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditional;
pub mod error;
pub mod estimators;
pub mod exact_risk;
pub mod geometry;
pub mod model;
pub mod monte_carlo;
mod numeric;
pub mod special;

pub use conditional::{
    conditional_delta_closed, conditional_losses, dominance_window, xi_points,
    ConditionalBreakdown, DominanceWindow, XiPair,
};
pub use error::{Error, Result};
pub use estimators::EstimatorSpec;
pub use exact_risk::{norm_sq_mean, risk_delta_approx, risk_delta_exact, risk_exact, RiskDelta};
pub use geometry::{ngo_projection, GeometryReport};
pub use model::{squared_error, squared_error_z, z_reduce, FullVector, ProblemConfig, ZPoint};
pub use monte_carlo::{
    estimate_delta_mc, estimate_delta_mc_spec, estimate_exceedance_prob, estimate_risk_mc,
    estimate_risk_mc_with, simulate_cloud, CloudSample, RiskEstimate, SamplingPath,
};
pub use special::{
    expected_chi_norm, expected_chi_norm_asymptotic, inv_noncentral_chisq_mean, log_gamma,
    SeriesControl,
};
