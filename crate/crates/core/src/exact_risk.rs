//! Closed-form risk of the shrinkage family under `X ~ N(θ, I_p)`.
//!
//! With `q(C) = C(p − 2) − C²/2`, the improvement of `δ_C` over `δ₀` is
//! exactly `Δ = 2 E_θ[1/‖X‖²] q(C)`. Replacing the inverse moment by
//! `1/E‖X‖² = 1/(‖θ‖² + p)` gives the large-`‖θ‖` approximation.

use crate::error::{domain, Error, Result};
use crate::estimators::EstimatorSpec;
use crate::special::{inv_noncentral_chisq_mean, SeriesControl};

/// Both routes to `Δ = R(θ, δ₀) − R(θ, δ_C)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskDelta {
    pub exact: f64,
    pub approx: f64,
    pub p: usize,
    pub theta_norm: f64,
    pub c: f64,
}

impl RiskDelta {
    pub fn compute(p: usize, theta_norm: f64, c: f64, ctl: SeriesControl) -> Result<Self> {
        Ok(Self {
            exact: risk_delta_exact(p, theta_norm, c, ctl)?,
            approx: risk_delta_approx(p, theta_norm, c),
            p,
            theta_norm,
            c,
        })
    }
}

/// `C(p − 2) − C²/2`, positive exactly on `(0, 2(p − 2))`.
pub fn shrinkage_gain(p: f64, c: f64) -> f64 {
    c * (p - 2.0) - c * c / 2.0
}

fn check_theta(theta_norm: f64) -> Result<()> {
    if !(theta_norm >= 0.0) || !theta_norm.is_finite() {
        return domain(format!(
            "theta norm must be finite and non-negative, got {theta_norm}"
        ));
    }
    Ok(())
}

pub fn risk_delta_exact(p: usize, theta_norm: f64, c: f64, ctl: SeriesControl) -> Result<f64> {
    if p <= 2 {
        return Err(Error::InverseMomentDiverges { p });
    }
    check_theta(theta_norm)?;
    let inv = inv_noncentral_chisq_mean(p, theta_norm * theta_norm, ctl)?;
    Ok(2.0 * inv * shrinkage_gain(p as f64, c))
}

pub fn risk_delta_approx(p: usize, theta_norm: f64, c: f64) -> f64 {
    2.0 / norm_sq_mean(p, theta_norm) * shrinkage_gain(p as f64, c)
}

/// `R(θ, δ)` for the estimators with a closed form. `Ngo` is reachable as
/// `ShrinkC` with `c = p − 1`.
pub fn risk_exact(
    p: usize,
    theta_norm: f64,
    spec: EstimatorSpec,
    ctl: SeriesControl,
) -> Result<f64> {
    check_theta(theta_norm)?;
    match spec {
        EstimatorSpec::Identity => Ok(p as f64),
        EstimatorSpec::ShrinkC { c } => Ok(p as f64 - risk_delta_exact(p, theta_norm, c, ctl)?),
        other => Err(Error::UnsupportedEstimator(other.to_string())),
    }
}

/// `E‖X‖² = ‖θ‖² + p`.
pub fn norm_sq_mean(p: usize, theta_norm: f64) -> f64 {
    theta_norm * theta_norm + p as f64
}
