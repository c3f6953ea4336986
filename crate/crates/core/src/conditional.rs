//! The two-point conditional model.
//!
//! Variation along the direction of `θ` is replaced by two equally likely
//! observations `ξ± = (ϑ ± 1, √(p − 1))`, while the orthogonal coordinate is
//! frozen at its typical value. Under this model the conditional risk of
//! `δ_C` splits into a parallel part `L^(1)` and an orthogonal part `L^(2)`,
//! and the improvement over `δ₀` (whose conditional risk is exactly `p`) has
//! a closed form whose sign is controlled by `C(p − 2) − C²/2`.
//!
//! The dimension is a real parameter here; nothing in this module samples.

use crate::error::{domain, Result};
use crate::exact_risk::shrinkage_gain;
use crate::numeric::DoubleDouble;

/// `ξ±` and their squared norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiPair {
    pub xi_plus: [f64; 2],
    pub xi_minus: [f64; 2],
    pub norm_sq_plus: f64,
    pub norm_sq_minus: f64,
}

/// Loss components at `ξ±` together with the conditional risks and the
/// improvement `Δ = p − R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalBreakdown {
    pub l_plus_1: f64,
    pub l_plus_2: f64,
    pub l_minus_1: f64,
    pub l_minus_2: f64,
    pub r_cond_1: f64,
    pub r_cond_2: f64,
    pub delta: f64,
}

fn check(p: f64, theta_norm: f64) -> Result<()> {
    if !(p >= 2.0) || !p.is_finite() {
        return domain(format!("two-point model requires p >= 2, got {p}"));
    }
    if !(theta_norm >= 0.0) || !theta_norm.is_finite() {
        return domain(format!(
            "theta norm must be finite and non-negative, got {theta_norm}"
        ));
    }
    Ok(())
}

pub fn xi_points(p: f64, theta_norm: f64) -> Result<XiPair> {
    check(p, theta_norm)?;
    let r = (p - 1.0).sqrt();
    let (up, down) = (theta_norm + 1.0, theta_norm - 1.0);
    Ok(XiPair {
        xi_plus: [up, r],
        xi_minus: [down, r],
        norm_sq_plus: up * up + (p - 1.0),
        norm_sq_minus: down * down + (p - 1.0),
    })
}

/// Evaluates the loss decomposition at `ξ±` term by term.
///
/// `delta` is accumulated from the per-component improvements
/// `1 − L^(1)` and `(p − 1) − L^(2)`. Near a root of `Δ` in `C` those
/// improvements are much larger than their sum, so the accumulation runs in
/// double-double arithmetic and is rounded once at the end.
pub fn conditional_losses(p: f64, theta_norm: f64, c: f64) -> Result<ConditionalBreakdown> {
    check(p, theta_norm)?;
    let one = DoubleDouble::from(1.0);
    let two = DoubleDouble::from(2.0);
    let (pp, t, cc) = (
        DoubleDouble::from(p),
        DoubleDouble::from(theta_norm),
        DoubleDouble::from(c),
    );
    let pm1 = pp - one;
    let (up, down) = (t + one, t - one);
    let s_plus = cc / (up * up + pm1);
    let s_minus = cc / (down * down + pm1);

    // Parallel coordinate: estimate minus target is ±1 − s(ϑ ± 1).
    let u = s_plus * up;
    let v = s_minus * down;
    let gain_plus_1 = u * (two - u);
    let gain_minus_1 = -(v * (two + v));
    // Orthogonal coordinate: target 0, estimate (1 − s)√(p − 1).
    let gain_2 = pm1 * (s_plus * (two - s_plus) + s_minus * (two - s_minus));
    let delta = (gain_plus_1 + gain_minus_1 + gain_2) / two;

    let sq = |x: DoubleDouble| (x * x).to_f64();
    let l_plus_1 = sq(one - u);
    let l_minus_1 = sq(one + v);
    let l_plus_2 = (pm1 * (one - s_plus) * (one - s_plus)).to_f64();
    let l_minus_2 = (pm1 * (one - s_minus) * (one - s_minus)).to_f64();

    Ok(ConditionalBreakdown {
        l_plus_1,
        l_plus_2,
        l_minus_1,
        l_minus_2,
        r_cond_1: (l_plus_1 + l_minus_1) / 2.0,
        r_cond_2: (l_plus_2 + l_minus_2) / 2.0,
        delta: delta.to_f64(),
    })
}

/// `Δ = 2/(‖ξ₊‖²‖ξ₋‖²) · [(C(p−2) − C²/2)ϑ² + (Cp − C²/2)p]`, evaluated in
/// double-double arithmetic.
pub fn conditional_delta_closed(p: f64, theta_norm: f64, c: f64) -> Result<f64> {
    check(p, theta_norm)?;
    let one = DoubleDouble::from(1.0);
    let two = DoubleDouble::from(2.0);
    let (pp, t, cc) = (
        DoubleDouble::from(p),
        DoubleDouble::from(theta_norm),
        DoubleDouble::from(c),
    );
    let half_c_sq = cc * cc / two;
    let pm1 = pp - one;
    let (up, down) = (t + one, t - one);
    let norms = (up * up + pm1) * (down * down + pm1);
    let bracket = (cc * (pp - two) - half_c_sq) * t * t + (cc * pp - half_c_sq) * pp;
    Ok((two * bracket / norms).to_f64())
}

/// The parallel cross term `Cϑ(1/‖ξ₊‖² − 1/‖ξ₋‖²)`, never positive for
/// `C ≥ 0`.
pub fn parallel_cross_term(p: f64, theta_norm: f64, c: f64) -> Result<f64> {
    let xi = xi_points(p, theta_norm)?;
    Ok(c * theta_norm * (1.0 / xi.norm_sq_plus - 1.0 / xi.norm_sq_minus))
}

/// The lower bound `2(ϑ² + p)/(‖ξ₊‖²‖ξ₋‖²) · (C(p−2) − C²/2)`, strict for
/// `ϑ > 0` and `C > 0`.
pub fn conditional_delta_lower_bound(p: f64, theta_norm: f64, c: f64) -> Result<f64> {
    let xi = xi_points(p, theta_norm)?;
    let t2 = theta_norm * theta_norm;
    Ok(2.0 * (t2 + p) / (xi.norm_sq_plus * xi.norm_sq_minus) * shrinkage_gain(p, c))
}

/// Open interval of constants for which the conditional improvement is
/// positive at every `ϑ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceWindow {
    pub lower: f64,
    pub upper: f64,
}

impl DominanceWindow {
    pub fn is_empty(&self) -> bool {
        self.upper <= self.lower
    }

    pub fn contains(&self, c: f64) -> bool {
        c > self.lower && c < self.upper
    }
}

/// `(0, 2(p − 2))`; empty for `p ≤ 2`.
pub fn dominance_window(p: f64) -> DominanceWindow {
    DominanceWindow {
        lower: 0.0,
        upper: (2.0 * (p - 2.0)).max(0.0),
    }
}
