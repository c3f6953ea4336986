//! Projection of the target onto the ray through a typical observation.
//!
//! O is the origin, A = (ϑ, 0) the target, B = ξ = (ϑ, √(p − 1)) a typical
//! observation and C the foot of the perpendicular from A to the line OB.
//! Triangles OAB and ACB are similar, so |BC| = |AB|²/|OB| = (p − 1)/‖ξ‖ and
//! C = (1 − (p − 1)/‖ξ‖²)·ξ, which is the NGO estimator evaluated at ξ.

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryReport {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c_point: [f64; 2],
    pub len_ab: f64,
    pub len_ob: f64,
    pub len_bc: f64,
    pub len_ac: f64,
    pub shrink_factor: f64,
}

pub fn ngo_projection(p: usize, theta_norm: f64) -> Result<GeometryReport> {
    if p < 2 {
        return domain(format!("projection requires p >= 2, got {p}"));
    }
    if !theta_norm.is_finite() || theta_norm < 0.0 {
        return domain(format!(
            "theta norm must be finite and non-negative, got {theta_norm}"
        ));
    }
    if theta_norm == 0.0 {
        return Err(Error::ProjectionDegenerate);
    }
    let pm1 = p as f64 - 1.0;
    let a = [theta_norm, 0.0];
    let b = [theta_norm, pm1.sqrt()];
    let ob_sq = theta_norm * theta_norm + pm1;
    // C = tB with t = ⟨A, B⟩/‖B‖² = ϑ²/‖ξ‖²; s = 1 − t is kept separately
    // so |BC| = s|OB| and A − C = (sϑ, −t√(p − 1)) avoid cancellation when
    // C is close to B.
    let t = theta_norm * theta_norm / ob_sq;
    let s = pm1 / ob_sq;
    let c_point = [t * b[0], t * b[1]];
    Ok(GeometryReport {
        a,
        b,
        c_point,
        len_ab: pm1.sqrt(),
        len_ob: ob_sq.sqrt(),
        len_bc: s * ob_sq.sqrt(),
        len_ac: (s * theta_norm).hypot(t * b[1]),
        shrink_factor: 1.0 - s,
    })
}
