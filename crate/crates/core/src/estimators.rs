//! Spherically symmetric estimators `τ(‖X‖²)·X`.
//!
//! * `Identity`: the usual estimator, `τ = 1`.
//! * `ShrinkC`: `τ = 1 − C/‖X‖²`; `C = p − 2` is James–Stein.
//! * `ShrinkCa`: `τ = 1 − C/(a + ‖X‖²)`, the regularised variant.
//! * `Ngo`: the naive geometrically optimal estimator, `τ = 1 − (p − 1)/‖X‖²`.
//!
//! Factors are not truncated at zero, so over-shrinkage past the origin is
//! representable.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{FullVector, ZPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorSpec {
    Identity,
    ShrinkC { c: f64 },
    ShrinkCa { c: f64, a: f64 },
    Ngo,
}

impl EstimatorSpec {
    pub fn shrink(c: f64) -> Self {
        EstimatorSpec::ShrinkC { c }
    }

    pub fn shrink_regularised(c: f64, a: f64) -> Result<Self> {
        if !(a >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "shrink:C={c},a={a} (a must be >= 0)"
            )));
        }
        Ok(EstimatorSpec::ShrinkCa { c, a })
    }

    /// The amount `s = 1 − τ` removed from the observation.
    ///
    /// Computed directly rather than as `1 − τ` so that `C = 0` and the
    /// identity give exactly zero.
    pub fn shrinkage(&self, norm_sq: f64, p: usize) -> Result<f64> {
        if !(norm_sq >= 0.0) {
            return Err(Error::Domain(format!(
                "squared norm must be non-negative, got {norm_sq}"
            )));
        }
        match *self {
            EstimatorSpec::Identity => Ok(0.0),
            EstimatorSpec::ShrinkC { c } => {
                if norm_sq == 0.0 {
                    return Err(Error::UndefinedAtOrigin);
                }
                Ok(c / norm_sq)
            }
            EstimatorSpec::ShrinkCa { c, a } => {
                if !(a >= 0.0) {
                    return Err(Error::InvalidSpec(self.to_string()));
                }
                let denom = a + norm_sq;
                if denom == 0.0 {
                    return Err(Error::UndefinedAtOrigin);
                }
                Ok(c / denom)
            }
            EstimatorSpec::Ngo => {
                if norm_sq == 0.0 {
                    return Err(Error::UndefinedAtOrigin);
                }
                Ok((p as f64 - 1.0) / norm_sq)
            }
        }
    }

    /// The scalar `τ` multiplying the observation.
    pub fn shrink_factor(&self, norm_sq: f64, p: usize) -> Result<f64> {
        match self {
            EstimatorSpec::Identity => self.shrinkage(norm_sq, p).map(|_| 1.0),
            _ => self.shrinkage(norm_sq, p).map(|s| 1.0 - s),
        }
    }

    pub fn apply(&self, x: &FullVector, p: usize) -> Result<FullVector> {
        let factor = self.shrink_factor(x.norm_sq(), p)?;
        Ok(x.scaled(factor))
    }

    /// Applies the estimator in the reduced plane. The result is a plain
    /// 2-vector since its second coordinate may be negative.
    pub fn apply_z(&self, z: ZPoint, p: usize) -> Result<[f64; 2]> {
        self.apply_planar(z.to_array(), p)
    }

    pub fn apply_planar(&self, v: [f64; 2], p: usize) -> Result<[f64; 2]> {
        let factor = self.shrink_factor(v[0] * v[0] + v[1] * v[1], p)?;
        Ok([v[0] * factor, v[1] * factor])
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorSpec::Identity => f.write_str("identity"),
            EstimatorSpec::ShrinkC { c } => write!(f, "shrink:C={c}"),
            EstimatorSpec::ShrinkCa { c, a } => write!(f, "shrink:C={c},a={a}"),
            EstimatorSpec::Ngo => f.write_str("ngo"),
        }
    }
}

fn parse_real(s: &str) -> Option<f64> {
    if s.is_empty() || s.trim() != s {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

impl FromStr for EstimatorSpec {
    type Err = Error;

    /// Accepts exactly `identity`, `ngo`, `shrink:C=<real>` and
    /// `shrink:C=<real>,a=<real>`.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidSpec(s.to_string());
        match s {
            "identity" => return Ok(EstimatorSpec::Identity),
            "ngo" => return Ok(EstimatorSpec::Ngo),
            _ => {}
        }
        let body = s.strip_prefix("shrink:C=").ok_or_else(invalid)?;
        match body.split_once(",a=") {
            None => parse_real(body)
                .map(EstimatorSpec::shrink)
                .ok_or_else(invalid),
            Some((c, a)) => {
                let c = parse_real(c).ok_or_else(invalid)?;
                let a = parse_real(a).ok_or_else(invalid)?;
                EstimatorSpec::shrink_regularised(c, a)
            }
        }
    }
}
