//! Problem configuration, the reduction of an observation to its
//! two-coordinate form, and squared-error loss in both coordinate systems.
//!
//! For `X ~ N(θ, I_p)` only two statistics matter to a spherically symmetric
//! estimator: the coordinate `X₁` of `X` along `θ/‖θ‖` and the length `R` of
//! the residual orthogonal to it. Then `X₁ ~ N(‖θ‖, 1)`, `R² ~ χ²_{p-1}`,
//! the two are independent, and squared distances are preserved, so every
//! risk computation can be carried out in the plane against `(‖θ‖, 0)`.

use crate::error::{domain, Error, Result};

/// One estimation problem: dimension, mean magnitude and sampling seed.
///
/// The mean is taken to be the canonical representative `θ = (ϑ, 0, …, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConfig {
    p: usize,
    theta_norm: f64,
    seed: u64,
}

impl ProblemConfig {
    pub fn new(p: usize, theta_norm: f64, seed: u64) -> Result<Self> {
        if p < 1 {
            return domain("dimension p must be at least 1");
        }
        if !(theta_norm >= 0.0 && theta_norm.is_finite()) {
            return domain(format!(
                "theta norm must be finite and non-negative, got {theta_norm}"
            ));
        }
        Ok(Self {
            p,
            theta_norm,
            seed,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn theta_norm(&self) -> f64 {
        self.theta_norm
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    /// `θ = (ϑ, 0, …, 0)` as a full vector.
    pub fn theta(&self) -> FullVector {
        let mut coords = vec![0.0; self.p];
        coords[0] = self.theta_norm;
        FullVector::new(coords)
    }
}

/// Reduced observation `(X₁, R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPoint {
    x1: f64,
    r: f64,
}

impl ZPoint {
    pub fn new(x1: f64, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return domain(format!("residual length must be non-negative, got {r}"));
        }
        Ok(Self { x1, r })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.r * self.r
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x1, self.r]
    }
}

/// A point in `R^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullVector {
    coords: Vec<f64>,
}

impl FullVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|v| v * v).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.coords.iter().map(|v| v * factor).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.coords
    }
}

impl From<Vec<f64>> for FullVector {
    fn from(coords: Vec<f64>) -> Self {
        Self::new(coords)
    }
}

fn check_lengths(a: &FullVector, b: &FullVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Reduces `x` to `(x₁, r)` relative to the direction of `theta`.
///
/// `x₁` is the scalar projection of `x` onto `theta/‖theta‖` and `r` is the
/// length of what remains.
pub fn z_reduce(x: &FullVector, theta: &FullVector) -> Result<ZPoint> {
    check_lengths(x, theta)?;
    if x.len() < 2 {
        return domain("z_reduce requires p >= 2");
    }
    let theta_norm = theta.norm_sq().sqrt();
    if theta_norm == 0.0 {
        return Err(Error::DirectionUndefined);
    }
    let x1 = x
        .coords
        .iter()
        .zip(&theta.coords)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        / theta_norm;
    let r_sq: f64 = x
        .coords
        .iter()
        .zip(&theta.coords)
        .map(|(a, b)| {
            let d = a - x1 * b / theta_norm;
            d * d
        })
        .sum();
    ZPoint::new(x1, r_sq.sqrt())
}

/// `Σ (dᵢ − θᵢ)²`.
pub fn squared_error(estimate: &FullVector, theta: &FullVector) -> Result<f64> {
    check_lengths(estimate, theta)?;
    Ok(estimate
        .coords
        .iter()
        .zip(&theta.coords)
        .map(|(d, t)| (d - t) * (d - t))
        .sum())
}

/// Loss of a planar estimate against `(ϑ, 0)`.
///
/// Takes a plain 2-vector because an applied estimator may land below the
/// axis when its factor is negative.
pub fn squared_error_z(estimate: [f64; 2], theta_norm: f64) -> f64 {
    let d = estimate[0] - theta_norm;
    d * d + estimate[1] * estimate[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(v: &[f64]) -> FullVector {
        FullVector::new(v.to_vec())
    }

    #[test]
    fn reduce_axis_aligned() {
        let z = z_reduce(&fv(&[3.0, 4.0, 0.0]), &fv(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(z.x1(), 3.0);
        assert_eq!(z.r(), 4.0);
    }

    #[test]
    fn reduce_on_theta_ray() {
        let z = z_reduce(&fv(&[2.0, 2.0]), &fv(&[2.0, 2.0])).unwrap();
        assert!((z.x1() - 8f64.sqrt()).abs() < 1e-15);
        assert!(z.r().abs() < 1e-15);
    }

    #[test]
    fn reduce_off_axis_theta() {
        let z = z_reduce(&fv(&[1.0, 2.0, 2.0]), &fv(&[0.0, 3.0, 0.0])).unwrap();
        assert!((z.x1() - 2.0).abs() < 1e-15);
        assert!((z.r() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reduce_errors() {
        assert_eq!(
            z_reduce(&fv(&[1.0, 2.0]), &fv(&[0.0, 0.0])),
            Err(Error::DirectionUndefined)
        );
        assert!(matches!(
            z_reduce(&fv(&[1.0, 2.0]), &fv(&[1.0, 0.0, 0.0])),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn squared_error_examples() {
        assert_eq!(
            squared_error(&fv(&[1.0, -2.0]), &fv(&[1.0, -2.0])).unwrap(),
            0.0
        );
        assert_eq!(
            squared_error(&fv(&[1.0, 1.0]), &fv(&[0.0, 0.0])).unwrap(),
            2.0
        );
        assert_eq!(
            squared_error(&fv(&[1.0, 2.0, 3.0]), &fv(&[0.0, 0.0, 0.0])).unwrap(),
            14.0
        );
        assert!(squared_error(&fv(&[1.0]), &fv(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn squared_error_z_examples() {
        assert_eq!(squared_error_z([7.5, 0.0], 7.5), 0.0);
        let v = squared_error_z([25.0, 19f64.sqrt()], 25.0);
        assert!((v - 19.0).abs() < 1e-13);
        assert_eq!(squared_error_z([2.0, 2.0], 3.0), 5.0);
    }

    #[test]
    fn config_validation() {
        assert!(ProblemConfig::new(0, 1.0, 0).is_err());
        assert!(ProblemConfig::new(3, -1.0, 0).is_err());
        assert!(ProblemConfig::new(3, f64::NAN, 0).is_err());
        let c = ProblemConfig::new(4, 2.5, 9).unwrap();
        assert_eq!(c.theta().coords(), &[2.5, 0.0, 0.0, 0.0]);
        assert!(ZPoint::new(1.0, -0.1).is_err());
    }
}
