//! Shared inputs for the criterion benches.

use stein_shrink::ProblemConfig;

/// `(p, ϑ)` pairs spanning the small-norm and large-norm regimes.
pub const GRID: [(usize, f64); 4] = [(3, 0.0), (5, 1.0), (10, 5.0), (20, 25.0)];

pub fn config(p: usize, theta_norm: f64) -> ProblemConfig {
    ProblemConfig::new(p, theta_norm, 7).expect("valid bench config")
}
