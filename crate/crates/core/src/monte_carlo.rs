//! Seeded simulation of the reduced model and empirical risk estimates.
//!
//! Replications are split into fixed-size chunks; chunk `i` draws from
//! [`Stream::new(seed, i)`](crate::special::Stream) and reports running
//! moments, which are merged in chunk order. Output therefore depends only
//! on `(seed, n)`, never on the number of worker threads.
//!
//! By default `Z = (X₁, R)` is drawn directly (`X₁ ~ N(ϑ, 1)`,
//! `R² ~ χ²_{p−1}`), so cost does not grow with `p`. [`SamplingPath::Full`]
//! draws all `p` coordinates and reduces them instead; it exists to check
//! that both routes give the same risk.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::estimators::EstimatorSpec;
use crate::model::{squared_error_z, z_reduce, FullVector, ProblemConfig, ZPoint};
use crate::special::{sample_standard_normal, ChiSquaredSampler, Stream};

/// Replications per RNG stream.
pub const CHUNK_SIZE: usize = 16_384;

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl RiskEstimate {
    /// `|mean − target| ≤ k·stderr`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr
    }

    /// Distance from `target` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target) / self.stderr
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloudSample {
    pub points: Vec<ZPoint>,
    pub config: ProblemConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingPath {
    #[default]
    Reduced,
    Full,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64 / n as f64);
        Moments { n, mean, m2 }
    }

    fn estimate(self) -> RiskEstimate {
        let var = self.m2.max(0.0) / (self.n as f64 - 1.0);
        RiskEstimate {
            mean: self.mean + 0.0,
            stderr: (var / self.n as f64).sqrt(),
            n: self.n,
        }
    }
}

/// Draws reduced observations for one problem.
#[derive(Debug, Clone)]
struct ZSampler {
    p: usize,
    theta_norm: f64,
    chi: ChiSquaredSampler,
    path: SamplingPath,
}

impl ZSampler {
    fn new(config: &ProblemConfig, path: SamplingPath) -> Result<Self> {
        if path == SamplingPath::Full && config.p() < 2 {
            return domain("full-vector sampling requires p >= 2");
        }
        Ok(Self {
            p: config.p(),
            theta_norm: config.theta_norm(),
            chi: ChiSquaredSampler::new(config.p() as f64 - 1.0)?,
            path,
        })
    }

    fn draw(&self, stream: &mut Stream, buf: &mut Vec<f64>, axis: &FullVector) -> Result<ZPoint> {
        match self.path {
            SamplingPath::Reduced => {
                let x1 = self.theta_norm + sample_standard_normal(stream);
                let r = self.chi.sample(stream).sqrt();
                ZPoint::new(x1, r)
            }
            SamplingPath::Full => {
                buf.clear();
                buf.extend((0..self.p).map(|_| sample_standard_normal(stream)));
                buf[0] += self.theta_norm;
                let x = FullVector::new(std::mem::take(buf));
                let z = z_reduce(&x, axis);
                *buf = x.into_inner();
                z
            }
        }
    }
}

fn chunk_bounds(n: usize) -> impl IndexedParallelIterator<Item = (u64, usize)> {
    let chunks = n.div_ceil(CHUNK_SIZE);
    (0..chunks).into_par_iter().map(move |i| {
        let len = CHUNK_SIZE.min(n - i * CHUNK_SIZE);
        (i as u64, len)
    })
}

fn unit_axis(p: usize) -> FullVector {
    let mut e = vec![0.0; p.max(1)];
    e[0] = 1.0;
    FullVector::new(e)
}

/// Mean and standard error of `stat(Z)` over `n` seeded draws.
pub fn estimate_mean<F>(
    config: &ProblemConfig,
    n: usize,
    path: SamplingPath,
    stat: F,
) -> Result<RiskEstimate>
where
    F: Fn(ZPoint) -> Result<f64> + Sync,
{
    if n < 2 {
        return domain(format!("at least 2 replications required, got {n}"));
    }
    let sampler = ZSampler::new(config, path)?;
    let axis = unit_axis(config.p());
    let seed = config.seed();
    let parts: Vec<Result<Moments>> = chunk_bounds(n)
        .map(|(index, len)| {
            let mut stream = Stream::new(seed, index);
            let mut buf = Vec::with_capacity(config.p());
            let mut m = Moments::default();
            for _ in 0..len {
                let z = sampler.draw(&mut stream, &mut buf, &axis)?;
                m.push(stat(z)?);
            }
            Ok(m)
        })
        .collect();
    let mut total = Moments::default();
    for part in parts {
        total = total.merge(part?);
    }
    Ok(total.estimate())
}

fn require_p2(config: &ProblemConfig) -> Result<()> {
    if config.p() < 2 {
        return domain(format!("simulation requires p >= 2, got {}", config.p()));
    }
    Ok(())
}

/// `n` independent reduced observations.
pub fn simulate_cloud(config: &ProblemConfig, n: usize) -> Result<CloudSample> {
    require_p2(config)?;
    if n < 1 {
        return domain("cloud size must be at least 1");
    }
    let sampler = ZSampler::new(config, SamplingPath::Reduced)?;
    let axis = unit_axis(config.p());
    let seed = config.seed();
    let chunks: Vec<Result<Vec<ZPoint>>> = chunk_bounds(n)
        .map(|(index, len)| {
            let mut stream = Stream::new(seed, index);
            let mut buf = Vec::new();
            (0..len)
                .map(|_| sampler.draw(&mut stream, &mut buf, &axis))
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(n);
    for chunk in chunks {
        points.extend(chunk?);
    }
    Ok(CloudSample {
        points,
        config: *config,
    })
}

/// Empirical risk `E‖δ(Z) − (ϑ, 0)‖²`.
pub fn estimate_risk_mc(
    config: &ProblemConfig,
    spec: EstimatorSpec,
    n: usize,
) -> Result<RiskEstimate> {
    estimate_risk_mc_with(config, spec, n, SamplingPath::Reduced)
}

pub fn estimate_risk_mc_with(
    config: &ProblemConfig,
    spec: EstimatorSpec,
    n: usize,
    path: SamplingPath,
) -> Result<RiskEstimate> {
    require_p2(config)?;
    let (p, theta) = (config.p(), config.theta_norm());
    estimate_mean(config, n, path, |z| {
        Ok(squared_error_z(spec.apply_z(z, p)?, theta))
    })
}

/// Paired estimate of `R(θ, δ₀) − R(θ, spec)`: both losses are evaluated on
/// the same draw.
///
/// With `δ = (1 − s)Z` the per-draw difference is
/// `2s⟨Z, Z − θ⟩ − s²‖Z‖²`, evaluated in that form.
pub fn estimate_delta_mc_spec(
    config: &ProblemConfig,
    spec: EstimatorSpec,
    n: usize,
) -> Result<RiskEstimate> {
    require_p2(config)?;
    let (p, theta) = (config.p(), config.theta_norm());
    estimate_mean(config, n, SamplingPath::Reduced, |z| {
        let norm_sq = z.norm_sq();
        let s = spec.shrinkage(norm_sq, p)?;
        let inner = z.x1() * (z.x1() - theta) + z.r() * z.r();
        Ok(2.0 * s * inner - s * s * norm_sq)
    })
}

/// Paired estimate of `R(θ, δ₀) − R(θ, δ_C)`.
pub fn estimate_delta_mc(config: &ProblemConfig, c: f64, n: usize) -> Result<RiskEstimate> {
    estimate_delta_mc_spec(config, EstimatorSpec::shrink(c), n)
}

/// Frequency of `‖X‖ ≥ ‖θ‖`, with the binomial standard error.
pub fn estimate_exceedance_prob(config: &ProblemConfig, n: usize) -> Result<RiskEstimate> {
    if n < 2 {
        return domain(format!("at least 2 replications required, got {n}"));
    }
    let theta = config.theta_norm();
    // ‖Z‖² − ϑ² = (X₁ − ϑ)(X₁ + ϑ) + R², which keeps precision at large ϑ.
    let est = estimate_mean(config, n, SamplingPath::Reduced, |z| {
        let excess = (z.x1() - theta) * (z.x1() + theta) + z.r() * z.r();
        Ok(if excess >= 0.0 { 1.0 } else { 0.0 })
    })?;
    let prob = est.mean;
    Ok(RiskEstimate {
        mean: prob,
        stderr: (prob * (1.0 - prob) / n as f64).sqrt(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: usize, theta: f64, seed: u64) -> ProblemConfig {
        ProblemConfig::new(p, theta, seed).unwrap()
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000)
            .map(|i| ((i * 37) % 101) as f64 * 0.3 - 7.0)
            .collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert_eq!(merged.n, whole.n);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-8 * whole.m2);
    }

    #[test]
    fn cloud_basics() {
        let c = cfg(4, 2.0, 5);
        let one = simulate_cloud(&c, 1).unwrap();
        assert_eq!(one.points.len(), 1);
        assert!(one.points[0].r() >= 0.0);
        let a = simulate_cloud(&c, CHUNK_SIZE + 17).unwrap();
        let b = simulate_cloud(&c, CHUNK_SIZE + 17).unwrap();
        assert_eq!(a, b);
        assert!(simulate_cloud(&cfg(1, 2.0, 5), 10).is_err());
        assert!(simulate_cloud(&c, 0).is_err());
    }

    #[test]
    fn cloud_prefix_is_stable() {
        let c = cfg(6, 1.0, 21);
        let short = simulate_cloud(&c, 100).unwrap();
        let long = simulate_cloud(&c, 5000).unwrap();
        assert_eq!(short.points[..], long.points[..100]);
    }

    #[test]
    fn delta_zero_constant_is_exactly_zero() {
        let est = estimate_delta_mc(&cfg(5, 3.0, 1), 0.0, 10_000).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.stderr, 0.0);
        assert!(est.mean.is_sign_positive());
    }

    #[test]
    fn exceedance_at_zero_theta() {
        let est = estimate_exceedance_prob(&cfg(3, 0.0, 2), 1000).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
        let one_dim = estimate_exceedance_prob(&cfg(1, 2.0, 2), 100_000).unwrap();
        // P(|N(2,1)| ≥ 2) = Φ(0) + Φ(−4)
        assert!(one_dim.within(0.5 + 3.167e-5, 4.0));
    }

    #[test]
    fn small_n_rejected() {
        let c = cfg(3, 1.0, 0);
        assert!(estimate_risk_mc(&c, EstimatorSpec::Identity, 1).is_err());
        assert!(estimate_delta_mc(&c, 1.0, 0).is_err());
        assert!(estimate_exceedance_prob(&c, 1).is_err());
    }

    #[test]
    fn identity_risk_is_p() {
        for (p, theta) in [(2, 0.0), (5, 3.0), (12, 40.0)] {
            let est =
                estimate_risk_mc(&cfg(p, theta, 3), EstimatorSpec::Identity, 200_000).unwrap();
            assert!(est.within(p as f64, 4.0), "p = {p}: {est:?}");
        }
    }

    #[test]
    fn edge_constant_has_identity_risk() {
        let p = 6;
        let est = estimate_risk_mc(&cfg(p, 2.0, 4), EstimatorSpec::shrink(8.0), 400_000).unwrap();
        assert!(est.within(p as f64, 4.0), "{est:?}");
    }
}
