//! Statistical checks of the Monte Carlo layer against closed forms.
//! Gates are 4 standard errors unless noted; seeds are fixed.

use stein_shrink::monte_carlo::estimate_mean;
use stein_shrink::*;

fn cfg(p: usize, theta: f64, seed: u64) -> ProblemConfig {
    ProblemConfig::new(p, theta, seed).unwrap()
}

#[test]
fn inverse_moment_series_matches_simulation() {
    let ctl = SeriesControl::default();
    for p in [3usize, 5, 10, 20] {
        for lambda in [0.0f64, 1.0, 25.0, 625.0] {
            let config = cfg(p, lambda.sqrt(), 1000 + p as u64);
            let est = estimate_mean(&config, 1_000_000, SamplingPath::Reduced, |z| {
                Ok(1.0 / z.norm_sq())
            })
            .unwrap();
            let series = inv_noncentral_chisq_mean(p, lambda, ctl).unwrap();
            assert!(
                est.within(series, 4.0),
                "p = {p}, λ = {lambda}: series {series}, simulated {est:?} (z = {:.2})",
                est.z_score(series)
            );
        }
    }
}

#[test]
fn norm_sq_concentrates_at_mean() {
    let (p, theta, n) = (100, 5.0, 100_000);
    let est = estimate_mean(&cfg(p, theta, 4), n, SamplingPath::Reduced, |z| {
        Ok(z.norm_sq())
    })
    .unwrap();
    let target = norm_sq_mean(p, theta);
    let sd = ((2.0 * p as f64 + 4.0 * theta * theta) / n as f64).sqrt();
    assert!((est.mean - target).abs() <= 4.0 * sd, "{est:?}");
}

#[test]
fn output_independent_of_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let c = cfg(7, 3.0, 99);
            (
                estimate_delta_mc(&c, 4.0, 300_000).unwrap(),
                estimate_risk_mc(&c, EstimatorSpec::Ngo, 100_000).unwrap(),
                estimate_exceedance_prob(&c, 100_000).unwrap(),
                simulate_cloud(&c, 50_000).unwrap(),
            )
        })
    };
    let one = run(1);
    for threads in [2, 5] {
        let other = run(threads);
        assert_eq!(one.0.mean.to_bits(), other.0.mean.to_bits());
        assert_eq!(one.0.stderr.to_bits(), other.0.stderr.to_bits());
        assert_eq!(one.1.mean.to_bits(), other.1.mean.to_bits());
        assert_eq!(one.2.mean.to_bits(), other.2.mean.to_bits());
        assert_eq!(one.3, other.3);
    }
}

#[test]
fn reduced_and_full_sampling_agree() {
    for (p, theta, spec) in [
        (3, 0.0, EstimatorSpec::shrink(1.0)),
        (5, 2.0, EstimatorSpec::shrink(3.0)),
        (12, 4.0, EstimatorSpec::Ngo),
        (6, 1.0, EstimatorSpec::ShrinkCa { c: 4.0, a: 2.0 }),
    ] {
        let n = 200_000;
        let reduced =
            estimate_risk_mc_with(&cfg(p, theta, 1), spec, n, SamplingPath::Reduced).unwrap();
        let full = estimate_risk_mc_with(&cfg(p, theta, 2), spec, n, SamplingPath::Full).unwrap();
        let joint = reduced.stderr.hypot(full.stderr);
        assert!(
            (reduced.mean - full.mean).abs() <= 4.0 * joint,
            "p = {p}, ϑ = {theta}, {spec}: {reduced:?} vs {full:?}"
        );
    }
}

// E[1/‖X‖⁴] is infinite for p ≤ 4 at θ = 0, where sample standard errors are
// not comparable; those cells are left out.
#[test]
fn paired_difference_beats_unpaired() {
    let n = 200_000;
    for (p, theta, c) in [
        (5, 0.0, 3.0),
        (5, 2.0, 3.0),
        (10, 5.0, 8.0),
        (20, 25.0, 18.0),
    ] {
        let paired = estimate_delta_mc(&cfg(p, theta, 10), c, n).unwrap();
        let base = estimate_risk_mc(&cfg(p, theta, 11), EstimatorSpec::Identity, n).unwrap();
        let shrunk = estimate_risk_mc(&cfg(p, theta, 12), EstimatorSpec::shrink(c), n).unwrap();
        let unpaired = base.stderr.hypot(shrunk.stderr);
        assert!(
            paired.stderr < unpaired,
            "p = {p}: {} vs {unpaired}",
            paired.stderr
        );
    }
}

#[test]
fn risk_examples() {
    let n = 1_000_000;
    let est = estimate_risk_mc(&cfg(3, 0.0, 5), EstimatorSpec::shrink(1.0), n).unwrap();
    assert!(est.within(2.0, 4.0), "{est:?}");
    let est = estimate_risk_mc(&cfg(8, 1.5, 5), EstimatorSpec::Identity, n).unwrap();
    assert!(est.within(8.0, 4.0), "{est:?}");
    let est = estimate_risk_mc(&cfg(8, 1.5, 6), EstimatorSpec::shrink(12.0), n).unwrap();
    assert!(est.within(8.0, 4.0), "{est:?}");
}

#[test]
fn delta_matches_exact_at_large_norm() {
    let exact = risk_delta_exact(20, 25.0, 18.0, SeriesControl::default()).unwrap();
    let est = estimate_delta_mc(&cfg(20, 25.0, 8), 18.0, 1_000_000).unwrap();
    assert!(est.within(exact, 4.0), "exact {exact}, {est:?}");
}

#[test]
fn cloud_matches_model_moments() {
    let cloud = simulate_cloud(&cfg(20, 25.0, 7), 2000).unwrap();
    let n = cloud.points.len() as f64;
    let mean_x1 = cloud.points.iter().map(|z| z.x1()).sum::<f64>() / n;
    let mean_r2 = cloud.points.iter().map(|z| z.r() * z.r()).sum::<f64>() / n;
    assert!((mean_x1 - 25.0).abs() <= 4.0 / n.sqrt());
    assert!((mean_r2 - 19.0).abs() <= 4.0 * 38f64.sqrt() / n.sqrt());
    assert!(cloud.points.iter().all(|z| z.r() >= 0.0));
}

#[test]
fn exceedance_examples() {
    let far = estimate_exceedance_prob(&cfg(20, 1e4, 3), 1_000_000).unwrap();
    assert!(far.within(0.5, 4.0), "{far:?}");
    let near = estimate_exceedance_prob(&cfg(20, 1.0, 3), 1_000_000).unwrap();
    assert!(near.mean > 0.99, "{near:?}");
}
