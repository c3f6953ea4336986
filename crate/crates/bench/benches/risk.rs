use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stein_shrink::{
    conditional_delta_closed, conditional_losses, estimate_delta_mc, inv_noncentral_chisq_mean,
    log_gamma, SeriesControl,
};
use stein_shrink_bench::{config, GRID};

fn special(c: &mut Criterion) {
    c.bench_function("log_gamma/137.5", |b| {
        b.iter(|| log_gamma(black_box(137.5)))
    });
    let mut group = c.benchmark_group("inverse_moment");
    let ctl = SeriesControl::default();
    for lambda in [0.0, 25.0, 625.0, 1e4, 1e6] {
        group.bench_with_input(
            BenchmarkId::from_parameter(lambda),
            &lambda,
            |b, &lambda| b.iter(|| inv_noncentral_chisq_mean(black_box(20), lambda, ctl)),
        );
    }
    group.finish();
}

fn conditional(c: &mut Criterion) {
    c.bench_function("conditional/losses", |b| {
        b.iter(|| conditional_losses(black_box(20.0), black_box(25.0), black_box(18.0)))
    });
    c.bench_function("conditional/closed", |b| {
        b.iter(|| conditional_delta_closed(black_box(20.0), black_box(25.0), black_box(18.0)))
    });
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("paired_delta_100k");
    group.sample_size(20);
    for (p, theta) in GRID {
        let cfg = config(p, theta);
        let c_opt = (p - 2) as f64;
        group.bench_with_input(BenchmarkId::new(format!("p{p}"), theta), &cfg, |b, cfg| {
            b.iter(|| estimate_delta_mc(cfg, c_opt, 100_000))
        });
    }
    group.finish();
}

criterion_group!(benches, special, conditional, monte_carlo);
criterion_main!(benches);
