use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use momentlab_bench::{hilbert, unit_hankel};
use momentlab_core::exactmat::{det_exact, det_series, entrywise_poly, is_psd, UniPoly};
use momentlab_core::scalar::qi;
use momentlab_core::tnlab::{appendix_table, is_tn_bruteforce};
use momentlab_core::transforms::{jain_draws, jain_psd, Transform};
use momentlab_core::verify::{run_preserver, Family, PreserverRun};
use momentlab_core::Mode;
use std::hint::black_box;

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_exact");
    for n in [4, 6, 8] {
        let a = hilbert(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| det_exact(black_box(a)).unwrap()));
    }
    g.finish();
}

fn psd(c: &mut Criterion) {
    let a = unit_hankel(5);
    let f = a.to_f64();
    c.bench_function("psd_exact_5", |b| b.iter(|| is_psd(black_box(&a), 0.0).unwrap()));
    c.bench_function("psd_float_5", |b| b.iter(|| is_psd(black_box(&f), 1e-10).unwrap()));
    let draws = jain_draws(4, 50, 0);
    c.bench_function("jain_50_draws", |b| b.iter(|| draws.iter().all(|xs| jain_psd(xs, 1.5, 1e-10).unwrap())));
}

fn series(c: &mut Criterion) {
    let a = unit_hankel(4);
    let f = UniPoly::new(vec![qi(1), qi(1), qi(1), qi(1), qi(1)]);
    let m = entrywise_poly(&f, &a);
    c.bench_function("det_series_4", |b| b.iter(|| det_series(black_box(&m), 6).unwrap()));
    c.bench_function("appendix_table", |b| b.iter(appendix_table));
}

fn tn(c: &mut Criterion) {
    let a = unit_hankel(5);
    c.bench_function("tn_bruteforce_5", |b| b.iter(|| is_tn_bruteforce(black_box(&a)).unwrap()));
}

fn preserver(c: &mut Criterion) {
    let t = Transform::poly(vec![qi(1), qi(1), qi(1)]);
    let mut g = c.benchmark_group("run_preserver");
    g.sample_size(10);
    for mode in [Mode::Exact, Mode::Float] {
        let run = PreserverRun::new(Family::MeasuresUnit, 4, 100).mode(mode);
        g.bench_function(format!("{mode:?}"), |b| b.iter(|| run_preserver(&t, &run).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, determinants, psd, series, tn, preserver);
criterion_main!(benches);
