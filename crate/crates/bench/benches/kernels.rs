use std::hint::black_box;

use bec_polar::construction::rank;
use bec_polar::orders::leq_pointwise;
use bec_polar::polynomials::{nonneg_on_01, to_path_counts};
use bec_polar::synthesis::{synth_all, synth_poly};
use bec_polar::{Criterion, Monomial};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion as Bench};

fn mono(u: u64, m: usize) -> Monomial {
    Monomial::from_int(u, m).unwrap()
}

fn synthesis(c: &mut Bench) {
    let mut g = c.benchmark_group("synth_all");
    g.sample_size(10);
    for m in [6, 7, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| synth_all(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn squaring(c: &mut Bench) {
    let mut g = c.benchmark_group("square");
    for m in [6, 8] {
        let z = synth_poly(mono((1 << m) / 3, m));
        g.bench_with_input(BenchmarkId::new("kronecker", m), &z, |b, z| {
            b.iter(|| black_box(z).square())
        });
        g.bench_with_input(BenchmarkId::new("schoolbook", m), &z, |b, z| {
            b.iter(|| black_box(z).square_schoolbook())
        });
    }
    g.finish();
}

fn sign_analysis(c: &mut Bench) {
    let t = synth_all(5).unwrap();
    let mut g = c.benchmark_group("sign");
    // Crossing pair: the fast path cannot decide it.
    let crossing = t.get(mono(16, 5)) - t.get(mono(3, 5));
    g.bench_function("nonneg_on_01/crossing", |b| {
        b.iter(|| nonneg_on_01(black_box(&crossing)))
    });
    let ordered = t.get(mono(24, 5)) - t.get(mono(3, 5));
    g.bench_function("nonneg_on_01/ordered", |b| {
        b.iter(|| nonneg_on_01(black_box(&ordered)))
    });
    g.bench_function("leq_pointwise", |b| {
        b.iter(|| leq_pointwise(mono(12, 5), mono(17, 5), &t).unwrap())
    });
    g.bench_function("to_path_counts", |b| {
        b.iter(|| to_path_counts(black_box(t.get(mono(21, 5))), 32).unwrap())
    });
    g.finish();
}

fn ranking(c: &mut Bench) {
    let t = synth_all(7).unwrap();
    let mut g = c.benchmark_group("rank");
    g.sample_size(10);
    let criteria = [
        ("avr", Criterion::Average),
        ("p=1/2", "p=1/2".parse().unwrap()),
        ("beta=1.22", "beta=1.22".parse().unwrap()),
    ];
    for (name, crit) in &criteria {
        g.bench_with_input(BenchmarkId::new(*name, 7), crit, |b, crit| {
            b.iter(|| rank(&t, crit).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, synthesis, squaring, sign_analysis, ranking);
criterion_main!(benches);
