use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homz_bench::{random_system, rng};
use homz_core::{gen_chain, min_unsolvable_size, minimal_core, solve, Mode};
use std::hint::black_box;

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (m, n) in [(4usize, 8usize), (8, 16), (16, 32)] {
        let s = random_system(&mut rng(m as u64), m, n, 3, 5);
        for mode in [Mode::Nontrivial, Mode::Weak] {
            group.bench_with_input(BenchmarkId::new(mode.to_string(), format!("{m}x{n}")), &s, |b, s| {
                b.iter(|| solve(black_box(s), mode))
            });
        }
    }
    for n in [8usize, 32, 64] {
        let chain = gen_chain(n, 5).unwrap();
        group.bench_with_input(BenchmarkId::new("chain", n), &chain, |b, s| {
            b.iter(|| solve(black_box(s), Mode::Nontrivial))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("compactness");
    group.sample_size(10);
    for m in [6usize, 10] {
        let s = random_system(&mut rng(100 + m as u64), m, m, 2, 3);
        group.bench_with_input(BenchmarkId::new("minimal_core", m), &s, |b, s| {
            b.iter(|| minimal_core(black_box(s), Mode::Nontrivial))
        });
        group.bench_with_input(BenchmarkId::new("min_size", m), &s, |b, s| {
            b.iter(|| min_unsolvable_size(black_box(s), Mode::Nontrivial, 20))
        });
    }
    group.finish();
}

criterion_group!(benches, solver);
criterion_main!(benches);
