use std::hint::black_box;

use blob_core::{enumerate_bn, phi, regular_basis, Tower, Word, DEFAULT_PRIME, DEFAULT_SEED};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn compose(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose");
    for n in [4, 6, 8] {
        let all = enumerate_bn(n);
        let (a, b) = (&all[all.len() / 3], &all[2 * all.len() / 3]);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| black_box(a).compose_tally(black_box(b)).unwrap())
        });
    }
    g.finish();
}

fn phi_words(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi_regular_basis");
    for n in [3, 4, 5] {
        let words: Vec<Word> = regular_basis(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &words, |bench, ws| {
            bench.iter(|| {
                for w in ws {
                    black_box(phi(w).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_bn");
    for n in [4, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| enumerate_bn(black_box(n)).len())
        });
    }
    g.finish();
}

fn ideal_closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("ideal_closure");
    g.sample_size(10);
    for n in [3, 4, 5] {
        let tower = Tower::new(n, DEFAULT_PRIME, DEFAULT_SEED).unwrap();
        let alg = tower.space().at(tower.points()[0]);
        let seed = Word::parse(n, "e").unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &seed, |bench, w| {
            bench.iter(|| alg.ideal_of(w).unwrap().rank())
        });
    }
    g.finish();
}

criterion_group!(benches, compose, phi_words, enumerate, ideal_closure);
criterion_main!(benches);
