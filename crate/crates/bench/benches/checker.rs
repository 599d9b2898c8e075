use baxter_bench::{random_identity, rng};
use baxter_core::families::pk_qk;
use baxter_core::{brute_force_check, check, Mode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn checker_by_length(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for len in [8usize, 32, 128, 512] {
        let mut r = rng(len as u64);
        let ids: Vec<_> = (0..16).map(|_| random_identity(&mut r, 4, len)).collect();
        for rank in [3u8, 4] {
            group.bench_with_input(BenchmarkId::new(format!("n{rank}"), len), &ids, |b, ids| {
                b.iter(|| ids.iter().filter(|id| check(black_box(id), rank, Mode::Involution).unwrap().verdict).count())
            });
        }
    }
    group.finish();
}

fn family(c: &mut Criterion) {
    let mut group = c.benchmark_group("pk_qk");
    for k in [2usize, 5, 20] {
        let id = pk_qk(k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &id, |b, id| {
            b.iter(|| check(black_box(id), 4, Mode::Involution).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let id = pk_qk(2).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("pk_qk2_n3_len1", |b| b.iter(|| brute_force_check(black_box(&id), 3, 1, 10_000_000).unwrap()));
    group.finish();
}

criterion_group!(benches, checker_by_length, family, oracle);
criterion_main!(benches);
