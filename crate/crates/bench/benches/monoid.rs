use baxter_bench::{random_word, rng};
use baxter_core::repr::represent;
use baxter_core::{canonical, p_baxt, sharp_word, Tropical};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical");
    for len in [16usize, 64, 256, 1024] {
        let w = random_word(&mut rng(len as u64), 6, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| b.iter(|| canonical(black_box(w))));
    }
    group.finish();
}

fn multiply_and_sharp(c: &mut Criterion) {
    let mut r = rng(11);
    let u = canonical(&random_word(&mut r, 6, 64));
    let v = canonical(&random_word(&mut r, 6, 64));
    c.bench_function("multiply_64x64", |b| b.iter(|| black_box(&u).multiply(black_box(&v)).unwrap()));
    c.bench_function("sharp_64", |b| b.iter(|| black_box(&u).sharp()));
    let w = random_word(&mut r, 6, 256);
    c.bench_function("sharp_word_256", |b| b.iter(|| sharp_word(black_box(&w))));
}

fn trees(c: &mut Criterion) {
    let w = random_word(&mut rng(5), 8, 256);
    c.bench_function("twin_trees_256", |b| b.iter(|| p_baxt(black_box(&w))));
}

fn representation(c: &mut Criterion) {
    let mut group = c.benchmark_group("represent");
    for rank in [2u8, 3, 4] {
        let w = random_word(&mut rng(rank as u64), rank, 32);
        group.bench_with_input(BenchmarkId::from_parameter(rank), &w, |b, w| {
            b.iter(|| represent::<Tropical>(black_box(w)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, canonical_form, multiply_and_sharp, trees, representation);
criterion_main!(benches);
