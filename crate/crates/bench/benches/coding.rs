use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use equicode::blackbox::{dense_solve, random_matrix, wiedemann_solve, DEFAULT_MAX_ATTEMPTS};
use equicode::decode::basic_decode;
use equicode::Field;
use equicode_bench::{noisy_word, rng, rs_decoder};

fn decoding(c: &mut Criterion) {
    let dd = rs_decoder();
    let clean = noisy_word(&dd, 0, 1);
    let noisy = noisy_word(&dd, 3, 1);
    c.bench_function("rs12_encode", |b| {
        let m = dd.code().interpolate(&clean).unwrap();
        b.iter(|| dd.code().encode(black_box(&m)))
    });
    c.bench_function("rs12_decode_clean", |b| b.iter(|| basic_decode(&dd, black_box(&clean), 0, DEFAULT_MAX_ATTEMPTS)));
    c.bench_function("rs12_decode_3_errors", |b| b.iter(|| basic_decode(&dd, black_box(&noisy), 0, DEFAULT_MAX_ATTEMPTS)));
}

fn solvers(c: &mut Criterion) {
    let field = Field::prime(257).unwrap();
    let mut r = rng(3);
    let a = random_matrix(&field, 40, 40, &mut r);
    let b: Vec<_> = (0..40).map(|_| field.random(&mut r)).collect();
    c.bench_function("wiedemann_40", |bench| bench.iter(|| wiedemann_solve(&a, black_box(&b), 0, DEFAULT_MAX_ATTEMPTS)));
    c.bench_function("dense_40", |bench| bench.iter(|| dense_solve(&a, black_box(&b))));
}

criterion_group!(benches, decoding, solvers);
criterion_main!(benches);
