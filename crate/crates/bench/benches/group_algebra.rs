use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use equicode::galg::ft_group;
use equicode_bench::{cyclic_algebra, random_pair};

fn multiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul_f257_cyclic");
    for m in [6u32, 8, 10, 12] {
        let o = 1usize << m;
        let alg = cyclic_algebra(257, o);
        let (a, b) = random_pair(&alg, m as u64);
        a.mul(&b).unwrap(); // build the plan outside the timing
        group.bench_with_input(BenchmarkId::new("fast", o), &o, |bench, _| bench.iter(|| black_box(&a).mul(black_box(&b))));
        if m <= 10 {
            group.bench_with_input(BenchmarkId::new("naive", o), &o, |bench, _| {
                bench.iter(|| black_box(&a).mul_naive(black_box(&b)))
            });
        }
    }
    group.finish();

    // lifted path: F_3 has no fourth roots of unity
    let alg = cyclic_algebra(3, 256);
    let (a, b) = random_pair(&alg, 1);
    a.mul(&b).unwrap();
    c.bench_function("mul_f3_z256_lifted", |bench| bench.iter(|| black_box(&a).mul(black_box(&b))));
}

fn fourier(c: &mut Criterion) {
    let alg = cyclic_algebra(257, 256);
    let omega = alg.field().root_of_unity(256).unwrap();
    let (a, _) = random_pair(&alg, 2);
    c.bench_function("ft_f257_z256", |bench| bench.iter(|| ft_group(black_box(&a), omega)));
}

criterion_group!(benches, multiplication, fourier);
criterion_main!(benches);
