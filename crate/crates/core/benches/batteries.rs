use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schatten_geom::manifold::busemann_margin;
use schatten_geom::{par, sampling, Exponent};
use std::hint::black_box;

const SAMPLES: usize = 256;

fn triple_margin(n: usize, i: usize) -> f64 {
    let p = Exponent::new(3.0).unwrap();
    let mut rng = sampling::stream_rng(7, "bench", i as u64);
    let a = sampling::random_ppoint(&mut rng, n, 0.8, p);
    let b = sampling::random_ppoint(&mut rng, n, 0.8, p);
    let c = sampling::random_ppoint(&mut rng, n, 0.8, p);
    busemann_margin(&a, &b, &c).unwrap().margin
}

fn busemann_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("busemann_sweep");
    group.sample_size(20);
    for n in [3, 6, 10] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| black_box(par::map_indexed_sequential(SAMPLES, |i| triple_margin(n, i))))
        });
        #[cfg(feature = "rayon")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| black_box(par::map_indexed_parallel(SAMPLES, |i| triple_margin(n, i))))
        });
    }
    group.finish();
}

criterion_group!(benches, busemann_sweep);
criterion_main!(benches);
