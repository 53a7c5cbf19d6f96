use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skew_incidence::isomorphism::fingerprint;
use skew_incidence::structure::{center_enumerate, invert_elem};
use skew_incidence::{AlgebraContext, Poset, RingSpec};

fn context(n: usize, ring: &str) -> Arc<AlgebraContext<RingSpec>> {
    AlgebraContext::new(Poset::chain(n), ring.parse().unwrap())
}

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4, 8, 16] {
        let ctx = context(n, "gf:2:3:frobenius");
        let f = ctx.random_element(&mut rng).unwrap();
        let g = ctx.random_element(&mut rng).unwrap();
        group.bench_with_input(BenchmarkId::new("chain_gf8", n), &n, |b, _| b.iter(|| black_box(&f) * black_box(&g)));
    }
    group.finish();
}

fn invert(c: &mut Criterion) {
    let mut group = c.benchmark_group("invert");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [4, 8, 16] {
        let ctx = context(n, "trunc:2:3:tsq");
        let f = ctx.random_unit(&mut rng).unwrap();
        group.bench_with_input(BenchmarkId::new("chain_trunc", n), &n, |b, _| b.iter(|| invert_elem(black_box(&f)).unwrap()));
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let ctx = AlgebraContext::new(Poset::antichain(6), "zmod:6".parse::<RingSpec>().unwrap());
    c.bench_function("center_enumerate/antichain6_z6", |b| b.iter(|| center_enumerate(black_box(&ctx)).unwrap()));
    let ctx = context(3, "zmod:2");
    c.bench_function("fingerprint/chain3_z2", |b| b.iter(|| fingerprint(black_box(&ctx), 1 << 16).unwrap()));
}

criterion_group!(benches, multiply, invert, exhaustive);
criterion_main!(benches);
