use criterion::{criterion_group, criterion_main, Criterion};

use aqecc_core::css::{asymmetric_bch_ldpc, asymmetric_eg_ldpc};
use aqecc_core::{cyclic_eg_root_set, eg_ldpc_type1};

fn bench_constructions(c: &mut Criterion) {
    c.bench_function("eg_ldpc_255_175", |b| {
        b.iter(|| eg_ldpc_type1(2, 1, 4, 2, true).unwrap())
    });
    c.bench_function("bch_ldpc_255_159", |b| {
        b.iter(|| asymmetric_bch_ldpc(2, 1, 4, 2, 5).unwrap())
    });
    c.bench_function("eg_eg_32_10", |b| {
        b.iter(|| asymmetric_eg_ldpc(5, 4, 3, 1, 2).unwrap())
    });
    c.bench_function("root_set_n255", |b| {
        b.iter(|| cyclic_eg_root_set(2, 1, 4, 2).unwrap())
    });
}

criterion_group!(benches, bench_constructions);
criterion_main!(benches);
