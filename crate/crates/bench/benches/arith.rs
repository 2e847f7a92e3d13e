use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use modp_satake_bench::random_matrix;
use modp_satake_core::ffield::FieldSpec;
use modp_satake_core::padic::{canonical_vertex, GMatrix, PScalar};

fn field_ops(c: &mut Criterion) {
    let k = FieldSpec::new(5, 2).unwrap();
    let a = k.from_index(17);
    let b = k.from_index(9);
    c.bench_function("f25_mul", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("f25_inv", |bn| bn.iter(|| black_box(&a).inv()));
    let k7 = FieldSpec::prime(7).unwrap();
    let m = random_matrix(&k7, 24, 1);
    c.bench_function("rank_24x24_f7", |bn| bn.iter(|| black_box(&m).rank()));
    let m = random_matrix(&k, 12, 2);
    c.bench_function("kernel_12x12_f25", |bn| bn.iter(|| black_box(&m).kernel()));
}

fn padic_ops(c: &mut Criterion) {
    let p = 5;
    let g = GMatrix::new(p, PScalar::fraction(p, 7, 2), PScalar::from_int(p, 3), PScalar::from_int(p, 10), PScalar::fraction(p, 11, 1)).unwrap();
    let h = GMatrix::from_ints(p, [[2, 5], [1, 3]]);
    c.bench_function("gmatrix_mul", |bn| bn.iter(|| black_box(&g).mul(black_box(&h))));
    c.bench_function("canonical_vertex", |bn| bn.iter(|| canonical_vertex(black_box(&g))));
    c.bench_function("iwasawa", |bn| bn.iter(|| black_box(&g).iwasawa()));
}

criterion_group!(benches, field_ops, padic_ops);
criterion_main!(benches);
