use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modp_satake_bench::{phi_pow, weight};
use modp_satake_core::ffield::FieldSpec;
use modp_satake_core::jacquet::{table1, IrreducibleLabel};
use modp_satake_core::satake::{satake_checked, Degree};
use modp_satake_core::torus::PadicCharacter;

fn satake_phi(c: &mut Criterion) {
    let mut group = c.benchmark_group("satake_phi");
    for p in [3, 5, 7] {
        let w = weight(p, 1);
        let q = phi_pow(&w, 1);
        for degree in [Degree::Zero, Degree::Top] {
            group.bench_with_input(BenchmarkId::new(format!("degree{}", degree.index()), p), &p, |b, _| {
                b.iter(|| satake_checked(degree, black_box(&q), &w).unwrap())
            });
        }
    }
    group.finish();
}

fn satake_powers(c: &mut Criterion) {
    let w = weight(5, 2);
    let mut group = c.benchmark_group("satake_phi_power_p5");
    group.sample_size(10);
    for n in [2, 3] {
        let q = phi_pow(&w, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| satake_checked(Degree::Zero, black_box(&q), &w).unwrap()));
    }
    group.finish();
}

fn jacquet_rows(c: &mut Criterion) {
    let k = FieldSpec::prime(5).unwrap();
    let label = IrreducibleLabel::Principal {
        chi1: PadicCharacter::new(k.from_int(2), 1).unwrap(),
        chi2: PadicCharacter::new(k.from_int(3), 0).unwrap(),
    };
    c.bench_function("table1_principal_p5", |b| b.iter(|| table1(black_box(&label)).unwrap()));
    let special = IrreducibleLabel::Special { chi: PadicCharacter::omega(&k) };
    c.bench_function("table1_special_p5", |b| b.iter(|| table1(black_box(&special)).unwrap()));
}

criterion_group!(benches, satake_phi, satake_powers, jacquet_rows);
criterion_main!(benches);
