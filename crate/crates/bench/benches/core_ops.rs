//! Benchmarks for the operations whose cost grows fastest: homomorphism
//! enumeration, frame coproducts (down-set lattices), Sierpinski power
//! products, and the two sobriety audit modes.

use affinet::algebra::Variety;
use affinet::catalog::{boolean, chain};
use affinet::coproduct::coproduct;
use affinet::{
    canonical_to_power, enumerate_homs, enumerate_homs_naive, is_sober_mono,
    lazy_sober_mono_audit, materialize_canonical, product_systems, sierpinski_system,
    Budget,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use std::sync::Arc;

fn hom_enumeration(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("hom-enumeration");
    for n in [3usize, 4, 5] {
        let a = chain(Variety::Frame, n);
        group.bench_with_input(BenchmarkId::new("pruned", n), &n, |b, _| {
            b.iter(|| enumerate_homs(black_box(&a), black_box(&a), &budget).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("naive", n), &n, |b, _| {
            b.iter(|| enumerate_homs_naive(black_box(&a), black_box(&a), &budget).unwrap());
        });
    }
    group.finish();
}

fn frame_coproducts(c: &mut Criterion) {
    let budget = Budget::default();
    let three = chain(Variety::Frame, 3);
    let mut group = c.benchmark_group("frame-coproduct-of-three-chains");
    for copies in [2usize, 3, 4] {
        let factors: Vec<_> = (0..copies).map(|_| Arc::clone(&three)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(copies), &copies, |b, _| {
            b.iter(|| coproduct(Variety::Frame, black_box(&factors), &budget).unwrap());
        });
    }
    group.finish();
}

fn sierpinski_powers(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("sierpinski-square");
    for (tag, base) in [
        ("frame-2", chain(Variety::Frame, 2)),
        ("frame-3", chain(Variety::Frame, 3)),
        ("cbalg-4", boolean(2)),
    ] {
        let s = sierpinski_system(&base, &budget).unwrap();
        let factors = [Arc::clone(&s), Arc::clone(&s)];
        group.bench_with_input(BenchmarkId::from_parameter(tag), &tag, |b, _| {
            b.iter(|| product_systems(black_box(&base), black_box(&factors), &budget).unwrap());
        });
    }
    group.finish();
}

fn sobriety_audits(c: &mut Criterion) {
    let budget = Budget::default();
    let base = chain(Variety::Frame, 2);
    let s = sierpinski_system(&base, &budget).unwrap();
    let canonical = canonical_to_power(&s, &s, &budget).unwrap();
    let mut group = c.benchmark_group("sober-mono-audit");
    group.bench_function("lazy", |b| {
        b.iter(|| lazy_sober_mono_audit(black_box(&canonical), &budget).unwrap());
    });
    group.bench_function("materialized", |b| {
        b.iter(|| {
            let (_, pairing) = materialize_canonical(black_box(&canonical), &budget).unwrap();
            is_sober_mono(&pairing, &budget).unwrap()
        });
    });
    group.finish();
}

criterion_group!(
    benches,
    hom_enumeration,
    frame_coproducts,
    sierpinski_powers,
    sobriety_audits
);
criterion_main!(benches);
