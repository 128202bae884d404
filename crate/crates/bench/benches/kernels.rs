//! Throughput of the four kernels everything else leans on: field
//! multiplication, point counting, the census walk, and spectrum
//! enumeration.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use prmc_core::extremal::hermitian_curve;
use prmc_core::poly::zero_count;
use prmc_core::{
    build_code, census, field_from_order, weight_spectrum, CensusMode, CodeKind, EnumOptions,
    Space, SpectrumMode,
};

fn field_mul(c: &mut Criterion) {
    let f = field_from_order(81).unwrap();
    let xs = f.elements();
    c.bench_function("gf81_mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = 0u32;
            for &x in &xs {
                for &y in &xs {
                    acc ^= f.mul(x, y).value() as u32;
                }
            }
            black_box(acc)
        })
    });
}

fn point_count(c: &mut Criterion) {
    let f = field_from_order(9).unwrap();
    let curve = hermitian_curve(&f).unwrap().form;
    c.bench_function("zero_count_hermitian_gf9", |b| {
        b.iter(|| black_box(zero_count(&curve, Space::Projective).unwrap()))
    });
}

fn census_walk(c: &mut Criterion) {
    let f = field_from_order(3).unwrap();
    let opts = EnumOptions { workers: 1, ..EnumOptions::default() };
    c.bench_function("census_cubics_gf3_p2", |b| {
        b.iter(|| black_box(census(&f, 3, 2, CensusMode::Exhaustive, 3, &opts).unwrap()))
    });
}

fn spectrum(c: &mut Criterion) {
    let f = field_from_order(5).unwrap();
    let code = build_code(CodeKind::Prm, &f, 2, 2).unwrap();
    let opts = EnumOptions { workers: 1, ..EnumOptions::default() };
    c.bench_function("spectrum_prm_d2_gf5", |b| {
        b.iter(|| {
            black_box(weight_spectrum(&code, SpectrumMode::ExhaustiveUpToScalar, &opts).unwrap())
        })
    });
}

criterion_group!(kernels, field_mul, point_count, census_walk, spectrum);
criterion_main!(kernels);
