use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qaffine_core::characters::verify_identity;
use qaffine_core::fock::{hwv_consistency_check, omega_series};
use qaffine_core::hecke::elementary_y_normalform;
use qaffine_core::quantum::{build_Rbar, general_position_check, string_decomposition, ybe_check, YbeForm};
use qaffine_core::symfun::{macdonald_P_ordered, LinearExtension, Partition};

/// The memoized `macdonald_P` would only time a cache hit.
fn macdonald(c: &mut Criterion) {
    let mut g = c.benchmark_group("macdonald_P");
    for lam in ["2,1", "3,2,1", "4,2"] {
        let p: Partition = lam.parse().unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(lam), &p, |b, p| {
            b.iter(|| macdonald_P_ordered(black_box(p), 3, LinearExtension::DescendingLex).unwrap())
        });
    }
    g.finish();
}

fn normal_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_form");
    g.sample_size(10);
    for (m, n) in [(1, 3), (2, 4)] {
        g.bench_function(format!("L{m}_N{n}"), |b| b.iter(|| elementary_y_normalform(black_box(m), n).unwrap()));
    }
    g.finish();
}

fn quantum(c: &mut Criterion) {
    let rbar = build_Rbar(None);
    c.bench_function("ybe_rbar", |b| b.iter(|| ybe_check(black_box(&rbar), YbeForm::Standard).unwrap()));
    let sd = string_decomposition(&[2, 1, 0], 3).unwrap();
    c.bench_function("cyclic_closure_N3", |b| b.iter(|| general_position_check(black_box(&sd)).unwrap()));
}

fn characters(c: &mut Criterion) {
    c.bench_function("characters_order30", |b| b.iter(|| verify_identity(0, black_box(30), false, None).unwrap()));
}

fn fock(c: &mut Criterion) {
    let mut g = c.benchmark_group("fock");
    g.sample_size(10);
    g.bench_function("omega_N2_D6", |b| b.iter(|| omega_series(black_box(2), 6).unwrap()));
    g.bench_function("consistency_N2_w3", |b| b.iter(|| hwv_consistency_check(black_box(2), 3, 6, None).unwrap()));
    g.finish();
}

criterion_group!(benches, macdonald, normal_form, quantum, characters, fock);
criterion_main!(benches);
