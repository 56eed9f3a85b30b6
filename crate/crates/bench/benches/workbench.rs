use criterion::{criterion_group, criterion_main, Criterion};
use nadiv_core::constructions::{self, canonical, GcdParams};
use nadiv_core::{classify, division, lie};

fn bench_multiply(c: &mut Criterion) {
    let o = canonical("O").unwrap();
    let x = o.basis_element(3) + 0.5 * o.basis_element(6);
    let y = o.basis_element(1) - 2.0 * o.basis_element(7);
    c.bench_function("octonion_multiply", |b| b.iter(|| o.mul(&x, &y).unwrap()));
}

fn bench_identity_check(c: &mut Criterion) {
    let m = constructions::mutation(&canonical("O").unwrap(), 0.8);
    c.bench_function("nc_jordan_check_dim8", |b| {
        b.iter(|| m.check_identity(nadiv_core::Identity::NcJordan, 25, 42).unwrap())
    });
}

fn bench_derivation_basis(c: &mut Criterion) {
    let o = canonical("O").unwrap();
    c.bench_function("derivation_basis_octonions", |b| b.iter(|| lie::derivation_basis(&o)));
}

fn bench_division_probe(c: &mut Criterion) {
    let e = constructions::gcd_extension(
        &canonical("H").unwrap(),
        GcdParams::classical(-1.0, 1.0).unwrap(),
    )
    .unwrap();
    c.bench_function("zero_divisor_probe_500", |b| {
        b.iter(|| division::zero_divisor_search(&e, 500, 42).unwrap())
    });
}

fn bench_canonical_reduction(c: &mut Criterion) {
    let o = canonical("O").unwrap();
    let mut group = c.benchmark_group("reduction");
    group.sample_size(10);
    group.bench_function("canonical_table1_reduction_octonions", |b| {
        b.iter(|| classify::canonical_table1_reduction(&o, 42).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_multiply,
    bench_identity_check,
    bench_derivation_basis,
    bench_division_probe,
    bench_canonical_reduction
);
criterion_main!(benches);
