use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ice_crystal::crystal_graph::{check_axioms_c1_c6, generate};
use ice_crystal::ice_model::brute_force_enumerate;
use ice_crystal::partition::Partition;
use ice_crystal::stembridge::{verify_regular, CartanA};
use ice_crystal::tableau::{crystal_isomorphic, tableau_crystal};

fn shapes() -> Vec<Partition> {
    [vec![2, 1, 0], vec![3, 2, 1, 0], vec![4, 2, 1, 0]]
        .into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
}

fn bench_generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for lambda in shapes() {
        group.bench_with_input(BenchmarkId::from_parameter(&lambda), &lambda, |b, l| {
            b.iter(|| generate(l, 100_000).unwrap().node_count())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_regular");
    for lambda in shapes() {
        let crystal = generate(&lambda, 100_000).unwrap();
        let cartan = CartanA::new(lambda.num_rows() - 1);
        group.bench_with_input(BenchmarkId::from_parameter(&lambda), &crystal, |b, cr| {
            b.iter(|| verify_regular(cr.graph(), &cartan).passed())
        });
    }
    group.finish();
}

fn bench_axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_axioms");
    for lambda in shapes() {
        let crystal = generate(&lambda, 100_000).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&lambda), &crystal, |b, cr| {
            b.iter(|| check_axioms_c1_c6(cr.graph(), Some(cr)).passed())
        });
    }
    group.finish();
}

fn bench_isomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("isomorphism");
    for lambda in shapes() {
        let ice = generate(&lambda, 100_000).unwrap();
        let tab = tableau_crystal(&lambda, lambda.num_rows(), 100_000).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&lambda), &(), |b, _| {
            b.iter(|| crystal_isomorphic(ice.graph(), tab.graph()).is_ok())
        });
    }
    group.finish();
}

fn bench_brute_force(c: &mut Criterion) {
    let lambda = Partition::new(vec![2, 1, 0]).unwrap();
    c.bench_function("brute_force 2,1,0", |b| {
        b.iter(|| brute_force_enumerate(&lambda, 1 << 20).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_generate,
    bench_verify,
    bench_axioms,
    bench_isomorphism,
    bench_brute_force
);
criterion_main!(benches);
