use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use hallforge::frobcat::{ComplexCategory, ComplexDimCap, ComplexKind};
use hallforge::hallcore::HallAlgebra;
use hallforge::quiverrep::Quiver;
use hallforge::sdh::Sdh;
use hallforge::{Caps, Exec, Field};

fn category(kind: ComplexKind, n: usize) -> ComplexCategory {
    ComplexCategory::new(kind, Quiver::linear_a(n), Field::new(2).unwrap(), Caps::default()).unwrap()
}

fn execs() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn hall_table(c: &mut Criterion) {
    let objs = category(ComplexKind::periodic(2), 1)
        .enumerate_complexes(&ComplexDimCap::per_degree(2))
        .unwrap();
    let mut group = c.benchmark_group("hall_table_z2_a1");
    group.sample_size(10);
    for (name, exec) in execs() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || {
                    let h = HallAlgebra::new(category(ComplexKind::periodic(2), 1), exec).unwrap();
                    let ids = h.register_all(&objs).unwrap();
                    let pairs: Vec<_> = ids
                        .iter()
                        .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
                        .collect();
                    (h, pairs)
                },
                |(h, pairs)| h.precompute(&pairs).unwrap(),
                BatchSize::PerIteration,
            )
        });
    }
    group.finish();
}

fn comparison(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_toen_a2");
    group.sample_size(10);
    for (name, exec) in execs() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || {
                    let s = Sdh::new(category(ComplexKind::bounded(0, 1), 2), exec).unwrap();
                    let objs = s
                        .category()
                        .enumerate_projective_free(&ComplexDimCap::total(2))
                        .unwrap();
                    let ids = s.register_stable_all(&objs).unwrap();
                    let pairs: Vec<_> = ids
                        .iter()
                        .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
                        .collect();
                    (s, pairs)
                },
                |(s, pairs)| assert!(s.compare_toen(&pairs).unwrap().passed()),
                BatchSize::PerIteration,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, hall_table, comparison);
criterion_main!(benches);
