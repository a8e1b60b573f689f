use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qvmf::heisenberg::axioms::{jacobi_holds, jacobi_samples};
use qvmf::par::Strategy;
use qvmf::verify::{kernel_dims_check, pair_panel, random_pairs};

const STRATEGIES: [(&str, Strategy); 2] = [("parallel", Strategy::Parallel), ("sequential", Strategy::Sequential)];

fn kernel_dims(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel_dims_to_20");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| b.iter(|| assert!(kernel_dims_check(s, 20).unwrap())));
    }
    g.finish();
}

fn cocycle(c: &mut Criterion) {
    let pairs = random_pairs(0, 8);
    let mut g = c.benchmark_group("cocycle_8_pairs_n3");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| {
                assert!(s.all(pairs.clone(), |(x, y)| {
                    qvmf::geometry::cocycle_identity_check(&x, &y, &pair_panel(&x, &y, 14), 3).unwrap()
                }))
            })
        });
    }
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let samples = jacobi_samples(0, 200, 4, 3);
    let mut g = c.benchmark_group("jacobi_200");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| assert!(s.all(samples.clone(), |x| jacobi_holds(&x))))
        });
    }
    g.finish();
}

criterion_group!(benches, kernel_dims, cocycle, jacobi);
criterion_main!(benches);
