use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use qphi::{qsum_closed, qsum_direct, theta, QBase, SumControl};
use qphi_bench::{families, ray};

fn bench_theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    for qv in [0.5, 0.9, 0.999] {
        let q = QBase::real(qv).unwrap();
        let x = Complex64::new(3.7, -1.2);
        group.bench_with_input(BenchmarkId::from_parameter(qv), &x, |b, &x| {
            b.iter(|| theta(q, black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn bench_qsum(c: &mut Criterion) {
    let lambda = Complex64::new(1.0, 1.0);
    let ctl = SumControl::new(1e-14);
    let mut group = c.benchmark_group("qsum");
    for (name, params) in families() {
        let points = ray(10, 0.5, 2.0);
        group.bench_function(BenchmarkId::new("closed", name), |b| {
            b.iter(|| {
                for &x in &points {
                    black_box(qsum_closed(&params, lambda, x).unwrap());
                }
            })
        });
        group.bench_function(BenchmarkId::new("direct", name), |b| {
            b.iter(|| {
                for &x in &points {
                    black_box(qsum_direct(&params, lambda, x, &ctl).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_theta, bench_qsum);
criterion_main!(benches);
