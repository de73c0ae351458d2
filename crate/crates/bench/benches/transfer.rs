use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ladderrel::exact::{q, Rational};
use ladderrel::genfunc::gf_from_transfer;
use ladderrel::graphs::{uniform_spec, Family};
use ladderrel::transfer::{reliability, reliability_polynomial};

fn families() -> [Family; 3] {
    [Family::K4Ladder, Family::K3Cylinder { f_zero: true }, Family::K3Cylinder { f_zero: false }]
}

fn point_values(c: &mut Criterion) {
    let mut g = c.benchmark_group("reliability_at_point");
    for f in families() {
        let spec = uniform_spec(f, 200, &q(2, 3), &q(9, 10), f.default_destination()).unwrap();
        g.bench_with_input(BenchmarkId::new(f.short_name(), 200), &spec, |b, s| b.iter(|| reliability(black_box(s)).unwrap()));
    }
    g.finish();
}

fn polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("reliability_polynomial");
    g.sample_size(10);
    for n in [10, 40, 100] {
        g.bench_with_input(BenchmarkId::new("k4", n), &n, |b, &n| {
            b.iter(|| reliability_polynomial(Family::K4Ladder, n, &q(1, 1), Family::K4Ladder.default_destination()).unwrap())
        });
    }
    g.finish();
}

fn generating_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("gf_from_transfer");
    g.sample_size(10);
    for f in families() {
        let mut k = 0u64;
        g.bench_function(f.short_name(), |b| {
            b.iter(|| {
                k += 1;
                let rho = Rational::from((k, k + 1));
                gf_from_transfer(f, &rho, None).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, point_values, polynomials, generating_functions);
criterion_main!(benches);
