use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ladderrel::exact::q;
use ladderrel::graphs::Family;
use ladderrel::zeros::critical::critical_rho_exact;
use ladderrel::zeros::locus::isolated_zeros;
use ladderrel::zeros::{locus_symbolic, zero_scatter, LocusKind};

fn scatters(c: &mut Criterion) {
    let mut g = c.benchmark_group("zero_scatter");
    g.sample_size(10);
    for n in [25, 50] {
        g.bench_with_input(BenchmarkId::new("k4", n), &n, |b, &n| b.iter(|| zero_scatter(Family::K4Ladder, n, &q(1, 1), None).unwrap()));
        g.bench_with_input(BenchmarkId::new("k3", n), &n, |b, &n| {
            b.iter(|| zero_scatter(Family::K3Cylinder { f_zero: false }, n, &q(1, 2), None).unwrap())
        });
    }
    g.finish();
}

fn loci(c: &mut Criterion) {
    let mut g = c.benchmark_group("loci");
    g.sample_size(10);
    g.bench_function("k4_isolated_zeros", |b| b.iter(|| isolated_zeros(Family::K4Ladder, &q(3, 10), 256).unwrap()));
    let iso = locus_symbolic(Family::K4Ladder, LocusKind::Isolated).unwrap();
    let opp = locus_symbolic(Family::K4Ladder, LocusKind::Opposite).unwrap();
    g.bench_function("k4_critical_exact", |b| b.iter(|| critical_rho_exact(&iso, &opp).unwrap()));
    g.finish();
}

criterion_group!(benches, scatters, loci);
criterion_main!(benches);
