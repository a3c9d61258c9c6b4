use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use jacquet_bench::rank_deficient;
use jacquet_core::exactla::kernel;
use jacquet_core::{
    assemble_les, cohomology, dual_verma, n_finite_dual, verma, Direction, OrlikStrauchSpec,
    OsFamily, PipelineOptions, SmoothCharacter,
};

fn bench_kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel");
    for n in [8, 16, 32] {
        let m = rank_deficient(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| kernel(black_box(m)))
        });
    }
    g.finish();
}

fn bench_cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology");
    for k in [2i64, 8, 16] {
        let t = (k as usize) + 16;
        let v = n_finite_dual(&verma(-k, t).unwrap());
        let d = n_finite_dual(&dual_verma(-k, t).unwrap());
        g.bench_with_input(BenchmarkId::new("verma_dual_nbar", k), &v, |b, m| {
            b.iter(|| cohomology(black_box(m), Direction::NBar).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("dualverma_dual_n", k), &d, |b, m| {
            b.iter(|| cohomology(black_box(m), Direction::N).unwrap())
        });
    }
    g.finish();
}

fn bench_assemble(c: &mut Criterion) {
    let mut g = c.benchmark_group("assemble_les");
    let psi = SmoothCharacter::new("psi", 1, jacquet_core::q(3), false, "eta").unwrap();
    for family in [OsFamily::Verma, OsFamily::DualVerma, OsFamily::Simple] {
        for k in [0i64, 8] {
            let spec = OrlikStrauchSpec::new(family, k, psi.clone()).unwrap();
            g.bench_with_input(BenchmarkId::new(family.name(), k), &spec, |b, s| {
                b.iter(|| assemble_les(black_box(s), &PipelineOptions::default()).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bench_kernel, bench_cohomology, bench_assemble);
criterion_main!(benches);
