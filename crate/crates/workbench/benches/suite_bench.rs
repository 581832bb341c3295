//! Criterion benches comparing the data-parallel suite runner against the
//! forced-sequential mode (with the `parallel` feature disabled, both arms
//! run sequentially and should coincide).

use criterion::{criterion_group, criterion_main, Criterion};
use conewb::registry;
use conewb::suite::run_paper_suite;
use conewb_core::connection::{characteristic_solve, levi_civita, StructTensor};
use conewb_core::cone::{build_cone, induced_spin7, intermediate_connection_g2};
use conewb_core::parallel::ExecMode;

fn bench_paper_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("paper_suite");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let report = run_paper_suite(ExecMode::Auto);
            assert!(report.all_pass());
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let report = run_paper_suite(ExecMode::Sequential);
            assert!(report.all_pass());
        })
    });
    group.finish();
}

fn bench_cone_parallelism(c: &mut Criterion) {
    // The ∇̄Φ residual on the symbolic-a Spin(7) cone: the directional
    // derivative map is the data-parallel inner loop.
    let fix = registry::sasaki3_canonical();
    let g2 = fix.g2.as_ref().unwrap().1.clone();
    let tc = fix.tc.clone().unwrap();
    let a = fix.model.scalar("a");
    let cone = build_cone(&fix.model, &a).unwrap();
    let s7 = induced_spin7(&cone, &g2, &tc);
    let (_t, conn) = intermediate_connection_g2(&cone, &g2, &tc);
    let mut group = c.benchmark_group("nabla_phi4");
    group.sample_size(10);
    group.bench_function("covariant_derivative_form", |b| {
        b.iter(|| {
            let resid = conn.covariant_derivative_form(s7.phi4());
            assert!(resid.iter().all(|r| r.is_zero()));
        })
    });
    group.finish();
}

fn bench_characteristic_solver(c: &mut Criterion) {
    let fix = registry::sasaki3_canonical();
    let g2 = fix.g2.as_ref().unwrap().1.clone();
    let mut group = c.benchmark_group("characteristic_solve");
    group.sample_size(10);
    group.bench_function("g2_dim7", |b| {
        b.iter(|| {
            let solve = characteristic_solve(
                &fix.model,
                &[StructTensor::Form(g2.phi().clone())],
            );
            assert!(matches!(solve, conewb_core::connection::CharSolve::Unique(_)));
        })
    });
    let heis = registry::heisenberg();
    let lc = levi_civita(&heis.model);
    let _ = lc;
    group.bench_function("contact_dim5", |b| {
        let s = heis.contact("F2").unwrap();
        b.iter(|| {
            let solve = s.characteristic_solve();
            assert!(matches!(solve, conewb_core::connection::CharSolve::Unique(_)));
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_paper_suite,
    bench_cone_parallelism,
    bench_characteristic_solver
);
criterion_main!(benches);
