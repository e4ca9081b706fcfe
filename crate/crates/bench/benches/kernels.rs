use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use sympert::quad::{integrate_half_line, QuadConfig};
use sympert::linalg::real_matrix;
use sympert::{c, s_matrix, weyl_m, CouplingMatrix, Model, ModelSpec};
use sympert_bench::upper_half_plane_grid;

fn solve(cr: &mut Criterion) {
    let model = Model::build(&ModelSpec::OneDimDeltaDeltaPrime).unwrap();
    cr.bench_function("solve_r/one_dim", |b| b.iter(|| black_box(&model).solve_r(1e-10).unwrap()));
}

fn weyl(cr: &mut Criterion) {
    let model = Model::build(&ModelSpec::PAdicVladimirov { p: 3, alpha: 1.5 }).unwrap();
    let r = model.solve_r(1e-10).unwrap().unique().cloned().unwrap();
    let spectral = model.spectral().unwrap();
    let grid = upper_half_plane_grid(16);
    cr.bench_function("weyl_m/padic_16pts", |b| {
        b.iter(|| {
            for &z in &grid {
                black_box(weyl_m(spectral, &r, z).unwrap());
            }
        })
    });
}

fn quadrature(cr: &mut Criterion) {
    let cfg = QuadConfig::default();
    cr.bench_function("quad/lorentzian_half_line", |b| {
        b.iter(|| integrate_half_line(|y| c(y.powf(-0.3) / (1.0 + y * y), 0.0), black_box(cfg)).unwrap())
    });
}

fn scattering(cr: &mut Criterion) {
    let b = CouplingMatrix::new(real_matrix(&[&[-1.0, 0.2, 0.0], &[0.2, -0.5, 0.1], &[0.0, 0.1, -2.0]])).unwrap();
    let grid = upper_half_plane_grid(64);
    cr.bench_function("s_matrix/3x3_64pts", |bn| {
        bn.iter(|| {
            for &z in &grid {
                black_box(s_matrix(&b, z).unwrap());
            }
        })
    });
}

criterion_group!(benches, solve, weyl, quadrature, scattering);
criterion_main!(benches);
