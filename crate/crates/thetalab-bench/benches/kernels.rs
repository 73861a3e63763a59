use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use std::hint::black_box;
use thetalab::checks::j_input;
use thetalab::fock::verify_identity;
use thetalab::lift::lift_phi0;
use thetalab::theta::theta_eval;
use thetalab::{GrassmannPoint, Kernel, Lattice, LiftOptions};

fn theta(c: &mut Criterion) {
    let l = Lattice::u_plus_u();
    let z = GrassmannPoint::from_h2(Complex64::new(0.13, 1.3), Complex64::new(-0.21, 0.87)).unwrap();
    let tau = Complex64::new(0.1, 0.9);
    for (name, k) in [("phi0", Kernel::Phi0), ("phikm", Kernel::PhiKm), ("psi", Kernel::Psi)] {
        c.bench_function(&format!("theta_eval U+U {name}"), |b| b.iter(|| theta_eval(&l, &k, black_box(tau), &z, 1e-10).unwrap()));
    }
}

fn lift(c: &mut Criterion) {
    let l = Lattice::u_plus_u();
    let f = j_input(false, 30).unwrap();
    let z = GrassmannPoint::from_h2(Complex64::new(0.13, 1.3), Complex64::new(-0.21, 0.87)).unwrap();
    let opts = LiftOptions::default();
    let mut g = c.benchmark_group("lift");
    g.sample_size(10);
    g.bench_function("lift_phi0 j-744", |b| b.iter(|| lift_phi0(&l, &f, black_box(&z), &opts).unwrap()));
    g.finish();
}

fn fock(c: &mut Criterion) {
    let mut g = c.benchmark_group("fock");
    g.sample_size(10);
    for (name, p, q) in [("kmpsi", 3, 2), ("ddc", 3, 2), ("psiformel", 4, 3)] {
        g.bench_function(format!("{name} ({p},{q})"), |b| b.iter(|| verify_identity(name, black_box(p), q).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, theta, lift, fock);
criterion_main!(benches);
