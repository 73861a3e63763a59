use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use thetalab::fock::{build_phi0, fock_to_schrodinger};
use thetalab::theta::*;
use thetalab::{discriminant_group, Error, Lattice};

fn c(a: f64, b: f64) -> Complex64 {
    Complex64::new(a, b)
}

/// All integer vectors in [-b, b]^n shifted by h with majorant below r.
fn box_search(z: &GrassmannPoint, h: &[f64], b: i64, r: f64) -> Vec<Vec<f64>> {
    let n = h.len();
    let mut out = Vec::new();
    let total = (2 * b + 1).pow(n as u32);
    for idx in 0..total {
        let mut rem = idx;
        let lam: Vec<f64> = (0..n)
            .map(|i| {
                let d = rem % (2 * b + 1) - b;
                rem /= 2 * b + 1;
                h[i] + d as f64
            })
            .collect();
        if z.majorant(&lam) < r {
            out.push(lam);
        }
    }
    out
}

fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = v.drain(..).map(|x| x.iter().map(|t| (t * 8.0).round() as i64).collect()).collect();
    out.sort();
    out
}

#[test]
fn five_short_vectors_of_diag_2_m2() {
    let l = Lattice::diagonal(&[2, -2]).unwrap();
    let z = GrassmannPoint::base(&l);
    let got = sorted(enumerate(&z, &[0.0, 0.0], 4.0));
    assert_eq!(got, sorted(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]));
}

#[test]
fn enumeration_matches_box_search_on_u_plus_u() {
    let z = GrassmannPoint::from_h2(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
    // 10.5 avoids the shell of norm exactly 10, where float ties decide membership
    let got = enumerate(&z, &[0.0; 4], 10.5);
    assert_eq!(sorted(got), sorted(box_search(&z, &[0.0; 4], 6, 10.5)));
}

#[test]
fn radius_below_the_coset_minimum_gives_nothing() {
    let l = Lattice::new(vec![vec![2]]).unwrap();
    let z = GrassmannPoint::base(&l);
    // the coset 1/2 + Z has majorant minimum 1/2
    assert!(enumerate(&z, &[0.5], 0.4).is_empty());
    assert_eq!(enumerate(&z, &[0.5], 0.6).len(), 2);
}

#[test]
fn phi0_matches_direct_summation() {
    let l = Lattice::diagonal(&[2, -2]).unwrap();
    let disc = discriminant_group(&l).unwrap();
    let z = GrassmannPoint::base(&l).flow(1, 2, 0.3);
    for tau in [c(0.0, 1.0), c(0.27, 0.8)] {
        let t = theta_eval(&l, &Kernel::Phi0, tau, &z, 1e-12).unwrap();
        for (h, rep) in disc.reps_f64().iter().enumerate() {
            let mut s = Complex64::default();
            for a in -15..=15 {
                for b in -15..=15 {
                    let lam = [rep[0] + a as f64, rep[1] + b as f64];
                    let norm = 2.0 * lam[0] * lam[0] - 2.0 * lam[1] * lam[1];
                    let maj = z.majorant(&lam);
                    s += Complex64::from_polar((-PI * tau.im * maj).exp(), PI * tau.re * norm);
                }
            }
            s *= tau.im.sqrt();
            let got = t.components[h][&0];
            assert!((got - s).norm() < 1e-12, "h = {h}: {got} vs {s}");
        }
    }
}

#[test]
fn zero_vector_term_is_v_to_the_q_over_2() {
    for (p, q) in [(1, 1), (2, 2), (2, 1), (3, 0)] {
        let poly = SchwartzPoly::new(&Kernel::Phi0, p, q).unwrap();
        assert_eq!(poly.v_power(), q as f64 / 2.0);
        assert_eq!(poly.terms.len(), 1);
        assert_eq!(poly.terms[0].deg, 0);
        assert_eq!(poly.terms[0].coeff, c(1.0, 0.0));
    }
    // the Schroedinger picture of phi_0 is the constant 1
    assert_eq!(fock_to_schrodinger(&build_phi0(2, 2)), build_phi0(2, 2));
}

#[test]
fn kernel_weights_reproduce_the_printed_component_formulas() {
    // phi_0 carries v^{q/2}; psi carries v^{1 - q/2} in front of phi_0, so v^1 in total
    for (p, q) in [(2, 1), (2, 2), (3, 2), (1, 3)] {
        assert!((SchwartzPoly::new(&Kernel::Phi0, p, q).unwrap().v_power() - q as f64 / 2.0).abs() < 1e-15);
        assert!((SchwartzPoly::new(&Kernel::Psi, p, q).unwrap().v_power() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn tail_bound_covers_a_larger_radius() {
    let cases = [
        (Lattice::u_plus_u(), Kernel::Phi0),
        (Lattice::u_plus_u(), Kernel::Psi),
        (Lattice::diagonal(&[2, 2, -2]).unwrap(), Kernel::PhiKm),
        (Lattice::diagonal(&[2, 2, -4]).unwrap(), Kernel::Psi),
        (Lattice::a2(), Kernel::Phi0),
    ];
    for (l, k) in cases {
        let z = GrassmannPoint::base(&l);
        let z = if l.q > 0 { z.flow(1, l.p + 1, 0.4) } else { z };
        let tau = c(0.1, 0.9);
        let coarse = theta_eval(&l, &k, tau, &z, 1e-5).unwrap();
        let fine = theta_eval(&l, &k, tau, &z, 1e-14).unwrap();
        assert!(fine.radius > coarse.radius);
        assert!(coarse.max_diff(&fine) <= coarse.error, "{:?}: {} > {}", l.name, coarse.max_diff(&fine), coarse.error);
        assert!(coarse.error >= 0.0);
    }
}

fn t_matrix() -> DMatrix<f64> {
    let mut g = DMatrix::identity(4, 4);
    g[(0, 3)] = 1.0;
    g[(2, 1)] = -1.0;
    g
}

fn s_matrix() -> DMatrix<f64> {
    let mut g = DMatrix::zeros(4, 4);
    g[(0, 3)] = -1.0;
    g[(1, 2)] = -1.0;
    g[(2, 1)] = 1.0;
    g[(3, 0)] = 1.0;
    g
}

#[test]
fn theta_is_invariant_under_lattice_isometries() {
    let l = Lattice::u_plus_u();
    let z = GrassmannPoint::from_h2(c(0.21, 1.1), c(-0.3, 0.9)).unwrap();
    let tau = c(0.13, 1.05);
    let base = theta_eval(&l, &Kernel::Phi0, tau, &z, 1e-10).unwrap();
    for g in [t_matrix(), s_matrix()] {
        let moved = theta_eval(&l, &Kernel::Phi0, tau, &z.translate(&g), 1e-10).unwrap();
        assert!(base.max_diff(&moved) < 1e-9);
    }
}

#[test]
fn gaussian_theta_is_positive_at_u_zero() {
    for l in [Lattice::u_plus_u(), Lattice::diagonal(&[2, 2, -2]).unwrap(), Lattice::hyperbolic()] {
        let z = GrassmannPoint::base(&l).flow(1, l.p + 1, 0.2);
        for v in [0.6, 1.0, 2.5] {
            let t = theta_eval(&l, &Kernel::Phi0, c(0.0, v), &z, 1e-10).unwrap();
            let x = t.components[0][&0];
            assert!(x.im.abs() < 1e-14);
            assert!(x.re >= v.powf(l.q as f64 / 2.0));
        }
    }
}

#[test]
fn h2_points_intertwine_the_sl2_actions() {
    let mut seed = 7u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..20 {
        let z1 = c(next() - 0.5, 0.5 + next());
        let z2 = c(next() - 0.5, 0.5 + next());
        let z = GrassmannPoint::from_h2(z1, z2).unwrap();
        assert!(z.residual() < 1e-12);
        let zt = GrassmannPoint::from_h2(z1 + 1.0, z2).unwrap();
        let zs = GrassmannPoint::from_h2(-z1.inv(), z2).unwrap();
        assert!((z.translate(&t_matrix()).majorant_matrix() - zt.majorant_matrix()).abs().max() < 1e-9);
        assert!((z.translate(&s_matrix()).majorant_matrix() - zs.majorant_matrix()).abs().max() < 1e-9);
    }
    assert!(matches!(GrassmannPoint::from_h2(c(0.0, -1.0), c(0.0, 1.0)), Err(Error::NotInH)));
}

#[test]
fn from_group_checks_the_isometry() {
    let l = Lattice::u_plus_u();
    let id = DMatrix::identity(4, 4);
    let z = GrassmannPoint::from_group(&l, &id).unwrap();
    assert!((z.majorant_matrix() - GrassmannPoint::base(&l).majorant_matrix()).abs().max() < 1e-14);
    let mut bad = DMatrix::identity(4, 4);
    bad[(0, 0)] = 2.0;
    assert!(matches!(GrassmannPoint::from_group(&l, &bad), Err(Error::NotIsometry(_))));
}

#[test]
fn base_point_majorant_is_the_sum_of_squares() {
    let l = Lattice::diagonal(&[2, 2, -2]).unwrap();
    let z = GrassmannPoint::base(&l);
    // (x, x)_{z0} = 2 x1^2 + 2 x2^2 + 2 x3^2 in lattice coordinates
    let lam = [0.5, -1.0, 1.5];
    assert!((z.majorant(&lam) - 2.0 * (0.25 + 1.0 + 2.25)).abs() < 1e-13);
    // a hyperbolic rotation mixes coordinates 1 and 3 and stays positive definite
    let m = z.flow(1, 3, 0.7).majorant_matrix().clone();
    assert!(m[(0, 2)].abs() > 0.1);
    assert!(m.symmetric_eigenvalues().iter().all(|&e| e > 0.0));
}

#[test]
fn s_residual_at_the_fixed_point_and_rank_zero() {
    let l = Lattice::u_plus_u();
    let z = GrassmannPoint::from_h2(c(0.0, 1.0), c(0.0, 2.0)).unwrap();
    assert!(modularity_residual(&l, &Kernel::Phi0, c(0.0, 1.0), &z, Generator::S, 1e-10).unwrap() < 1e-8);
    let r = lowering_theta_check(&l, c(0.0, 1.0), &z, 1e-10).unwrap();
    assert!(r < 1e-6);
    let empty = Lattice::new(vec![]).unwrap();
    let z0 = GrassmannPoint::base(&empty);
    for g in [Generator::S, Generator::T] {
        assert_eq!(modularity_residual(&empty, &Kernel::Phi0, c(0.2, 1.1), &z0, g, 1e-10).unwrap(), 0.0);
    }
}

#[test]
fn lowering_check_needs_q_2() {
    let l = Lattice::diagonal(&[2, 2, -2]).unwrap();
    let z = GrassmannPoint::base(&l);
    assert!(matches!(lowering_theta_check(&l, c(0.0, 1.0), &z, 1e-8), Err(Error::NeedQ2(1))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn majorant_dominates_the_quadratic_form(s in -1.0f64..1.0, t in -1.0f64..1.0,
                                             lam in proptest::collection::vec(-3i32..=3, 3)) {
        let l = Lattice::diagonal(&[2, 2, -2]).unwrap();
        let z = GrassmannPoint::base(&l).flow(1, 3, s).flow(2, 3, t);
        let x: Vec<f64> = lam.iter().map(|&v| v as f64).collect();
        let norm = l.pair_f64(&x, &x);
        let maj = z.majorant(&x);
        prop_assert!(maj + 1e-9 >= norm.abs());
        // (x, x)_z = (x, x) + 4 |q(x_z)|
        prop_assert!((maj - norm - 4.0 * z.neg_norm(&x)).abs() < 1e-9 * (1.0 + maj));
    }

    #[test]
    fn enumeration_is_complete_on_random_points(s in -0.8f64..0.8, t in -0.8f64..0.8, r in 1.0f64..12.0) {
        let l = Lattice::diagonal(&[2, 2, -2]).unwrap();
        let z = GrassmannPoint::base(&l).flow(1, 3, s).flow(2, 3, t);
        for h in [[0.0, 0.0, 0.0], [0.5, 0.0, 0.5]] {
            prop_assert_eq!(sorted(enumerate(&z, &h, r)), sorted(box_search(&z, &h, 7, r)));
        }
    }
}
