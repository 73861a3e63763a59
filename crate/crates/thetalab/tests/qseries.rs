use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thetalab::fqm::{Lattice, WeilRep};
use thetalab::qseries::*;
use thetalab::numdiff::derivative;
use thetalab::special::h_function;
use thetalab::Error;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ri(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn scalar(name: &str, weight: i64, prec: i64) -> VVSeries {
    let s = classic_series(name, prec).unwrap();
    VVSeries::from_scalar(&s, ri(weight), WeilRep::trivial(24, 0).unwrap()).unwrap()
}

fn scalar_form(name: &str, weight: i64, prec: i64) -> WeakMaassForm {
    let s = classic_series(name, prec).unwrap();
    let rep = WeilRep::trivial(24, 0).unwrap().dualized();
    WeakMaassForm::weakly_holomorphic(VVSeries::from_scalar(&s, ri(weight), rep).unwrap())
}

#[test]
fn delta_expansion() {
    let d = classic_series("Delta", 7).unwrap();
    let want = [0, 1, -24, 252, -1472, 4830, -6048];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(d.coeff(n as i64), big(*w));
    }
}

#[test]
fn j_expansion() {
    let j = classic_series("j", 4).unwrap();
    assert_eq!(j.val, -1);
    assert_eq!(j.coeff(-1), big(1));
    assert_eq!(j.coeff(0), big(744));
    assert_eq!(j.coeff(1), big(196884));
    assert_eq!(j.coeff(2), big(21493760));
    assert_eq!(j.coeff(3), big(864299970));
    let j0 = classic_series("j_minus_744", 4).unwrap();
    assert_eq!(j0.coeff(0), big(0));
}

#[test]
fn quotient_expansion_by_independent_division() {
    let f = classic_series("E4sqE6_over_DeltaSq", 4).unwrap();
    let want = [1, 24, -196560, -47709536, -3688365156, -157770831888];
    for (i, w) in want.iter().enumerate() {
        assert_eq!(f.coeff(i as i64 - 2), big(*w));
    }
}

#[test]
fn delta_is_integral_to_200() {
    let d = classic_series("Delta", 200).unwrap();
    assert!(d.is_integral());
    assert_eq!(d.coeff(199), d.coeff(199).round());
}

#[test]
fn unknown_series_is_an_error() {
    assert!(matches!(classic_series("E8", 5), Err(Error::UnknownSeries(_))));
}

#[test]
fn pairing_delta_with_quotient_is_exactly_zero() {
    let g = scalar("Delta", 12, 5);
    let f = scalar_form("E4sqE6_over_DeltaSq", -10, 5);
    let v = pairing(&g, &f).unwrap();
    assert_eq!(v, Coef::int(0));
    assert!(v.is_exact());
}

#[test]
fn pairing_with_eisenstein_vanishes_and_prime_differs_by_constant() {
    let f = scalar_form("E4sqE6_over_DeltaSq", -10, 5);
    let e4 = classic_series("E4", 5).unwrap();
    let g12 = VVSeries::from_scalar(&e4.pow(3), ri(12), WeilRep::trivial(24, 0).unwrap()).unwrap();
    assert_eq!(pairing(&g12, &f).unwrap(), Coef::int(0));
    let a00 = f.plus[&(0, ri(0))].clone();
    let p1 = pairing_prime(&g12, &f).unwrap();
    // b(0,0) = 1 for E4^3
    assert_eq!(p1.add(&a00), Coef::int(0));
}

#[test]
fn pairing_rejects_mismatched_weights() {
    let g = scalar("E4", 4, 5);
    let f = scalar_form("E4sqE6_over_DeltaSq", -10, 5);
    assert!(matches!(pairing(&g, &f), Err(Error::Mismatch(_))));
}

#[test]
fn principal_parts() {
    let j = scalar_form("j_minus_744", 0, 5);
    let p = principal_part(&j);
    assert_eq!(p.coeffs.len(), 1);
    assert_eq!(p.get(0, ri(-1)), Coef::int(1));
    let f = scalar_form("E4sqE6_over_DeltaSq", -10, 5);
    let p = principal_part(&f);
    assert_eq!(p.coeffs.len(), 3);
    assert_eq!(p.get(0, ri(-1)), Coef::int(24));
    let d = WeakMaassForm::weakly_holomorphic(scalar("Delta", 12, 5));
    assert!(principal_part(&d).coeffs.is_empty());
}

#[test]
fn xi_of_weakly_holomorphic_is_zero() {
    assert!(xi_map(&scalar_form("j", 0, 5)).is_zero());
}

fn single_minus(n: i64, k: i64) -> WeakMaassForm {
    let mut minus = BTreeMap::new();
    minus.insert((0, ri(n)), Coef::int(1));
    WeakMaassForm {
        weight: ri(k),
        rep: WeilRep::trivial(24, 0).unwrap(),
        plus: BTreeMap::new(),
        minus,
        class: FormClass::HGeneral,
        prec: ri(2),
    }
}

#[test]
fn xi_single_coefficients() {
    let b = xi_map(&single_minus(-1, -10));
    let want = -(4.0 * PI).powi(11);
    let got = b.get(0, ri(1)).to_c64();
    assert!((got.re - want).abs() < 1e-12 * want.abs() && got.im.abs() < 1e-12 * want.abs());
    let b0 = xi_map(&single_minus(0, -10));
    assert_eq!(b0.get(0, ri(0)), Coef::int(11));
    assert_eq!(b0.weight, ri(12));
    assert!(b0.rep.dual);
}

/// xi f = v^{k-2} conj(L_k f) with L_k = -i v^2 (d/du + i d/dv), by extrapolated differences.
fn xi_by_differences(f: &WeakMaassForm, tau: Complex64) -> Complex64 {
    let k = f.weight_f64();
    let val = |t: Complex64| f.eval(t).unwrap().0[0];
    let du: Complex64 = derivative(|x| val(Complex64::new(x, tau.im)), tau.re, 0.02, 4);
    let dv: Complex64 = derivative(|y| val(Complex64::new(tau.re, y)), tau.im, 0.02, 4);
    let lk = -Complex64::i() * tau.im * tau.im * (du + Complex64::i() * dv);
    tau.im.powf(k - 2.0) * lk.conj()
}

#[test]
fn xi_coefficients_match_differences() {
    let mut minus = BTreeMap::new();
    minus.insert((0, ri(-1)), Coef::Float(Complex64::new(0.7, -0.2)));
    minus.insert((0, ri(-2)), Coef::Float(Complex64::new(-0.3, 0.5)));
    minus.insert((0, ri(0)), Coef::Float(Complex64::new(0.1, 0.0)));
    let mut plus = BTreeMap::new();
    plus.insert((0, ri(-1)), Coef::int(3));
    let f = WeakMaassForm {
        weight: Rational64::new(-1, 2),
        rep: WeilRep::trivial(8, 0).unwrap(),
        plus,
        minus,
        class: FormClass::HGeneral,
        prec: ri(1),
    };
    let g = xi_map(&f);
    for tau in [Complex64::new(0.1, 0.9), Complex64::new(-0.37, 1.3)] {
        let want = g.eval(tau)[0];
        let got = xi_by_differences(&f, tau);
        assert!((got - want).norm() < 1e-6 * want.norm(), "{got} vs {want}");
    }
}

#[test]
fn surjectivity_witness_and_hecke_bound() {
    let delta = scalar("Delta", 12, 40);
    let fw = WeakMaassForm::xi_preimage(&delta, BTreeMap::new()).unwrap();
    assert_eq!(fw.class, FormClass::HPlus);
    let back = xi_map(&fw);
    for (&(h, n), c) in &delta.coeffs {
        let d = back.get(h, n).to_c64() - c.to_c64();
        assert!(d.norm() <= 1e-12 * c.to_c64().norm());
    }
    // a-(n) |n|^{5} stays bounded (Hecke bound |tau(m)| <= d(m) m^{11/2})
    let worst = fw
        .minus
        .iter()
        .map(|(&(_, n), a)| a.to_c64().norm() * (-*n.numer() as f64).powf(5.0))
        .fold(0.0, f64::max);
    let scale = 1.0 / (4.0 * PI).powi(11);
    assert!(worst <= 10.0 * scale, "{worst} vs {scale}");
    let p = pairing(&delta, &fw).unwrap();
    assert_eq!(p, Coef::int(0));
}

#[test]
fn h_function_oracles() {
    // defining integral evaluated by adaptive quadrature at 40 digits
    let table = [
        (-10.0, -1.0, 9864019.145947058514327952),
        (-0.5, -0.7, 0.7557956841574385461618),
        (-1.5, -3.2, 0.8259608714897059958874),
        (0.5, -0.2, 0.8033726220533949630119),
        (-3.0, -12.0, 0.09647642237195954963082),
        (-10.0, -40.0, 52.03009064194131458555),
    ];
    for (k, w, want) in table {
        let got = h_function(k, w).unwrap();
        assert!(((got - want) / want).abs() < 1e-12, "H({k},{w}) = {got}, want {want}");
    }
}

#[test]
fn h_function_asymptotics() {
    for k in [-10.0, -2.5, 0.5] {
        let w = -400.0f64;
        let ratio = h_function(k, w).unwrap() * (2.0 * w.abs()).powf(k) * w.abs().exp();
        assert!((ratio - 1.0).abs() < 0.02, "k = {k}: {ratio}");
    }
}

fn a1_theta(tau: Complex64) -> [Complex64; 2] {
    let mut t = [Complex64::default(); 2];
    for n in -40i64..=40 {
        let x0 = (n * n) as f64;
        let x1 = (n as f64 + 0.5).powi(2);
        t[0] += (Complex64::new(0.0, 2.0 * PI * x0) * tau).exp();
        t[1] += (Complex64::new(0.0, 2.0 * PI * x1) * tau).exp();
    }
    t
}

fn theta_form() -> ScalarForm {
    ScalarForm { eta: vec![(2, 5), (1, -2), (4, -2)], level_one: vec![] }
}

#[test]
fn eta_quotient_matches_theta() {
    let f = theta_form();
    for tau in [Complex64::new(0.2, 0.9), Complex64::new(-0.4, 0.05), Complex64::new(3.3, 0.2)] {
        let a = f.eval(tau);
        let b = a1_theta(tau)[0];
        assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{a} {b}");
    }
}

#[test]
fn cosets_of_gamma0() {
    assert_eq!(gamma0_cosets(1).len(), 1);
    assert_eq!(gamma0_cosets(4).len(), 6);
    assert_eq!(gamma0_cosets(8).len(), 12);
    for m in gamma0_cosets(12) {
        assert_eq!(m[0] * m[3] - m[1] * m[2], 1);
    }
}

#[test]
fn trivial_induction_is_identity() {
    let e4 = classic_series("E4", 10).unwrap();
    let f = ScalarForm { eta: vec![], level_one: vec![(e4.clone(), 4, 1, 1)] };
    let rep = WeilRep::trivial(8, 0).unwrap();
    let out = induce_from_scalar(&f, 1, &rep, ri(0), ri(5), 0.6, 64).unwrap();
    for n in 0..5 {
        let got = out.get(0, ri(n)).to_c64();
        assert!((got.re - e4.coeff_f64(n)).abs() < 1e-7 * e4.coeff_f64(n).abs().max(1.0));
    }
}

#[test]
fn induced_theta_is_the_a1_theta_series() {
    let rep = WeilRep::new(&Lattice::new(vec![vec![2]]).unwrap(), false).unwrap();
    let out = induce_from_scalar(&theta_form(), 4, &rep, ri(0), ri(5), 0.6, 96).unwrap();
    out.validate().unwrap();
    let c = out.get(0, ri(0)).to_c64();
    assert!(c.norm() > 0.1);
    // every coefficient is c times the representation number of n
    let reps = |h: usize, n: Rational64| -> f64 {
        (-10i64..=10)
            .filter(|m| {
                let x = Rational64::from_integer(*m) + Rational64::new(h as i64, 2);
                x * x == n
            })
            .count() as f64
    };
    for h in 0..2 {
        let mut n = Rational64::new(h as i64, 4);
        while n < ri(5) {
            let got = out.get(h, n).to_c64();
            assert!((got - c * reps(h, n)).norm() < 1e-7, "h={h} n={n}: {got}");
            n += 1;
        }
    }
}

#[test]
fn induced_forms_pair_to_zero_with_cusp_forms() {
    let rep = WeilRep::new(&Lattice::new(vec![vec![2]]).unwrap(), false).unwrap();
    let theta = induce_from_scalar(&theta_form(), 4, &rep, ri(0), ri(3), 0.6, 96).unwrap();
    let mut g = VVSeries::new(Rational64::new(3, 2), rep.dualized(), ri(6));
    g.insert(0, ri(1), Coef::int(2)).unwrap();
    g.insert(1, Rational64::new(3, 4), Coef::int(-1)).unwrap();
    let p = pairing(&g, &WeakMaassForm::weakly_holomorphic(theta)).unwrap().to_c64();
    assert!(p.norm() < 1e-12);

    // theta(tau) j(4 tau) has a pole of order 4 in the e_0 component
    let j = classic_series("j", 40).unwrap();
    let f = ScalarForm { eta: vec![(2, 5), (1, -2), (4, -2)], level_one: vec![(j, 0, 4, 1)] };
    let out = induce_from_scalar(&f, 4, &rep, ri(-4), ri(1), 0.5, 256).unwrap();
    out.validate().unwrap();
    let lead = out.get(0, ri(-4)).to_c64();
    assert!(lead.norm() > 0.1);
    assert!(out.coeffs.keys().all(|&(_, n)| n >= ri(-4)));
}

#[test]
fn inconsistent_multiplier_is_reported() {
    // eta(tau)^3 does not transform with the A1 multiplier on Gamma_0(4)
    let f = ScalarForm { eta: vec![(1, 3)], level_one: vec![] };
    let rep = WeilRep::new(&Lattice::new(vec![vec![2]]).unwrap(), false).unwrap();
    let err = induce_from_scalar(&f, 4, &rep, ri(0), ri(2), 0.6, 32).unwrap_err();
    assert!(matches!(err, Error::Multiplier(r) if r > 1e-8));
}

fn small_series() -> impl Strategy<Value = QSeries> {
    (-3i64..3, proptest::collection::vec(-50i64..50, 1..8))
        .prop_map(|(val, c)| QSeries::from_ints(val, &c, val + 12))
}

fn agree(x: &QSeries, y: &QSeries) -> bool {
    let p = x.prec.min(y.prec);
    (-10..p).all(|n| x.coeff(n) == y.coeff(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert!(agree(&(&a * &b), &(&b * &a)));
        prop_assert!(agree(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
    }
}
