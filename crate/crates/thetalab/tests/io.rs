use num_complex::Complex64;
use proptest::prelude::*;
use thetalab::checks::{j_input, odd_form_224};
use thetalab::io::*;
use thetalab::lift::{lift_psi, JumpReport};
use thetalab::theta::theta_eval;
use thetalab::{discriminant_group, GrassmannPoint, Kernel, Lattice, LiftOptions, LiftValue, ThetaValue};

fn again<T: serde::Serialize + for<'de> serde::Deserialize<'de>>(text: &str) -> String {
    to_json(&read_json::<T>(text).unwrap())
}

#[test]
fn forms_round_trip_bit_identically() {
    for f in [j_input(false, 12).unwrap(), j_input(true, 5).unwrap(), odd_form_224(6).unwrap()] {
        let text = to_json(&form_to_json(&f));
        let back = form_from_json(&read_json(&text).unwrap()).unwrap();
        assert_eq!(to_json(&form_to_json(&back)), text);
        assert_eq!(back.plus.len(), f.plus.len());
    }
}

#[test]
fn lattice_and_discriminant_reports_round_trip() {
    for l in [Lattice::a2(), Lattice::diagonal(&[2, 2, -4]).unwrap().named("d224")] {
        let text = to_json(&lattice_to_json(&l));
        let back = lattice_from_json(&read_json(&text).unwrap()).unwrap();
        assert_eq!(back.gram, l.gram);
        assert_eq!(back.name, l.name);
        let rep = to_json(&disc_report(&discriminant_group(&l).unwrap()));
        assert_eq!(again::<DiscReport>(&rep), rep);
    }
    let d = disc_report(&discriminant_group(&Lattice::diagonal(&[2, 2, -4]).unwrap()).unwrap());
    assert_eq!(d.order, 16);
    assert_eq!(d.q_table.len(), 16);
}

#[test]
fn evaluation_outputs_round_trip() {
    let l = Lattice::u_plus_u();
    let z = GrassmannPoint::from_h2(Complex64::new(0.1, 1.2), Complex64::new(0.3, 0.9)).unwrap();
    let t = to_json(&theta_eval(&l, &Kernel::Psi, Complex64::new(0.2, 1.1), &z, 1e-8).unwrap());
    assert_eq!(again::<ThetaValue>(&t), t);
    let v = to_json(&lift_psi(&l, &j_input(false, 10).unwrap(), &z, &LiftOptions::default()).unwrap());
    assert_eq!(again::<LiftValue>(&v), v);
    let j = to_json(&JumpReport { measured: 1.0 / 3.0, predicted: 2.0, walls: 1, left: -0.1, right: 0.2, quadrature_error: 1e-9, bounded: true });
    assert_eq!(again::<JumpReport>(&j), j);
}

#[test]
fn points_round_trip_through_explicit_frames() {
    let l = Lattice::u_plus_u();
    let pj: PointJson = read_json(r#"{"h2": [[0.1, 1.2], [0.3, 0.9]], "flows": [[1, 3, 0.25]]}"#).unwrap();
    let z = point_from_json(&l, &pj).unwrap();
    let text = to_json(&point_to_json(&z));
    let back = point_from_json(&l, &read_json(&text).unwrap()).unwrap();
    assert_eq!(back.frame, z.frame);
    assert_eq!(to_json(&point_to_json(&back)), text);
}

#[test]
fn malformed_inputs_are_parse_errors() {
    let l = Lattice::u_plus_u();
    assert!(matches!(read_json::<FormJson>("{\"weight\": "), Err(thetalab::Error::Parse(_))));
    let both: PointJson = read_json(r#"{"h2": [[0, 1], [0, 1]], "g": [[1]]}"#).unwrap();
    assert!(point_from_json(&l, &both).is_err());
    let bad_flow: PointJson = read_json(r#"{"flows": [[3, 1, 0.1]]}"#).unwrap();
    assert!(point_from_json(&l, &bad_flow).is_err());
    let mut fj = form_to_json(&j_input(false, 4).unwrap());
    fj.plus[0].n = "1/0".into();
    assert!(form_from_json(&fj).is_err());
    let mut fj = form_to_json(&j_input(false, 4).unwrap());
    fj.rep.signature = Some([3, 2]);
    assert!(form_from_json(&fj).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_values_survive_json(re in proptest::num::f64::NORMAL, im in proptest::num::f64::NORMAL) {
        let c = ComplexJson::from(Complex64::new(re, im));
        let back: ComplexJson = read_json(&to_json(&c)).unwrap();
        prop_assert_eq!(back, c);
    }
}
