use num_complex::Complex64;
use pptes::classify::{classify_with, StateType, UpbVerdict};
use pptes::constructors::{type2_state, upb_state, Type2Spec, UpbSpec};
use pptes::qmat::DEFAULT_STATE_TOL;
use pptes::sampling::{random_local_invertible, stream};
use pptes::{
    classify, classify_many, slocc_compare, t_orbit, Execution, MultiQubitState, SloccVerdict,
};
use proptest::prelude::*;

fn type2(t: Complex64) -> MultiQubitState {
    type2_state(&Type2Spec::new(t).unwrap(), true).unwrap()
}

#[test]
fn local_transform_keeps_type_and_orbit() {
    let mut rng = stream(501, 0);
    let t = Complex64::new(0.3, 1.1);
    let rho = type2(t);
    let v = random_local_invertible(&mut rng, 3, 10.0);
    let moved = rho.conjugate_by(&v).unwrap();
    let report = classify(&moved).unwrap();
    assert_eq!(report.state_type, StateType::TypeII);
    assert!(report
        .canonical_t_orbit
        .unwrap()
        .same_as(&t_orbit(t).unwrap(), 1e-6));
    assert_eq!(
        slocc_compare(&rho, &moved).unwrap().verdict,
        SloccVerdict::Equivalent
    );
}

#[test]
fn upb_states_are_upb_constructible() {
    let rho = upb_state(&UpbSpec::new([0.4, 0.9, 1.2]).unwrap()).unwrap();
    let report = classify(&rho).unwrap();
    assert_eq!(report.state_type, StateType::TypeI);
    assert_eq!(report.upb_verdict, UpbVerdict::UpbConstructible);
    assert_eq!(report.general_position, Some(true));
}

#[test]
fn batch_matches_single_and_modes_agree() {
    let states: Vec<MultiQubitState> = [-0.5, 0.4, 3.0]
        .iter()
        .map(|&x| type2(Complex64::new(x, 0.0)))
        .collect();
    let seq = classify_many(&states, Execution::Sequential);
    let par = classify_many(&states, Execution::Parallel);
    for ((a, b), s) in seq.iter().zip(&par).zip(&states) {
        let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
        assert_eq!(a, b);
        assert_eq!(a, &classify_with(s, Execution::Sequential).unwrap());
    }
}

#[test]
fn non_ppt_states_are_rejected() {
    let mut m = pptes::ComplexMatrix::zeros(8, 8);
    for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
        m[(i, j)] = Complex64::new(0.5, 0.0);
    }
    let ghz = MultiQubitState::new(m, DEFAULT_STATE_TOL).unwrap();
    assert!(classify(&ghz).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn type2_family_stays_type2(re in -3.0f64..3.0, im in 0.2f64..2.0) {
        let t = Complex64::new(re, im);
        let report = classify(&type2(t)).unwrap();
        prop_assert_eq!(report.state_type, StateType::TypeII);
        prop_assert!(report.characteristic_set.contains(t, 1e-6));
    }

    #[test]
    fn upb_family_has_negative_invariant(a in 0.1f64..1.47, b in 0.1f64..1.47, c in 0.1f64..1.47) {
        let report = classify(&upb_state(&UpbSpec::new([a, b, c]).unwrap()).unwrap()).unwrap();
        prop_assert!(report.invariant < 0.0);
        prop_assert_eq!(report.upb_verdict, UpbVerdict::UpbConstructible);
    }
}
