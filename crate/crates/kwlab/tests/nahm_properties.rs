use kwlab::lie::{principal_triple, LieElement, LieVec, Su2};
use kwlab::nahm::{
    casimir_drift, integrate, integrate_ensemble, nahm_rhs, pole_deviation, state_deviation, Method, NahmError,
    NahmState,
};
use proptest::prelude::*;

fn triple(n: usize) -> [LieElement; 3] {
    principal_triple(n).unwrap().t
}

fn state_distance<T: LieVec>(a: &NahmState<T>, b: &NahmState<T>) -> f64 {
    (0..3).map(|i| a.t[i].sub(&b.t[i]).norm()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scaled_pole_is_tracked(n in 2usize..5, delta in -0.3f64..0.3, y0 in 0.2f64..1.0) {
        let t = triple(n);
        let start = NahmState::new(y0, std::array::from_fn(|a| t[a].scale((1.0 + delta) / y0))).unwrap();
        let tr = integrate(&start, 4.0, 1e-3, &Method::Direct).unwrap();
        let c = y0 - y0 / (1.0 + delta);
        for s in tr.states.iter().step_by(97) {
            let exact = NahmState::new(s.y, std::array::from_fn(|a| t[a].scale(1.0 / (s.y - c)))).unwrap();
            prop_assert!(state_distance(s, &exact) <= 1e-8, "y = {}: {}", s.y, state_distance(s, &exact));
        }
    }

    #[test]
    fn pole_is_a_fixed_point_of_the_substituted_flow(n in 2usize..5, k in 1i32..7) {
        // dyadic starts make y T - t vanish exactly
        let y0 = 2f64.powi(-k);
        let t = triple(n);
        let tr = integrate(&NahmState::pole(y0, &t).unwrap(), 5.0, 1e-2, &Method::Substituted(t.clone())).unwrap();
        prop_assert!(pole_deviation(&tr, &t).unwrap() <= 1e-12);
        prop_assert!(casimir_drift(&tr, &t) <= 1e-12);
    }

    #[test]
    fn rhs_of_the_pole_is_its_derivative(n in 2usize..6, y in 0.05f64..10.0) {
        let t = triple(n);
        let d = nahm_rhs(&NahmState::pole(y, &t).unwrap());
        for a in 0..3 {
            prop_assert!(d[a].sub(&t[a].scale(-1.0 / (y * y))).norm() <= 1e-12 * (1.0 + t[a].norm() / (y * y)));
        }
    }
}

#[test]
fn single_step_error_is_fifth_order() {
    let start = NahmState::new(1.0, [Su2::new(0.3, 0.1, -0.2), Su2::new(0.5, -0.4, 0.2), Su2::new(-0.1, 0.7, 0.3)]).unwrap();
    let err = |h: f64| {
        let one = integrate(&start, 1.0 + h, h, &Method::Direct).unwrap();
        let fine = integrate(&start, 1.0 + h, h / 256.0, &Method::Direct).unwrap();
        state_distance(one.last().unwrap(), fine.last().unwrap())
    };
    let ratio = err(0.2) / err(0.1);
    assert!((ratio - 32.0).abs() < 6.0, "ratio {ratio}");
}

#[test]
fn global_error_is_fourth_order() {
    let t = triple(3);
    let start = NahmState::new(0.5, std::array::from_fn(|a| t[a].scale(2.2))).unwrap();
    let c = 0.5 - 0.5 / 1.1;
    let err = |h: f64| {
        let tr = integrate(&start, 3.0, h, &Method::Direct).unwrap();
        let s = tr.last().unwrap();
        let exact = NahmState::new(s.y, std::array::from_fn(|a| t[a].scale(1.0 / (s.y - c)))).unwrap();
        state_distance(s, &exact)
    };
    let ratio = err(0.02) / err(0.01);
    assert!(ratio > 13.0 && ratio < 19.0, "ratio {ratio}");
}

#[test]
fn step_is_adjusted_to_land_on_the_end_point() {
    let t = triple(2);
    let tr = integrate(&NahmState::pole(0.1, &t).unwrap(), 1.0, 0.07, &Method::Direct).unwrap();
    assert_eq!(tr.states.len(), 14);
    assert!((tr.last().unwrap().y - 1.0).abs() < 1e-14);
    assert!(tr.step <= 0.07);
    assert_eq!(tr.casimir.len(), tr.states.len());
    assert_eq!(tr.blowup_at, None);
}

#[test]
fn blowup_is_reported_and_truncates_the_trajectory() {
    let t = triple(2);
    // T = -t/(c - y) reaches infinity at y = c
    let start = NahmState::new(1.0, std::array::from_fn(|a| t[a].scale(-1.0))).unwrap();
    let tr = integrate(&start, 5.0, 1e-2, &Method::Direct).unwrap();
    assert!(tr.blowup_at.is_some());
    assert!(tr.states.iter().all(|s| s.is_finite()));
}

#[test]
fn ensemble_matches_sequential_runs() {
    let t = triple(3);
    let starts: Vec<_> = (1..=5).map(|k| NahmState::new(0.2 * k as f64, t.clone()).unwrap()).collect();
    let par = integrate_ensemble(&starts, 3.0, 1e-2, &Method::Direct);
    for (s, p) in starts.iter().zip(par) {
        assert_eq!(p.unwrap(), integrate(s, 3.0, 1e-2, &Method::Direct).unwrap());
    }
}

#[test]
fn invalid_arguments_are_errors() {
    let t = triple(2);
    assert_eq!(NahmState::pole(0.0, &t), Err(NahmError::NonPositiveY(0.0)));
    let s = NahmState::pole(1.0, &t).unwrap();
    assert_eq!(integrate(&s, 2.0, 0.0, &Method::Direct), Err(NahmError::BadStep(0.0)));
    assert_eq!(integrate(&s, 2.0, f64::NAN, &Method::Direct).unwrap_err().to_string().contains("step"), true);
    assert_eq!(integrate(&s, 0.5, 0.1, &Method::Direct), Err(NahmError::BadInterval { start: 1.0, end: 0.5 }));
}

#[test]
fn deviation_of_the_pole_state_is_zero() {
    let t = triple(4);
    assert!(state_deviation(&NahmState::pole(0.3, &t).unwrap(), &t) < 1e-14);
}
