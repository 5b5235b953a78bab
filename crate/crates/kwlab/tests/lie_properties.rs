mod common;

use common::{su_elements, su_from, unitary_exp};
use kwlab::lie::{check_triple, principal_triple, Algebra, LieElement, LieError, LieVec, Su2};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_identity_holds(v in su_elements(5, 3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let j = x.bracket(&y.bracket(z)).add(&y.bracket(&z.bracket(x))).add(&z.bracket(&x.bracket(y)));
        prop_assert!(j.frobenius() <= 1e-10);
    }

    #[test]
    fn inner_is_ad_invariant(v in su_elements(5, 3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let s = z.bracket(x).inner(y) + x.inner(&z.bracket(y));
        prop_assert!(s.abs() <= 1e-10);
    }

    #[test]
    fn inner_is_symmetric_and_positive(v in su_elements(5, 2)) {
        prop_assert!((v[0].inner(&v[1]) - v[1].inner(&v[0])).abs() <= 1e-12);
        prop_assert!(v[0].inner(&v[0]) >= 0.0);
    }

    #[test]
    fn bracket_is_antisymmetric_and_stays_in_su(v in su_elements(5, 2)) {
        let b = v[0].bracket(&v[1]);
        prop_assert!(b.add(&v[1].bracket(&v[0])).frobenius() <= 1e-12);
        let (tr, ah) = b.membership_defects();
        prop_assert!(tr <= 1e-12 && ah <= 1e-12);
    }

    #[test]
    fn su2_coordinates_agree_with_matrices(a in prop::array::uniform3(-2.0f64..2.0), b in prop::array::uniform3(-2.0f64..2.0)) {
        let (x, y) = (Su2(a), Su2(b));
        let (mx, my) = (x.to_element(), y.to_element());
        prop_assert!(x.bracket(&y).to_element().sub(&mx.bracket(&my)).frobenius() <= 1e-12);
        prop_assert!((x.inner(&y) - mx.inner(&my)).abs() <= 1e-12);
        prop_assert!((x.norm_sq() - mx.norm_sq()).abs() <= 1e-12);
        let back = Su2::from_element(&mx).unwrap();
        prop_assert!(back.sub(&x).norm() <= 1e-12);
    }

    #[test]
    fn conjugated_principal_triple_keeps_its_spectrum(n in 2usize..=6, raw in prop::collection::vec(-1.0f64..1.0, 72)) {
        let u = unitary_exp(&su_from(n, &raw[..2 * n * n]));
        let t = principal_triple(n).unwrap().conjugated(&u);
        prop_assert!(check_triple(&t).residual <= 1e-10);
        let h = t.t[2].matrix() * Complex64::new(0.0, 1.0);
        let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (i, e) in ev.iter().enumerate() {
            let want = (n as f64 - 1.0) / 2.0 - i as f64;
            prop_assert!((e - want).abs() <= 1e-10, "eigenvalue {} vs {}", e, want);
        }
    }
}

#[test]
fn principal_triples_satisfy_the_commutation_relations() {
    for n in 2..=8 {
        let t = principal_triple(n).unwrap();
        let c = check_triple(&t);
        assert!(c.residual <= 1e-12, "n = {n}: {}", c.residual);
        assert!(!c.has_vanishing_generator);
        // Casimir of the spin-(n-1)/2 irrep under the trace form
        let j = (n as f64 - 1.0) / 2.0;
        assert!((t.casimir() - n as f64 * j * (j + 1.0)).abs() < 1e-10);
    }
}

#[test]
fn rank_one_triple_is_rejected() {
    assert_eq!(principal_triple(1), Err(LieError::RankTooSmall(1)));
}

#[test]
fn membership_is_validated() {
    let m = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.0, 1.0));
    assert!(matches!(LieElement::from_matrix(m, Algebra::SuN), Err(LieError::NotTraceless(_))));
    let h = DMatrix::from_row_slice(2, 2, &[0.0.into(), 1.0.into(), 1.0.into(), 0.0.into()]);
    assert!(matches!(LieElement::from_matrix(h.clone(), Algebra::SuN), Err(LieError::NotAntiHermitian(_))));
    assert!(LieElement::from_matrix(h, Algebra::SlNC).is_ok());
}

#[test]
fn mismatched_dimensions_are_errors() {
    let a = principal_triple(2).unwrap().t[0].clone();
    let b = principal_triple(3).unwrap().t[0].clone();
    assert_eq!(a.try_bracket(&b), Err(LieError::DimensionMismatch { left: 2, right: 3 }));
    assert!(a.try_inner(&b).is_err());
}
