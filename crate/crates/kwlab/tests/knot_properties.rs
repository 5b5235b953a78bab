mod common;

use kwlab::knot::{
    admissibility, classify_existence, divisor_from_knot_data, hitchin_fibration, knot_data_from_vanishing,
    nonhitchin_sl2_check, solution_count_bound, Admissibility, Divisor, KnotData, KnotError, KnotPoint, Limit,
    Sl2Verdict, SurfaceSpec, Verdict,
};
use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use proptest::prelude::*;

fn weights(n: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(
        prop::collection::vec(0u32..5, (n - 1) as usize).prop_filter("nontrivial", |w| w.iter().any(|&k| k > 0)),
        0..5,
    )
}

fn knot_data(ws: &[Vec<u32>]) -> KnotData {
    KnotData::new(ws.iter().enumerate().map(|(i, w)| KnotPoint { id: format!("p{i}"), weight: w.clone() }).collect())
        .unwrap()
}

fn complex_matrix(n: usize, raw: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| Complex64::new(raw[2 * (i * n + j)], raw[2 * (i * n + j) + 1]))
}

proptest! {
    #[test]
    fn divisor_degree_is_additive(a in prop::collection::vec(("[a-e]", -5i64..6), 0..8), b in prop::collection::vec(("[a-e]", -5i64..6), 0..8)) {
        let da = Divisor::from_pairs(a.clone());
        let db = Divisor::from_pairs(b.clone());
        let sum = Divisor::from_pairs(a.into_iter().chain(b));
        prop_assert_eq!(sum.degree(), da.degree() + db.degree());
        prop_assert!(sum.entries().all(|(_, m)| m != 0));
    }

    #[test]
    fn knot_divisor_degree_is_the_total_weight(n in 2u32..6, ws in (2u32..6).prop_flat_map(weights)) {
        let ws: Vec<Vec<u32>> = ws.into_iter().map(|mut w| { w.resize((n - 1) as usize, 0); w }).filter(|w| w.iter().any(|&k| k > 0)).collect();
        let kd = knot_data(&ws);
        let total: i64 = ws.iter().flatten().map(|&k| k as i64).sum();
        prop_assert_eq!(divisor_from_knot_data(&kd).degree(), total);
    }

    #[test]
    fn vanishing_orders_round_trip(n in 2u32..6, base in 0u32..4, seed_ws in weights(5)) {
        let ws: Vec<Vec<u32>> = seed_ws.into_iter().map(|mut w| { w.truncate((n - 1) as usize); w }).collect();
        let orders: Vec<(String, Vec<u32>)> = ws
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let mut o = vec![base];
                for k in w {
                    o.push(o.last().unwrap() + k);
                }
                (format!("p{i}"), o)
            })
            .collect();
        let v = knot_data_from_vanishing(n, &orders).unwrap();
        let kept: Vec<&Vec<u32>> = ws.iter().filter(|w| w.iter().any(|&k| k > 0)).collect();
        prop_assert_eq!(v.knot_data.points().len(), kept.len());
        for (p, w) in v.knot_data.points().iter().zip(kept) {
            prop_assert_eq!(&p.weight, w);
        }
        for ((_, o), p) in orders.iter().filter(|(_, o)| o[0] != *o.last().unwrap()).zip(v.knot_data.points()) {
            prop_assert_eq!(p.weight.iter().sum::<u32>(), o.last().unwrap() - o[0]);
        }
        prop_assert_eq!(v.hitchin_component, v.knot_data.is_empty());
    }

    #[test]
    fn admissible_degrees_solve_the_degree_relation(n in 2u32..7, g in 2u32..8, deg in -50i64..50) {
        let d = Divisor::from_pairs([("p", deg)]);
        let s = SurfaceSpec::new(g, n).unwrap();
        match admissibility(&d, s).unwrap() {
            Admissibility::Inadmissible => prop_assert!(deg % n as i64 != 0),
            Admissibility::Admissible { deg_l } => {
                let rel = -(n as i64) * i64::try_from(deg_l).unwrap() + (n * (n - 1)) as i64 * (g as i64 - 1);
                prop_assert_eq!(rel, deg);
            }
        }
    }

    #[test]
    fn fibration_is_conjugation_invariant(n in 2usize..5, raw in prop::collection::vec(-1.0f64..1.0, 32), graw in prop::collection::vec(-1.0f64..1.0, 32)) {
        let phi = complex_matrix(n, &raw);
        let g = complex_matrix(n, &graw) + DMatrix::identity(n, n) * Complex64::new(3.0, 0.0);
        let conj = &g * &phi * g.clone().try_inverse().unwrap();
        let f = hitchin_fibration(&[phi.clone(), conj]).unwrap();
        for j in 1..=n {
            prop_assert!((f[0].p(j) - f[1].p(j)).norm() <= 1e-9);
        }
        prop_assert!((f[0].p(1) - phi.trace()).norm() <= 1e-12);
        let det = phi.clone().determinant();
        prop_assert!((f[0].p(n) - det).norm() <= 1e-10);
    }

    #[test]
    fn fibration_coefficients_scale_with_degree(n in 2usize..5, raw in prop::collection::vec(-1.0f64..1.0, 32), lam in 0.2f64..3.0) {
        let phi = complex_matrix(n, &raw);
        let f = hitchin_fibration(&[phi.clone(), &phi * Complex64::new(lam, 0.0)]).unwrap();
        for j in 1..=n {
            let want = f[0].p(j) * lam.powi(j as i32);
            prop_assert!((f[1].p(j) - want).norm() <= 1e-10 * (1.0 + want.norm()));
        }
    }
}

#[test]
fn solution_bound_is_exact_for_large_genus() {
    let b = solution_count_bound(SurfaceSpec::new(40, 3).unwrap());
    assert_eq!(b, BigUint::from(3u32).pow(80));
    assert_eq!(b.to_string().len(), 39);
    assert_eq!(solution_count_bound(SurfaceSpec::new(2, 2).unwrap()), BigUint::from(16u32));
}

#[test]
fn verdicts_serialize_big_integers_as_decimal_strings() {
    let v = Verdict::ConditionalExists { bound: BigUint::from(3u32).pow(80), deg_l: BigInt::from(-7), irreducibility_assumed: true };
    let json = serde_json::to_string(&v).unwrap();
    assert!(json.contains(&format!("\"bound\":\"{}\"", BigUint::from(3u32).pow(80))));
    assert!(json.contains("\"deg_l\":\"-7\""));
    assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
    assert!(serde_json::from_str::<Verdict>(r#"{"verdict":"AdmissibleUnwitnessed","bound":"x","deg_l":"1"}"#).is_err());
}

#[test]
fn classification_covers_each_genus_regime() {
    let s = |g| SurfaceSpec::new(g, 2).unwrap();
    let kd = knot_data(&[vec![2]]);
    assert_eq!(classify_existence(s(0), &Limit::HitchinSection, None).unwrap().name(), "NoSolutions");
    assert_eq!(classify_existence(s(1), &Limit::NotHitchinSection, None).unwrap(), Verdict::Unique);
    assert_eq!(classify_existence(s(1), &Limit::HitchinSection, Some(&kd)).unwrap().name(), "ExplicitlyUndetermined");
    assert_eq!(classify_existence(s(2), &Limit::HitchinSection, None).unwrap(), Verdict::ExistsUnique);
    assert_eq!(classify_existence(s(2), &Limit::NotHitchinSection, None).unwrap().name(), "NoSolutions");
    assert_eq!(classify_existence(s(2), &Limit::HitchinSection, Some(&KnotData::empty())).unwrap(), Verdict::ExistsUnique);
    assert_eq!(classify_existence(s(2), &Limit::HitchinSection, Some(&knot_data(&[vec![1]]))).unwrap().name(), "NoSolutions");
    let w = Limit::Irreducible { witness: Some(kd.clone()) };
    assert_eq!(
        classify_existence(s(3), &w, Some(&kd)).unwrap(),
        Verdict::ConditionalExists { bound: BigUint::from(64u32), deg_l: BigInt::from(1), irreducibility_assumed: true }
    );
    let other = Limit::Irreducible { witness: Some(knot_data(&[vec![1], vec![1]])) };
    assert_eq!(classify_existence(s(3), &other, Some(&kd)).unwrap().name(), "NoSolutions");
    assert_eq!(classify_existence(s(3), &Limit::HitchinSection, Some(&kd)).unwrap().name(), "AdmissibleUnwitnessed");
}

#[test]
fn sl2_outside_the_hitchin_section() {
    let zal = Divisor::from_pairs([("a", 1), ("b", 1)]);
    // g = 4, deg ℓ = 2: edge 2, top 6
    assert_eq!(nonhitchin_sl2_check(2, 4, &zal, &zal).unwrap(), Sl2Verdict::UniqueSolution);
    let other = Divisor::from_pairs([("a", 2)]);
    assert!(matches!(nonhitchin_sl2_check(2, 4, &other, &zal).unwrap(), Sl2Verdict::NoSolution { .. }));
    let mid = Divisor::from_pairs([("a", 4)]);
    assert!(matches!(nonhitchin_sl2_check(2, 4, &mid, &zal).unwrap(), Sl2Verdict::NoSolution { .. }));
    assert_eq!(nonhitchin_sl2_check(2, 4, &Divisor::from_pairs([("a", 6)]), &zal).unwrap(), Sl2Verdict::NotCovered);
    assert_eq!(nonhitchin_sl2_check(3, 4, &zal, &zal), Err(KnotError::SubbundleDegree { deg_l: 3, g: 4 }));
}

#[test]
fn malformed_knot_inputs_are_errors() {
    let p = |id: &str, w: Vec<u32>| KnotPoint { id: id.into(), weight: w };
    assert_eq!(KnotData::new(vec![p("a", vec![1]), p("a", vec![2])]), Err(KnotError::DuplicatePoint("a".into())));
    assert_eq!(KnotData::new(vec![p("a", vec![0, 0])]), Err(KnotError::TrivialWeight("a".into())));
    let kd = KnotData::new(vec![p("a", vec![1, 2])]).unwrap();
    assert!(matches!(kd.check_rank(2), Err(KnotError::WeightLength { .. })));
    assert_eq!(SurfaceSpec::new(2, 1), Err(KnotError::Rank(1)));
    assert_eq!(admissibility(&Divisor::new(), SurfaceSpec::new(1, 2).unwrap()), Err(KnotError::GenusTooSmall(1)));
    assert_eq!(
        knot_data_from_vanishing(3, &[("a".into(), vec![2, 1, 3])]),
        Err(KnotError::DecreasingOrders { id: "a".into(), j: 1 })
    );
    assert!(matches!(knot_data_from_vanishing(3, &[("a".into(), vec![0, 1])]), Err(KnotError::OrderCount { .. })));
    assert_eq!(hitchin_fibration(&[DMatrix::zeros(2, 3)]), Err(KnotError::NotSquare(0)));
}
