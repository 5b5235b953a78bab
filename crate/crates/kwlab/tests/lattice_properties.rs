mod common;

use kwlab::lattice::forms::{basis, index_of, star_table};
use kwlab::lattice::io::{read_field, write_field};
use kwlab::lattice::{curvature, covariant_d, integrate, pairwise_sum, partial, Grid, LatticeField};
use kwlab::lie::{LieElement, LieVec, Su2};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn derivative_error(grid: &Grid, axis: usize, f: impl Fn(&[f64]) -> f64, df: impl Fn(&[f64]) -> f64) -> f64 {
    let vals: Vec<f64> = (0..grid.len()).map(|s| f(&grid.coords(s))).collect();
    let d = partial(grid, &vals, axis);
    let err: Vec<f64> = (0..grid.len()).map(|s| (d[s] - df(&grid.coords(s))).powi(2) * grid.weight(s)).collect();
    pairwise_sum(&err).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn periodic_first_derivatives_are_second_order(axis in 0usize..3, phase in 0.0f64..TAU, k in 1u32..3) {
        let kk = TAU * k as f64;
        let f = |x: &[f64]| (kk * x[axis] + phase).sin() * (1.0 + 0.3 * (TAU * x[(axis + 1) % 3]).cos());
        let df = |x: &[f64]| kk * (kk * x[axis] + phase).cos() * (1.0 + 0.3 * (TAU * x[(axis + 1) % 3]).cos());
        let mut g = Grid::torus3(16, 16, 16).unwrap();
        let mut errs = Vec::new();
        for _ in 0..3 {
            errs.push(derivative_error(&g, axis, f, df));
            g = g.refined();
        }
        for w in errs.windows(2) {
            let r = w[0] / w[1];
            prop_assert!((r - 4.0).abs() <= 0.6, "ratio {} from {:?}", r, errs);
        }
    }

    #[test]
    fn open_axis_derivative_is_second_order(c in 0.2f64..2.0) {
        let f = |x: &[f64]| (c * x[2]).exp() * (TAU * x[0]).cos();
        let df = |x: &[f64]| c * (c * x[2]).exp() * (TAU * x[0]).cos();
        let mut g = Grid::slab3(8, 8, 16, 0.5, 2.0).unwrap();
        let mut errs = Vec::new();
        for _ in 0..3 {
            errs.push(derivative_error(&g, 2, f, df));
            g = g.refined();
        }
        for w in errs.windows(2) {
            let r = w[0] / w[1];
            prop_assert!(r > 2.8 && r < 6.0, "ratio {} from {:?}", r, errs);
        }
    }

    #[test]
    fn kwlf_round_trip(n in 2usize..4, dims in (4usize..6, 4usize..6, 4usize..6), seed in 0u64..1000) {
        let g = Grid::slab3(dims.0, dims.1, dims.2, 0.5, 2.0).unwrap();
        let t = kwlab::lie::principal_triple(n).unwrap();
        let f = LatticeField::from_fn(&g, 1, |x| {
            let s = seed as f64 * 1e-3;
            vec![t.t[0].scale(x[0] + s), t.t[1].scale(x[1] * x[2]), t.t[2].scale(-s)]
        }).unwrap();
        let mut bytes = Vec::new();
        write_field(&mut bytes, &f).unwrap();
        let back = read_field(&mut bytes.as_slice()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn pairwise_sum_matches_naive_sum(xs in prop::collection::vec(-1e3f64..1e3, 0..300)) {
        let naive: f64 = xs.iter().sum();
        prop_assert!((pairwise_sum(&xs) - naive).abs() <= 1e-9 * (1.0 + xs.iter().map(|x| x.abs()).sum::<f64>()));
    }
}

/// Sign of the permutation taking `seq` to sorted order, by counting inversions.
fn inversion_sign(seq: &[usize]) -> f64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1.0 } else { -1.0 }
}

#[test]
fn star_signs_match_the_permutation_oracle_on_every_basis_form() {
    for dim in [3usize, 4] {
        let mut checked = 0;
        for k in 0..=dim {
            let table = star_table(dim, k);
            for (c, idx) in basis(dim, k).iter().enumerate() {
                let comp: Vec<usize> = (0..dim).filter(|a| !idx.contains(a)).collect();
                let mut seq = idx.clone();
                seq.extend(&comp);
                assert_eq!(table[c], (index_of(dim, &comp), inversion_sign(&seq)), "dim {dim} form {idx:?}");
                checked += 1;
            }
        }
        assert_eq!(checked, 1 << dim);
    }
}

#[test]
fn hodge_star_squares_to_the_expected_sign() {
    let g = Grid::product4(4, 4, 4, 4, 0.5, 2.0).unwrap();
    for k in 0..=4 {
        let n = kwlab::lattice::forms::binomial(4, k);
        let f = LatticeField::from_fn(&g, k, |x| (0..n).map(|c| x[0] + c as f64 * x[3]).collect()).unwrap();
        let ss = f.hodge_star().hodge_star();
        let sign = if (k * (4 - k)) % 2 == 0 { 1.0 } else { -1.0 };
        assert!(ss.sub(&f.scale(sign)).unwrap().sup_norm() < 1e-14, "k = {k}");
    }
}

#[test]
fn exterior_derivative_squares_to_zero_on_periodic_grids() {
    let g = Grid::torus3(8, 8, 8).unwrap();
    let f = LatticeField::from_fn(&g, 0, |x| vec![(TAU * x[0]).sin() * (TAU * x[1]).cos() + (TAU * x[2]).sin()]).unwrap();
    let dd = f.exterior_d().unwrap().exterior_d().unwrap();
    assert!(dd.sup_norm() < 1e-12);
}

fn random_connection(g: &Grid, seed: f64) -> LatticeField<Su2> {
    LatticeField::from_fn(g, 1, |x| {
        let w = |a: f64, b: f64| (TAU * x[0] + a).sin() * (TAU * x[1] + b).cos() * (TAU * x[2] + seed).cos() * (-(x[3] - 1.2f64).powi(2)).exp();
        vec![
            Su2::new(w(0.1, 0.2), w(seed, 0.4), 0.3 * w(0.5, seed)),
            Su2::new(w(0.7, seed), 0.5 * w(0.9, 1.0), w(1.1, 1.2)),
            Su2::new(w(seed, 1.4), w(1.5, 1.6), w(1.7, 1.8)),
            Su2::new(w(1.9, 2.0), w(2.1, seed), w(2.3, 2.4)),
        ]
    })
    .unwrap()
}

#[test]
fn discrete_bianchi_identity_converges_at_second_order() {
    let mut g = Grid::product4(8, 8, 8, 12, 0.5, 2.0).unwrap();
    let mut errs = Vec::new();
    for _ in 0..3 {
        let a = random_connection(&g, 0.37);
        let f = curvature(&a).unwrap();
        // F = F_A + B_A∧dx1, so d_A F = 0 carries ∇₁F_A + d_A B_A = 0
        let bianchi = covariant_d(&a, &f.total).unwrap();
        errs.push(bianchi.l2_norm());
        g = g.refined();
    }
    assert!(errs[0] / errs[1] > 3.0 && errs[1] / errs[2] > 3.4, "{errs:?}");
}

#[test]
fn curvature_split_recovers_the_total() {
    let g = Grid::product4(4, 4, 4, 6, 0.5, 2.0).unwrap();
    let a = random_connection(&g, 1.3);
    let f = curvature(&a).unwrap();
    // B_j dx_j ∧ dx_1 = -B_j dx_1 ∧ dx_j
    for (c, idx) in basis(4, 2).iter().enumerate() {
        for s in 0..g.len() {
            let want = if idx[0] == 0 { f.b.comps[idx[1]][s].neg() } else { f.slice.comps[c][s] };
            assert!(f.total.comps[c][s].sub(&want).norm() < 1e-15);
        }
    }
    assert!(f.b.comps[0].iter().all(|x| x.norm() == 0.0));
}

#[test]
fn quadrature_is_exact_for_linear_profiles() {
    let g = Grid::slab3(4, 4, 9, 0.5, 2.0).unwrap();
    let vals: Vec<f64> = (0..g.len()).map(|s| 3.0 * g.coords(s)[2] + 1.0).collect();
    let exact = 1.5 * (4.0 - 0.25) + 1.5;
    assert!((integrate(&g, &vals) - exact).abs() < 1e-13);
}

#[test]
fn refinement_halves_spacing_and_keeps_the_ends() {
    let g = Grid::product4(16, 16, 16, 32, 0.5, 2.0).unwrap();
    let r = g.refined();
    assert_eq!(r.shape(), vec![32, 32, 32, 63]);
    assert!((r.axis(3).h * 2.0 - g.axis(3).h).abs() < 1e-15);
    assert_eq!(r.axis(3).coord(62), 2.0);
}

#[test]
fn grid_constructors_reject_bad_ranges() {
    assert!(Grid::product4(4, 4, 4, 8, 2.0, 1.0).is_err());
    assert!(Grid::slab3(0, 4, 8, 0.5, 1.0).is_err());
}

#[test]
fn field_shape_mismatches_are_errors() {
    let g = Grid::torus3(4, 4, 4).unwrap();
    let h = Grid::torus3(4, 4, 8).unwrap();
    let z = LieElement::zero(2, kwlab::lie::Algebra::SuN);
    let a = LatticeField::zeros(&g, 1, &z).unwrap();
    let b = LatticeField::zeros(&h, 1, &z).unwrap();
    assert!(a.sub(&b).is_err());
}
