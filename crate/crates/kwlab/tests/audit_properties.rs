use kwlab::audit::{
    audit_fields, audit_source, boundary_decay, chi_integral, invariance_witness, refine_random, AuditError,
    LatticeSource, RandomAuditField, RandomFieldSpec,
};
use kwlab::lattice::{Grid, LatticeField};
use kwlab::lie::{principal_triple, LieVec, Su2};
use kwlab::model::nahm_pole_field;
use kwlab::residual::kw_residual;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn small_grid() -> Grid {
    Grid::product4(6, 6, 6, 12, 0.5, 2.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn audit_lhs_is_the_squared_kw_residual(seed in 0u64..1000) {
        let g = small_grid();
        let (a, phi) = RandomAuditField::draw(RandomFieldSpec::new(seed)).to_lattice(&g).unwrap();
        let pair = audit_fields(&a, &phi).unwrap();
        let r = kw_residual(&a, &phi).unwrap();
        let want = r.l2("kw_two_form").powi(2) + r.l2("kw_scalar").powi(2);
        prop_assert!((pair.weitzenbock.lhs - want).abs() <= 1e-12 * (1.0 + want), "{} vs {want}", pair.weitzenbock.lhs);
        prop_assert_eq!(pair.weitzenbock.lhs, pair.t3.lhs);
    }

    #[test]
    fn boundary_term_telescopes_to_the_end_slices(seed in 0u64..1000) {
        let g = small_grid();
        let (a, phi) = RandomAuditField::draw(RandomFieldSpec::new(seed)).to_lattice(&g).unwrap();
        let chi = chi_integral(&a, &phi).unwrap();
        prop_assert!((chi.boundary - chi.slices).abs() <= 1e-10 * (1.0 + chi.slices.abs()));
    }

    #[test]
    fn streamed_and_stored_fields_agree(seed in 0u64..1000) {
        let g = small_grid();
        let field = RandomAuditField::draw(RandomFieldSpec::new(seed));
        let (a, phi) = field.to_lattice(&g).unwrap();
        let stored = audit_fields(&a, &phi).unwrap();
        let streamed = audit_source(&field.source(&g)).unwrap();
        prop_assert!((stored.weitzenbock.defect - streamed.weitzenbock.defect).abs() <= 1e-12 * (1.0 + stored.weitzenbock.lhs));
        prop_assert!((stored.t3.defect - streamed.t3.defect).abs() <= 1e-12 * (1.0 + stored.t3.lhs));
    }
}

#[test]
fn zero_fields_have_zero_gap() {
    let g = small_grid();
    let z = LatticeField::zeros(&g, 1, &Su2::default()).unwrap();
    let p = audit_fields(&z, &z).unwrap();
    for r in [&p.weitzenbock, &p.t3] {
        assert_eq!(r.gap, 0.0);
        assert_eq!(r.lhs, 0.0);
        assert!(r.terms.iter().all(|&(_, v)| v == 0.0));
    }
}

#[test]
fn nahm_pole_has_no_circle_terms() {
    let t = principal_triple(2).unwrap();
    let g = Grid::product4(4, 4, 4, 16, 0.5, 2.0).unwrap();
    let (a, phi) = nahm_pole_field(&t, &g).unwrap();
    let w = audit_fields(&a, &phi).unwrap().weitzenbock;
    assert_eq!(invariance_witness(&w), [0.0, 0.0, 0.0]);
    assert_eq!(w.term("ebe_gauge"), Some(0.0));
}

#[test]
fn audit_gap_shrinks_under_refinement() {
    let field = RandomAuditField::draw(RandomFieldSpec::new(1));
    let g0 = Grid::product4(8, 8, 8, 16, 0.5, 2.0).unwrap();
    let r = refine_random(&field, &g0, 3).unwrap();
    let gaps: Vec<f64> = r.levels.iter().map(|p| p.weitzenbock.gap).collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(r.levels.iter().all(|p| p.weitzenbock.relative_gap < 0.05 && p.t3.relative_gap < 0.05));
}

#[test]
fn refinement_needs_three_levels() {
    let field = RandomAuditField::draw(RandomFieldSpec::new(3));
    let g0 = Grid::product4(4, 4, 4, 8, 0.5, 2.0).unwrap();
    assert_eq!(refine_random(&field, &g0, 2), Err(AuditError::TooFewLevels(2)));
}

#[test]
fn draws_are_reproducible() {
    assert_eq!(RandomAuditField::draw(RandomFieldSpec::new(7)), RandomAuditField::draw(RandomFieldSpec::new(7)));
    assert_ne!(RandomAuditField::draw(RandomFieldSpec::new(7)), RandomAuditField::draw(RandomFieldSpec::new(8)));
}

#[test]
fn lattice_source_rejects_dy_components() {
    let g = small_grid();
    let z = LatticeField::zeros(&g, 1, &Su2::default()).unwrap();
    let mut bad = z.clone();
    bad.comps[3][0] = Su2::new(1.0, 0.0, 0.0);
    assert!(matches!(LatticeSource::new(&bad, &z), Err(AuditError::Shape(_))));
    assert!(matches!(LatticeSource::new(&z, &bad), Err(AuditError::Shape(_))));
}

fn torus() -> Grid {
    Grid::torus3(12, 12, 12).unwrap()
}

fn sample(g: &Grid, f: impl Fn(&[f64]) -> Su2) -> Vec<Su2> {
    (0..g.len()).map(|s| f(&g.coords(s))).collect()
}

#[test]
fn boundary_decay_vanishes_for_the_nahm_pole() {
    let g = torus();
    let z = sample(&g, |_| Su2::default());
    let rows = boundary_decay(&g, &[0.1, 0.01, 0.001], |y| {
        let p = |a| sample(&g, |_| Su2::basis(a).scale(1.0 / y));
        ([z.clone(), z.clone(), z.clone()], [p(0), p(1), p(2)])
    })
    .unwrap();
    assert!(rows.iter().all(|r| r.value == 0.0));
}

#[test]
fn boundary_decay_is_linear_for_linearly_vanishing_higgs_field() {
    let g = torus();
    let z = sample(&g, |_| Su2::default());
    let a2 = sample(&g, |x| Su2::basis(0).scale((TAU * x[0]).sin()));
    let eps = [0.2, 0.1, 0.05, 0.025];
    let rows = boundary_decay(&g, &eps, |y| {
        let p3 = sample(&g, |x| Su2::basis(0).scale(y * (TAU * x[0]).cos()));
        ([z.clone(), a2.clone(), z.clone()], [z.clone(), z.clone(), p3])
    })
    .unwrap();
    let slope = rows[0].value / rows[0].y;
    assert!(slope.abs() > 1.0);
    for r in &rows {
        assert!((r.value / r.y - slope).abs() <= 1e-12 * slope.abs());
    }
}

#[test]
fn boundary_decay_of_flat_connection_is_zero() {
    let g = torus();
    let c = sample(&g, |_| Su2::new(0.3, -0.2, 0.1));
    let rows = boundary_decay(&g, &[0.5, 0.1], |y| {
        let p = sample(&g, |x| Su2::new((TAU * x[1]).cos(), y, 0.0));
        ([c.clone(), c.clone(), c.clone()], [p.clone(), p.clone(), p])
    })
    .unwrap();
    assert!(rows.iter().all(|r| r.value.abs() <= 1e-10), "{rows:?}");
}

#[test]
fn boundary_decay_rejects_bad_slices() {
    let g = torus();
    let short = vec![Su2::default(); 3];
    let r = boundary_decay(&g, &[0.1], |_| {
        ([short.clone(), short.clone(), short.clone()], [short.clone(), short.clone(), short.clone()])
    });
    assert!(matches!(r, Err(AuditError::Shape(_))));
    let slab = Grid::slab3(4, 4, 4, 0.5, 1.0).unwrap();
    assert!(boundary_decay::<Su2>(&slab, &[0.1], |_| unreachable!()).is_err());
}
