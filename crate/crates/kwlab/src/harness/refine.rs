//! Richardson order estimates over successively halved grid spacings.

use super::HarnessError;
use crate::audit::{refine_random, RandomAuditField, RandomFieldSpec};
use crate::lattice::{Grid, LatticeField};
use crate::lie::principal_triple;
use crate::model::nahm_pole_jets;
use crate::residual::{kw_residual_analytic, observed_order};
use std::f64::consts::TAU;

/// Orders below this are flagged.
pub const ORDER_FLOOR: f64 = 1.5;

/// Values of one quantity at spacings `h, h/2, h/4, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementSeries {
    pub quantity: String,
    pub h: Vec<f64>,
    pub values: Vec<f64>,
    /// The quantity is evaluated without discretisation, so no order exists.
    pub analytic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderRow {
    pub quantity: String,
    pub order: Option<f64>,
    pub flagged: bool,
}

/// Per-quantity orders; analytic quantities report `None` and are never
/// flagged.
pub fn refine_study(series: &[RefinementSeries]) -> Result<Vec<OrderRow>, HarnessError> {
    series
        .iter()
        .map(|s| {
            if s.values.len() < 3 || s.h.len() != s.values.len() {
                return Err(HarnessError::Config(format!(
                    "{}: refinement study needs at least 3 resolutions, got {}",
                    s.quantity,
                    s.values.len()
                )));
            }
            if s.analytic {
                return Ok(OrderRow { quantity: s.quantity.clone(), order: None, flagged: false });
            }
            let order = observed_order(&s.values);
            let flagged = order.is_none_or(|p| !p.is_finite() || p < ORDER_FLOOR);
            Ok(OrderRow { quantity: s.quantity.clone(), order, flagged })
        })
        .collect()
}

fn refine_n(grid: &Grid, levels: usize) -> Vec<Grid> {
    let mut out = vec![grid.clone()];
    for _ in 1..levels {
        let next = out.last().expect("nonempty").refined();
        out.push(next);
    }
    out
}

/// Signed Weitzenböck and `T³` defects of one random field.
pub fn audit_series(seed: u64, base: &Grid, levels: usize) -> Result<[RefinementSeries; 2], HarnessError> {
    let field = RandomAuditField::draw(RandomFieldSpec::new(seed));
    let r = refine_random(&field, base, levels)?;
    let h: Vec<f64> = r.levels.iter().map(|p| p.weitzenbock.h).collect();
    Ok([
        RefinementSeries {
            quantity: "weitzenbock_gap".into(),
            h: h.clone(),
            values: r.levels.iter().map(|p| p.weitzenbock.defect).collect(),
            analytic: false,
        },
        RefinementSeries {
            quantity: "t3_energy_gap".into(),
            h,
            values: r.levels.iter().map(|p| p.t3.defect).collect(),
            analytic: false,
        },
    ])
}

/// `L²` error of the discrete `d` of `f = sin(2πx₂) cos(2πx₃) e^{-y}` on a slab.
pub fn exterior_d_series(base: &Grid, levels: usize) -> Result<RefinementSeries, HarnessError> {
    let mut h = Vec::new();
    let mut values = Vec::new();
    for g in refine_n(base, levels) {
        let f = LatticeField::from_fn(&g, 0, |x| vec![(TAU * x[0]).sin() * (TAU * x[1]).cos() * (-x[2]).exp()])?;
        let df = f.exterior_d()?;
        let exact = LatticeField::from_fn(&g, 1, |x| {
            let (s2, c2) = (TAU * x[0]).sin_cos();
            let (s3, c3) = (TAU * x[1]).sin_cos();
            let e = (-x[2]).exp();
            vec![TAU * c2 * c3 * e, -TAU * s2 * s3 * e, -s2 * c3 * e]
        })?;
        h.push(g.h());
        values.push(df.sub(&exact)?.l2_norm());
    }
    Ok(RefinementSeries { quantity: "exterior_d".into(), h, values, analytic: false })
}

/// KW residual of the Nahm pole with exact derivatives at each resolution.
pub fn nahm_pole_series(n: usize, base: &Grid, levels: usize) -> Result<RefinementSeries, HarnessError> {
    let t = principal_triple(n)?;
    let mut h = Vec::new();
    let mut values = Vec::new();
    for g in refine_n(base, levels) {
        let r = kw_residual_analytic(&g, |x| nahm_pole_jets(&t.t, x));
        h.push(g.h());
        values.push(r.total_l2());
    }
    Ok(RefinementSeries { quantity: "nahm_pole_residual".into(), h, values, analytic: true })
}
