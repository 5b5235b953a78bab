//! The operators `𝒟₁ = ∇₂ + i∇₃`, `𝒟₂ = Ψ = φ₂ - iφ₃` and `𝒟₃ = ∇_y - iφ₁`
//! acting on sections over the slab `Σ × ℝ⁺`, together with the moment map.
//!
//! Each operator has the form `∂ + α` with a constant-coefficient derivative
//! `∂` (zero for `𝒟₂`). Sections are stored as `n×m` matrices whose columns are
//! independent test sections.
//!
//! For a metric `H` the partner of `∂ + α` is `∂̄ + H⁻¹∂̄H - H⁻¹α^†H`, where
//! `∂̄` is the complex-conjugate derivative. Reading each `[𝒟, 𝒟^†]` as
//! `dz∧dz̄ ⊗ [D, D']` and contracting with `Λ(dz∧dz̄) = -2i`, the moment map is
//! `μ = [D₁, D₁'] + [Ψ, Ψ'] + [D₃, D₃']`, which equals `-2i E1_{23}` for the
//! identity metric.

use super::hitchin::{cm, complex_partial, HermitianMetricField, I};
use super::report::{over_grid, ResidualReport};
use super::ResidualError;
use crate::lattice::{partial, Grid, LatticeField};
use crate::lie::{LieElement, LieVec};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Coefficients of the three operators on a slab grid with axes `(x2, x3, y)`.
#[derive(Debug, Clone)]
pub struct DOperators {
    pub grid: Grid,
    /// `A_2 + i A_3`.
    pub alpha1: Vec<LieElement>,
    /// `φ_2 - i φ_3`.
    pub psi: Vec<LieElement>,
    /// `A_y - i φ_1`.
    pub alpha3: Vec<LieElement>,
}

pub fn d_operators(
    a: &LatticeField<LieElement>,
    phi: &LatticeField<LieElement>,
    phi1: &LatticeField<LieElement>,
) -> Result<DOperators, ResidualError> {
    let grid = &a.grid;
    if grid.dim() != 3 || phi.grid != *grid || phi1.grid != *grid {
        return Err(ResidualError::Shape("operators need fields on one slab grid".into()));
    }
    if a.degree != 1 || phi.degree != 1 || phi1.degree != 0 {
        return Err(ResidualError::Shape("expected (1-form, 1-form, 0-form)".into()));
    }
    let mi = -I;
    let n = grid.len();
    Ok(DOperators {
        grid: grid.clone(),
        alpha1: (0..n).map(|s| cm(a.comps[0][s].matrix() + a.comps[1][s].matrix() * I)).collect(),
        psi: (0..n).map(|s| cm(phi.comps[0][s].matrix() + phi.comps[1][s].matrix() * mi)).collect(),
        alpha3: (0..n).map(|s| cm(a.comps[2][s].matrix() + phi1.comps[0][s].matrix() * mi)).collect(),
    })
}

fn left_mul(a: &[LieElement], s: &[LieElement]) -> Vec<LieElement> {
    a.iter().zip(s).map(|(x, y)| cm(x.matrix() * y.matrix())).collect()
}

impl DOperators {
    /// Applies `𝒟_i` (`i ∈ {1,2,3}`) to a matrix of sections.
    pub fn apply(&self, i: usize, s: &[LieElement]) -> Vec<LieElement> {
        match i {
            1 => {
                let d = complex_partial(&self.grid, s, 0, 1, I);
                d.iter().zip(left_mul(&self.alpha1, s)).map(|(x, y)| x.add(&y)).collect()
            }
            2 => left_mul(&self.psi, s),
            3 => {
                let d = partial(&self.grid, s, 2);
                d.iter().zip(left_mul(&self.alpha3, s)).map(|(x, y)| x.add(&y)).collect()
            }
            _ => panic!("operator index must be 1, 2 or 3"),
        }
    }

    /// `[𝒟_i, 𝒟_j] s` by applying the operators in both orders.
    pub fn commutator(&self, i: usize, j: usize, s: &[LieElement]) -> Vec<LieElement> {
        let ij = self.apply(i, &self.apply(j, s));
        let ji = self.apply(j, &self.apply(i, s));
        ij.iter().zip(&ji).map(|(x, y)| x.sub(y)).collect()
    }
}

/// Norms of `[𝒟_i, 𝒟_j]` applied to each supplied section field.
pub fn commutator_residual(
    ops: &DOperators,
    i: usize,
    j: usize,
    sections: &[Vec<LieElement>],
) -> Result<ResidualReport, ResidualError> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(ResidualError::Shape(format!("invalid operator pair ({i}, {j})")));
    }
    let outs: Vec<Vec<LieElement>> = sections.iter().map(|s| ops.commutator(i, j, s)).collect();
    Ok(over_grid(&ops.grid, &["commutator"], Some(ops.grid.h()), "3d", |site| {
        vec![outs.iter().map(|o| o[site].norm_sq()).fold(0.0, f64::max)]
    }))
}

/// `[∂ + α, ∂' + β] = ∂β - ∂'α + [α, β]` for commuting constant derivatives.
fn operator_commutator(
    grid: &Grid,
    alpha: &[LieElement],
    beta: &[LieElement],
    deriv: &dyn Fn(&[LieElement]) -> Vec<LieElement>,
    deriv_conj: &dyn Fn(&[LieElement]) -> Vec<LieElement>,
) -> Vec<LieElement> {
    let db = deriv(beta);
    let da = deriv_conj(alpha);
    (0..grid.len())
        .map(|s| {
            let c = alpha[s].matrix() * beta[s].matrix() - beta[s].matrix() * alpha[s].matrix();
            cm(db[s].matrix() - da[s].matrix() + c)
        })
        .collect()
}

/// Pointwise moment map `μ` for a metric on the slab.
pub fn moment_map(ops: &DOperators, h: &HermitianMetricField) -> Result<Vec<LieElement>, ResidualError> {
    let grid = &ops.grid;
    if h.grid != *grid {
        return Err(ResidualError::Shape("metric grid differs from operator grid".into()));
    }
    let hm: Vec<LieElement> = h.values.iter().map(|x| cm(x.clone())).collect();
    let partner = |alpha: &[LieElement], dconj_h: &[LieElement]| -> Vec<LieElement> {
        (0..grid.len())
            .map(|s| {
                let hinv = h.inverse(s);
                cm(&hinv * dconj_h[s].matrix() - &hinv * alpha[s].matrix().adjoint() * &h.values[s])
            })
            .collect()
    };
    let d1 = |v: &[LieElement]| complex_partial(grid, v, 0, 1, I);
    let d1c = |v: &[LieElement]| complex_partial(grid, v, 0, 1, -I);
    let d3 = |v: &[LieElement]| partial(grid, v, 2);
    let beta1 = partner(&ops.alpha1, &d1c(&hm));
    let beta3 = partner(&ops.alpha3, &d3(&hm));
    let m1 = operator_commutator(grid, &ops.alpha1, &beta1, &d1, &d1c);
    let m3 = operator_commutator(grid, &ops.alpha3, &beta3, &d3, &d3);
    Ok((0..grid.len())
        .map(|s| {
            let psi = ops.psi[s].matrix();
            let psi_p: DMatrix<Complex64> = -h.star(s, psi);
            let m2 = psi * &psi_p - &psi_p * psi;
            cm(m1[s].matrix() + m2 + m3[s].matrix())
        })
        .collect())
}

pub fn moment_map_residual(ops: &DOperators, h: &HermitianMetricField) -> Result<ResidualReport, ResidualError> {
    let mu = moment_map(ops, h)?;
    Ok(over_grid(&ops.grid, &["moment_map"], Some(ops.grid.h()), "3d", |s| vec![mu[s].norm_sq()]))
}
