//! Hitchin's equations on the flat unit torus with axes `(x2, x3)`.
//!
//! The Higgs field is the `dz` coefficient `ϕ` of a `(1,0)`-form, `z = x2 + i x3`.
//! For a unitary connection `A` the holomorphic structure is
//! `∂̄_A = ∂_z̄ + A_z̄` with `A_z̄ = (A_2 + i A_3)/2`. Given a Hermitian metric
//! `H` the Chern connection adds `∂ + H⁻¹∂H - H⁻¹A_z̄^† H`. The reported
//! residuals are the `dx2∧dx3` coefficient of `F_H + [ϕ, ϕ^{⋆H}]`, i.e.
//! `-2i (F_{zz̄} + [ϕ, H⁻¹ϕ^†H])`, and `∂̄_A ϕ`.

use super::report::{over_grid, ResidualReport};
use super::ResidualError;
use crate::lattice::{partial, Grid, LatticeField};
use crate::lie::{Algebra, LieElement, LieVec};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) fn cm(m: DMatrix<Complex64>) -> LieElement {
    LieElement::from_matrix_unchecked(m, Algebra::SlNC)
}

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Positive-definite Hermitian `det = 1` matrices, one per site.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMetricField {
    pub grid: Grid,
    pub values: Vec<DMatrix<Complex64>>,
}

impl HermitianMetricField {
    pub fn new(grid: &Grid, values: Vec<DMatrix<Complex64>>) -> Result<Self, ResidualError> {
        if values.len() != grid.len() {
            return Err(ResidualError::Shape("metric sample count".into()));
        }
        for (site, h) in values.iter().enumerate() {
            let herm = (h - h.adjoint()).norm();
            if herm > 1e-10 * h.norm().max(1.0) {
                return Err(ResidualError::MetricNotPositive { site });
            }
            if h.clone().cholesky().is_none() {
                return Err(ResidualError::MetricNotPositive { site });
            }
            let det = h.determinant();
            if (det - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
                return Err(ResidualError::MetricDeterminant { site, det: det.re });
            }
        }
        Ok(HermitianMetricField { grid: grid.clone(), values })
    }

    pub fn identity(grid: &Grid, n: usize) -> Self {
        HermitianMetricField { grid: grid.clone(), values: vec![DMatrix::identity(n, n); grid.len()] }
    }

    pub fn inverse(&self, site: usize) -> DMatrix<Complex64> {
        self.values[site].clone().try_inverse().expect("positive definite")
    }

    /// `H⁻¹ X^† H`.
    pub fn star(&self, site: usize, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        self.inverse(site) * x.adjoint() * &self.values[site]
    }
}

/// Inputs of [`hitchin_residual`].
#[derive(Debug, Clone)]
pub struct HitchinData {
    /// Unitary connection 1-form on the torus.
    pub a: LatticeField<LieElement>,
    /// The `dz` coefficient of the Higgs field.
    pub higgs: LatticeField<LieElement>,
    pub metric: HermitianMetricField,
}

pub const HITCHIN_EQUATIONS: [&str; 2] = ["hitchin_curvature", "hitchin_holomorphic"];

/// Complex derivative `(∂_a + c ∂_b)` of a matrix field along two grid axes.
pub(crate) fn complex_partial(
    grid: &Grid,
    vals: &[LieElement],
    ax_re: usize,
    ax_im: usize,
    c: Complex64,
) -> Vec<LieElement> {
    let d1 = partial(grid, vals, ax_re);
    let d2 = partial(grid, vals, ax_im);
    d1.iter().zip(&d2).map(|(x, y)| cm(x.matrix() + y.matrix() * c)).collect()
}

/// Pointwise `(HR_23, ∂̄_A ϕ)` fields.
pub fn hitchin_fields(d: &HitchinData) -> Result<(Vec<LieElement>, Vec<LieElement>), ResidualError> {
    let grid = &d.a.grid;
    if grid.dim() != 2 || d.higgs.grid != *grid || d.metric.grid != *grid {
        return Err(ResidualError::Shape("Hitchin data must live on one two-dimensional grid".into()));
    }
    if d.a.degree != 1 || d.higgs.degree != 0 {
        return Err(ResidualError::Shape("expected a 1-form connection and a 0-form Higgs coefficient".into()));
    }
    let half = Complex64::new(0.5, 0.0);
    let alpha: Vec<LieElement> = (0..grid.len())
        .map(|s| cm((d.a.comps[0][s].matrix() + d.a.comps[1][s].matrix() * I) * half))
        .collect();
    let hmat: Vec<LieElement> = d.metric.values.iter().map(|h| cm(h.clone())).collect();
    let dz_h = complex_partial(grid, &hmat, 0, 1, -I);
    let beta: Vec<LieElement> = (0..grid.len())
        .map(|s| {
            let hinv = d.metric.inverse(s);
            cm(&hinv * dz_h[s].matrix() * half - &hinv * alpha[s].matrix().adjoint() * &d.metric.values[s])
        })
        .collect();
    let dz_alpha = complex_partial(grid, &alpha, 0, 1, -I);
    let dzb_beta = complex_partial(grid, &beta, 0, 1, I);
    let phi = &d.higgs.comps[0];
    let dzb_phi = complex_partial(grid, phi, 0, 1, I);
    let mut hr = Vec::with_capacity(grid.len());
    let mut hol = Vec::with_capacity(grid.len());
    for s in 0..grid.len() {
        let fzz = dz_alpha[s].matrix() * half - dzb_beta[s].matrix() * half
            + (beta[s].matrix() * alpha[s].matrix() - alpha[s].matrix() * beta[s].matrix());
        let p = phi[s].matrix();
        let ps = d.metric.star(s, p);
        let comm = p * &ps - &ps * p;
        hr.push(cm((fzz + comm) * Complex64::new(0.0, -2.0)));
        hol.push(cm(dzb_phi[s].matrix() * half + alpha[s].matrix() * p - p * alpha[s].matrix()));
    }
    Ok((hr, hol))
}

pub fn hitchin_residual(d: &HitchinData) -> Result<ResidualReport, ResidualError> {
    let (hr, hol) = hitchin_fields(d)?;
    Ok(over_grid(&d.a.grid, &HITCHIN_EQUATIONS, Some(d.a.grid.h()), "2d", |s| {
        vec![hr[s].norm_sq(), hol[s].norm_sq()]
    }))
}
