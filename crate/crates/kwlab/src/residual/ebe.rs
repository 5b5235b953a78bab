//! Extended Bogomolny equations on `Σ × ℝ⁺` with axes `(x2, x3, y)`:
//!
//! * `E1 = F_A - φ∧φ - ⋆ d_A φ₁`
//! * `E2 = d_A φ + ⋆[φ, φ₁]`
//! * `E3 = d_A^⋆ φ`
//!
//! with the three-dimensional star for orientation `dx2 ∧ dx3 ∧ dy`.

use super::jet::{self, FormJet};
use super::report::{over_grid, ResidualReport};
use crate::lattice::{Grid, GridError, LatticeField};
use crate::lie::LieVec;

/// An EBE field triple on a three-dimensional slab.
#[derive(Debug, Clone, PartialEq)]
pub struct EbeFields<T> {
    pub a: LatticeField<T>,
    pub phi: LatticeField<T>,
    pub phi1: LatticeField<T>,
}

impl<T: LieVec> EbeFields<T> {
    pub fn new(a: LatticeField<T>, phi: LatticeField<T>, phi1: LatticeField<T>) -> Result<Self, GridError> {
        if a.grid != phi.grid || a.grid != phi1.grid {
            return Err(GridError::Mismatch);
        }
        if a.dim() != 3 || a.degree != 1 || phi.degree != 1 || phi1.degree != 0 {
            return Err(GridError::BadDegree { degree: a.degree, dim: a.dim() });
        }
        Ok(EbeFields { a, phi, phi1 })
    }

    pub fn grid(&self) -> &Grid {
        &self.a.grid
    }
}

/// Pointwise `(E1, E2, E3)`.
pub fn ebe_point<T: LieVec>(a: &FormJet<T>, phi: &FormJet<T>, phi1: &FormJet<T>) -> (Vec<T>, Vec<T>, T) {
    let f = jet::curvature(a);
    let pp = jet::self_wedge(3, &phi.v);
    let dphi1 = jet::covariant_d(a, phi1);
    let e1: Vec<T> = f
        .iter()
        .zip(&pp)
        .zip(jet::star(3, 1, &dphi1))
        .map(|((x, y), z)| x.sub(y).sub(&z))
        .collect();
    let comm: Vec<T> = phi.v.iter().map(|p| p.bracket(&phi1.v[0])).collect();
    let e2 = jet::add(&jet::covariant_d(a, phi), &jet::star(3, 1, &comm));
    let e3 = jet::codifferential(a, phi).remove(0);
    (e1, e2, e3)
}

pub const EBE_EQUATIONS: [&str; 3] = ["ebe_curvature", "ebe_higgs", "ebe_gauge"];

pub fn ebe_residual<T: LieVec>(f: &EbeFields<T>) -> ResidualReport {
    let ja = jet::grid_jets(&f.a);
    let jp = jet::grid_jets(&f.phi);
    let j1 = jet::grid_jets(&f.phi1);
    over_grid(f.grid(), &EBE_EQUATIONS, Some(f.grid().h()), "3d", |s| {
        let (e1, e2, e3) = ebe_point(&ja[s], &jp[s], &j1[s]);
        vec![jet::norm_sq(&e1), jet::norm_sq(&e2), e3.norm_sq()]
    })
}

/// EBE residual from exact jets supplied per site.
pub fn ebe_residual_analytic<T: LieVec>(
    grid: &Grid,
    mut jets: impl FnMut(&[f64]) -> (FormJet<T>, FormJet<T>, FormJet<T>),
) -> ResidualReport {
    over_grid(grid, &EBE_EQUATIONS, None, "3d", |s| {
        let (a, p, p1) = jets(&grid.coords(s));
        let (e1, e2, e3) = ebe_point(&a, &p, &p1);
        vec![jet::norm_sq(&e1), jet::norm_sq(&e2), e3.norm_sq()]
    })
}
