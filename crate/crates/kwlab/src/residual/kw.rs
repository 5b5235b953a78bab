//! Four-dimensional equations: Kapustin–Witten and the decoupled flatness system.

use super::jet::{self, FormJet};
use super::report::{over_grid, ResidualReport};
use crate::lattice::{Grid, GridError, LatticeField};
use crate::lie::{LieElement, LieVec};

/// Pointwise KW residual.
#[derive(Debug, Clone, PartialEq)]
pub struct KwPoint<T> {
    /// `F_A - Φ∧Φ + ⋆₄ d_A Φ`, six components.
    pub two_form: Vec<T>,
    /// `d_A^⋆ Φ = -⋆₄ d_A ⋆₄ Φ`.
    pub scalar: T,
}

impl<T: LieVec> KwPoint<T> {
    pub fn norms_sq(&self) -> [f64; 2] {
        [jet::norm_sq(&self.two_form), self.scalar.norm_sq()]
    }
}

pub fn kw_point<T: LieVec>(a: &FormJet<T>, phi: &FormJet<T>) -> KwPoint<T> {
    let dim = a.dim;
    let f = jet::curvature(a);
    let pp = jet::self_wedge(dim, &phi.v);
    let dphi = jet::covariant_d(a, phi);
    let sd = jet::star(dim, 2, &dphi);
    let two_form = f.iter().zip(&pp).zip(&sd).map(|((x, y), z)| x.sub(y).add(z)).collect();
    let scalar = jet::codifferential(a, phi).remove(0);
    KwPoint { two_form, scalar }
}

pub const KW_EQUATIONS: [&str; 2] = ["kw_two_form", "kw_scalar"];

fn check_pair<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<(), GridError> {
    if a.grid != phi.grid {
        return Err(GridError::Mismatch);
    }
    if a.degree != 1 || phi.degree != 1 {
        return Err(GridError::BadDegree { degree: a.degree.max(phi.degree), dim: a.dim() });
    }
    if a.dim() != 4 {
        return Err(GridError::BadDegree { degree: 1, dim: a.dim() });
    }
    Ok(())
}

/// KW residual with finite-difference derivatives.
pub fn kw_residual<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<ResidualReport, GridError> {
    check_pair(a, phi)?;
    let ja = jet::grid_jets(a);
    let jp = jet::grid_jets(phi);
    Ok(over_grid(&a.grid, &KW_EQUATIONS, Some(a.grid.h()), "4d", |s| kw_point(&ja[s], &jp[s]).norms_sq().to_vec()))
}

/// KW residual from jets supplied per site (exact derivatives).
pub fn kw_residual_analytic<T: LieVec>(
    grid: &Grid,
    mut jets: impl FnMut(&[f64]) -> (FormJet<T>, FormJet<T>),
) -> ResidualReport {
    over_grid(grid, &KW_EQUATIONS, None, "4d", |s| {
        let (a, phi) = jets(&grid.coords(s));
        kw_point(&a, &phi).norms_sq().to_vec()
    })
}

/// Pointwise flatness residuals `F_A - Φ∧Φ`, `d_A Φ`, `d_A^⋆ Φ`.
pub fn flatness_point<T: LieVec>(a: &FormJet<T>, phi: &FormJet<T>) -> [Vec<T>; 3] {
    let dim = a.dim;
    let f = jet::curvature(a);
    let pp = jet::self_wedge(dim, &phi.v);
    [jet::sub(&f, &pp), jet::covariant_d(a, phi), jet::codifferential(a, phi)]
}

pub const FLATNESS_EQUATIONS: [&str; 3] = ["flat_curvature", "flat_d_phi", "flat_d_star_phi"];

pub fn flatness_residual<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<ResidualReport, GridError> {
    check_pair(a, phi)?;
    let ja = jet::grid_jets(a);
    let jp = jet::grid_jets(phi);
    Ok(over_grid(&a.grid, &FLATNESS_EQUATIONS, Some(a.grid.h()), "4d", |s| {
        flatness_point(&ja[s], &jp[s]).iter().map(|r| jet::norm_sq(r)).collect()
    }))
}

/// `‖F_𝒜‖` for the complex connection `𝒜 = A + iΦ`, computed by complexifying
/// the matrices and reusing the real curvature code.
pub fn complex_curvature_norm(
    a: &LatticeField<LieElement>,
    phi: &LatticeField<LieElement>,
) -> Result<f64, GridError> {
    check_pair(a, phi)?;
    let i = num_complex::Complex64::new(0.0, 1.0);
    let mut cal = a.map(|x| x.complexified());
    for (c, pc) in cal.comps.iter_mut().zip(&phi.comps) {
        for (x, p) in c.iter_mut().zip(pc) {
            *x = x.add(&p.scale_complex(i));
        }
    }
    let jc = jet::grid_jets(&cal);
    let r = over_grid(&a.grid, &["complex_curvature"], Some(a.grid.h()), "4d", |s| {
        vec![jet::norm_sq(&jet::curvature(&jc[s]))]
    });
    Ok(r.equations[0].l2)
}
