//! Right-hand sides of the KW equations written as an evolution in `y`
//! (temporal gauge `A_y = 0`) on a three-dimensional slice with axes
//! `(x1, x2, x3)`:
//!
//! * `∂_y A = ⋆ d_A φ + [φ_y, φ]`
//! * `∂_y φ = d_A φ_y + ⋆(F_A - φ∧φ)`
//! * `∂_y φ_y = d_A^⋆ φ`

use super::jet::{self, FormJet};
use crate::lattice::{GridError, LatticeField};
use crate::lie::LieVec;

/// Pointwise flow right-hand sides `(∂_y A, ∂_y φ, ∂_y φ_y)`.
pub fn flow_point<T: LieVec>(a: &FormJet<T>, phi: &FormJet<T>, phiy: &FormJet<T>) -> (Vec<T>, Vec<T>, T) {
    let dim = a.dim;
    let comm: Vec<T> = phi.v.iter().map(|p| phiy.v[0].bracket(p)).collect();
    let da = jet::add(&jet::star(dim, 2, &jet::covariant_d(a, phi)), &comm);
    let f = jet::sub(&jet::curvature(a), &jet::self_wedge(dim, &phi.v));
    let dphi = jet::add(&jet::covariant_d(a, phiy), &jet::star(dim, 2, &f));
    let dphiy = jet::codifferential(a, phi).remove(0);
    (da, dphi, dphiy)
}

/// Flow right-hand sides as slice fields.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowRhs<T> {
    pub da: LatticeField<T>,
    pub dphi: LatticeField<T>,
    pub dphiy: LatticeField<T>,
}

pub fn flow_rhs<T: LieVec>(
    a: &LatticeField<T>,
    phi: &LatticeField<T>,
    phiy: &LatticeField<T>,
) -> Result<FlowRhs<T>, GridError> {
    if a.grid != phi.grid || a.grid != phiy.grid {
        return Err(GridError::Mismatch);
    }
    if a.dim() != 3 || a.degree != 1 || phi.degree != 1 || phiy.degree != 0 {
        return Err(GridError::BadDegree { degree: a.degree, dim: a.dim() });
    }
    let ja = jet::grid_jets(a);
    let jp = jet::grid_jets(phi);
    let jy = jet::grid_jets(phiy);
    let zero = a.comps[0][0].zero_like();
    let mut out = FlowRhs {
        da: LatticeField::zeros(&a.grid, 1, &zero)?,
        dphi: LatticeField::zeros(&a.grid, 1, &zero)?,
        dphiy: LatticeField::zeros(&a.grid, 0, &zero)?,
    };
    for s in 0..a.grid.len() {
        let (x, y, z) = flow_point(&ja[s], &jp[s], &jy[s]);
        for c in 0..3 {
            out.da.comps[c][s] = x[c].clone();
            out.dphi.comps[c][s] = y[c].clone();
        }
        out.dphiy.comps[0][s] = z;
    }
    Ok(out)
}
