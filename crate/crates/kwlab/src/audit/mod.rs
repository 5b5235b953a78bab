//! Numerical witnesses for two integral identities on `T³ × [y₀, y₁]`.
//!
//! **Weitzenböck rearrangement.** Writing `Φ = φ + φ₁ dx₁` with `φ` tangent
//! to `Y = (x2, x3, y)`,
//!
//! `∫|KW|² = ∫|F_A - φ∧φ - ⋆d_Aφ₁|² + |∇₁φ|² + |B_A|² + |[φ,φ₁] + ⋆d_Aφ|²
//!          + |d_A^⋆φ|² + |∇₁φ₁|² + ∫χ`
//!
//! where `∫χ` is a `∇₁` total derivative (zero on the circle) plus
//! `2∫dTr(B_A∧φ)∧dx₁ = 2(S(y₁) - S(y₀))`, `S(y) = ∫_{T³}⟨B₂,φ₃⟩ - ⟨B₃,φ₂⟩`.
//!
//! **Energy identity.** On flat `T³`,
//!
//! `∫|KW|² = ∫|F_A|² + |∇_A^⊥Φ|² + |∇_yφ + ⋆φ∧φ|² + ⟨Ric(φ),φ⟩ - 2(T(y₁) - T(y₀))`
//!
//! with `∇_A^⊥Φ` the `T³` covariant derivatives of the `T³` components of `Φ`,
//! `Ric = 0`, and `T(y) = ∫_{T³}⟨φ₁,F₂₃⟩ - ⟨φ₂,F₁₃⟩ + ⟨φ₃,F₁₂⟩`.
//!
//! Both identities hold for arbitrary fields, so on a grid the gap between
//! the sides measures only discretisation error and should shrink like `h²`.
//! Fields are taken in the gauge `A_y = 0` with `φ_y = 0`.

pub mod kernel;
pub mod random;

use crate::lattice::{Grid, GridError, LatticeField};
use crate::lie::LieVec;
use crate::residual::observed_order;
use kernel::{stream, SliceSource, StreamTotals};
use thiserror::Error;

pub use kernel::SliceFields;
pub use random::{LatticeSource, RandomAuditField, RandomFieldSource, RandomFieldSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AuditError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("non-finite value in an audit term")]
    NonFinite,
    #[error("refinement study needs at least three resolutions, got {0}")]
    TooFewLevels(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// One side-by-side evaluation of an identity.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AuditReport {
    pub identity: &'static str,
    pub lhs: f64,
    pub rhs_bulk: f64,
    pub rhs_boundary: f64,
    /// `lhs - rhs_bulk - rhs_boundary`.
    pub defect: f64,
    pub gap: f64,
    /// `gap / (|lhs| + 1)`.
    pub relative_gap: f64,
    pub h: f64,
    /// Individual bulk and boundary contributions.
    pub terms: Vec<(&'static str, f64)>,
}

impl AuditReport {
    fn new(identity: &'static str, lhs: f64, bulk: f64, boundary: f64, h: f64, terms: Vec<(&'static str, f64)>) -> Self {
        let defect = lhs - bulk - boundary;
        let gap = defect.abs();
        AuditReport { identity, lhs, rhs_bulk: bulk, rhs_boundary: boundary, defect, gap, relative_gap: gap / (lhs.abs() + 1.0), h, terms }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// Both identities from one pass over the fields.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AuditPair {
    pub weitzenbock: AuditReport,
    pub t3: AuditReport,
}

pub const WEITZENBOCK_TERMS: [&str; 6] =
    ["ebe_curvature", "nabla1_phi", "b_a", "ebe_higgs", "ebe_gauge", "nabla1_phi1"];
pub const T3_TERMS: [&str; 4] = ["curvature", "transverse_gradient", "nahm", "ricci"];

fn reports(t: &StreamTotals, h: f64) -> AuditPair {
    let bulk: f64 = t.ebe.iter().sum();
    let ny = t.s_slices.len();
    let chi = t.chi_nabla1 + t.chi_boundary;
    let mut wterms: Vec<(&'static str, f64)> = WEITZENBOCK_TERMS.iter().copied().zip(t.ebe).collect();
    wterms.push(("chi_nabla1", t.chi_nabla1));
    wterms.push(("chi_boundary", t.chi_boundary));
    wterms.push(("chi_slices", 2.0 * (t.s_slices[ny - 1] - t.s_slices[0])));
    let weitzenbock = AuditReport::new("weitzenbock", t.lhs, bulk, chi, h, wterms);

    let t3bulk: f64 = t.t3.iter().sum();
    let mut tterms: Vec<(&'static str, f64)> = T3_TERMS.iter().copied().zip(t.t3.iter().copied().chain([0.0])).collect();
    tterms.push(("boundary_slices", -2.0 * (t.t_slices[ny - 1] - t.t_slices[0])));
    let t3 = AuditReport::new("t3_energy", t.lhs, t3bulk, t.t3_boundary, h, tterms);
    AuditPair { weitzenbock, t3 }
}

/// Evaluates both identities for any slice source.
pub fn audit_source<T: LieVec, S: SliceSource<T> + ?Sized>(src: &S) -> Result<AuditPair, AuditError> {
    let totals = stream(src)?;
    Ok(reports(&totals, src.grid().h()))
}

/// Both identities for stored lattice fields `(Â, Φ̂)` on `T³ × [y₀, y₁]`.
pub fn audit_fields<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<AuditPair, AuditError> {
    audit_source(&LatticeSource::new(a, phi)?)
}

pub fn weitzenbock_gap<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<AuditReport, AuditError> {
    Ok(audit_fields(a, phi)?.weitzenbock)
}

pub fn t3_energy_gap<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<AuditReport, AuditError> {
    Ok(audit_fields(a, phi)?.t3)
}

/// The two pieces of `∫χ` together with the direct slice evaluation of the
/// boundary piece.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ChiIntegral {
    /// Quadrature of the `∇₁` total derivative.
    pub nabla1: f64,
    /// Quadrature of `2 dTr(B_A∧φ)∧dx₁` over the slab.
    pub boundary: f64,
    /// `2(S(y₁) - S(y₀))` from the end slices alone.
    pub slices: f64,
}

impl ChiIntegral {
    pub fn total(&self) -> f64 {
        self.nabla1 + self.boundary
    }
}

pub fn chi_integral<T: LieVec>(a: &LatticeField<T>, phi: &LatticeField<T>) -> Result<ChiIntegral, AuditError> {
    let t = stream(&LatticeSource::new(a, phi)?)?;
    let ny = t.s_slices.len();
    Ok(ChiIntegral { nabla1: t.chi_nabla1, boundary: t.chi_boundary, slices: 2.0 * (t.s_slices[ny - 1] - t.s_slices[0]) })
}

/// `(‖∇₁φ‖, ‖B_A‖, ‖∇₁φ₁‖)` as `L²` norms from a Weitzenböck report.
pub fn invariance_witness(r: &AuditReport) -> [f64; 3] {
    let g = |n: &str| r.term(n).unwrap_or(f64::NAN).max(0.0).sqrt();
    [g("nabla1_phi"), g("b_a"), g("nabla1_phi1")]
}

/// One row of a boundary decay table.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BoundarySample {
    pub y: f64,
    /// `∫_{T³ × {y}} Tr(B_A ∧ φ)`.
    pub value: f64,
}

/// Slice integrals `∫_{y=ε} Tr(B_A∧φ)` for each `ε`. `slice(y)` returns
/// `(A_{x1..x3}, φ_{x1..x3})` sampled on the periodic grid `torus`.
pub fn boundary_decay<T: LieVec>(
    torus: &Grid,
    eps: &[f64],
    mut slice: impl FnMut(f64) -> ([Vec<T>; 3], [Vec<T>; 3]),
) -> Result<Vec<BoundarySample>, AuditError> {
    let ax = torus.axes();
    if torus.dim() != 3 || ax.iter().any(|a| !a.periodic) {
        return Err(AuditError::Shape("boundary slices live on a periodic three-torus".into()));
    }
    let (n0, n1, n2) = (ax[0].n, ax[1].n, ax[2].n);
    let cell = ax[0].h * ax[1].h * ax[2].h;
    let mut out = Vec::with_capacity(eps.len());
    for &y in eps {
        let (a, p) = slice(y);
        if a.iter().chain(&p).any(|v| v.len() != torus.len()) {
            return Err(AuditError::Shape("slice sample count".into()));
        }
        let d = |v: &[T], axis: usize| crate::lattice::partial(torus, v, axis);
        // B_{x2} = -F_{x1 x2}, B_{x3} = -F_{x1 x3}
        let (d0a1, d1a0, d0a2, d2a0) = (d(&a[1], 0), d(&a[0], 1), d(&a[2], 0), d(&a[0], 2));
        let mut rows = Vec::with_capacity(n0 * n1);
        let mut q = 0;
        for _ in 0..n0 * n1 {
            let mut s = 0.0;
            for _ in 0..n2 {
                let b2 = d0a1[q].sub(&d1a0[q]).add(&a[0][q].bracket(&a[1][q])).neg();
                let b3 = d0a2[q].sub(&d2a0[q]).add(&a[0][q].bracket(&a[2][q])).neg();
                // Tr(XY) = -⟨X, Y⟩
                s -= b2.inner(&p[2][q]) - b3.inner(&p[1][q]);
                q += 1;
            }
            rows.push(s);
        }
        let value = crate::lattice::pairwise_sum(&rows) * cell;
        if !value.is_finite() {
            return Err(AuditError::NonFinite);
        }
        out.push(BoundarySample { y, value });
    }
    Ok(out)
}

/// Audits of one field at successively refined grids plus observed orders
/// of both defects.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AuditRefinement {
    pub levels: Vec<AuditPair>,
    pub weitzenbock_order: Option<f64>,
    pub t3_order: Option<f64>,
}

/// Runs `levels` audits of a random field starting at `base`, halving the
/// spacing each time.
pub fn refine_random(field: &RandomAuditField, base: &Grid, levels: usize) -> Result<AuditRefinement, AuditError> {
    if levels < 3 {
        return Err(AuditError::TooFewLevels(levels));
    }
    let mut grid = base.clone();
    let mut out = Vec::with_capacity(levels);
    for i in 0..levels {
        if i > 0 {
            grid = grid.refined();
        }
        out.push(audit_source(&field.source(&grid))?);
    }
    let w: Vec<f64> = out.iter().map(|p| p.weitzenbock.defect).collect();
    let t: Vec<f64> = out.iter().map(|p| p.t3.defect).collect();
    Ok(AuditRefinement { weitzenbock_order: observed_order(&w), t3_order: observed_order(&t), levels: out })
}
