//! Closed-form field configurations: the Nahm pole, the `SU(2)` knot model of
//! weight `k`, the Hitchin-section Higgs field and the lift of
//! three-dimensional EBE data to `S¹ × Σ × ℝ⁺`.
//!
//! Conventions for the knot model. With `z = x2 + i x3` and the complex
//! coefficient `φ_z` of the display, the real components are
//! `φ₂ = (φ_z - φ_z^†)/2` and `φ₃ = (i/2)(φ_z + φ_z^†)`. The diagonal generator
//! multiplying `A` and `φ₁` is `H = diag(i/2, -i/2)`.

use crate::lattice::{Grid, GridError, LatticeField, SphericalPoint};
use crate::lie::{Algebra, LieElement, LieVec, PrincipalTriple};
use crate::residual::jet::FormJet;
use crate::residual::{kw_point, EbeFields};
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("spherical point outside the model domain (R={r}, s={s})")]
    OutsideDomain { r: f64, s: f64 },
    #[error("expected {expected} differentials q_2..q_n, got {got}")]
    WrongDifferentialCount { expected: usize, got: usize },
    #[error("rank must be at least 2, got {0}")]
    Rank(usize),
    #[error("input carries a forbidden component: {0}")]
    ForbiddenComponent(&'static str),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A tuple of nonnegative knot weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&k| k as u64).sum()
    }
}

// ----- Nahm pole -----

/// `A = 0`, `Φ = (t₁dx₁ + t₂dx₂ + t₃dx₃)/y` sampled on a four-dimensional grid.
pub fn nahm_pole_field(
    t: &PrincipalTriple,
    grid: &Grid,
) -> Result<(LatticeField<LieElement>, LatticeField<LieElement>), ModelError> {
    if grid.dim() != 4 || grid.open_axis() != Some(3) {
        return Err(GridError::Mismatch.into());
    }
    let zero = t.t[0].zero_like();
    let a = LatticeField::zeros(grid, 1, &zero)?;
    let phi = LatticeField::from_fn(grid, 1, |x| {
        let y = x[3];
        vec![t.t[0].scale(1.0 / y), t.t[1].scale(1.0 / y), t.t[2].scale(1.0 / y), zero.clone()]
    })?;
    Ok((a, phi))
}

/// Exact jets `(A, Φ)` of the Nahm pole at a point `(x1, x2, x3, y)`.
pub fn nahm_pole_jets<T: LieVec>(t: &[T; 3], x: &[f64]) -> (FormJet<T>, FormJet<T>) {
    let y = x[3];
    let zero = t[0].zero_like();
    let a = FormJet::zero(4, 1, &zero);
    let mut phi = FormJet::zero(4, 1, &zero);
    for c in 0..3 {
        phi.v[c] = t[c].scale(1.0 / y);
        phi.d[3][c] = t[c].scale(-1.0 / (y * y));
    }
    (a, phi)
}

/// The EBE form of the Nahm pole on a slab `(x2, x3, y)`:
/// `A = 0`, `φ = (t₂dx₂ + t₃dx₃)/y`, `φ₁ = t₁/y`.
pub fn nahm_pole_ebe(t: &PrincipalTriple, grid: &Grid) -> Result<EbeFields<LieElement>, ModelError> {
    if grid.dim() != 3 || grid.open_axis() != Some(2) {
        return Err(GridError::Mismatch.into());
    }
    let zero = t.t[0].zero_like();
    let a = LatticeField::zeros(grid, 1, &zero)?;
    let phi = LatticeField::from_fn(grid, 1, |x| {
        vec![t.t[1].scale(1.0 / x[2]), t.t[2].scale(1.0 / x[2]), zero.clone()]
    })?;
    let phi1 = LatticeField::from_fn(grid, 0, |x| vec![t.t[0].scale(1.0 / x[2])])?;
    Ok(EbeFields::new(a, phi, phi1)?)
}

/// Exact jets of [`nahm_pole_ebe`] at `(x2, x3, y)`.
pub fn nahm_pole_ebe_jets<T: LieVec>(t: &[T; 3], x: &[f64]) -> (FormJet<T>, FormJet<T>, FormJet<T>) {
    let y = x[2];
    let zero = t[0].zero_like();
    let a = FormJet::zero(3, 1, &zero);
    let mut phi = FormJet::zero(3, 1, &zero);
    let mut phi1 = FormJet::zero(3, 0, &zero);
    for c in 0..2 {
        phi.v[c] = t[c + 1].scale(1.0 / y);
        phi.d[2][c] = t[c + 1].scale(-1.0 / (y * y));
    }
    phi1.v[0] = t[0].scale(1.0 / y);
    phi1.d[2][0] = t[0].scale(-1.0 / (y * y));
    (a, phi, phi1)
}

// ----- EBE lift -----

/// Lifts an EBE triple on `(x2, x3, y)` to `S¹ × Σ × ℝ⁺` with `n1` points on
/// the circle: `Â = A`, `Φ̂ = φ + φ₁ dx₁`. The input must have `A_y = 0` and
/// `φ_y = 0`.
pub fn pullback_to_kw<T: LieVec>(
    f: &EbeFields<T>,
    n1: usize,
) -> Result<(LatticeField<T>, LatticeField<T>), ModelError> {
    let g3 = f.grid();
    if f.a.comps[2].iter().any(|x| x.norm_sq() > 0.0) {
        return Err(ModelError::ForbiddenComponent("A has a dy component"));
    }
    if f.phi.comps[2].iter().any(|x| x.norm_sq() > 0.0) {
        return Err(ModelError::ForbiddenComponent("phi has a dy component"));
    }
    let ax = g3.axes();
    let yend = ax[2].origin + ax[2].h * (ax[2].n as f64 - 1.0);
    let g4 = Grid::product4(n1, ax[0].n, ax[1].n, ax[2].n, ax[2].origin, yend)?;
    let zero = f.a.comps[0][0].zero_like();
    let mut a = LatticeField::zeros(&g4, 1, &zero)?;
    let mut phi = LatticeField::zeros(&g4, 1, &zero)?;
    let per = g3.len();
    for site in 0..g4.len() {
        let s3 = site % per;
        for c in 0..3 {
            a.comps[c + 1][site] = f.a.comps[c][s3].clone();
        }
        phi.comps[0][site] = f.phi1.comps[0][s3].clone();
        phi.comps[1][site] = f.phi.comps[0][s3].clone();
        phi.comps[2][site] = f.phi.comps[1][s3].clone();
    }
    Ok((a, phi))
}

// ----- SU(2) knot model -----

/// The diagonal generator `diag(i/2, -i/2)`.
pub fn knot_diagonal() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[Complex64::new(0.0, 0.5), 0.0.into(), 0.0.into(), Complex64::new(0.0, -0.5)])
}

/// `e₊ = [[0, 1], [0, 0]]`.
pub fn raising() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[0.0.into(), 1.0.into(), 0.0.into(), 0.0.into()])
}

/// Scalar profiles of the weight-`k` model at a spherical point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotModelValues {
    /// Coefficient of `dθ ⊗ H`.
    pub a_theta: f64,
    /// Coefficient of `e₊` in `φ_z`.
    pub phi_z: Complex64,
    /// Coefficient of `H` in `φ₁`.
    pub phi1: f64,
}

pub fn su2_knot_model(k: u32, p: &SphericalPoint) -> Result<KnotModelValues, ModelError> {
    if !(p.r > 0.0 && p.s > 0.0 && p.s <= std::f64::consts::FRAC_PI_2 + 1e-12) {
        return Err(ModelError::OutsideDomain { r: p.r, s: p.s });
    }
    Ok(knot_profiles(k, p.r, p.s, p.theta))
}

/// The display evaluated without domain checks (used by the differencing
/// stencils, which step slightly past `s = π/2`).
fn knot_profiles(k: u32, r: f64, s: f64, theta: f64) -> KnotModelValues {
    let kf = k as f64;
    let (ss, cs) = s.sin_cos();
    let (p, m) = (1.0 + ss, 1.0 - ss);
    let num = p.powi(k as i32) - m.powi(k as i32);
    let den = p.powi(k as i32 + 1) - m.powi(k as i32 + 1);
    let sum = p.powi(k as i32 + 1) + m.powi(k as i32 + 1);
    let a_theta = -(kf + 1.0) * cs * cs * num / den;
    let phase = Complex64::from_polar(1.0, kf * theta);
    let phi_z = phase * (2.0 * (kf + 1.0) * cs.powi(k as i32) / (r * den));
    let phi1 = (kf + 1.0) / r * sum / den;
    KnotModelValues { a_theta, phi_z, phi1 }
}

/// Cartesian components `(A_μ, Φ_μ)`, `μ = x1, x2, x3, y`, at `(R, s, θ)`.
pub fn knot_cartesian(k: u32, r: f64, s: f64, theta: f64) -> ([LieElement; 4], [LieElement; 4]) {
    let v = knot_profiles(k, r, s, theta);
    let h = knot_diagonal();
    let rho = r * s.cos();
    let (st, ct) = theta.sin_cos();
    let su = |m: DMatrix<Complex64>| LieElement::from_matrix_unchecked(m, Algebra::SuN);
    let z = DMatrix::<Complex64>::zeros(2, 2);
    let c = |x: f64| Complex64::new(x, 0.0);
    // dθ = (cos θ dx3 - sin θ dx2)/ρ
    let a = [
        su(z.clone()),
        su(&h * c(-st / rho * v.a_theta)),
        su(&h * c(ct / rho * v.a_theta)),
        su(z.clone()),
    ];
    let pz = raising() * v.phi_z;
    let pzd = pz.adjoint();
    let phi = [
        su(&h * c(v.phi1)),
        su((&pz - &pzd) * c(0.5)),
        su((&pz + &pzd) * Complex64::new(0.0, 0.5)),
        su(z),
    ];
    (a, phi)
}

/// Central sixth-order first-derivative weights for offsets `-3..=3`.
const D6: [f64; 7] = [-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];

/// Polar angle above which [`knot_jets`] differences in Cartesian
/// coordinates; the `θ` chart degenerates on the axis `s = π/2`.
pub const KNOT_CHART_SWITCH: f64 = std::f64::consts::FRAC_PI_4;

/// Jets of the knot model at a point, from sixth-order differencing with
/// step `step` followed by the chain rule. Points with `s ≤ π/4` are
/// differenced in `(R, s, θ)`, points nearer the axis in `(x2, x3, y)`.
pub fn knot_jets(k: u32, p: &SphericalPoint, step: f64) -> (FormJet<LieElement>, FormJet<LieElement>) {
    let cart = p.s > KNOT_CHART_SWITCH;
    let x0 = p.cartesian();
    let eval = |q: usize, off: f64| {
        if cart {
            let mut x = x0;
            x[q + 1] += off;
            let sp = SphericalPoint::from_cartesian(x);
            knot_cartesian(k, sp.r, sp.s, sp.theta)
        } else {
            let (mut r, mut s, mut th) = (p.r, p.s, p.theta);
            match q {
                0 => r += off,
                1 => s += off,
                _ => th += off,
            }
            knot_cartesian(k, r, s, th)
        }
    };
    let jac = if cart {
        [[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    } else {
        p.inverse_jacobian()
    };
    let (a0, phi0) = knot_cartesian(k, p.r, p.s, p.theta);
    let zero = a0[0].zero_like();
    // dq[q][μ] = ∂_q (component μ)
    let mut da = vec![vec![zero.clone(); 4]; 3];
    let mut dphi = vec![vec![zero.clone(); 4]; 3];
    for q in 0..3 {
        for (j, &w) in D6.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let (a, phi) = eval(q, (j as f64 - 3.0) * step);
            for mu in 0..4 {
                da[q][mu] = da[q][mu].add_scaled(&a[mu], w / step);
                dphi[q][mu] = dphi[q][mu].add_scaled(&phi[mu], w / step);
            }
        }
    }
    let mut ja = FormJet::constant(4, 1, a0.to_vec());
    let mut jp = FormJet::constant(4, 1, phi0.to_vec());
    for x in 0..4 {
        for mu in 0..4 {
            let mut sa = zero.clone();
            let mut sp = zero.clone();
            for q in 0..3 {
                let c = jac[q][x];
                if c != 0.0 {
                    sa = sa.add_scaled(&da[q][mu], c);
                    sp = sp.add_scaled(&dphi[q][mu], c);
                }
            }
            ja.d[x][mu] = sa;
            jp.d[x][mu] = sp;
        }
    }
    (ja, jp)
}

/// Largest pointwise KW residual norm of the knot model over `points`.
pub fn knot_kw_sup(k: u32, points: &[SphericalPoint], step: f64) -> f64 {
    points
        .iter()
        .map(|p| {
            let (a, phi) = knot_jets(k, p, step);
            let r = kw_point(&a, &phi);
            let [t, s] = r.norms_sq();
            t.sqrt().max(s.sqrt())
        })
        .fold(0.0, f64::max)
}

/// Constant `SU(2)` element relating the weight-0 knot frame to the principal
/// triple: `g t_a g⁻¹ = -t_{4-a}`, a rotation by `π` about `(1, 0, -1)/√2`.
pub fn knot_frame_rotation() -> DMatrix<Complex64> {
    let s = crate::lie::pauli();
    (&s[0] - &s[2]) * Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2)
}

// ----- Hitchin section -----

/// The Higgs matrix with `√(i(n-i))` on the superdiagonal and
/// `q_n, q_{n-1}, ..., q_2, 0` on the last row. `q` lists `q_2, ..., q_n`.
pub fn hitchin_section_matrix(n: usize, q: &[Complex64]) -> Result<LieElement, ModelError> {
    if n < 2 {
        return Err(ModelError::Rank(n));
    }
    if q.len() != n - 1 {
        return Err(ModelError::WrongDifferentialCount { expected: n - 1, got: q.len() });
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 1..n {
        m[(i - 1, i)] = Complex64::new(((i * (n - i)) as f64).sqrt(), 0.0);
    }
    for j in 0..n - 1 {
        // column j holds q_{n-j}; q[idx] = q_{idx+2}
        m[(n - 1, j)] = q[n - j - 2];
    }
    Ok(LieElement::from_matrix_unchecked(m, Algebra::SlNC))
}

/// Samples the Hitchin-section Higgs field on a torus grid; `q(x)` returns
/// `q_2, ..., q_n` at the point.
pub fn hitchin_section_higgs(
    n: usize,
    grid: &Grid,
    mut q: impl FnMut(&[f64]) -> Vec<Complex64>,
) -> Result<LatticeField<LieElement>, ModelError> {
    let mut vals = Vec::with_capacity(grid.len());
    for s in 0..grid.len() {
        vals.push(hitchin_section_matrix(n, &q(&grid.coords(s)))?);
    }
    Ok(LatticeField { grid: grid.clone(), degree: 0, comps: vec![vals] })
}
