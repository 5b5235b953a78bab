//! Spherical coordinates `(R, s, θ)` around a straight knot `{x2 = x3 = y = 0}`:
//! `y = R sin s`, `x2 + i x3 = R cos s e^{iθ}`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatchError {
    #[error("radial range must satisfy 0 < R0 < R1, got [{0}, {1}]")]
    Radial(f64, f64),
    #[error("polar range must satisfy 0 < s0 <= s1 <= pi/2, got [{0}, {1}]")]
    Polar(f64, f64),
}

/// A point given in spherical coordinates plus the knot-direction coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    pub r: f64,
    pub s: f64,
    pub theta: f64,
    pub x1: f64,
}

impl SphericalPoint {
    /// Cartesian `(x1, x2, x3, y)`.
    pub fn cartesian(&self) -> [f64; 4] {
        let rho = self.r * self.s.cos();
        [self.x1, rho * self.theta.cos(), rho * self.theta.sin(), self.r * self.s.sin()]
    }

    pub fn from_cartesian(x: [f64; 4]) -> Self {
        let rho = x[1].hypot(x[2]);
        SphericalPoint { r: rho.hypot(x[3]), s: x[3].atan2(rho), theta: x[2].atan2(x[1]), x1: x[0] }
    }

    /// Rows `∂(R, s, θ)/∂(x1, x2, x3, y)`.
    pub fn inverse_jacobian(&self) -> [[f64; 4]; 3] {
        let (ss, cs) = self.s.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        let r = self.r;
        [
            [0.0, cs * ct, cs * st, ss],
            [0.0, -ss * ct / r, -ss * st / r, cs / r],
            [0.0, -st / (r * cs), ct / (r * cs), 0.0],
        ]
    }
}

/// Sampling region `R ∈ [R0, R1]`, `s ∈ [s0, s1]`, full `θ` and `x1` circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPatch {
    pub r0: f64,
    pub r1: f64,
    pub s0: f64,
    pub s1: f64,
}

impl SphericalPatch {
    pub fn new(r0: f64, r1: f64, s0: f64, s1: f64) -> Result<Self, PatchError> {
        if !(r0 > 0.0 && r1 > r0) {
            return Err(PatchError::Radial(r0, r1));
        }
        if !(s0 > 0.0 && s1 >= s0 && s1 <= std::f64::consts::FRAC_PI_2 + 1e-15) {
            return Err(PatchError::Polar(s0, s1));
        }
        Ok(SphericalPatch { r0, r1, s0, s1 })
    }

    /// `count` quasi-random points from the Halton sequence in bases 2, 3, 5, 7.
    pub fn halton_points(&self, count: usize) -> Vec<SphericalPoint> {
        let tau = 2.0 * std::f64::consts::PI;
        (1..=count)
            .map(|i| SphericalPoint {
                r: self.r0 + (self.r1 - self.r0) * radical_inverse(i, 2),
                s: self.s0 + (self.s1 - self.s0) * radical_inverse(i, 3),
                theta: tau * radical_inverse(i, 5),
                x1: tau * radical_inverse(i, 7),
            })
            .collect()
    }
}

/// Van der Corput radical inverse of `i` in `base`.
pub fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}
