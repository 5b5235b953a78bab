//! Tools for the Kapustin–Witten equations with a Nahm pole boundary
//! condition on `S¹ × Σ × ℝ⁺` and `ℝ³ × ℝ⁺`.
//!
//! The crate is organised bottom-up:
//!
//! * [`lie`]: matrix Lie algebras, principal `su(2)` triples and dreibeins.
//! * [`lattice`]: product grids, discrete forms, stencils and quadrature.
//! * [`residual`]: pointwise and integrated residuals of the field equations.
//! * [`model`]: closed-form field configurations.
//! * [`nahm`]: Nahm's equations as an ODE in `y`.
//! * [`audit`]: integral identities checked on random fields.
//! * [`knot`]: algebraic knot data and existence bookkeeping.
//! * [`harness`]: configuration, reports and refinement studies for the CLI.

pub mod lattice;
pub mod lie;
pub mod model;
pub mod residual;
pub mod nahm;
pub mod audit;
pub mod knot;
pub mod harness;
