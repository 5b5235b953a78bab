//! Discretized product manifolds and finite-difference exterior calculus.

pub mod field;
pub mod forms;
pub mod grid;
pub mod io;
pub mod spherical;
pub mod stencil;

pub use field::{boundary_integral, covariant_codifferential, covariant_d, curvature, Curvature, LatticeField};
pub use grid::{Axis, Grid, GridError};
pub use spherical::{SphericalPatch, SphericalPoint};
pub use stencil::{integrate, pairwise_sum, partial, partial_with, EndStencil, PairwiseAccumulator};
