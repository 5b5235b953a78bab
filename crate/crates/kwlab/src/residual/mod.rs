//! Residual evaluation for every equation system: KW, decoupled flatness,
//! extended Bogomolny, Hitchin, the `𝒟`-operator commutators, the moment map
//! and the `y`-flow right-hand sides.

pub mod dops;
pub mod ebe;
pub mod flow;
pub mod hitchin;
pub mod jet;
pub mod kw;
pub mod report;

use crate::lattice::GridError;
use thiserror::Error;

pub use dops::{commutator_residual, d_operators, moment_map, moment_map_residual, DOperators};
pub use ebe::{ebe_point, ebe_residual, ebe_residual_analytic, EbeFields};
pub use flow::{flow_point, flow_rhs, FlowRhs};
pub use hitchin::{hitchin_fields, hitchin_residual, HermitianMetricField, HitchinData};
pub use jet::FormJet;
pub use kw::{complex_curvature_norm, flatness_point, flatness_residual, kw_point, kw_residual, kw_residual_analytic, KwPoint};
pub use report::{attach_orders, observed_order, EquationNorm, ResidualReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResidualError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("metric is not Hermitian positive definite at site {site}")]
    MetricNotPositive { site: usize },
    #[error("metric determinant {det} differs from 1 at site {site}")]
    MetricDeterminant { site: usize, det: f64 },
    #[error("shape error: {0}")]
    Shape(String),
}
