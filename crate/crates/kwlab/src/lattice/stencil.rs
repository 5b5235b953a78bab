//! Finite-difference first derivatives and deterministic quadrature.

use super::grid::{Axis, Grid};
use crate::lie::LieVec;

/// Stencil used on the open axis next to its end nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndStencil {
    /// Second-order one-sided `(-3f0 + 4f1 - f2)/(2h)`.
    SecondOrder,
    /// First-order one-sided `(f1 - f0)/h`. Combined with trapezoid weights
    /// the discrete integral of the derivative telescopes exactly to the end
    /// values, which is what slice cross-checks rely on.
    Telescoping,
}

/// Derivative of the sampled values along one axis. `values` is indexed by
/// site in the grid's row-major order.
pub fn partial<T: LieVec>(grid: &Grid, values: &[T], axis: usize) -> Vec<T> {
    partial_with(grid, values, axis, EndStencil::SecondOrder)
}

pub fn partial_with<T: LieVec>(grid: &Grid, values: &[T], axis: usize, end: EndStencil) -> Vec<T> {
    assert_eq!(values.len(), grid.len(), "value count must match the grid");
    let ax = *grid.axis(axis);
    let stride = grid.strides()[axis];
    let inv2h = 0.5 / ax.h;
    let mut out = Vec::with_capacity(values.len());
    for site in 0..values.len() {
        let i = (site / stride) % ax.n;
        out.push(diff_at(values, site, i, stride, &ax, inv2h, end));
    }
    out
}

#[inline]
fn diff_at<T: LieVec>(v: &[T], site: usize, i: usize, stride: usize, ax: &Axis, inv2h: f64, end: EndStencil) -> T {
    let n = ax.n;
    if ax.periodic {
        let up = if i + 1 == n { site + stride - n * stride } else { site + stride };
        let dn = if i == 0 { site + (n - 1) * stride } else { site - stride };
        return v[up].sub(&v[dn]).scale(inv2h);
    }
    match (i, end) {
        (0, EndStencil::SecondOrder) => v[site]
            .scale(-3.0)
            .add(&v[site + stride].scale(4.0))
            .sub(&v[site + 2 * stride])
            .scale(inv2h),
        (0, EndStencil::Telescoping) => v[site + stride].sub(&v[site]).scale(2.0 * inv2h),
        (j, EndStencil::SecondOrder) if j + 1 == n => v[site]
            .scale(3.0)
            .sub(&v[site - stride].scale(4.0))
            .add(&v[site - 2 * stride])
            .scale(inv2h),
        (j, EndStencil::Telescoping) if j + 1 == n => v[site].sub(&v[site - stride]).scale(2.0 * inv2h),
        _ => v[site + stride].sub(&v[site - stride]).scale(inv2h),
    }
}

/// Pairwise (cascade) summation with a fixed split order; bit-reproducible.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `∫ f` over the grid with product trapezoid/periodic weights.
pub fn integrate(grid: &Grid, density: &[f64]) -> f64 {
    assert_eq!(density.len(), grid.len());
    let weighted: Vec<f64> = density.iter().enumerate().map(|(s, &f)| f * grid.weight(s)).collect();
    pairwise_sum(&weighted)
}

/// Streaming counterpart of [`pairwise_sum`]: accumulates block partial sums
/// and combines them pairwise at the end. Results depend only on the order
/// in which blocks are pushed.
#[derive(Debug, Default, Clone)]
pub struct PairwiseAccumulator {
    blocks: Vec<f64>,
}

impl PairwiseAccumulator {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn push_block(&mut self, xs: &[f64]) {
        self.blocks.push(pairwise_sum(xs));
    }
    pub fn push(&mut self, x: f64) {
        self.blocks.push(x);
    }
    pub fn total(&self) -> f64 {
        pairwise_sum(&self.blocks)
    }
}
