//! Single-pass streaming evaluation of both integral identities.
//!
//! The grid has axes `(x1, x2, x3, y)` with the first three periodic. Fields
//! are requested one `y`-slice at a time and kept in a window of three
//! slices, so memory is independent of the number of `y` nodes. Every
//! derivative uses the same stencils as [`crate::lattice::partial`].

use super::AuditError;
use crate::lattice::{pairwise_sum, Grid, PairwiseAccumulator};
use crate::lie::LieVec;

/// The components `A_{x1..x3}` and `φ_{x1..x3}` of one `y`-slice, indexed by
/// the slice-local row-major site `(i1 N2 + i2) N3 + i3`. The `dy` legs of
/// both forms vanish.
#[derive(Debug, Clone)]
pub struct SliceFields<T> {
    pub a: [Vec<T>; 3],
    pub p: [Vec<T>; 3],
    /// True when every value in the slice is zero.
    pub vanishes: bool,
}

/// Supplier of slices for the streaming kernel.
pub trait SliceSource<T: LieVec> {
    fn grid(&self) -> &Grid;
    fn zero(&self) -> T;
    /// Overwrites `out` with the fields at `y`-node `iy`.
    fn fill(&self, iy: usize, out: &mut SliceFields<T>);
}

/// Integrated densities, each already multiplied by quadrature weights.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StreamTotals {
    pub lhs: f64,
    /// `|E1|², |∇₁φ|², |B|², |E2|², |d^⋆φ|², |∇₁φ₁|²`.
    pub ebe: [f64; 6],
    /// `|F|², |∇^⊥Φ|², |∇_yφ + ⋆φ∧φ|²`.
    pub t3: [f64; 3],
    /// Quadrature of the `∇₁` total derivative in the boundary integrand.
    pub chi_nabla1: f64,
    /// Quadrature of `2 dTr(B∧φ)∧dx₁` (telescoping `y` stencil).
    pub chi_boundary: f64,
    /// Slice integrals `S(y) = ∫⟨B₂,φ₃⟩ - ⟨B₃,φ₂⟩` at every node.
    pub s_slices: Vec<f64>,
    /// Slice integrals `T(y) = ∫⟨φ₁,F₂₃⟩ - ⟨φ₂,F₁₃⟩ + ⟨φ₃,F₁₂⟩` at every node.
    pub t_slices: Vec<f64>,
    /// Quadrature of `-2 ∂_y T` (telescoping `y` stencil).
    pub t3_boundary: f64,
}

const N_DENS: usize = 10;

struct Layout {
    n: [usize; 3],
    ny: usize,
    h: [f64; 4],
    wy: Vec<f64>,
}

fn layout(grid: &Grid) -> Result<Layout, AuditError> {
    let ax = grid.axes();
    if grid.dim() != 4 || !(ax[0].periodic && ax[1].periodic && ax[2].periodic) || ax[3].periodic {
        return Err(AuditError::Shape("audit needs a (T³ × interval) grid".into()));
    }
    if ax[3].n < 3 {
        return Err(AuditError::Shape("need at least three y nodes".into()));
    }
    Ok(Layout {
        n: [ax[0].n, ax[1].n, ax[2].n],
        ny: ax[3].n,
        h: [ax[0].h, ax[1].h, ax[2].h, ax[3].h],
        wy: (0..ax[3].n).map(|i| ax[3].weight(i)).collect(),
    })
}

/// Periodic neighbor offsets along one axis for index `i`.
#[inline]
fn nb(i: usize, n: usize, stride: usize) -> (isize, isize) {
    let up = if i + 1 == n { -((n as isize - 1) * stride as isize) } else { stride as isize };
    let dn = if i == 0 { (n as isize - 1) * stride as isize } else { -(stride as isize) };
    (up, dn)
}

#[inline]
fn at<T>(v: &[T], q: usize, off: isize) -> &T {
    &v[(q as isize + off) as usize]
}

/// `y`-derivative coefficients and the window start for node `iy`.
fn y_stencil(iy: usize, ny: usize, h: f64) -> (usize, [f64; 3]) {
    let k = 0.5 / h;
    if iy == 0 {
        (0, [-3.0 * k, 4.0 * k, -k])
    } else if iy + 1 == ny {
        (ny - 3, [k, -4.0 * k, 3.0 * k])
    } else {
        (iy - 1, [-k, 0.0, k])
    }
}

fn lin3<T: LieVec>(c: &[f64; 3], x0: &T, x1: &T, x2: &T) -> T {
    let mut out = x0.scale(c[0]);
    if c[1] != 0.0 {
        out = out.add_scaled(x1, c[1]);
    }
    out.add_scaled(x2, c[2])
}

/// Runs the kernel over every slice.
pub fn stream<T: LieVec, S: SliceSource<T> + ?Sized>(src: &S) -> Result<StreamTotals, AuditError> {
    let grid = src.grid();
    let lay = layout(grid)?;
    let [n0, n1, n2] = lay.n;
    let ns = n0 * n1 * n2;
    let strides = [n1 * n2, n2, 1usize];
    let zero = src.zero();
    let empty = || SliceFields { a: [vec![zero.clone(); ns], vec![zero.clone(); ns], vec![zero.clone(); ns]], p: [vec![zero.clone(); ns], vec![zero.clone(); ns], vec![zero.clone(); ns]], vanishes: true };
    let mut ring = [empty(), empty(), empty()];
    let mut ring_start = 0usize;
    for (k, r) in ring.iter_mut().enumerate() {
        src.fill(k, r);
    }

    let cell = lay.h[0] * lay.h[1] * lay.h[2];
    let mut acc: Vec<PairwiseAccumulator> = (0..N_DENS).map(|_| PairwiseAccumulator::new()).collect();
    let mut acc_n1 = PairwiseAccumulator::new();
    let mut acc_per = PairwiseAccumulator::new();
    let mut s_slices = vec![0.0; lay.ny];
    let mut t_slices = vec![0.0; lay.ny];

    let mut g_arr = vec![0.0; ns];
    let mut tau2 = vec![0.0; ns];
    let mut tau3 = vec![0.0; ns];
    let mut rows: Vec<Vec<f64>> = vec![Vec::with_capacity(n0 * n1); N_DENS + 2];

    for iy in 0..lay.ny {
        let (start, cy) = y_stencil(iy, lay.ny, lay.h[3]);
        while ring_start < start {
            ring.rotate_left(1);
            ring_start += 1;
            src.fill(ring_start + 2, &mut ring[2]);
        }
        let c = &ring[iy - ring_start];
        if ring.iter().all(|r| r.vanishes) {
            continue;
        }
        for r in rows.iter_mut() {
            r.clear();
        }
        let inv2h = [0.5 / lay.h[0], 0.5 / lay.h[1], 0.5 / lay.h[2]];
        let mut q = 0usize;
        for i0 in 0..n0 {
            let o0 = nb(i0, n0, strides[0]);
            for i1 in 0..n1 {
                let o1 = nb(i1, n1, strides[1]);
                let mut row = [0.0f64; N_DENS + 2];
                for i2 in 0..n2 {
                    let o2 = nb(i2, n2, strides[2]);
                    let offs = [o0, o1, o2];
                    let a = [&c.a[0][q], &c.a[1][q], &c.a[2][q]];
                    let p = [&c.p[0][q], &c.p[1][q], &c.p[2][q]];
                    // da[m][c] = ∂_m A_c, m in (x1,x2,x3,y)
                    let dx = |v: &[T], m: usize| {
                        let (up, dn) = offs[m];
                        at(v, q, up).sub(at(v, q, dn)).scale(inv2h[m])
                    };
                    let da: [[T; 3]; 4] = std::array::from_fn(|m| {
                        std::array::from_fn(|k| {
                            if m < 3 {
                                dx(&c.a[k], m)
                            } else {
                                lin3(&cy, &ring[0].a[k][q], &ring[1].a[k][q], &ring[2].a[k][q])
                            }
                        })
                    });
                    let dp: [[T; 3]; 4] = std::array::from_fn(|m| {
                        std::array::from_fn(|k| {
                            if m < 3 {
                                dx(&c.p[k], m)
                            } else {
                                lin3(&cy, &ring[0].p[k][q], &ring[1].p[k][q], &ring[2].p[k][q])
                            }
                        })
                    });
                    let dens = site(a, p, &da, &dp);
                    for (r, v) in row.iter_mut().zip(dens.values.iter()) {
                        *r += v;
                    }
                    row[N_DENS] += dens.sigma;
                    row[N_DENS + 1] += dens.theta;
                    g_arr[q] = dens.g;
                    tau2[q] = dens.tau2;
                    tau3[q] = dens.tau3;
                    q += 1;
                }
                for (r, v) in rows.iter_mut().zip(row) {
                    r.push(v);
                }
            }
        }
        let w = lay.wy[iy] * cell;
        for k in 0..N_DENS {
            acc[k].push(pairwise_sum(&rows[k]) * w);
        }
        s_slices[iy] = pairwise_sum(&rows[N_DENS]) * cell;
        t_slices[iy] = pairwise_sum(&rows[N_DENS + 1]) * cell;

        // periodic total derivatives inside this slice
        let mut n1_rows = Vec::with_capacity(n0 * n1);
        let mut per_rows = Vec::with_capacity(n0 * n1);
        let mut q = 0usize;
        for i0 in 0..n0 {
            let o0 = nb(i0, n0, strides[0]);
            for i1 in 0..n1 {
                let o1 = nb(i1, n1, strides[1]);
                let (mut s_n1, mut s_per) = (0.0, 0.0);
                for i2 in 0..n2 {
                    let o2 = nb(i2, n2, strides[2]);
                    s_n1 -= (at(&g_arr, q, o0.0) - at(&g_arr, q, o0.1)) * inv2h[0];
                    s_per += 2.0
                        * ((at(&tau3, q, o1.0) - at(&tau3, q, o1.1)) * inv2h[1]
                            - (at(&tau2, q, o2.0) - at(&tau2, q, o2.1)) * inv2h[2]);
                    q += 1;
                }
                n1_rows.push(s_n1);
                per_rows.push(s_per);
            }
        }
        acc_n1.push(pairwise_sum(&n1_rows) * w);
        acc_per.push(pairwise_sum(&per_rows) * w);
    }

    let tele = |s: &[f64]| -> f64 {
        // ∫ ∂_y s with the telescoping end stencil and trapezoid weights
        let ny = s.len();
        let hy = lay.h[3];
        let mut parts = Vec::with_capacity(ny);
        for i in 0..ny {
            let d = if i == 0 {
                (s[1] - s[0]) / hy
            } else if i + 1 == ny {
                (s[ny - 1] - s[ny - 2]) / hy
            } else {
                (s[i + 1] - s[i - 1]) * 0.5 / hy
            };
            parts.push(d * lay.wy[i]);
        }
        pairwise_sum(&parts)
    };

    let tot: Vec<f64> = acc.iter().map(|a| a.total()).collect();
    let out = StreamTotals {
        lhs: tot[0],
        ebe: [tot[1], tot[2], tot[3], tot[4], tot[5], tot[6]],
        t3: [tot[7], tot[8], tot[9]],
        chi_nabla1: acc_n1.total(),
        chi_boundary: 2.0 * tele(&s_slices) + acc_per.total(),
        t3_boundary: -2.0 * tele(&t_slices),
        s_slices,
        t_slices,
    };
    let finite = out.lhs.is_finite()
        && out.ebe.iter().chain(out.t3.iter()).all(|v| v.is_finite())
        && out.chi_nabla1.is_finite()
        && out.chi_boundary.is_finite()
        && out.t3_boundary.is_finite();
    if !finite {
        return Err(AuditError::NonFinite);
    }
    Ok(out)
}

struct SiteDensities {
    values: [f64; N_DENS],
    sigma: f64,
    theta: f64,
    g: f64,
    tau2: f64,
    tau3: f64,
}

/// Densities at one site. `da[m][k] = ∂_m A_k` and `dp[m][k] = ∂_m φ_k` with
/// `m` over `(x1, x2, x3, y)`; the `dy` legs of `A` and `Φ` vanish.
#[inline(always)]
fn site<T: LieVec>(a: [&T; 3], p: [&T; 3], da: &[[T; 3]; 4], dp: &[[T; 3]; 4]) -> SiteDensities {
    // ∇_m φ_k
    let c = |m: usize, k: usize| dp[m][k].add(&a[m].bracket(p[k]));
    let cov = [
        [c(0, 0), c(0, 1), c(0, 2)],
        [c(1, 0), c(1, 1), c(1, 2)],
        [c(2, 0), c(2, 1), c(2, 2)],
    ];
    let cy = &dp[3];

    let f01 = da[0][1].sub(&da[1][0]).add(&a[0].bracket(a[1]));
    let f02 = da[0][2].sub(&da[2][0]).add(&a[0].bracket(a[2]));
    let f12 = da[1][2].sub(&da[2][1]).add(&a[1].bracket(a[2]));
    let f03 = da[3][0].neg();
    let f13 = da[3][1].neg();
    let f23 = da[3][2].neg();

    let d01 = cov[0][1].sub(&cov[1][0]);
    let d02 = cov[0][2].sub(&cov[2][0]);
    let d12 = cov[1][2].sub(&cov[2][1]);
    let d03 = cy[0].neg();
    let d13 = cy[1].neg();
    let d23 = cy[2].neg();

    let pp01 = p[0].bracket(p[1]);
    let pp02 = p[0].bracket(p[2]);
    let pp12 = p[1].bracket(p[2]);

    // F - Φ∧Φ + ⋆d_AΦ with ⋆(dx_i∧dx_j) = ±dx_k∧dx_l, and d_A^⋆Φ
    let div = cov[0][0].add(&cov[1][1]).add(&cov[2][2]);
    let lhs = f01.sub(&pp01).add(&d23).norm_sq()
        + f02.sub(&pp02).sub(&d13).norm_sq()
        + f03.add(&d12).norm_sq()
        + f12.sub(&pp12).add(&d03).norm_sq()
        + f13.sub(&d02).norm_sq()
        + f23.add(&d01).norm_sq()
        + div.norm_sq();

    // split over Y = (x2, x3, y); v = d_A φ₁
    let v = [&cov[1][0], &cov[2][0], &cy[0]];
    let e1n = f12.sub(&pp12).sub(v[2]).norm_sq() + f13.add(v[1]).norm_sq() + f23.sub(v[0]).norm_sq();
    let n1phi = cov[0][1].norm_sq() + cov[0][2].norm_sq();
    let b = [f01.neg(), f02.neg(), f03.neg()];
    let bn = b[0].norm_sq() + b[1].norm_sq() + b[2].norm_sq();
    let e2n = p[1].bracket(p[0]).add(&d23).norm_sq() + p[2].bracket(p[0]).sub(&d13).norm_sq() + d12.norm_sq();
    let dstar = cov[1][1].add(&cov[2][2]);
    let dstar_n = dstar.norm_sq();
    let n1p1 = cov[0][0].norm_sq();

    let fn2 = f01.norm_sq() + f02.norm_sq() + f03.norm_sq() + f12.norm_sq() + f13.norm_sq() + f23.norm_sq();
    let mut grad = 0.0;
    for row in &cov {
        for x in row {
            grad += x.norm_sq();
        }
    }
    let nahm = cy[0].add(&pp12).norm_sq() + cy[1].sub(&pp02).norm_sq() + cy[2].add(&pp01).norm_sq();

    // b = (B_{x2}, B_{x3}, B_y); with φ_y = 0 the (x_i, y) components of
    // ⟨B∧φ⟩ reduce to -⟨B_y, φ_{x_i}⟩
    let sigma = b[0].inner(p[2]) - b[1].inner(p[1]);
    let theta = p[0].inner(&f12) - p[1].inner(&f02) + p[2].inner(&f01);
    let tau2 = -b[2].inner(p[1]);
    let tau3 = -b[2].inner(p[2]);
    let g = -(2.0 * (f23.inner(p[1]) - f13.inner(p[2])) - 2.0 * (p[1].inner(v[0]) + p[2].inner(v[1]))
        + p[0].inner(&dstar));

    SiteDensities {
        values: [lhs, e1n, n1phi, bn, e2n, dstar_n, n1p1, fn2, grad, nahm],
        sigma,
        theta,
        g,
        tau2,
        tau3,
    }
}
