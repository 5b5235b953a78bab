//! Pointwise exterior algebra on first-order jets.
//!
//! A [`FormJet`] holds the components of a `k`-form at one point together
//! with their first partial derivatives. Every residual in this crate is a
//! polynomial in such jets, so the same code serves closed-form fields (exact
//! derivatives), finite-difference derivatives on a grid, and high-order
//! differencing of analytic expressions.

use crate::lattice::forms::{basis, binomial, d_table, star_table, wedge_table};
use crate::lattice::{partial, LatticeField};
use crate::lie::LieVec;

#[derive(Debug, Clone, PartialEq)]
pub struct FormJet<T> {
    pub dim: usize,
    pub degree: usize,
    /// Components in [`basis`] order.
    pub v: Vec<T>,
    /// `d[axis][c] = ∂_axis v[c]`.
    pub d: Vec<Vec<T>>,
}

impl<T: LieVec> FormJet<T> {
    pub fn zero(dim: usize, degree: usize, zero: &T) -> Self {
        let nc = binomial(dim, degree);
        FormJet { dim, degree, v: vec![zero.zero_like(); nc], d: vec![vec![zero.zero_like(); nc]; dim] }
    }

    /// A jet with the given values and vanishing derivatives.
    pub fn constant(dim: usize, degree: usize, v: Vec<T>) -> Self {
        assert_eq!(v.len(), binomial(dim, degree));
        let z = v[0].zero_like();
        let nc = v.len();
        FormJet { dim, degree, v, d: vec![vec![z; nc]; dim] }
    }

    pub fn star(&self) -> Self {
        let table = star_table(self.dim, self.degree);
        let nc = binomial(self.dim, self.dim - self.degree);
        let z = self.v[0].zero_like();
        let mut v = vec![z.clone(); nc];
        let mut d = vec![vec![z; nc]; self.dim];
        for (i, &(j, s)) in table.iter().enumerate() {
            v[j] = self.v[i].scale(s);
            for ax in 0..self.dim {
                d[ax][j] = self.d[ax][i].scale(s);
            }
        }
        FormJet { dim: self.dim, degree: self.dim - self.degree, v, d }
    }

    pub fn scale(&self, s: f64) -> Self {
        FormJet {
            dim: self.dim,
            degree: self.degree,
            v: self.v.iter().map(|x| x.scale(s)).collect(),
            d: self.d.iter().map(|r| r.iter().map(|x| x.scale(s)).collect()).collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.v
    }
}

/// `[α ∧ β]` on component vectors.
pub fn wedge_bracket<T: LieVec>(dim: usize, p: usize, a: &[T], q: usize, b: &[T]) -> Vec<T> {
    let z = a.first().or(b.first()).expect("nonempty forms").zero_like();
    let mut out = vec![z; binomial(dim, p + q)];
    for (ia, ib, ic, s) in wedge_table(dim, p, q) {
        out[ic] = out[ic].add_scaled(&a[ia].bracket(&b[ib]), s);
    }
    out
}

/// Hodge star on component vectors.
pub fn star<T: LieVec>(dim: usize, k: usize, a: &[T]) -> Vec<T> {
    let table = star_table(dim, k);
    let mut out: Vec<Option<T>> = vec![None; binomial(dim, dim - k)];
    for (i, &(j, s)) in table.iter().enumerate() {
        out[j] = Some(a[i].scale(s));
    }
    out.into_iter().map(|x| x.expect("bijection")).collect()
}

pub fn add<T: LieVec>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}
pub fn sub<T: LieVec>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Value of `dω` at the point.
pub fn exterior_d<T: LieVec>(f: &FormJet<T>) -> Vec<T> {
    let z = f.v[0].zero_like();
    d_table(f.dim, f.degree)
        .iter()
        .map(|terms| terms.iter().fold(z.clone(), |acc, &(ax, c, s)| acc.add_scaled(&f.d[ax][c], s)))
        .collect()
}

/// Value of `d_A ω = dω + [A ∧ ω]`.
pub fn covariant_d<T: LieVec>(a: &FormJet<T>, f: &FormJet<T>) -> Vec<T> {
    add(&exterior_d(f), &wedge_bracket(f.dim, 1, &a.v, f.degree, &f.v))
}

/// Value of `F = dA + ½[A ∧ A]`.
pub fn curvature<T: LieVec>(a: &FormJet<T>) -> Vec<T> {
    let w = wedge_bracket(a.dim, 1, &a.v, 1, &a.v);
    exterior_d(a).iter().zip(&w).map(|(x, y)| x.add_scaled(y, 0.5)).collect()
}

/// `Φ ∧ Φ` for an algebra-valued 1-form: `(Φ∧Φ)_{ij} = [Φ_i, Φ_j]`.
pub fn self_wedge<T: LieVec>(dim: usize, phi: &[T]) -> Vec<T> {
    wedge_bracket(dim, 1, phi, 1, phi).iter().map(|x| x.scale(0.5)).collect()
}

/// `d_A^⋆ ω = (-1)^{d(k+1)+1} ⋆ d_A ⋆ ω` for a `k`-form, `k ≥ 1`.
pub fn codifferential<T: LieVec>(a: &FormJet<T>, f: &FormJet<T>) -> Vec<T> {
    let dim = f.dim;
    let k = f.degree;
    let sign = if (dim * (k + 1) + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let inner = covariant_d(a, &f.star());
    star(dim, dim - k + 1, &inner).iter().map(|x| x.scale(sign)).collect()
}

/// Covariant derivative `∇_axis f = ∂_axis f + [A_axis, f]` of a 0-form.
pub fn nabla0<T: LieVec>(a: &FormJet<T>, f: &FormJet<T>, axis: usize) -> T {
    debug_assert_eq!(f.degree, 0);
    f.d[axis][0].add(&a.v[axis].bracket(&f.v[0]))
}

/// Covariant derivative of each component of a 1-form along `axis`.
pub fn nabla1<T: LieVec>(a: &FormJet<T>, f: &FormJet<T>, axis: usize) -> Vec<T> {
    f.v.iter().zip(&f.d[axis]).map(|(x, dx)| dx.add(&a.v[axis].bracket(x))).collect()
}

/// Sum of squared norms of a component list.
pub fn norm_sq<T: LieVec>(xs: &[T]) -> f64 {
    xs.iter().map(|x| x.norm_sq()).sum()
}

/// Jets of a lattice form at every site, with finite-difference derivatives.
pub fn grid_jets<T: LieVec>(f: &LatticeField<T>) -> Vec<FormJet<T>> {
    let dim = f.dim();
    let derivs: Vec<Vec<Vec<T>>> =
        (0..dim).map(|ax| f.comps.iter().map(|c| partial(&f.grid, c, ax)).collect()).collect();
    (0..f.grid.len())
        .map(|s| FormJet {
            dim,
            degree: f.degree,
            v: f.comps.iter().map(|c| c[s].clone()).collect(),
            d: (0..dim).map(|ax| derivs[ax].iter().map(|c| c[s].clone()).collect()).collect(),
        })
        .collect()
}

/// Index of the component `dx_i ∧ dx_j` (`i < j`) in dimension `dim`.
pub fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    basis(dim, 2).iter().position(|s| s[0] == i && s[1] == j).expect("valid pair")
}
