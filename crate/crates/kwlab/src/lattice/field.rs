//! Algebra-valued differential forms sampled on a [`Grid`], with the
//! finite-difference exterior calculus acting on them.

use super::forms::{basis, binomial, d_table, star_table, wedge_table};
use super::grid::{Grid, GridError};
use super::stencil::{integrate, partial_with, EndStencil};
use crate::lie::LieVec;

/// A `degree`-form on `grid`; `comps[c][site]` is the coefficient of the
/// `c`-th basis form (see [`basis`]) at `site`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField<T> {
    pub grid: Grid,
    pub degree: usize,
    pub comps: Vec<Vec<T>>,
}

impl<T: LieVec> LatticeField<T> {
    /// The zero `degree`-form with entries shaped like `zero`.
    pub fn zeros(grid: &Grid, degree: usize, zero: &T) -> Result<Self, GridError> {
        if degree > grid.dim() {
            return Err(GridError::BadDegree { degree, dim: grid.dim() });
        }
        let nc = binomial(grid.dim(), degree);
        Ok(LatticeField { grid: grid.clone(), degree, comps: vec![vec![zero.zero_like(); grid.len()]; nc] })
    }

    /// Samples `f(coords) -> components` at every site.
    pub fn from_fn<F>(grid: &Grid, degree: usize, mut f: F) -> Result<Self, GridError>
    where
        F: FnMut(&[f64]) -> Vec<T>,
    {
        if degree > grid.dim() {
            return Err(GridError::BadDegree { degree, dim: grid.dim() });
        }
        let nc = binomial(grid.dim(), degree);
        let mut comps: Vec<Vec<T>> = (0..nc).map(|_| Vec::with_capacity(grid.len())).collect();
        for site in 0..grid.len() {
            let vals = f(&grid.coords(site));
            assert_eq!(vals.len(), nc, "component count must equal C(dim, degree)");
            for (c, v) in vals.into_iter().enumerate() {
                comps[c].push(v);
            }
        }
        Ok(LatticeField { grid: grid.clone(), degree, comps })
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    /// Component-wise map.
    pub fn map<U: LieVec>(&self, f: impl Fn(&T) -> U) -> LatticeField<U> {
        LatticeField {
            grid: self.grid.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), GridError> {
        if self.grid != other.grid || self.degree != other.degree {
            Err(GridError::Mismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GridError> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a.add(b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GridError> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a.sub(b)))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|a| a.scale(s))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        LatticeField {
            grid: self.grid.clone(),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    fn sample_zero(&self) -> T {
        self.comps
            .iter()
            .flat_map(|c| c.first())
            .next()
            .expect("field has at least one component and site")
            .zero_like()
    }

    /// Centered finite-difference exterior derivative.
    pub fn exterior_d(&self) -> Result<Self, GridError> {
        self.exterior_d_with(EndStencil::SecondOrder)
    }

    pub fn exterior_d_with(&self, end: EndStencil) -> Result<Self, GridError> {
        let dim = self.dim();
        if self.degree >= dim {
            return Err(GridError::BadDegree { degree: self.degree, dim });
        }
        let table = d_table(dim, self.degree);
        let zero = self.sample_zero();
        // Cache ∂_axis ω_c lazily; each is used by several target components.
        let mut cache: Vec<Vec<Option<Vec<T>>>> = vec![vec![None; self.comps.len()]; dim];
        let mut out = LatticeField::zeros(&self.grid, self.degree + 1, &zero)?;
        for (j, terms) in table.iter().enumerate() {
            for &(axis, c, sign) in terms {
                if cache[axis][c].is_none() {
                    cache[axis][c] = Some(partial_with(&self.grid, &self.comps[c], axis, end));
                }
                let dv = cache[axis][c].as_ref().expect("filled above");
                for (o, d) in out.comps[j].iter_mut().zip(dv) {
                    *o = o.add_scaled(d, sign);
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the flat product metric with orientation
    /// `dx_0 ∧ ... ∧ dx_{d-1}`.
    pub fn hodge_star(&self) -> Self {
        let dim = self.dim();
        let table = star_table(dim, self.degree);
        let mut comps: Vec<Option<Vec<T>>> = vec![None; binomial(dim, dim - self.degree)];
        for (i, &(j, sign)) in table.iter().enumerate() {
            comps[j] = Some(self.comps[i].iter().map(|x| x.scale(sign)).collect());
        }
        LatticeField {
            grid: self.grid.clone(),
            degree: dim - self.degree,
            comps: comps.into_iter().map(|c| c.expect("star is a bijection on basis forms")).collect(),
        }
    }

    /// Bracket-wedge `[α ∧ β]`, i.e. the wedge product with the Lie bracket as
    /// coefficient multiplication.
    pub fn wedge_bracket(&self, other: &Self) -> Result<Self, GridError> {
        self.wedge_with(other, |a, b| a.bracket(b))
    }

    /// Wedge product with an arbitrary bilinear coefficient product.
    pub fn wedge_with(&self, other: &Self, prod: impl Fn(&T, &T) -> T) -> Result<Self, GridError> {
        if self.grid != other.grid {
            return Err(GridError::Mismatch);
        }
        let dim = self.dim();
        let deg = self.degree + other.degree;
        if deg > dim {
            return Err(GridError::BadDegree { degree: deg, dim });
        }
        let mut out = LatticeField::zeros(&self.grid, deg, &self.sample_zero())?;
        for (ia, ib, ic, sign) in wedge_table(dim, self.degree, other.degree) {
            for s in 0..self.grid.len() {
                let p = prod(&self.comps[ia][s], &other.comps[ib][s]);
                out.comps[ic][s] = out.comps[ic][s].add_scaled(&p, sign);
            }
        }
        Ok(out)
    }

    /// `Φ ∧ Φ` for an odd-degree algebra-valued form, computed as `½[Φ ∧ Φ]`.
    pub fn self_wedge(&self) -> Result<Self, GridError> {
        Ok(self.wedge_bracket(self)?.scale(0.5))
    }

    /// `L²` norm: `(Σ_c ∫ |ω_c|²)^{1/2}` with `|X|² = Tr(X X^†)`.
    pub fn l2_norm(&self) -> f64 {
        let dens: Vec<f64> = (0..self.grid.len())
            .map(|s| self.comps.iter().map(|c| c[s].norm_sq()).sum())
            .collect();
        integrate(&self.grid, &dens).sqrt()
    }

    /// Largest pointwise component norm.
    pub fn sup_norm(&self) -> f64 {
        (0..self.grid.len())
            .map(|s| self.comps.iter().map(|c| c[s].norm_sq()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

/// Covariant exterior derivative `d_A ω = dω + [A ∧ ω]`.
pub fn covariant_d<T: LieVec>(a: &LatticeField<T>, f: &LatticeField<T>) -> Result<LatticeField<T>, GridError> {
    if a.degree != 1 {
        return Err(GridError::BadDegree { degree: a.degree, dim: a.dim() });
    }
    f.exterior_d()?.add(&a.wedge_bracket(f)?)
}

/// Covariant codifferential `d_A^⋆ = (-1)^{d(k+1)+1} ⋆ d_A ⋆` on `k`-forms; on
/// 1-forms in dimension 3 or 4 this is `-⋆ d_A ⋆`.
pub fn covariant_codifferential<T: LieVec>(
    a: &LatticeField<T>,
    f: &LatticeField<T>,
) -> Result<LatticeField<T>, GridError> {
    let d = f.dim();
    let k = f.degree;
    if k == 0 {
        return Err(GridError::BadDegree { degree: 0, dim: d });
    }
    let sign = if (d * (k + 1) + 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(covariant_d(a, &f.hodge_star())?.hodge_star().scale(sign))
}

/// Curvature of a connection on the 4-dimensional product grid, split as
/// `F = F_A + B_A ∧ dx_1` where `F_A` has no `dx_1` leg.
#[derive(Debug, Clone)]
pub struct Curvature<T> {
    pub total: LatticeField<T>,
    /// `F_A`: the components of `total` without `dx_1` (others zeroed).
    pub slice: LatticeField<T>,
    /// `B_A` as a 1-form; `B_j = F_{j,1}` and its `dx_1` component is zero.
    pub b: LatticeField<T>,
}

/// `F = dA + ½[A ∧ A]` with the decomposition along the first axis.
pub fn curvature<T: LieVec>(a: &LatticeField<T>) -> Result<Curvature<T>, GridError> {
    if a.degree != 1 {
        return Err(GridError::BadDegree { degree: a.degree, dim: a.dim() });
    }
    let total = a.exterior_d()?.add(&a.self_wedge()?)?;
    let dim = a.dim();
    let zero = total.sample_zero();
    let mut slice = total.clone();
    let mut b = LatticeField::zeros(&a.grid, 1, &zero)?;
    for (c, idx) in basis(dim, 2).iter().enumerate() {
        if idx[0] == 0 {
            // F_{0j} dx_0∧dx_j = -F_{0j} dx_j∧dx_0.
            b.comps[idx[1]] = total.comps[c].iter().map(|x| x.neg()).collect();
            slice.comps[c] = vec![zero.clone(); a.grid.len()];
        }
    }
    Ok(Curvature { total, slice, b })
}

/// Integral over the constant-`y` slice at open-axis node `index` of a real
/// top-degree form on that slice, i.e. of the component of `f` that has no
/// `dy` leg.
pub fn boundary_integral(f: &LatticeField<f64>, index: usize) -> Result<f64, GridError> {
    let grid = &f.grid;
    let dim = grid.dim();
    let yaxis = grid.open_axis().ok_or(GridError::Mismatch)?;
    if f.degree + 1 != dim {
        return Err(GridError::BadDegree { degree: f.degree, dim });
    }
    let n = grid.axis(yaxis).n;
    if index >= n {
        return Err(GridError::SliceOutOfRange { index, n });
    }
    let comp = basis(dim, f.degree)
        .iter()
        .position(|s| !s.contains(&yaxis))
        .expect("one component lacks dy");
    let mut vals = Vec::new();
    for site in 0..grid.len() {
        let mi = grid.multi_index(site);
        if mi[yaxis] != index {
            continue;
        }
        let w: f64 = mi
            .iter()
            .enumerate()
            .filter(|(ax, _)| *ax != yaxis)
            .map(|(ax, _)| grid.axis(ax).h)
            .product();
        vals.push(w * f.comps[comp][site]);
    }
    Ok(super::stencil::pairwise_sum(&vals))
}
