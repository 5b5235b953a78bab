use crate::lattice::{pairwise_sum, Grid};
use serde::Serialize;

/// Norms of one equation's residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationNorm {
    pub equation: String,
    pub l2: f64,
    pub sup: f64,
}

/// Per-equation residual norms plus discretization metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equations: Vec<EquationNorm>,
    /// Grid spacing, or `None` when derivatives were exact.
    pub h: Option<f64>,
    /// Observed convergence order, filled in by [`attach_orders`].
    pub order: Option<f64>,
    /// Which Hodge star(s) the evaluation applied.
    pub star: &'static str,
}

impl ResidualReport {
    pub fn get(&self, name: &str) -> Option<&EquationNorm> {
        self.equations.iter().find(|e| e.equation == name)
    }

    pub fn l2(&self, name: &str) -> f64 {
        self.get(name).map(|e| e.l2).unwrap_or_else(|| panic!("no equation named {name}"))
    }

    pub fn sup(&self, name: &str) -> f64 {
        self.get(name).map(|e| e.sup).unwrap_or_else(|| panic!("no equation named {name}"))
    }

    /// Largest sup norm over all equations.
    pub fn max_sup(&self) -> f64 {
        self.equations.iter().map(|e| e.sup).fold(0.0, f64::max)
    }

    /// Root of the summed squared `L²` norms.
    pub fn total_l2(&self) -> f64 {
        self.equations.iter().map(|e| e.l2 * e.l2).sum::<f64>().sqrt()
    }
}

/// Accumulates squared pointwise norms for several equations.
pub(crate) struct NormAccumulator {
    names: Vec<&'static str>,
    weighted: Vec<Vec<f64>>,
    sup: Vec<f64>,
}

impl NormAccumulator {
    pub fn new(names: &[&'static str]) -> Self {
        NormAccumulator { names: names.to_vec(), weighted: vec![Vec::new(); names.len()], sup: vec![0.0; names.len()] }
    }

    /// Records `|r_e|²` for every equation at a point with quadrature weight `w`.
    pub fn push(&mut self, w: f64, norms_sq: &[f64]) {
        for (e, &n2) in norms_sq.iter().enumerate() {
            self.weighted[e].push(w * n2);
            self.sup[e] = self.sup[e].max(n2.sqrt());
        }
    }

    pub fn finish(self, h: Option<f64>, star: &'static str) -> ResidualReport {
        let equations = self
            .names
            .iter()
            .zip(self.weighted)
            .zip(self.sup)
            .map(|((name, w), sup)| EquationNorm { equation: name.to_string(), l2: pairwise_sum(&w).sqrt(), sup })
            .collect();
        ResidualReport { equations, h, order: None, star }
    }
}

/// Evaluates `point(site)` (squared norms per equation) over a grid.
pub(crate) fn over_grid(
    grid: &Grid,
    names: &[&'static str],
    h: Option<f64>,
    star: &'static str,
    mut point: impl FnMut(usize) -> Vec<f64>,
) -> ResidualReport {
    let mut acc = NormAccumulator::new(names);
    for site in 0..grid.len() {
        let n2 = point(site);
        acc.push(grid.weight(site), &n2);
    }
    acc.finish(h, star)
}

/// Observed order from a sequence of errors at successively halved spacing,
/// using the last three values: `log2((e1 - e2)/(e2 - e3))`. With two values
/// the ratio `log2(e1/e2)` is used.
pub fn observed_order(errors: &[f64]) -> Option<f64> {
    match errors.len() {
        0 | 1 => None,
        2 => Some((errors[0] / errors[1]).log2()),
        n => {
            let (a, b, c) = (errors[n - 3], errors[n - 2], errors[n - 1]);
            Some(((a - b) / (b - c)).log2())
        }
    }
}

/// Fills `order` on the finest report from the total `L²` norms of a
/// refinement sequence (coarsest first).
pub fn attach_orders(reports: &mut [ResidualReport]) {
    if reports.len() < 2 {
        return;
    }
    let errs: Vec<f64> = reports.iter().map(|r| r.total_l2()).collect();
    let ord = observed_order(&errs);
    if let Some(last) = reports.last_mut() {
        last.order = ord;
    }
}
