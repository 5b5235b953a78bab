//! Uniform product grids.
//!
//! Periodic axes have unit length and spacing `1/N`. The single open axis
//! (the half-line coordinate `y`, always stored last) carries nodes at both
//! ends of `[y0, y1]`, so its spacing is `(y1 - y0)/(N - 1)`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("axis {axis} has {n} points; at least 4 are required")]
    TooFewPoints { axis: usize, n: usize },
    #[error("invalid y-range [{y0}, {y1}]: need 0 < y0 < y1")]
    BadRange { y0: f64, y1: f64 },
    #[error("grid mismatch")]
    Mismatch,
    #[error("slice index {index} out of range (axis has {n} points)")]
    SliceOutOfRange { index: usize, n: usize },
    #[error("form degree {degree} not valid here (dimension {dim})")]
    BadDegree { degree: usize, dim: usize },
}

/// One grid axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub n: usize,
    pub h: f64,
    pub origin: f64,
    pub periodic: bool,
}

impl Axis {
    pub fn periodic(n: usize) -> Self {
        Axis { n, h: 1.0 / n as f64, origin: 0.0, periodic: true }
    }

    pub fn open(n: usize, y0: f64, y1: f64) -> Self {
        Axis { n, h: (y1 - y0) / (n as f64 - 1.0), origin: y0, periodic: false }
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.h
    }

    /// Quadrature weight of node `i`: `h` on periodic axes, trapezoid otherwise.
    pub fn weight(&self, i: usize) -> f64 {
        if !self.periodic && (i == 0 || i + 1 == self.n) {
            0.5 * self.h
        } else {
            self.h
        }
    }

    /// The same axis with the spacing halved (node count refined accordingly).
    pub fn refined(&self) -> Self {
        if self.periodic {
            Axis::periodic(2 * self.n)
        } else {
            let y1 = self.origin + self.h * (self.n as f64 - 1.0);
            Axis::open(2 * self.n - 1, self.origin, y1)
        }
    }
}

/// A product grid; at most one open axis, stored last.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Axis>,
    strides: Vec<usize>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self, GridError> {
        for (i, a) in axes.iter().enumerate() {
            if a.n < 4 {
                return Err(GridError::TooFewPoints { axis: i, n: a.n });
            }
            if !a.periodic {
                let y1 = a.origin + a.h * (a.n as f64 - 1.0);
                if !(a.origin > 0.0 && y1 > a.origin) {
                    return Err(GridError::BadRange { y0: a.origin, y1 });
                }
            }
        }
        let mut strides = vec![1; axes.len()];
        for i in (0..axes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * axes[i + 1].n;
        }
        Ok(Grid { axes, strides })
    }

    /// `S¹ × T² × [y0, y1]` (equally `T³ × [y0, y1]`) with axes `(x1, x2, x3, y)`.
    pub fn product4(n1: usize, n2: usize, n3: usize, ny: usize, y0: f64, y1: f64) -> Result<Self, GridError> {
        if !(y0 > 0.0 && y1 > y0) {
            return Err(GridError::BadRange { y0, y1 });
        }
        Grid::new(vec![Axis::periodic(n1), Axis::periodic(n2), Axis::periodic(n3), Axis::open(ny, y0, y1)])
    }

    /// `T² × [y0, y1]` with axes `(x2, x3, y)`.
    pub fn slab3(n2: usize, n3: usize, ny: usize, y0: f64, y1: f64) -> Result<Self, GridError> {
        if !(y0 > 0.0 && y1 > y0) {
            return Err(GridError::BadRange { y0, y1 });
        }
        Grid::new(vec![Axis::periodic(n2), Axis::periodic(n3), Axis::open(ny, y0, y1)])
    }

    /// Flat unit torus `T³` with axes `(x1, x2, x3)`.
    pub fn torus3(n1: usize, n2: usize, n3: usize) -> Result<Self, GridError> {
        Grid::new(vec![Axis::periodic(n1), Axis::periodic(n2), Axis::periodic(n3)])
    }

    /// Flat unit torus `T²` with axes `(x2, x3)`.
    pub fn torus2(n2: usize, n3: usize) -> Result<Self, GridError> {
        Grid::new(vec![Axis::periodic(n2), Axis::periodic(n3)])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }
    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }
    pub fn axis(&self, i: usize) -> &Axis {
        &self.axes[i]
    }
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.n).collect()
    }
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Largest spacing, used as the nominal `h` in reports.
    pub fn h(&self) -> f64 {
        self.axes.iter().map(|a| a.h).fold(0.0, f64::max)
    }

    pub fn site(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn multi_index(&self, mut site: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (i, s) in self.strides.iter().enumerate() {
            out[i] = site / s;
            site %= s;
        }
        out
    }

    pub fn coords(&self, site: usize) -> Vec<f64> {
        self.multi_index(site).iter().zip(&self.axes).map(|(&i, a)| a.coord(i)).collect()
    }

    /// Product quadrature weight of a site.
    pub fn weight(&self, site: usize) -> f64 {
        self.multi_index(site).iter().zip(&self.axes).map(|(&i, a)| a.weight(i)).product()
    }

    /// Every axis refined by a factor of two.
    pub fn refined(&self) -> Self {
        Grid::new(self.axes.iter().map(Axis::refined).collect()).expect("refinement preserves validity")
    }

    /// Index of the open axis, if any.
    pub fn open_axis(&self) -> Option<usize> {
        self.axes.iter().position(|a| !a.periodic)
    }
}
