//! Seeded smooth test fields with a full Fourier spectrum.
//!
//! Each of the eighteen scalar components (`A_{x1..x3}` and `φ_{x1..x3}`,
//! three `su(2)` coordinates each) is a short sum of separable terms
//!
//! `c · Π_i exp(α_i cos(2π k_i x_i + β_i)) · cos(κ y + ψ) · w(y)`
//!
//! with `w(y) = sin⁴(π (y - a)/(b - a))` on `[a, b]` and zero outside. The
//! exponential profiles excite every periodic mode, which matters: fields
//! made of a few plane waves satisfy the discrete product rule exactly after
//! integration and would hide the truncation error under study.

use super::kernel::{SliceFields, SliceSource};
use crate::lattice::{Grid, GridError, LatticeField};
use crate::lie::{LieVec, Su2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, PartialEq)]
struct Term {
    c: f64,
    k: [f64; 3],
    alpha: [f64; 3],
    beta: [f64; 3],
    kappa: f64,
    psi: f64,
}

/// Parameters of a random field draw.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomFieldSpec {
    pub seed: u64,
    /// Separable terms per scalar component.
    pub modes: usize,
    pub amplitude: f64,
    /// Support `[a, b]` of the `y` window.
    pub support: (f64, f64),
}

impl RandomFieldSpec {
    pub fn new(seed: u64) -> Self {
        RandomFieldSpec { seed, modes: 2, amplitude: 1.0, support: (0.6, 1.9) }
    }
}

/// A drawn field: `terms[f][a]` for field `f` (`A₁,A₂,A₃,φ₁,φ₂,φ₃`) and
/// `su(2)` coordinate `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomAuditField {
    pub spec: RandomFieldSpec,
    terms: Vec<Vec<Vec<Term>>>,
}

impl RandomAuditField {
    pub fn draw(spec: RandomFieldSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut terms = Vec::with_capacity(6);
        for _ in 0..6 {
            let mut per_field = Vec::with_capacity(3);
            for _ in 0..3 {
                let comp = (0..spec.modes)
                    .map(|_| Term {
                        c: spec.amplitude * rng.gen_range(-1.0..1.0),
                        k: std::array::from_fn(|_| rng.gen_range(1..=2) as f64),
                        alpha: std::array::from_fn(|_| rng.gen_range(0.2..0.8)),
                        beta: std::array::from_fn(|_| rng.gen_range(0.0..TAU)),
                        kappa: rng.gen_range(0.0..2.0),
                        psi: rng.gen_range(0.0..TAU),
                    })
                    .collect();
                per_field.push(comp);
            }
            terms.push(per_field);
        }
        RandomAuditField { spec, terms }
    }

    pub fn window(&self, y: f64) -> f64 {
        let (a, b) = self.spec.support;
        let t = ((y - a) / (b - a)).clamp(0.0, 1.0);
        (PI * t).sin().powi(4)
    }

    /// Value of field `f`, coordinate `a` at a point.
    pub fn value(&self, f: usize, a: usize, x: &[f64]) -> f64 {
        let w = self.window(x[3]);
        if w == 0.0 {
            return 0.0;
        }
        self.terms[f][a]
            .iter()
            .map(|t| {
                let mut v = t.c * (t.kappa * x[3] + t.psi).cos();
                for i in 0..3 {
                    v *= (t.alpha[i] * (TAU * t.k[i] * x[i] + t.beta[i]).cos()).exp();
                }
                v
            })
            .sum::<f64>()
            * w
    }

    /// Samples the field into lattice forms `(A, Φ)` with vanishing `dy` legs.
    pub fn to_lattice(&self, grid: &Grid) -> Result<(LatticeField<Su2>, LatticeField<Su2>), GridError> {
        let comp = |f: usize, x: &[f64]| Su2([self.value(f, 0, x), self.value(f, 1, x), self.value(f, 2, x)]);
        let a = LatticeField::from_fn(grid, 1, |x| vec![comp(0, x), comp(1, x), comp(2, x), Su2::ZERO])?;
        let p = LatticeField::from_fn(grid, 1, |x| vec![comp(3, x), comp(4, x), comp(5, x), Su2::ZERO])?;
        Ok((a, p))
    }

    /// A streaming source on `grid` with precomputed separable tables.
    pub fn source(&self, grid: &Grid) -> RandomFieldSource<'_> {
        let ax = grid.axes();
        let tables = self
            .terms
            .iter()
            .map(|fc| {
                fc.iter()
                    .map(|ts| {
                        ts.iter()
                            .map(|t| {
                                std::array::from_fn(|i| {
                                    (0..ax[i].n)
                                        .map(|j| (t.alpha[i] * (TAU * t.k[i] * ax[i].coord(j) + t.beta[i]).cos()).exp())
                                        .collect()
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RandomFieldSource { field: self, grid: grid.clone(), tables }
    }
}

type Tables = Vec<Vec<Vec<[Vec<f64>; 3]>>>;

pub struct RandomFieldSource<'a> {
    field: &'a RandomAuditField,
    grid: Grid,
    tables: Tables,
}

impl SliceSource<Su2> for RandomFieldSource<'_> {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn zero(&self) -> Su2 {
        Su2::ZERO
    }

    fn fill(&self, iy: usize, out: &mut SliceFields<Su2>) {
        let ax = self.grid.axes();
        let y = ax[3].coord(iy);
        let w = self.field.window(y);
        out.vanishes = w == 0.0;
        for f in 0..6 {
            let dst = if f < 3 { &mut out.a[f] } else { &mut out.p[f - 3] };
            for v in dst.iter_mut() {
                *v = Su2::ZERO;
            }
            if out.vanishes {
                continue;
            }
            for a in 0..3 {
                for (t, tab) in self.field.terms[f][a].iter().zip(&self.tables[f][a]) {
                    let cy = t.c * (t.kappa * y + t.psi).cos() * w;
                    let mut q = 0;
                    for &x0 in &tab[0] {
                        let c0 = cy * x0;
                        for &x1 in &tab[1] {
                            let c1 = c0 * x1;
                            for &x2 in &tab[2] {
                                dst[q].0[a] += c1 * x2;
                                q += 1;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Streaming source over stored lattice forms.
pub struct LatticeSource<'a, T> {
    a: &'a LatticeField<T>,
    p: &'a LatticeField<T>,
}

impl<'a, T: LieVec> LatticeSource<'a, T> {
    pub fn new(a: &'a LatticeField<T>, p: &'a LatticeField<T>) -> Result<Self, super::AuditError> {
        if a.grid != p.grid || a.degree != 1 || p.degree != 1 || a.dim() != 4 {
            return Err(super::AuditError::Shape("expected two 1-forms on one four-dimensional grid".into()));
        }
        if a.comps[3].iter().chain(&p.comps[3]).any(|x| x.norm_sq() != 0.0) {
            return Err(super::AuditError::Shape("the dy components of A and Φ must vanish".into()));
        }
        Ok(LatticeSource { a, p })
    }
}

impl<T: LieVec> SliceSource<T> for LatticeSource<'_, T> {
    fn grid(&self) -> &Grid {
        &self.a.grid
    }

    fn zero(&self) -> T {
        self.a.comps[0][0].zero_like()
    }

    fn fill(&self, iy: usize, out: &mut SliceFields<T>) {
        let ny = self.a.grid.axis(3).n;
        let mut vanishes = true;
        for k in 0..3 {
            for (q, dst) in out.a[k].iter_mut().enumerate() {
                *dst = self.a.comps[k][q * ny + iy].clone();
                vanishes &= dst.norm_sq() == 0.0;
            }
            for (q, dst) in out.p[k].iter_mut().enumerate() {
                *dst = self.p.comps[k][q * ny + iy].clone();
                vanishes &= dst.norm_sq() == 0.0;
            }
        }
        out.vanishes = vanishes;
    }
}
