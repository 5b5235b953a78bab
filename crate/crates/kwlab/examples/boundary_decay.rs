//! Slice integrals of `Tr(B_A ∧ φ)` for a field decaying like `e^{-y}` as
//! the slice approaches the far boundary.

use kwlab::audit::boundary_decay;
use kwlab::lattice::Grid;
use kwlab::lie::{LieVec, Su2};
use std::f64::consts::TAU;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let torus = Grid::torus3(12, 12, 12)?;
    let eps = [1.0, 2.0, 4.0, 8.0];
    let samples = boundary_decay(&torus, &eps, |y| {
        let decay = (-y).exp();
        let mut a: [Vec<Su2>; 3] = Default::default();
        let mut p: [Vec<Su2>; 3] = Default::default();
        for s in 0..torus.len() {
            let x = torus.coords(s);
            let (s1, c1) = (TAU * x[0]).sin_cos();
            let c2 = (TAU * x[1]).cos();
            a[0].push(Su2::new(0.0, 0.0, 0.0));
            a[1].push(Su2::new(s1, 0.0, c2).scale(decay));
            a[2].push(Su2::new(0.0, c1, 0.0).scale(decay));
            p[0].push(Su2::new(0.0, 0.0, 0.0));
            p[1].push(Su2::new(0.0, s1, 0.0).scale(decay));
            p[2].push(Su2::new(c1, 0.0, c2).scale(decay));
        }
        (a, p)
    })?;
    for s in samples {
        println!("y = {:>4}: integral {:+.6e}", s.y, s.value);
    }
    Ok(())
}
