//! Discrete exterior derivative on a slab `T² × [y0, y1]` and its
//! second-order convergence under refinement.

use kwlab::harness::refine::exterior_d_series;
use kwlab::harness::refine_study;
use kwlab::lattice::Grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = Grid::slab3(8, 8, 8, 0.5, 2.0)?;
    let series = exterior_d_series(&base, 4)?;
    for (h, e) in series.h.iter().zip(&series.values) {
        println!("h = {h:.5}  |d f - exact| = {e:.3e}");
    }
    let rows = refine_study(&[series])?;
    println!("observed order {:.3}", rows[0].order.unwrap_or(f64::NAN));
    Ok(())
}
