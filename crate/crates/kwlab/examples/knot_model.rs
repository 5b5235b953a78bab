//! Residual of the explicit `SU(2)` knot solutions at quasi-random points
//! of a spherical patch, for the first few knot weights.

use kwlab::lattice::SphericalPatch;
use kwlab::model::knot_kw_sup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let patch = SphericalPatch::new(0.1, 2.0, 0.1, std::f64::consts::FRAC_PI_2)?;
    let points = patch.halton_points(2000);
    for k in 0..5 {
        println!("k = {k}: sup KW residual {:.3e}", knot_kw_sup(k, &points, 1e-4));
    }
    Ok(())
}
