//! Lifts the three-dimensional Nahm pole to four dimensions and compares
//! residuals on both sides.

use kwlab::audit::{invariance_witness, weitzenbock_gap};
use kwlab::lattice::Grid;
use kwlab::lie::principal_triple;
use kwlab::model::{nahm_pole_ebe, pullback_to_kw};
use kwlab::residual::{ebe_residual, kw_residual};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = principal_triple(2)?;
    let slab = Grid::slab3(8, 8, 24, 0.5, 2.0)?;
    let ebe = nahm_pole_ebe(&t, &slab)?;
    let (a, phi) = pullback_to_kw(&ebe, 6)?;
    let r3 = ebe_residual(&ebe);
    let r4 = kw_residual(&a, &phi)?;
    println!("EBE residual {:.3e}, KW residual of the lift {:.3e}", r3.total_l2(), r4.total_l2());
    let w = weitzenbock_gap(&a, &phi)?;
    println!("witness norms (nabla1 phi, B, nabla1 phi1) = {:?}", invariance_witness(&w));
    Ok(())
}
