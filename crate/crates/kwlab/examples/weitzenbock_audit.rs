//! Audits the Weitzenböck and `T³` energy identities for one random field
//! across three resolutions. Pass a seed as the first argument.

use kwlab::audit::{refine_random, RandomAuditField, RandomFieldSpec};
use kwlab::lattice::Grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let field = RandomAuditField::draw(RandomFieldSpec::new(seed));
    let base = Grid::product4(8, 8, 8, 16, 0.5, 2.0)?;
    let r = refine_random(&field, &base, 3)?;
    for pair in &r.levels {
        let (w, t) = (&pair.weitzenbock, &pair.t3);
        println!("h = {:.4}  weitzenbock gap {:.3e}  t3 gap {:.3e}", w.h, w.relative_gap, t.relative_gap);
    }
    println!("orders: weitzenbock {:?}, t3 {:?}", r.weitzenbock_order, r.t3_order);
    Ok(())
}
