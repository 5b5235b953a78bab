//! Builds principal `su(2)` triples in several ranks and checks their
//! commutation relations and Casimirs.

use kwlab::lie::{check_triple, principal_triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>14} {:>12}", "n", "bracket error", "casimir");
    for n in 2..=6 {
        let t = principal_triple(n)?;
        let c = check_triple(&t);
        println!("{n:>3} {:>14.3e} {:>12.6}", c.residual, t.casimir());
    }
    Ok(())
}
