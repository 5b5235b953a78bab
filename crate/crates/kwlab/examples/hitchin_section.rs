//! Higgs fields on the Hitchin section and their characteristic
//! polynomial coefficients.

use kwlab::knot::hitchin_fibration;
use kwlab::model::hitchin_section_matrix;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = [Complex64::new(0.5, 0.0), Complex64::new(-1.0, 0.25), Complex64::new(0.0, 2.0)];
    let phi = hitchin_section_matrix(4, &q)?;
    println!("Higgs matrix:{}", phi.matrix());
    let p = &hitchin_fibration(&[phi.matrix().clone()])?[0];
    for j in 1..=4 {
        println!("p_{j} = {:.6}", p.p(j));
    }
    Ok(())
}
