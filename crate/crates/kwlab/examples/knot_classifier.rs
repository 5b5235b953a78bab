//! Knot-data arithmetic on a closed surface: divisors, admissibility,
//! solution bounds and existence verdicts.

use kwlab::knot::{
    admissibility, classify_existence, divisor_from_knot_data, knot_data_from_vanishing, solution_count_bound,
    KnotData, KnotPoint, Limit, SurfaceSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = SurfaceSpec::new(3, 3)?;
    let kd = KnotData::new(vec![
        KnotPoint { id: "p".into(), weight: vec![1, 2] },
        KnotPoint { id: "q".into(), weight: vec![0, 3] },
    ])?;
    let d = divisor_from_knot_data(&kd);
    println!("deg D = {}, {:?}", d.degree(), admissibility(&d, s)?);
    println!("at most {} solutions", solution_count_bound(s));

    let witness = knot_data_from_vanishing(3, &[("p".into(), vec![0, 1, 3]), ("q".into(), vec![2, 2, 5])])?;
    for limit in [
        Limit::HitchinSection,
        Limit::NotHitchinSection,
        Limit::Irreducible { witness: Some(witness.knot_data.clone()) },
    ] {
        let v = classify_existence(s, &limit, Some(&kd))?;
        println!("{limit:?} -> {}", serde_json::to_string(&v)?);
    }
    for g in 0..2 {
        let v = classify_existence(SurfaceSpec::new(g, 2)?, &Limit::HitchinSection, None)?;
        println!("g = {g}: {}", v.name());
    }
    Ok(())
}
