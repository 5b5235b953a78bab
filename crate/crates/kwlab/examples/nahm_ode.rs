//! Integrates the Nahm equations from the pole, first exactly on the pole
//! trajectory and then from perturbed data, and reports the drift.

use kwlab::lie::{principal_triple, LieVec};
use kwlab::nahm::{casimir_drift, integrate, pole_deviation, Method, NahmState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = principal_triple(3)?;
    let y0 = 0.05;
    for delta in [0.0, 1e-3, -1e-3] {
        let start = t.t.clone().map(|x| x.scale((1.0 + delta) / y0));
        let traj = integrate(&NahmState::new(y0, start)?, 10.0, 1e-3, &Method::Direct)?;
        println!(
            "delta = {delta:+.0e}: deviation {:.3e}, casimir drift {:.3e}, blow-up {:?}",
            pole_deviation(&traj, &t.t)?,
            casimir_drift(&traj, &t.t),
            traj.blowup_at
        );
    }
    let sub = integrate(&NahmState::pole(y0, &t.t)?, 10.0, 1e-2, &Method::Substituted(t.t.clone()))?;
    println!("substituted form, coarse step: deviation {:.3e}", pole_deviation(&sub, &t.t)?);
    Ok(())
}
