//! Nahm's equations `dT_a/dy = -½ ε_abc [T_b, T_c]` on `T³ × ℝ⁺`.
//!
//! With `[t_1, t_2] = t_3` (cyclic) the pole `T_a = t_a / y` is an exact
//! solution. The integrator is classical fixed-step RK4, optionally applied to
//! the regularised variable `u_a = y T_a - t_a`, which vanishes identically on
//! the pole and removes the `1/y` stiffness near the start.

use crate::lie::LieVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NahmError {
    #[error("initial y must be positive, got {0}")]
    NonPositiveY(f64),
    #[error("step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("end point {end} must exceed the start {start}")]
    BadInterval { start: f64, end: f64 },
    #[error("trajectory is empty")]
    EmptyTrajectory,
}

/// A point `(y, T₁, T₂, T₃)` of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct NahmState<T> {
    pub y: f64,
    pub t: [T; 3],
}

impl<T: LieVec> NahmState<T> {
    pub fn new(y: f64, t: [T; 3]) -> Result<Self, NahmError> {
        if !(y > 0.0) {
            return Err(NahmError::NonPositiveY(y));
        }
        Ok(NahmState { y, t })
    }

    /// The pole `t_a / y`.
    pub fn pole(y: f64, t: &[T; 3]) -> Result<Self, NahmError> {
        Self::new(y, [t[0].scale(1.0 / y), t[1].scale(1.0 / y), t[2].scale(1.0 / y)])
    }

    /// `Σ_a ⟨T_a, T_a⟩`.
    pub fn casimir(&self) -> f64 {
        self.t.iter().map(|x| x.inner(x)).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.t.iter().all(|x| x.norm_sq().is_finite())
    }
}

/// `(dT₁, dT₂, dT₃)`.
pub fn nahm_rhs<T: LieVec>(s: &NahmState<T>) -> [T; 3] {
    rhs(&s.t)
}

fn rhs<T: LieVec>(t: &[T; 3]) -> [T; 3] {
    [t[1].bracket(&t[2]).neg(), t[2].bracket(&t[0]).neg(), t[0].bracket(&t[1]).neg()]
}

/// Right-hand side for `u_a = y T_a - t_a`:
/// `du_a/dy = (u_a - [u_b, t_c] - [t_b, u_c] - [u_b, u_c]) / y`.
fn rhs_substituted<T: LieVec>(y: f64, u: &[T; 3], t: &[T; 3]) -> [T; 3] {
    let comp = |a: usize, b: usize, c: usize| {
        u[a].sub(&u[b].bracket(&t[c])).sub(&t[b].bracket(&u[c])).sub(&u[b].bracket(&u[c])).scale(1.0 / y)
    };
    [comp(0, 1, 2), comp(1, 2, 0), comp(2, 0, 1)]
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method<T> {
    /// RK4 on `T_a` directly.
    Direct,
    /// RK4 on `u_a = y T_a - t_a` for the given triple.
    Substituted([T; 3]),
}

impl<T> Method<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "rk4",
            Method::Substituted(_) => "rk4-substituted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NahmTrajectory<T> {
    pub states: Vec<NahmState<T>>,
    pub method: &'static str,
    pub step: f64,
    /// `Σ_a ⟨T_a, T_a⟩` at each state.
    pub casimir: Vec<f64>,
    /// Set when a non-finite state was met; the trajectory stops before it.
    pub blowup_at: Option<f64>,
}

impl<T: LieVec> NahmTrajectory<T> {
    pub fn last(&self) -> Option<&NahmState<T>> {
        self.states.last()
    }
}

fn combo<T: LieVec>(x: &[T; 3], k: &[T; 3], h: f64) -> [T; 3] {
    [x[0].add_scaled(&k[0], h), x[1].add_scaled(&k[1], h), x[2].add_scaled(&k[2], h)]
}

fn rk4_step<T: LieVec>(y: f64, x: &[T; 3], h: f64, f: &dyn Fn(f64, &[T; 3]) -> [T; 3]) -> [T; 3] {
    let k1 = f(y, x);
    let k2 = f(y + 0.5 * h, &combo(x, &k1, 0.5 * h));
    let k3 = f(y + 0.5 * h, &combo(x, &k2, 0.5 * h));
    let k4 = f(y + h, &combo(x, &k3, h));
    let mut out = combo(x, &k1, h / 6.0);
    out = combo(&out, &k2, h / 3.0);
    out = combo(&out, &k3, h / 3.0);
    combo(&out, &k4, h / 6.0)
}

/// Integrates from `s0` to `y_end` with a uniform step no larger than `step`.
pub fn integrate<T: LieVec>(
    s0: &NahmState<T>,
    y_end: f64,
    step: f64,
    method: &Method<T>,
) -> Result<NahmTrajectory<T>, NahmError> {
    if !(s0.y > 0.0) {
        return Err(NahmError::NonPositiveY(s0.y));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(NahmError::BadStep(step));
    }
    if !(y_end > s0.y) {
        return Err(NahmError::BadInterval { start: s0.y, end: y_end });
    }
    let span = y_end - s0.y;
    let ratio = span / step;
    let nsteps = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) { ratio.round() } else { ratio.ceil() };
    let nsteps = (nsteps as usize).max(1);
    let h = span / nsteps as f64;

    let mut states = Vec::with_capacity(nsteps + 1);
    let mut casimir = Vec::with_capacity(nsteps + 1);
    states.push(s0.clone());
    casimir.push(s0.casimir());
    let mut blowup_at = None;

    let mut x = match method {
        Method::Direct => s0.t.clone(),
        Method::Substituted(t) => {
            let y = s0.y;
            [s0.t[0].scale(y).sub(&t[0]), s0.t[1].scale(y).sub(&t[1]), s0.t[2].scale(y).sub(&t[2])]
        }
    };
    for i in 0..nsteps {
        let y = s0.y + i as f64 * h;
        let y_next = s0.y + (i + 1) as f64 * h;
        let state = match method {
            Method::Direct => {
                x = rk4_step(y, &x, h, &|_, v| rhs(v));
                NahmState { y: y_next, t: x.clone() }
            }
            Method::Substituted(t) => {
                x = rk4_step(y, &x, h, &|yy, v| rhs_substituted(yy, v, t));
                let back = |a: usize| x[a].add(&t[a]).scale(1.0 / y_next);
                NahmState { y: y_next, t: [back(0), back(1), back(2)] }
            }
        };
        if !state.is_finite() {
            blowup_at = Some(y_next);
            break;
        }
        casimir.push(state.casimir());
        states.push(state);
    }
    Ok(NahmTrajectory { states, method: method.name(), step: h, casimir, blowup_at })
}

/// `sup_y Σ_a y ‖T_a(y) - t_a/y‖`.
pub fn pole_deviation<T: LieVec>(traj: &NahmTrajectory<T>, t: &[T; 3]) -> Result<f64, NahmError> {
    if traj.states.is_empty() {
        return Err(NahmError::EmptyTrajectory);
    }
    Ok(traj.states.iter().map(|s| state_deviation(s, t)).fold(0.0, f64::max))
}

/// `Σ_a y ‖T_a(y) - t_a/y‖` at one state.
pub fn state_deviation<T: LieVec>(s: &NahmState<T>, t: &[T; 3]) -> f64 {
    (0..3).map(|a| s.t[a].sub(&t[a].scale(1.0 / s.y)).norm() * s.y).sum()
}

/// Largest relative deviation `|Σ⟨T_a,T_a⟩ y²/C - 1|` of the recorded Casimir
/// from the pole value `C/y²`, `C = Σ⟨t_a,t_a⟩`. Falls back to the absolute
/// deviation when `C = 0`.
pub fn casimir_drift<T: LieVec>(traj: &NahmTrajectory<T>, t: &[T; 3]) -> f64 {
    let c: f64 = t.iter().map(|x| x.inner(x)).sum();
    traj.states
        .iter()
        .zip(&traj.casimir)
        .map(|(s, v)| if c > 0.0 { (v * s.y * s.y / c - 1.0).abs() } else { v.abs() })
        .fold(0.0, f64::max)
}

/// Runs one trajectory per initial state on scoped worker threads.
pub fn integrate_ensemble<T: LieVec>(
    starts: &[NahmState<T>],
    y_end: f64,
    step: f64,
    method: &Method<T>,
) -> Vec<Result<NahmTrajectory<T>, NahmError>> {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(starts.len().max(1));
    if workers <= 1 {
        return starts.iter().map(|s| integrate(s, y_end, step, method)).collect();
    }
    let chunk = starts.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .chunks(chunk)
            .map(|c| scope.spawn(move || c.iter().map(|s| integrate(s, y_end, step, method)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::principal_triple;

    #[test]
    fn pole_start_tracks_the_pole() {
        for n in 2..=4 {
            let t = principal_triple(n).unwrap().t;
            let s0 = NahmState::pole(0.05, &t).unwrap();
            let tr = integrate(&s0, 10.0, 1e-3, &Method::Direct).unwrap();
            let dev = pole_deviation(&tr, &t).unwrap();
            assert!(dev < 1e-6, "n={n} dev={dev}");
            let drift = casimir_drift(&tr, &t);
            assert!(drift < 1e-6);
        }
    }

    #[test]
    fn halving_the_step_gains_a_factor_near_sixteen() {
        let t = principal_triple(2).unwrap().t;
        let s0 = NahmState::pole(0.05, &t).unwrap();
        let e = |h: f64| {
            let tr = integrate(&s0, 10.0, h, &Method::Direct).unwrap();
            state_deviation(tr.last().unwrap(), &t)
        };
        let r = e(2e-3) / e(1e-3);
        assert!((12.0..=20.0).contains(&r), "ratio {r}");
    }
}
