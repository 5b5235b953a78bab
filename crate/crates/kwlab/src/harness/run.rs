use super::config::{Command, RunConfig};
use super::output::{artifact_path, num, opt_num, versioned, write_atomic, write_json, Csv};
use super::refine::{audit_series, exterior_d_series, nahm_pole_series, refine_study, RefinementSeries};
use super::{HarnessError, RunOutcome};
use crate::audit::{refine_random, RandomAuditField, RandomFieldSpec};
use crate::knot::{
    admissibility, classify_existence, divisor_from_knot_data, knot_data_from_vanishing, line_bundle_for,
    solution_count_bound, KnotData, KnotPoint, Limit, SurfaceSpec,
};
use crate::lattice::io::write_field;
use crate::lattice::{Grid, LatticeField, SphericalPatch};
use crate::lie::{principal_triple, LieElement, LieVec};
use crate::model::{hitchin_section_higgs, knot_jets, nahm_pole_ebe, nahm_pole_field, nahm_pole_jets, pullback_to_kw};
use crate::nahm::{casimir_drift, integrate, pole_deviation, state_deviation, Method, NahmState};
use crate::residual::{kw_point, kw_residual_analytic, ResidualReport};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

/// JSON input of `knot-admissible` and `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotInput {
    pub n: u32,
    pub g: u32,
    #[serde(default)]
    pub points: Vec<KnotPoint>,
    /// `hitchin_section`, `not_hitchin_section` or `irreducible`.
    #[serde(default)]
    pub limit: Option<String>,
    /// Vanishing orders of a line subbundle; they define the witness data
    /// set of an irreducible limit.
    #[serde(default)]
    pub vanishing_orders: Option<Vec<VanishingEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub id: String,
    pub orders: Vec<u32>,
}

/// Validates `cfg` and runs its subcommand.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    cfg.validate()?;
    let mut out = RunOutcome { artifacts: Vec::new(), summary: String::new(), breaches: Vec::new(), check: cfg.check };
    match cfg.command {
        Command::VerifyModel => verify_model(cfg, &mut out)?,
        Command::EmitModel => emit_model(cfg, &mut out)?,
        Command::NahmIntegrate => nahm_integrate(cfg, &mut out)?,
        Command::AuditWeitzenbock => audit_weitzenbock(cfg, &mut out)?,
        Command::KnotAdmissible => knot_admissible(cfg, &mut out)?,
        Command::Classify => classify(cfg, &mut out)?,
        Command::RefineStudy => refine(cfg, &mut out)?,
    }
    Ok(out)
}

fn product_grid(cfg: &RunConfig) -> Result<Grid, HarnessError> {
    let g = cfg.grid;
    Ok(Grid::product4(g.n[0], g.n[1], g.n[2], g.ny, g.y0, g.y1)?)
}

fn slab_grid(cfg: &RunConfig) -> Result<Grid, HarnessError> {
    let g = cfg.grid;
    Ok(Grid::slab3(g.n[1], g.n[2], g.ny, g.y0, g.y1)?)
}

fn write_csv(cfg: &RunConfig, out: &mut RunOutcome, csv: &Csv, default: &str) -> Result<(), HarnessError> {
    let path = artifact_path(&cfg.out_dir, cfg.output.as_deref(), default);
    csv.write(&path, cfg.command.name())?;
    out.artifacts.push(path);
    Ok(())
}

fn write_value(cfg: &RunConfig, out: &mut RunOutcome, v: &Value, default: &str) -> Result<(), HarnessError> {
    let path = artifact_path(&cfg.out_dir, cfg.output.as_deref(), default);
    write_json(&path, v)?;
    out.artifacts.push(path);
    Ok(())
}

fn residual_table(r: &ResidualReport) -> Csv {
    let mut csv = Csv::new(&["equation", "l2", "sup"]);
    for e in &r.equations {
        csv.push(vec![e.equation.clone(), num(e.l2), num(e.sup)]);
    }
    csv
}

fn verify_model(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    match cfg.model.as_str() {
        "knot" => {
            if cfg.n != 2 {
                return Err(HarnessError::Config(format!("the knot model is an SU(2) solution, got n = {}", cfg.n)));
            }
            let tol = cfg.tolerance.unwrap_or(1e-8);
            let patch = SphericalPatch::new(0.1, 2.0, 0.1, FRAC_PI_2).map_err(|e| HarnessError::Config(e.to_string()))?;
            let mut csv = Csv::new(&["R", "s", "theta", "kw_two_form", "kw_scalar"]);
            let mut sup: f64 = 0.0;
            for p in patch.halton_points(cfg.points) {
                let (a, phi) = knot_jets(cfg.k, &p, 1e-4);
                let [t, s] = kw_point(&a, &phi).norms_sq();
                let (t, s) = (t.sqrt(), s.sqrt());
                sup = sup.max(t).max(s);
                csv.push(vec![num(p.r), num(p.s), num(p.theta), num(t), num(s)]);
            }
            write_csv(cfg, out, &csv, "verify_knot.csv")?;
            let _ = writeln!(out.summary, "knot model k = {}: sup residual {:e} over {} points", cfg.k, sup, cfg.points);
            if !(sup <= tol) {
                out.breaches.push(format!("knot model residual {sup:e} exceeds {tol:e}"));
            }
        }
        "nahm-pole" => {
            let tol = cfg.tolerance.unwrap_or(1e-10);
            let t = principal_triple(cfg.n)?;
            let grid = product_grid(cfg)?;
            let r = kw_residual_analytic(&grid, |x| nahm_pole_jets(&t.t, x));
            write_csv(cfg, out, &residual_table(&r), "verify_nahm_pole.csv")?;
            let sup = r.max_sup();
            let _ = writeln!(out.summary, "Nahm pole n = {}: sup residual {:e}", cfg.n, sup);
            if !(sup <= tol) {
                out.breaches.push(format!("Nahm pole residual {sup:e} exceeds {tol:e}"));
            }
        }
        other => return Err(HarnessError::Config(format!("verify-model: unknown model {other:?} (knot, nahm-pole)"))),
    }
    Ok(())
}

fn emit_field(cfg: &RunConfig, out: &mut RunOutcome, name: &str, f: &LatticeField<LieElement>) -> Result<String, HarnessError> {
    let file = format!("{name}.kwlf");
    let mut bytes = Vec::new();
    write_field(&mut bytes, f)?;
    let path = cfg.out_dir.join(&file);
    write_atomic(&path, &bytes)?;
    out.artifacts.push(path);
    Ok(file)
}

fn emit_model(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let mut files = Vec::new();
    let grid_desc;
    match cfg.model.as_str() {
        "nahm-pole" => {
            let t = principal_triple(cfg.n)?;
            let grid = product_grid(cfg)?;
            let (a, phi) = nahm_pole_field(&t, &grid)?;
            files.push(emit_field(cfg, out, "nahm_pole_A", &a)?);
            files.push(emit_field(cfg, out, "nahm_pole_Phi", &phi)?);
            grid_desc = grid.shape();
        }
        "nahm-pole-ebe" | "pullback" => {
            let t = principal_triple(cfg.n)?;
            let slab = slab_grid(cfg)?;
            let ebe = nahm_pole_ebe(&t, &slab)?;
            if cfg.model == "pullback" {
                let (a, phi) = pullback_to_kw(&ebe, cfg.grid.n[0])?;
                files.push(emit_field(cfg, out, "pullback_A", &a)?);
                files.push(emit_field(cfg, out, "pullback_Phi", &phi)?);
                grid_desc = a.grid.shape();
            } else {
                files.push(emit_field(cfg, out, "ebe_A", &ebe.a)?);
                files.push(emit_field(cfg, out, "ebe_phi", &ebe.phi)?);
                files.push(emit_field(cfg, out, "ebe_phi1", &ebe.phi1)?);
                grid_desc = slab.shape();
            }
        }
        "hitchin-section" => {
            let grid = Grid::torus2(cfg.grid.n[1], cfg.grid.n[2])?;
            let mut q: Vec<Complex64> = cfg.weights.iter().map(|&w| Complex64::new(w as f64, 0.0)).collect();
            q.resize(cfg.n - 1, Complex64::new(0.0, 0.0));
            let higgs = hitchin_section_higgs(cfg.n, &grid, |_| q.clone())?;
            files.push(emit_field(cfg, out, "hitchin_section_higgs", &higgs)?);
            grid_desc = grid.shape();
        }
        other => {
            return Err(HarnessError::Config(format!(
                "emit-model: unknown model {other:?} (nahm-pole, nahm-pole-ebe, pullback, hitchin-section)"
            )))
        }
    }
    let manifest = versioned(json!({
        "model": cfg.model,
        "n": cfg.n,
        "grid": grid_desc,
        "y_range": [cfg.grid.y0, cfg.grid.y1],
        "files": files,
    }));
    write_value(cfg, out, &manifest, "manifest.json")?;
    let _ = writeln!(out.summary, "emitted {} field file(s) for {}", files.len(), cfg.model);
    Ok(())
}

fn nahm_integrate(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let tol = cfg.tolerance.unwrap_or(1e-6);
    let t = principal_triple(cfg.n)?;
    let start = t.t.clone().map(|x| x.scale((1.0 + cfg.perturb) / cfg.ode_y0));
    let s0 = NahmState::new(cfg.ode_y0, start)?;
    let traj = integrate(&s0, cfg.ode_y1, cfg.step, &Method::Direct)?;
    let mut csv = Csv::new(&["y", "norm_T1", "norm_T2", "norm_T3", "deviation"]);
    for s in &traj.states {
        let norm = |x: &LieElement| x.norm_sq().sqrt();
        csv.push(vec![num(s.y), num(norm(&s.t[0])), num(norm(&s.t[1])), num(norm(&s.t[2])), num(state_deviation(s, &t.t))]);
    }
    write_csv(cfg, out, &csv, "nahm_trajectory.csv")?;
    let dev = pole_deviation(&traj, &t.t)?;
    let drift = casimir_drift(&traj, &t.t);
    let _ = writeln!(
        out.summary,
        "n = {}, perturbation {}: {} states, sup deviation {:e}, relative Casimir drift {:e}{}",
        cfg.n,
        cfg.perturb,
        traj.states.len(),
        dev,
        drift,
        traj.blowup_at.map(|y| format!(", blow-up near y = {y}")).unwrap_or_default()
    );
    if cfg.perturb == 0.0 && !(dev <= tol) {
        out.breaches.push(format!("pole deviation {dev:e} exceeds {tol:e}"));
    }
    Ok(())
}

fn audit_weitzenbock(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let tol = cfg.tolerance.unwrap_or(0.05);
    let seed0 = cfg.seed.expect("validated");
    let base = product_grid(cfg)?;
    let levels = cfg.levels.max(3);
    let mut csv = Csv::new(&["seed", "identity", "h", "lhs", "bulk", "boundary", "gap", "relative_gap", "order"]);
    let mut worst_gap: f64 = 0.0;
    for i in 0..cfg.fields as u64 {
        let seed = seed0 + i;
        let field = RandomAuditField::draw(RandomFieldSpec::new(seed));
        let r = refine_random(&field, &base, levels)?;
        for (identity, order) in [("weitzenbock", r.weitzenbock_order), ("t3_energy", r.t3_order)] {
            for (li, pair) in r.levels.iter().enumerate() {
                let rep = if identity == "weitzenbock" { &pair.weitzenbock } else { &pair.t3 };
                let last = li + 1 == r.levels.len();
                csv.push(vec![
                    seed.to_string(),
                    identity.into(),
                    num(rep.h),
                    num(rep.lhs),
                    num(rep.rhs_bulk),
                    num(rep.rhs_boundary),
                    num(rep.gap),
                    num(rep.relative_gap),
                    if last { opt_num(order) } else { "n/a".into() },
                ]);
            }
            let coarse = if identity == "weitzenbock" { &r.levels[0].weitzenbock } else { &r.levels[0].t3 };
            worst_gap = worst_gap.max(coarse.relative_gap);
            if !(coarse.relative_gap <= tol) {
                out.breaches.push(format!("seed {seed} {identity}: relative gap {:e} exceeds {tol}", coarse.relative_gap));
            }
            match order {
                Some(p) if (p - 2.0).abs() <= 0.4 => {}
                _ => out.breaches.push(format!("seed {seed} {identity}: observed order {} outside 2 ± 0.4", opt_num(order))),
            }
        }
    }
    write_csv(cfg, out, &csv, "audit_weitzenbock.csv")?;
    let _ = writeln!(
        out.summary,
        "{} field(s) from seed {seed0}: worst coarse relative gap {:e}, {} breach(es)",
        cfg.fields,
        worst_gap,
        out.breaches.len()
    );
    Ok(())
}

fn read_input(cfg: &RunConfig) -> Result<KnotInput, HarnessError> {
    if let Some(path) = &cfg.input {
        let text = std::fs::read_to_string(path)?;
        let mut inp: KnotInput =
            serde_json::from_str(&text).map_err(|e| HarnessError::Input(format!("{}: {e}", path.display())))?;
        if let Some(g) = cfg.genus {
            inp.g = g;
        }
        if let Some(l) = &cfg.limit {
            inp.limit = Some(l.clone());
        }
        return Ok(inp);
    }
    let g = cfg.genus.ok_or_else(|| HarnessError::Config("genus is required (--g or --input)".into()))?;
    let points = if cfg.weights.is_empty() {
        Vec::new()
    } else {
        vec![KnotPoint { id: "p0".into(), weight: cfg.weights.clone() }]
    };
    Ok(KnotInput { n: cfg.n as u32, g, points, limit: cfg.limit.clone(), vanishing_orders: None })
}

fn knot_data(inp: &KnotInput) -> Result<KnotData, HarnessError> {
    let kd = KnotData::new(inp.points.clone())?;
    kd.check_rank(inp.n)?;
    Ok(kd)
}

fn to_json<T: Serialize>(v: &T) -> Result<Value, HarnessError> {
    serde_json::to_value(v).map_err(|e| HarnessError::Input(e.to_string()))
}

fn knot_admissible(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let inp = read_input(cfg)?;
    let kd = knot_data(&inp)?;
    let s = SurfaceSpec::new(inp.g, inp.n)?;
    let d = divisor_from_knot_data(&kd);
    let adm = admissibility(&d, s)?;
    let bundle = line_bundle_for(&d, s, None)?;
    let bound = solution_count_bound(s);
    let divisor: serde_json::Map<String, Value> = d.entries().map(|(p, m)| (p.to_string(), Value::from(m))).collect();
    let v = versioned(json!({
        "n": inp.n,
        "g": inp.g,
        "divisor": divisor,
        "degree": d.degree(),
        "admissibility": to_json(&adm)?,
        "line_bundle": to_json(&bundle)?,
        "bound": bound.to_string(),
    }));
    write_value(cfg, out, &v, "knot_admissible.json")?;
    let _ = writeln!(out.summary, "{:<10} {:>8}", "point", "mult");
    for (p, m) in d.entries() {
        let _ = writeln!(out.summary, "{p:<10} {m:>8}");
    }
    let _ = writeln!(out.summary, "deg D = {}, n = {}, g = {}", d.degree(), inp.n, inp.g);
    match &bundle {
        Some(l) => {
            let _ = writeln!(out.summary, "admissible: deg L = {}, at most {bound} solutions", l.degree);
        }
        None => {
            let _ = writeln!(out.summary, "inadmissible: {} does not divide deg D", inp.n);
        }
    }
    Ok(())
}

fn parse_limit(inp: &KnotInput) -> Result<Limit, HarnessError> {
    let witness = match &inp.vanishing_orders {
        Some(v) => {
            let orders: Vec<(String, Vec<u32>)> = v.iter().map(|e| (e.id.clone(), e.orders.clone())).collect();
            Some(knot_data_from_vanishing(inp.n, &orders)?.knot_data)
        }
        None => None,
    };
    match inp.limit.as_deref().unwrap_or("hitchin_section").replace('-', "_").as_str() {
        "hitchin_section" | "hitchin" => Ok(Limit::HitchinSection),
        "not_hitchin_section" | "other" => Ok(Limit::NotHitchinSection),
        "irreducible" => Ok(Limit::Irreducible { witness }),
        other => Err(HarnessError::Config(format!(
            "unknown limit {other:?} (hitchin_section, not_hitchin_section, irreducible)"
        ))),
    }
}

fn classify(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let inp = read_input(cfg)?;
    let kd = knot_data(&inp)?;
    let s = SurfaceSpec::new(inp.g, inp.n)?;
    let limit = parse_limit(&inp)?;
    let verdict = classify_existence(s, &limit, Some(&kd))?;
    let mut v = versioned(to_json(&verdict)?);
    if let Value::Object(m) = &mut v {
        m.insert("n".into(), Value::from(inp.n));
        m.insert("g".into(), Value::from(inp.g));
    }
    write_value(cfg, out, &v, "classify.json")?;
    let _ = writeln!(out.summary, "{}", serde_json::to_string(&v).unwrap_or_default());
    Ok(())
}

fn refine(cfg: &RunConfig, out: &mut RunOutcome) -> Result<(), HarnessError> {
    let mut series: Vec<RefinementSeries> = Vec::new();
    let wanted: Vec<&str> = match cfg.quantity.as_str() {
        "all" => vec!["exterior_d", "nahm_pole"],
        q => vec![q],
    };
    for q in wanted {
        match q {
            "weitzenbock" | "t3" => {
                let [w, t] = audit_series(cfg.seed.expect("validated"), &product_grid(cfg)?, cfg.levels)?;
                series.push(if q == "weitzenbock" { w } else { t });
            }
            "exterior_d" => series.push(exterior_d_series(&slab_grid(cfg)?, cfg.levels)?),
            "nahm_pole" => series.push(nahm_pole_series(cfg.n, &product_grid(cfg)?, cfg.levels)?),
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown quantity {other:?} (weitzenbock, t3, exterior_d, nahm_pole, all)"
                )))
            }
        }
    }
    let rows = refine_study(&series)?;
    let mut csv = Csv::new(&["quantity", "level", "h", "value", "order", "flagged"]);
    for (s, row) in series.iter().zip(&rows) {
        for (i, (h, v)) in s.h.iter().zip(&s.values).enumerate() {
            let last = i + 1 == s.values.len();
            csv.push(vec![
                s.quantity.clone(),
                i.to_string(),
                num(*h),
                num(*v),
                if last { opt_num(row.order) } else { "n/a".into() },
                if last { row.flagged.to_string() } else { "n/a".into() },
            ]);
        }
        let _ = writeln!(out.summary, "{:<20} order {:>10}{}", row.quantity, opt_num(row.order), if row.flagged { "  FLAGGED" } else { "" });
        if row.flagged {
            out.breaches.push(format!("{}: observed order {} below {}", row.quantity, opt_num(row.order), super::ORDER_FLOOR));
        }
    }
    write_csv(cfg, out, &csv, "refine_study.csv")?;
    Ok(())
}
