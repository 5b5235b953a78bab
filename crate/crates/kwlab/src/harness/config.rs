//! Run configuration: a flat `key = value` text file overridden by flags.
//!
//! Lines are `key = value`; blank lines and lines starting with `#` are
//! ignored. Keys use the flag names with `-` or `_` interchangeably.

use super::HarnessError;
use std::path::PathBuf;
use std::str::FromStr;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "KWLAB_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    VerifyModel,
    EmitModel,
    NahmIntegrate,
    AuditWeitzenbock,
    KnotAdmissible,
    Classify,
    RefineStudy,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyModel => "verify-model",
            Command::EmitModel => "emit-model",
            Command::NahmIntegrate => "nahm-integrate",
            Command::AuditWeitzenbock => "audit-weitzenbock",
            Command::KnotAdmissible => "knot-admissible",
            Command::Classify => "classify",
            Command::RefineStudy => "refine-study",
        }
    }
}

impl FromStr for Command {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "verify-model" => Command::VerifyModel,
            "emit-model" => Command::EmitModel,
            "nahm-integrate" => Command::NahmIntegrate,
            "audit-weitzenbock" => Command::AuditWeitzenbock,
            "knot-admissible" => Command::KnotAdmissible,
            "classify" => Command::Classify,
            "refine-study" => Command::RefineStudy,
            other => return Err(HarnessError::Config(format!("unknown subcommand {other:?}"))),
        })
    }
}

/// Shape `N1 x N2 x N3 x Ny` of a `T³ × [y0, y1]` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: [usize; 3],
    pub ny: usize,
    pub y0: f64,
    pub y1: f64,
}

impl FromStr for GridSpec {
    type Err = HarnessError;
    /// Parses `16x16x16x32`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<usize>, _> = s.split(['x', 'X']).map(|p| p.trim().parse::<usize>()).collect();
        match parts.as_deref() {
            Ok([a, b, c, y]) => Ok(GridSpec { n: [*a, *b, *c], ny: *y, y0: 0.5, y1: 2.0 }),
            _ => Err(HarnessError::Config(format!("grid must look like 16x16x16x32, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub grid: GridSpec,
    /// Rank `n` of `su(n)`.
    pub n: usize,
    /// Knot weight for the `SU(2)` model.
    pub k: u32,
    pub model: String,
    pub genus: Option<u32>,
    pub limit: Option<String>,
    pub weights: Vec<u32>,
    pub ode_y0: f64,
    pub ode_y1: f64,
    pub step: f64,
    pub perturb: f64,
    pub points: usize,
    pub fields: usize,
    pub levels: usize,
    pub quantity: String,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
    pub output: Option<String>,
    pub input: Option<PathBuf>,
    pub check: bool,
}

impl RunConfig {
    /// Defaults for a subcommand; the output directory comes from
    /// [`OUT_DIR_ENV`] when set.
    pub fn new(command: Command) -> Self {
        let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
        let (y0, y1) = match command {
            Command::VerifyModel | Command::EmitModel => (0.1, 10.0),
            _ => (0.5, 2.0),
        };
        RunConfig {
            command,
            grid: GridSpec { n: [16, 16, 16], ny: 32, y0, y1 },
            n: 2,
            k: 1,
            model: "knot".into(),
            genus: None,
            limit: None,
            weights: Vec::new(),
            ode_y0: 0.05,
            ode_y1: 10.0,
            step: 1e-3,
            perturb: 0.0,
            points: 10_000,
            fields: 20,
            levels: 3,
            quantity: "weitzenbock".into(),
            tolerance: None,
            seed: None,
            out_dir,
            output: None,
            input: None,
            check: false,
        }
    }

    /// Reads `key = value` lines.
    pub fn apply_text(&mut self, text: &str) -> Result<(), HarnessError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    /// Sets one key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, HarnessError> {
            v.parse().map_err(|_| HarnessError::Config(format!("{key}: cannot parse {v:?}")))
        }
        let key = key.replace('_', "-");
        match key.as_str() {
            "grid" => {
                let g: GridSpec = value.parse()?;
                self.grid.n = g.n;
                self.grid.ny = g.ny;
            }
            "grid-y0" => self.grid.y0 = num(&key, value)?,
            "grid-y1" => self.grid.y1 = num(&key, value)?,
            "n" => self.n = num(&key, value)?,
            "k" => self.k = num(&key, value)?,
            "model" => self.model = value.to_string(),
            "g" | "genus" => self.genus = Some(num(&key, value)?),
            "limit" => self.limit = Some(value.to_string()),
            "weights" => {
                self.weights = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| num(&key, s.trim()))
                    .collect::<Result<_, _>>()?
            }
            "y0" => self.ode_y0 = num(&key, value)?,
            "y1" => self.ode_y1 = num(&key, value)?,
            "step" => self.step = num(&key, value)?,
            "perturb" => self.perturb = num(&key, value)?,
            "points" => self.points = num(&key, value)?,
            "fields" => self.fields = num(&key, value)?,
            "levels" => self.levels = num(&key, value)?,
            "quantity" => self.quantity = value.to_string(),
            "tol" | "tolerance" => self.tolerance = Some(num(&key, value)?),
            "seed" => self.seed = Some(num(&key, value)?),
            "out-dir" => self.out_dir = PathBuf::from(value),
            "output" => self.output = Some(value.to_string()),
            "input" => self.input = Some(PathBuf::from(value)),
            "check" => self.check = num(&key, value)?,
            other => return Err(HarnessError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Range checks run before dispatch.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.grid.n.iter().any(|&n| n < 4) || self.grid.ny < 4 {
            return bad(format!("grid axes need at least 4 points, got {:?}x{}", self.grid.n, self.grid.ny));
        }
        if !(self.grid.y0 > 0.0 && self.grid.y1 > self.grid.y0) {
            return bad(format!("grid y-range must satisfy 0 < y0 < y1, got [{}, {}]", self.grid.y0, self.grid.y1));
        }
        if self.n < 2 {
            return bad(format!("rank n must be at least 2, got {}", self.n));
        }
        if !(self.ode_y0 > 0.0 && self.ode_y1 > self.ode_y0) {
            return bad(format!("need 0 < y0 < y1, got y0 = {}, y1 = {}", self.ode_y0, self.ode_y1));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        if !self.perturb.is_finite() {
            return bad("perturbation must be finite".into());
        }
        if self.points == 0 || self.fields == 0 {
            return bad("points and fields must be positive".into());
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return bad(format!("tolerance must be positive, got {t}"));
            }
        }
        match self.command {
            Command::AuditWeitzenbock if self.seed.is_none() => {
                return bad("audit-weitzenbock draws random fields and needs --seed".into())
            }
            Command::RefineStudy if self.levels < 3 => {
                return bad(format!("refine-study needs at least 3 resolutions, got {}", self.levels))
            }
            Command::RefineStudy if matches!(self.quantity.as_str(), "weitzenbock" | "t3") && self.seed.is_none() => {
                return bad("refinement of random-field audits needs --seed".into())
            }
            _ => {}
        }
        Ok(())
    }
}
