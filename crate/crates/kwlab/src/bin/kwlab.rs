use clap::{Args, Parser, Subcommand};
use kwlab::harness::{run, Command, HarnessError, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kwlab", version, about = "Kapustin-Witten fields with a Nahm pole: residuals, audits and knot bookkeeping")]
struct Cli {
    /// `key = value` file applied before the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Exit with status 2 when a tolerance is breached.
    #[arg(long, global = true)]
    check: bool,
    /// Artifact directory (default: $KWLAB_OUT_DIR or the working directory).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Artifact file name overriding the default.
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Residuals of an exact model (knot or nahm-pole).
    VerifyModel(ModelArgs),
    /// Writes model fields as KWLF files plus a JSON manifest.
    EmitModel(ModelArgs),
    /// Integrates the Nahm equations from the pole.
    NahmIntegrate(NahmArgs),
    /// Weitzenböck and T³ energy audits of random fields.
    AuditWeitzenbock(AuditArgs),
    /// Divisor degree, admissibility and solution bound.
    KnotAdmissible(KnotArgs),
    /// Existence verdict for given genus, rank, limit and knot data.
    Classify(KnotArgs),
    /// Observed convergence orders under grid refinement.
    RefineStudy(RefineArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Shape N1xN2xN3xNy.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    grid_y0: Option<f64>,
    #[arg(long)]
    grid_y1: Option<f64>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    points: Option<usize>,
    /// Comma-separated constants `q_2, ..., q_n` for the Hitchin section.
    #[arg(long)]
    weights: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct NahmArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    y0: Option<f64>,
    #[arg(long)]
    y1: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Relative perturbation of the initial data.
    #[arg(long, allow_hyphen_values = true)]
    perturb: Option<f64>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    fields: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct KnotArgs {
    /// JSON file with n, g, points, limit and vanishing_orders.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    g: Option<u32>,
    /// hitchin_section, not_hitchin_section or irreducible.
    #[arg(long)]
    limit: Option<String>,
    /// Weight of a single knot point, comma separated.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct RefineArgs {
    /// weitzenbock, t3, exterior_d, nahm_pole or all.
    #[arg(long)]
    quantity: Option<String>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    grid: GridArgs,
}

type Pairs = Vec<(&'static str, String)>;

fn push<T: ToString>(p: &mut Pairs, key: &'static str, v: &Option<T>) {
    if let Some(v) = v {
        p.push((key, v.to_string()));
    }
}

fn push_path(p: &mut Pairs, key: &'static str, v: &Option<PathBuf>) {
    if let Some(v) = v {
        p.push((key, v.display().to_string()));
    }
}

impl GridArgs {
    fn pairs(&self, p: &mut Pairs) {
        push(p, "grid", &self.grid);
        push(p, "grid-y0", &self.grid_y0);
        push(p, "grid-y1", &self.grid_y1);
    }
}

impl Sub {
    fn command_and_pairs(&self) -> (Command, Pairs) {
        let mut p = Pairs::new();
        let cmd = match self {
            Sub::VerifyModel(a) | Sub::EmitModel(a) => {
                push(&mut p, "model", &a.model);
                push(&mut p, "n", &a.n);
                push(&mut p, "k", &a.k);
                push(&mut p, "points", &a.points);
                push(&mut p, "weights", &a.weights);
                a.grid.pairs(&mut p);
                if matches!(self, Sub::VerifyModel(_)) {
                    Command::VerifyModel
                } else {
                    Command::EmitModel
                }
            }
            Sub::NahmIntegrate(a) => {
                push(&mut p, "n", &a.n);
                push(&mut p, "y0", &a.y0);
                push(&mut p, "y1", &a.y1);
                push(&mut p, "step", &a.step);
                push(&mut p, "perturb", &a.perturb);
                Command::NahmIntegrate
            }
            Sub::AuditWeitzenbock(a) => {
                push(&mut p, "fields", &a.fields);
                push(&mut p, "levels", &a.levels);
                a.grid.pairs(&mut p);
                Command::AuditWeitzenbock
            }
            Sub::KnotAdmissible(a) | Sub::Classify(a) => {
                push_path(&mut p, "input", &a.input);
                push(&mut p, "n", &a.n);
                push(&mut p, "g", &a.g);
                push(&mut p, "limit", &a.limit);
                push(&mut p, "weights", &a.weights);
                if matches!(self, Sub::Classify(_)) {
                    Command::Classify
                } else {
                    Command::KnotAdmissible
                }
            }
            Sub::RefineStudy(a) => {
                push(&mut p, "quantity", &a.quantity);
                push(&mut p, "levels", &a.levels);
                push(&mut p, "n", &a.n);
                a.grid.pairs(&mut p);
                Command::RefineStudy
            }
        };
        (cmd, p)
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, HarnessError> {
    let (cmd, pairs) = cli.cmd.command_and_pairs();
    let mut cfg = RunConfig::new(cmd);
    if let Some(path) = &cli.config {
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
    }
    for (k, v) in pairs {
        cfg.set(k, &v)?;
    }
    if let Some(d) = &cli.out_dir {
        cfg.out_dir = d.clone();
    }
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.output.is_some() {
        cfg.output = cli.output.clone();
    }
    if cli.tol.is_some() {
        cfg.tolerance = cli.tol;
    }
    cfg.check |= cli.check;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(&cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            print!("{}", out.summary);
            for a in &out.artifacts {
                println!("wrote {}", a.display());
            }
            for b in &out.breaches {
                eprintln!("breach: {b}");
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
