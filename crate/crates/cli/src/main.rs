use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use csg_core::buchsbaum::{betti_relation, is_buchsbaum, mu_formula};
use csg_core::depth::{depth_of, region};
use csg_core::gluing::{check_gluing, reproduce_counterexample, rho};
use csg_core::instance::{Instance, Kind};
use csg_core::presentation::{minimal_presentation, minimal_presentation_by_elimination, mu};
use csg_core::{AffineSemigroup, Error, IntVector};

mod render;

const DEFAULT_MAX_BINOMIALS: usize = 20_000;
const MAX_BINOMIALS_VAR: &str = "CSG_MAX_BINOMIALS";

#[derive(Parser)]
#[command(name = "csg", version, about = "Invariants of C-semigroups")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Depth bound for generator input and region listings.
    #[arg(long, global = true, value_name = "N")]
    k_max: Option<usize>,
    /// Seed for the sampled ray sets of the Buchsbaum check.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cone, generators, gaps, pseudo-Frobenius elements and depth.
    Info { file: PathBuf },
    /// Buchsbaum verdict from all three criteria.
    Buchsbaum { file: PathBuf },
    /// Minimal presentation and its Betti degrees.
    Presentation {
        file: PathBuf,
        /// Compare μ with the closed formula for MED semigroups.
        #[arg(long)]
        formula_check: bool,
        /// Take candidate degrees from an elimination basis.
        #[arg(long)]
        elimination: bool,
    },
    /// Depth regions R_0 .. R_k of a multset instance.
    Regions {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Verify a gluing of the generator list.
    Gluing {
        #[arg(required_unless_present = "paper_example")]
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required_unless_present = "paper_example")]
        part1: Vec<usize>,
        #[arg(long, value_delimiter = ',', required_unless_present = "paper_example")]
        part2: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "paper_example")]
        d: Vec<i64>,
        /// Run the built-in non-Buchsbaum gluing example.
        #[arg(long, conflicts_with_all = ["file", "part1", "part2", "d"])]
        paper_example: bool,
    },
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::NotVerified { .. }) => 3,
            Failure::Core(Error::ResourceLimit { .. }) => 4,
            Failure::Core(Error::InternalInconsistency(_)) | Failure::Check(_) => 1,
            Failure::Core(_) | Failure::Io(..) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(Error::NotVerified { .. }) => "not_verified",
            Failure::Core(Error::ResourceLimit { .. }) => "resource_limit",
            Failure::Core(Error::Schema { .. }) => "schema",
            Failure::Core(Error::InternalInconsistency(_)) => "internal",
            Failure::Core(_) => "validation",
            Failure::Io(..) => "io",
            Failure::Check(_) => "check_failed",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Check(m) => m.clone(),
        }
    }
}

struct Outcome {
    label: Option<String>,
    results: Value,
    failure: Option<Failure>,
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(Instance::from_json(&text)?)
}

fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
    v.sort();
    v
}

fn max_binomials() -> Result<usize, Failure> {
    match std::env::var(MAX_BINOMIALS_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Core(Error::PreconditionFailed(format!(
                "{MAX_BINOMIALS_VAR} must be a nonnegative integer, got {s:?}"
            )))
        }),
        Err(_) => Ok(DEFAULT_MAX_BINOMIALS),
    }
}

fn info(inst: &Instance, k_max: Option<usize>) -> Result<Value, Failure> {
    let s = inst.semigroup(k_max)?;
    Ok(json!({
        "dim": s.dim(),
        "cone_rays": s.cone().rays(),
        "facet_normals": s.cone().facet_normals(),
        "minimal_generators": sorted(s.minimal_generators().to_vec()),
        "embedding_dimension": s.minimal_generators().len(),
        "minimals": sorted(s.minimals()),
        "genus": s.genus(),
        "gaps": sorted(s.gaps().to_vec()),
        "pseudo_frobenius": sorted(s.pseudo_frobenius()),
        "depth": depth_of(&s),
    }))
}

fn buchsbaum(inst: &Instance, k_max: Option<usize>, seed: u64) -> Result<Value, Failure> {
    let s = inst.semigroup(k_max)?;
    let mut verdict = is_buchsbaum(&s, seed)?;
    for e in &mut verdict.evidence {
        e.vectors.sort();
    }
    Ok(json!({ "seed": seed, "verdict": verdict }))
}

fn presentation(
    inst: &Instance,
    k_max: Option<usize>,
    formula_check: bool,
    elimination: bool,
) -> Result<Value, Failure> {
    let gens = match inst.kind {
        Kind::Generators => sorted(AffineSemigroup::new(inst.list()?)?.minimal_generators()),
        _ => sorted(inst.generator_list(k_max)?),
    };
    let p = if elimination {
        minimal_presentation_by_elimination(&gens, max_binomials()?)?
    } else {
        minimal_presentation(&gens)?
    };
    let mut out = json!({
        "generators": p.gens,
        "mu": p.mu,
        "betti_degrees": p.betti_degrees(),
        "relations": p.degrees,
        "method": if elimination { "elimination" } else { "apery" },
    });
    if formula_check {
        let s = inst.semigroup(k_max)?;
        let check = match (mu_formula(&s), betti_relation(&s)) {
            (Ok(f), Ok(b)) => json!({
                "applicable": true,
                "formula_mu": f,
                "agrees": f == p.mu,
                "betti_relation": b,
            }),
            (Err(e), _) | (_, Err(e)) => json!({ "applicable": false, "reason": e.to_string() }),
        };
        out["formula_check"] = check;
    }
    Ok(out)
}

fn regions(inst: &Instance, k_max: Option<usize>, k: usize) -> Result<Value, Failure> {
    if inst.kind != Kind::Multset {
        return Err(Error::PreconditionFailed("regions needs a multset instance".into()).into());
    }
    let bound = k_max.unwrap_or(inst.k_max());
    if k > bound {
        return Err(Error::PreconditionFailed(format!("k = {k} exceeds k_max = {bound}")).into());
    }
    let cone = inst.cone()?;
    let m = inst.list()?;
    let mut listing = Vec::new();
    for j in 0..=k {
        let r = sorted(region(&cone, &m, j)?);
        listing.push(json!({ "k": j, "size": r.len(), "points": r }));
    }
    Ok(json!({ "multset": sorted(m), "regions": listing }))
}

fn gluing_file(inst: &Instance, part1: &[usize], part2: &[usize], d: &[i64]) -> Result<Value, Failure> {
    let gens = inst.list()?;
    let d = IntVector::new(d.to_vec());
    let w = check_gluing(&gens, part1, part2, &d)?;
    let pick = |part: &[usize]| part.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>();
    let (mu_s, mu_1, mu_2) = (mu(&gens)?, mu(&pick(part1))?, mu(&pick(part2))?);
    Ok(json!({
        "generators": gens,
        "witness": w,
        "rho": rho(&w),
        "mu": { "s": mu_s, "part1": mu_1, "part2": mu_2, "sum_plus_one": mu_1 + mu_2 + 1 },
    }))
}

fn run(cli: &Cli) -> Outcome {
    let mut label = None;
    let mut failure = None;
    let mut attempt = || -> Result<Value, Failure> {
        let inst = match &cli.command {
            Command::Gluing { paper_example: true, .. } => None,
            Command::Info { file }
            | Command::Buchsbaum { file }
            | Command::Presentation { file, .. }
            | Command::Regions { file, .. }
            | Command::Gluing { file: Some(file), .. } => Some(load(file)?),
            Command::Gluing { file: None, .. } => unreachable!("clap requires a file"),
        };
        label = inst.as_ref().and_then(|i| i.label.clone());
        let inst = inst.as_ref();
        match &cli.command {
            Command::Info { .. } => info(inst.unwrap(), cli.k_max),
            Command::Buchsbaum { .. } => buchsbaum(inst.unwrap(), cli.k_max, cli.seed),
            Command::Presentation { formula_check, elimination, .. } => {
                presentation(inst.unwrap(), cli.k_max, *formula_check, *elimination)
            }
            Command::Regions { k, .. } => regions(inst.unwrap(), cli.k_max, *k),
            Command::Gluing { paper_example: true, .. } => {
                let report = reproduce_counterexample()?;
                let value = serde_json::to_value(&report).expect("reports serialize");
                if let Some(step) = report.failed_step() {
                    failure = Some(Failure::Check(format!("step {} failed: {}", step.name, step.detail)));
                }
                Ok(value)
            }
            Command::Gluing { part1, part2, d, .. } => gluing_file(inst.unwrap(), part1, part2, d),
        }
    };
    let results = attempt();
    match results {
        Ok(results) => Outcome { label, results, failure },
        Err(f) => Outcome {
            label,
            results: Value::Null,
            failure: Some(f),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info { .. } => "info",
        Command::Buchsbaum { .. } => "buchsbaum",
        Command::Presentation { .. } => "presentation",
        Command::Regions { .. } => "regions",
        Command::Gluing { .. } => "gluing",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let mut report = json!({
        "command": command_name(&cli.command),
        "label": outcome.label,
        "results": outcome.results,
        "timings": { "total_ms": (elapsed * 1000.0).round() / 1000.0 },
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let Some(f) = &outcome.failure {
        report["error"] = json!({ "kind": f.kind(), "message": f.message(), "exit_code": f.exit_code() });
    }
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render::render(&report)
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    match outcome.failure {
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
        None => ExitCode::SUCCESS,
    }
}
