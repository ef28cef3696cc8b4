use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilbniz_core::check::{
    oracle_check, parse_threads, pasru_exhaustive, pasru_exhaustive_pair, pasru_sampled, pasru_sampled_pair, run_fuzz,
    PasruReport,
};
use nilbniz_core::fuzz::rng_from_seed;
use nilbniz_core::io::{read_tensor, tensor_to_json};
use nilbniz_core::numeric::{check_theorem_numeric, GaussianSpec, QuadratureRule, QuadratureSpec};
use nilbniz_core::presets::heisenberg;
use nilbniz_core::{
    expand_leibniz_detailed, expand_leibniz_nfold_detailed, render_nfold_terms, render_terms, Error, Format,
    MultiIndex, Side, StructureTensor,
};
use rand::RngExt;

const THREADS_VAR: &str = "NILBNIZ_THREADS";
const MAX_WITNESSES: usize = 10;

#[derive(Parser)]
#[command(name = "nilbniz", version, about = "Leibniz rules for two-step nilpotent Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure-tensor file and list every violated invariant.
    Validate { file: PathBuf },
    /// Print the Leibniz expansion of T^α or D^α.
    Expand(ExpandArgs),
    /// Write a preset structure tensor.
    #[command(subcommand)]
    Preset(Preset),
    /// Compare expansions against the polynomial oracle for every α up to a length.
    OracleCheck(OracleArgs),
    /// Check a combinatorial identity of the expansion coefficients.
    #[command(subcommand)]
    IdentityCheck(Identity),
    /// Check the two-fold rule numerically on Gaussians.
    NumericCheck(NumericArgs),
    /// Run validation, oracle and identity checks on random tensors.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct ExpandArgs {
    file: PathBuf,
    /// Comma-separated exponents, one per coordinate.
    #[arg(long)]
    alpha: MultiIndex,
    /// Number of factors.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// `convolution` (T^α(f * g)) or `symbol` (D^α(f # g)).
    #[arg(long, default_value_t = Side::Convolution)]
    side: Side,
    /// `table`, `json` or `latex`.
    #[arg(long, default_value_t = Format::Table)]
    format: Format,
    /// Report raw term counts and cancellations on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Preset {
    /// The Heisenberg group of dimension 2n+1.
    Heisenberg {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_hom_len: u32,
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Subcommand)]
enum Identity {
    /// Multinomial product identity for the coefficients of T^{α¹+α²}.
    Pasru(PasruArgs),
}

#[derive(Args)]
struct PasruArgs {
    file: PathBuf,
    #[arg(long, requires = "alpha2")]
    alpha1: Option<MultiIndex>,
    #[arg(long, requires = "alpha1")]
    alpha2: Option<MultiIndex>,
    /// Random cases to draw when not exhaustive.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every admissible case instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Length bound for the random or enumerated pairs when no pair is given.
    #[arg(long, default_value_t = 4)]
    max_hom_len: u32,
}

#[derive(Args)]
struct NumericArgs {
    file: PathBuf,
    #[arg(long)]
    alpha: MultiIndex,
    /// Evaluation points as `x1,..,xd`, separated by `;`. Defaults to 5
    /// seeded points in [-1, 1]^d.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gaussian scale `s` in exp(-s|u - c|²), shared by f and g.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, allow_hyphen_values = true)]
    f_center: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g_center: Option<String>,
    /// Half-width of the integration box; defaults to 6/√scale.
    #[arg(long)]
    half_width: Option<f64>,
    /// Quadrature nodes per axis.
    #[arg(long, default_value_t = 48)]
    nodes: usize,
    /// `gauss-legendre` or `trapezoid`.
    #[arg(long, default_value_t = QuadratureRule::GaussLegendre)]
    rule: QuadratureRule,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    d1: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
}

/// A run that could not complete. Check failures are not errors; they are
/// reported through [`Outcome::Fail`].
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidTensor(_) | Error::NonFinite(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn passed(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let threads = match parse_threads(&v) {
            Ok(n) => n,
            Err(e) => return usage(format!("{THREADS_VAR}: {e}")),
        };
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            return usage(format!("{THREADS_VAR}: {e}"));
        }
    }
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Expand(args) => cmd_expand(args),
        Command::Preset(Preset::Heisenberg { n, output }) => cmd_preset(n as usize, output.as_deref()),
        Command::OracleCheck(args) => cmd_oracle_check(args),
        Command::IdentityCheck(Identity::Pasru(args)) => cmd_pasru(args),
        Command::NumericCheck(args) => cmd_numeric_check(args),
        Command::Fuzz(args) => cmd_fuzz(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => usage(msg),
    }
}

fn usage(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(file: &Path) -> Result<StructureTensor, Failure> {
    read_tensor(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))
}

fn check_alpha(tensor: &StructureTensor, alpha: &MultiIndex) -> Result<(), Failure> {
    if alpha.dim() != tensor.dim() {
        return Err(Failure::Usage(format!(
            "alpha ({alpha}) has {} entries, tensor dimension is {}",
            alpha.dim(),
            tensor.dim()
        )));
    }
    Ok(())
}

fn cmd_validate(file: &Path) -> Result<Outcome, Failure> {
    let t = load(file)?;
    let report = t.validate();
    println!("dim {}, dim_v1 {}, support {}", t.dim(), t.dim_v1(), t.support_len());
    if report.is_valid() {
        println!("valid");
    } else {
        for v in &report.violations {
            println!("violation: {v}");
        }
    }
    Ok(passed(report.is_valid()))
}

fn cmd_expand(args: ExpandArgs) -> Result<Outcome, Failure> {
    let t = load(&args.file)?;
    check_alpha(&t, &args.alpha)?;
    if args.n == 2 {
        let e = expand_leibniz_detailed(&t, &args.alpha)?;
        if args.verbose {
            eprintln!("raw terms: {}, merged: {}, cancelled: {}", e.raw_count, e.terms.len(), e.cancelled.len());
            for (l, r) in &e.cancelled {
                eprintln!("cancelled: ({l}) ({r})");
            }
        }
        print!("{}", render_terms(&args.alpha, &e.terms, args.side, args.format));
    } else {
        let e = expand_leibniz_nfold_detailed(&t, &args.alpha, args.n)?;
        if args.verbose {
            eprintln!("raw terms: {}, merged: {}, cancelled: {}", e.raw_count, e.terms.len(), e.cancelled.len());
            for factors in &e.cancelled {
                let parts: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
                eprintln!("cancelled: {}", parts.join(" "));
            }
        }
        print!("{}", render_nfold_terms(&args.alpha, &e.terms, args.side, args.format));
    }
    Ok(Outcome::Pass)
}

fn cmd_preset(n: usize, output: Option<&Path>) -> Result<Outcome, Failure> {
    let json = tensor_to_json(&heisenberg(n));
    match output {
        Some(path) => std::fs::write(path, json).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    Ok(Outcome::Pass)
}

fn cmd_oracle_check(args: OracleArgs) -> Result<Outcome, Failure> {
    let t = load(&args.file)?;
    let r = oracle_check(&t, args.max_hom_len, args.n)?;
    println!("checked {} multiindices with l(alpha) <= {} (n = {})", r.outcomes.len(), args.max_hom_len, args.n);
    println!(
        "terms: {} total, {} max per alpha; raw terms: {} max per alpha; cancelled: {}",
        r.total_terms(),
        r.max_terms(),
        r.max_raw_terms(),
        r.cancelled()
    );
    println!("length violations: {}", r.length_violations());
    if let Some(f) = r.first_failure() {
        println!("FAIL at alpha = ({})", f.alpha);
        if let Some(diff) = &f.diff {
            println!("expansion - oracle = {}", diff.render(t.dim()));
        }
        return Ok(Outcome::Fail);
    }
    println!("PASS");
    Ok(passed(r.length_violations() == 0))
}

fn cmd_pasru(args: PasruArgs) -> Result<Outcome, Failure> {
    let t = load(&args.file)?;
    let mut rng = rng_from_seed(args.seed);
    let report = match (&args.alpha1, &args.alpha2) {
        (Some(a1), Some(a2)) => {
            check_alpha(&t, a1)?;
            check_alpha(&t, a2)?;
            if args.exhaustive {
                pasru_exhaustive_pair(&t, a1, a2)?
            } else {
                pasru_sampled_pair(&t, a1, a2, args.samples, &mut rng)?
            }
        }
        _ if args.exhaustive => pasru_exhaustive(&t, args.max_hom_len)?,
        _ => pasru_sampled(&t, args.max_hom_len, args.samples, &mut rng)?,
    };
    print_pasru(&report, args.seed, args.exhaustive);
    Ok(passed(report.passed()))
}

fn print_pasru(report: &PasruReport, seed: u64, exhaustive: bool) {
    let mode = if exhaustive { "exhaustive".to_string() } else { format!("sampled, seed {seed}") };
    println!("{} cases ({mode}), {} failures", report.cases, report.failures.len());
    for w in report.failures.iter().take(MAX_WITNESSES) {
        println!("witness: {w}");
    }
    if report.failures.len() > MAX_WITNESSES {
        println!("... {} more", report.failures.len() - MAX_WITNESSES);
    }
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
}

fn parse_point(s: &str, dim: usize) -> Result<Vec<f64>, Failure> {
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad coordinate {p:?} in {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != dim {
        return Err(Failure::Usage(format!("point {s:?} has {} coordinates, expected {dim}", v.len())));
    }
    Ok(v)
}

fn cmd_numeric_check(args: NumericArgs) -> Result<Outcome, Failure> {
    let t = load(&args.file)?;
    let d = t.dim();
    check_alpha(&t, &args.alpha)?;
    let points = match &args.points {
        Some(s) => s.split(';').map(|p| parse_point(p, d)).collect::<Result<Vec<_>, _>>()?,
        None => {
            let mut rng = rng_from_seed(args.seed);
            (0..5).map(|_| (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect()
        }
    };
    let center = |c: &Option<String>| match c {
        Some(s) => parse_point(s, d),
        None => Ok(vec![0.0; d]),
    };
    let f = GaussianSpec::new(center(&args.f_center)?, args.scale)?;
    let g = GaussianSpec::new(center(&args.g_center)?, args.scale)?;
    let half_width = args.half_width.unwrap_or(QuadratureSpec::default_for(args.scale).half_width);
    let q = QuadratureSpec::new(half_width, args.nodes, args.rule)?;
    let report = check_theorem_numeric(&t, &args.alpha, &f, &g, &points, &q)?;
    let ok = report.max_rel_err <= args.tol;
    let mut json = serde_json::to_value(&report).map_err(|e| Failure::Usage(e.to_string()))?;
    json["tol"] = serde_json::json!(args.tol);
    json["passed"] = serde_json::json!(ok);
    println!("{}", serde_json::to_string_pretty(&json).map_err(|e| Failure::Usage(e.to_string()))?);
    Ok(passed(ok))
}

fn cmd_fuzz(args: FuzzArgs) -> Result<Outcome, Failure> {
    let trials = run_fuzz(args.dim, args.d1, args.density, args.seed, args.trials)?;
    for t in &trials {
        println!(
            "trial {}: support {}, {}, oracle {} alphas {}, pasru {} cases {}",
            t.trial,
            t.support,
            if t.valid { "valid" } else { "INVALID" },
            t.oracle_alphas,
            if t.oracle_ok { "ok" } else { "FAIL" },
            t.pasru_cases,
            if t.pasru_ok { "ok" } else { "FAIL" },
        );
    }
    let failed = trials.iter().filter(|t| !t.passed()).count();
    println!(
        "seed {}: {} of {} trials passed (dim {}, d1 {}, density {})",
        args.seed,
        trials.len() - failed,
        trials.len(),
        args.dim,
        args.d1,
        args.density
    );
    Ok(passed(failed == 0))
}
