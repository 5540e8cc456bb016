//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use teardrop_core::grading::{check_strong_grading, degree, degrees_present};
use teardrop_core::ktheory::{
    lens_k_groups, phi_matrix, real_teardrop_k, teardrop_k_groups, LensDescriptor,
};
use teardrop_core::representations::{
    apply_element, bound_series, eigenvalue_distinctness, fredholm_trace, quotient_consistency,
    relation_residual, sector_split_check, Family, FredholmModule, Phase, RepSpec, Sector, Sign,
    Status, TruncatedSpace,
};
use teardrop_core::scalar::BigRational;
use teardrop_core::star_algebra::{
    compositions, make_named_element, AlgebraElement, AlgebraPresentation, NamedElement, Strategy,
};

use crate::config::{parse_q0, RunConfig};
use crate::parse::parse_expression;
use crate::space::{SpaceDescriptor, SpaceKind};
use crate::suite::{run_criterion, CRITERIA};

#[derive(Parser, Debug)]
#[command(
    name = "teardrop",
    version,
    about = "Quantum teardrops, lens spaces and weighted projective spaces"
)]
pub struct Cli {
    /// Run configuration in key = value form.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        expr: String,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Memoized)]
        strategy: StrategyArg,
    },
    #[command(subcommand)]
    Grading(GradingCommand),
    #[command(subcommand)]
    Ktheory(KtheoryCommand),
    #[command(subcommand)]
    Rep(RepCommand),
    /// Run the acceptance battery.
    Suite {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum GradingCommand {
    /// Degree of an expression under the space's grading.
    Degree {
        expr: String,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Build and verify resolutions of identity for the given degrees.
    Certify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [1, -1])]
        degrees: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum KtheoryCommand {
    /// K-groups of the lens space with modulus N and weights m0,...,mn.
    Lens {
        #[arg(value_name = "N")]
        modulus: u64,
        #[arg(value_delimiter = ',')]
        weights: Vec<u64>,
    },
    /// K-groups of the teardrop with weights (1,...,1,m).
    Teardrop { n: usize, m: u64 },
    /// K1 and the K0 candidates of the real teardrop.
    RealTeardrop { n: usize, m: u64 },
}

#[derive(Subcommand, Debug)]
enum RepCommand {
    /// Sparse matrix of an expression.
    Assemble {
        expr: String,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Relation residuals, eigenvalue distinctness or quotient consistency.
    Verify {
        #[arg(long, value_enum)]
        check: CheckArg,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Whether the invariant generators preserve the sectors of Σk mod m.
    Sectors {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        m: u32,
    },
    /// Truncated traces of π+(x) - π-(x) and the tail-bound series.
    Fredholm {
        /// Defaults to every c_l.
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q0: Option<String>,
    },
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(long, value_enum, default_value_t = SpaceKind::Sphere)]
    space: SpaceKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<i64>>,
    #[arg(long = "N")]
    modulus: Option<u64>,
}

#[derive(Args, Debug)]
struct RepArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: usize,
    /// Rational deformation parameter p/r.
    #[arg(long)]
    q0: Option<String>,
    /// Phase as a root of unity a/b.
    #[arg(long, conflicts_with = "angle")]
    lambda: Option<String>,
    /// Phase as an angle in radians.
    #[arg(long, allow_negative_numbers = true)]
    angle: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
    /// Restrict to the sector s/m.
    #[arg(long)]
    sector: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Memoized,
    Leftmost,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Residual,
    Distinctness,
    Quotient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
#[allow(clippy::enum_variant_names)]
enum FamilyArg {
    SpherePi,
    BarPi,
    SigmaPi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String, Option<usize>),
    Computation(String),
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string(), None)
}

fn computation(msg: impl ToString) -> Failure {
    Failure::Computation(msg.to_string())
}

/// A report plus whether it counts as success.
struct Report {
    value: Value,
    ok: bool,
}

fn report(value: impl Serialize, ok: bool) -> Result<Report, Failure> {
    let value = serde_json::to_value(value).map_err(computation)?;
    Ok(Report { value, ok })
}

fn with_fields(value: impl Serialize, fields: Value) -> Result<Value, Failure> {
    let mut v = serde_json::to_value(value).map_err(computation)?;
    if let (Value::Object(map), Value::Object(extra)) = (&mut v, fields) {
        map.extend(extra);
    }
    Ok(v)
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = cli.cutoff {
        cfg.cutoff = v;
    }
    if let Some(v) = cli.tolerance {
        cfg.tolerance = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.output {
        cfg.output = Some(v.clone());
    }
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn descriptor(a: &SpaceArgs) -> Result<SpaceDescriptor, Failure> {
    SpaceDescriptor::new(a.space, a.n, a.weights.clone(), a.modulus, None).map_err(usage)
}

fn parse(text: &str, p: AlgebraPresentation) -> Result<AlgebraElement, Failure> {
    parse_expression(text, p).map_err(|e| Failure::Usage(e.to_string(), Some(e.position())))
}

fn q0_of(text: &Option<String>, cfg: &RunConfig) -> Result<BigRational, Failure> {
    match text {
        Some(t) => parse_q0(t).map_err(usage),
        None => cfg.q0.clone().ok_or_else(|| {
            usage("numeric commands need q0 as a rational p/r (--q0 or the config)")
        }),
    }
}

fn ratio(text: &str, what: &str) -> Result<(i64, u64), Failure> {
    let bad = || usage(format!("{what} must look like a/b, got '{text}'"));
    let (a, b) = text.split_once('/').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn phase(r: &RepArgs) -> Result<Phase, Failure> {
    match (&r.lambda, r.angle) {
        (Some(t), _) => {
            let (a, b) = ratio(t, "--lambda")?;
            Ok(Phase::RootOfUnity { a, b })
        }
        (None, Some(radians)) => Ok(Phase::Angle { radians }),
        (None, None) => Ok(Phase::one()),
    }
}

fn rep_spec(r: &RepArgs, cfg: &RunConfig) -> Result<RepSpec, Failure> {
    let q0 = q0_of(&r.q0, cfg)?;
    let family = match r.family {
        None => return Err(usage("--family is required")),
        Some(FamilyArg::SpherePi) => Family::SpherePi { lambda: phase(r)? },
        Some(FamilyArg::SigmaPi) => Family::SigmaPi {
            lambda: phase(r)?,
            sign: match r.sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            },
        },
        Some(FamilyArg::BarPi) => Family::BarPi {
            k: r.k.ok_or_else(|| usage("bar_pi needs --k"))?,
        },
    };
    RepSpec::new(r.n, family, q0).map_err(usage)
}

fn sector(r: &RepArgs) -> Result<Option<Sector>, Failure> {
    r.sector
        .as_deref()
        .map(|t| {
            let (s, m) = ratio(t, "--sector")?;
            let s = u64::try_from(s).map_err(|_| usage("sector index must be nonnegative"))?;
            Ok(Sector { s, m })
        })
        .transpose()
}

fn rep_space(spec: &RepSpec, r: &RepArgs, cfg: &RunConfig) -> Result<TruncatedSpace, Failure> {
    let admissible = match spec.family {
        Family::BarPi { k } => Some(k),
        _ => None,
    };
    TruncatedSpace::new(spec.n, cfg.cutoff, sector(r)?, admissible).map_err(usage)
}

fn normalize(
    expr: &str,
    space: &SpaceArgs,
    strategy: StrategyArg,
    cfg: &RunConfig,
) -> Result<Report, Failure> {
    let d = descriptor(space)?;
    let p = d.presentation();
    let x = parse(expr, p)?;
    let x = match strategy {
        StrategyArg::Memoized => x,
        StrategyArg::Leftmost => p
            .normalize_with(&x.to_formal_sum(), Strategy::Leftmost)
            .map_err(computation)?,
        StrategyArg::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            p.normalize_with(&x.to_formal_sum(), Strategy::Random(&mut rng))
                .map_err(computation)?
        }
    };
    report(
        json!({
            "input": expr,
            "space": d,
            "normal_form": x.to_string(),
            "element": x,
        }),
        true,
    )
}

fn grading(cmd: &GradingCommand, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        GradingCommand::Degree { expr, space } => {
            let d = descriptor(space)?;
            let g = d.grading().map_err(usage)?;
            let x = parse(expr, d.presentation())?;
            let components: Vec<Value> = degrees_present(&x, &g)
                .into_iter()
                .map(|c| c.map_or(Value::Null, Value::from))
                .collect();
            report(
                json!({
                    "input": expr,
                    "space": d,
                    "grading": g,
                    "normal_form": x.to_string(),
                    "degree": degree(&x, &g),
                    "components": components,
                }),
                true,
            )
        }
        GradingCommand::Certify { space, degrees } => {
            let cap = cfg.degree_cap as i64;
            if let Some(d) = degrees.iter().find(|d| d.abs() > cap) {
                return Err(usage(format!("degree {d} exceeds degree_cap = {cap}")));
            }
            let d = descriptor(space)?;
            let g = d.grading().map_err(usage)?;
            let r = check_strong_grading(&g, degrees);
            let ok = r.strong;
            let value = with_fields(&r, json!({ "space": d, "verified": ok }))?;
            Ok(Report { value, ok })
        }
    }
}

fn ktheory(cmd: &KtheoryCommand) -> Result<Report, Failure> {
    match cmd {
        KtheoryCommand::Lens { modulus, weights } => {
            let d = LensDescriptor::new(*modulus, weights.clone()).map_err(usage)?;
            let phi = phi_matrix(&d);
            report(with_fields(lens_k_groups(&d), json!({ "phi": phi }))?, true)
        }
        KtheoryCommand::Teardrop { n, m } => {
            report(teardrop_k_groups(*n, *m).map_err(usage)?, true)
        }
        KtheoryCommand::RealTeardrop { n, m } => {
            report(real_teardrop_k(*n, *m).map_err(usage)?, true)
        }
    }
}

fn status_ok(s: Status) -> bool {
    s != Status::Fail
}

fn rep(cmd: &RepCommand, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        RepCommand::Assemble { expr, rep } => {
            let spec = rep_spec(rep, cfg)?;
            let space = rep_space(&spec, rep, cfg)?;
            let x = parse(expr, spec.presentation())?;
            let op = apply_element(&x, &spec, &space).map_err(computation)?;
            report(
                json!({
                    "representation": spec,
                    "space": space,
                    "basis": space.basis(),
                    "normal_form": x.to_string(),
                    "operator": op,
                }),
                true,
            )
        }
        RepCommand::Verify { check, rep, m } => match check {
            CheckArg::Residual => {
                let spec = rep_spec(rep, cfg)?;
                let space = rep_space(&spec, rep, cfg)?;
                let r = relation_residual(spec.presentation(), &spec, &space, cfg.tolerance)
                    .map_err(usage)?;
                let ok = status_ok(r.status);
                report(with_fields(&r, json!({ "representation": spec }))?, ok)
            }
            CheckArg::Distinctness => {
                let m = m.ok_or_else(|| usage("distinctness needs --m"))?;
                let q0 = q0_of(&rep.q0, cfg)?;
                let space =
                    TruncatedSpace::new(rep.n, cfg.cutoff, sector(rep)?, None).map_err(usage)?;
                let r = eigenvalue_distinctness(rep.n, m, &q0, &space).map_err(usage)?;
                let ok = status_ok(r.status);
                report(r, ok)
            }
            CheckArg::Quotient => {
                let m = m.ok_or_else(|| usage("quotient needs --m"))?;
                let spec = rep_spec(rep, cfg)?;
                if spec.n < 2 {
                    return Err(usage("quotient needs n >= 2"));
                }
                let space = TruncatedSpace::full(spec.n - 1, cfg.cutoff).map_err(usage)?;
                let r = quotient_consistency(&spec, m, &space, cfg.tolerance).map_err(usage)?;
                let ok = status_ok(r.status);
                report(with_fields(&r, json!({ "representation": spec }))?, ok)
            }
        },
        RepCommand::Sectors { rep, m } => {
            let spec = rep_spec(rep, cfg)?;
            let space = rep_space(&spec, rep, cfg)?;
            let r = sector_split_check(&spec, *m, &space).map_err(usage)?;
            let ok = status_ok(r.status);
            report(with_fields(&r, json!({ "representation": spec }))?, ok)
        }
        RepCommand::Fredholm { expr, n, m, q0 } => {
            let q0 = q0_of(q0, cfg)?;
            let module = FredholmModule::new(*n, *m, q0.clone(), cfg.cutoff).map_err(usage)?;
            let p = AlgebraPresentation::sphere(*n);
            let elements = match expr {
                Some(t) => vec![(t.clone(), parse(t, p)?)],
                None => compositions(*m, *n)
                    .into_iter()
                    .map(|l| {
                        let name = NamedElement::C { l, m: *m };
                        let x = make_named_element(&name, p).map_err(usage)?;
                        Ok((name.to_string(), x))
                    })
                    .collect::<Result<_, Failure>>()?,
            };
            let mut traces = Vec::new();
            let mut ok = module.verify();
            for (name, x) in &elements {
                let r = fredholm_trace(x, &module, cfg.tolerance).map_err(usage)?;
                ok &= status_ok(r.status);
                traces.push(with_fields(&r, json!({ "element": name }))?);
            }
            let series = bound_series(*n, &q0, 60, 1e-10).map_err(usage)?;
            ok &= status_ok(series.status);
            report(
                json!({
                    "n": n,
                    "m": m,
                    "q0": q0.to_string(),
                    "cutoff": cfg.cutoff,
                    "module_identities": module.verify(),
                    "half_dim": module.half_dim(),
                    "traces": traces,
                    "bound_series": series,
                }),
                ok,
            )
        }
    }
}

fn suite(only: &[u8], cfg: &RunConfig) -> Result<Report, Failure> {
    if let Some(bad) = only.iter().find(|i| !CRITERIA.iter().any(|c| c.0 == **i)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let criteria: Vec<_> = CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.0))
        .map(|c| run_criterion(c.0, cfg))
        .collect();
    let ok = criteria.iter().all(|c| c.passed);
    report(json!({ "passed": ok, "criteria": criteria }), ok)
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Report, Failure> {
    match &cli.command {
        Command::Normalize {
            expr,
            space,
            strategy,
        } => normalize(expr, space, *strategy, cfg),
        Command::Grading(c) => grading(c, cfg),
        Command::Ktheory(c) => ktheory(c),
        Command::Rep(c) => rep(c, cfg),
        Command::Suite { only } => suite(only, cfg),
    }
}

fn diagnostic(kind: &str, message: &str, position: Option<usize>) -> String {
    let mut v = json!({ "error": { "kind": kind, "message": message } });
    if let Some(p) = position {
        v["error"]["position"] = p.into();
    }
    pretty(&v)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Run one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = load_config(&cli).and_then(|cfg| dispatch(&cli, &cfg).map(|r| (r, cfg)));
    match result {
        Ok((r, cfg)) => {
            let text = pretty(&r.value);
            let code = if r.ok { 0 } else { 1 };
            match &cfg.output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => Outcome {
                        code: 1,
                        stdout: diagnostic("io", &format!("{}: {e}", path.display()), None),
                        stderr: format!("error: cannot write {}\n", path.display()),
                    },
                },
                None => Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
        Err(Failure::Usage(msg, pos)) => Outcome {
            code: 2,
            stdout: diagnostic("usage", &msg, pos),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Computation(msg)) => Outcome {
            code: 1,
            stdout: diagnostic("computation", &msg, None),
            stderr: format!("error: {msg}\n"),
        },
    }
}
