//! `qdc`: weighted q-Genocchi numbers, fermionic integrals, q- and p-adic DC
//! sums and the identity verifier from the command line.

mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::SeedableRng;

use qdc_core::arith::{parse_rational, rational_to_string};
use qdc_core::dedekind::{
    dc_sum_classical, etilde, padic_dc_sum, q_dc_sum, q_dc_sum_scaled, DCSumParams, EtildeQuery, EtildeS,
};
use qdc_core::measure::{fermionic_integral, IntegralConfig, QPowerIntegrand};
use qdc_core::padic::parse_padic;
use qdc_core::qgenocchi::{qgenocchi_poly, QGenocchiParams};
use qdc_core::verifier::{
    run_suite, verify_identity_with, IdentityId, Manifest, PointOutcome, PrecisionConfig, SuiteReport,
};
use qdc_core::{Error, PadicContext, Regime, Value};

use output::{emit, emit_table, Record};

#[derive(Parser, Debug)]
#[command(name = "qdc", version, about = "Weighted q-Genocchi numbers and Dedekind-type DC sums")]
struct Cli {
    #[command(flatten)]
    cfg: CliConfig,
    #[command(subcommand)]
    cmd: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct CliConfig {
    /// Odd prime p.
    #[arg(long, global = true, default_value_t = 5)]
    p: u64,
    /// Working precision: residues are kept modulo p^K.
    #[arg(long = "K", global = true, default_value_t = 6)]
    precision: u32,
    /// q as "1+p", "1+p^t" or an explicit residue congruent to 1 mod p.
    #[arg(long, global = true, default_value = "1+p")]
    q: String,
    /// Weight alpha.
    #[arg(long, global = true, default_value_t = 1)]
    alpha: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Seed for sampled verification sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// G~_{n,q}^(alpha)(x), symbolically or modulo p^K.
    Genocchi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: Option<String>,
        /// Exact rational function of q instead of a residue.
        #[arg(long)]
        symbolic: bool,
    },
    /// Classical, q- and p-adic DC sums.
    Dcsum {
        #[command(subcommand)]
        kind: DcKind,
    },
    /// The interpolation function E~(s, a, N : q^N).
    Etilde {
        /// Exponent: an integer, or a p-adic integer written as a residue.
        #[arg(long)]
        s: String,
        #[arg(long)]
        a: u64,
        #[arg(long = "N")]
        n: u64,
        /// Treat s as an exact nonnegative integer (finite sum, any N).
        #[arg(long)]
        integer: bool,
    },
    /// int [x + xi]_{q^alpha}^power dmu_q(xi); `--q 1` gives the classical
    /// fermionic integral of (x + xi)^power.
    Integrate {
        #[arg(long)]
        power: u32,
        #[arg(long, default_value = "0")]
        x: String,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Maximum Riemann-sum level; defaults to K + 2.
        #[arg(long)]
        max_level: Option<u32>,
    },
    /// Check identities at manifest or explicit parameter points.
    Verify(VerifyArgs),
    /// CSV-style tables over a range.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
}

#[derive(Subcommand, Debug)]
enum DcKind {
    /// S_m(h,k) exactly.
    Classical {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// S~_{m,q}^(alpha)(h,k : q^l) by fermionic integrals.
    Q {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        /// Measure base exponent l; defaults to k.
        #[arg(long)]
        l: Option<u64>,
        /// Multiply by [k]_{q^alpha}^(m+1), which keeps the value p-integral.
        #[arg(long)]
        scaled: bool,
    },
    /// S~_{p,q}^(alpha)(s : h,k : q^k) for s = m with m + 1 = 0 mod p - 1.
    Padic {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum TableKind {
    /// G~_{n,q}^(alpha)(x) for n = 0..=n-max.
    Genocchi {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// S_m(h,k) for coprime 0 <= h < k <= k-max.
    Dcsum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k_max: u64,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run a suite; only "default" is built in.
    #[arg(long, conflicts_with = "manifest")]
    suite: Option<String>,
    /// Run the grids of a manifest file.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Restrict a suite to these identities, or name the single identity of
    /// an explicit check.
    #[arg(long = "identity")]
    identities: Vec<String>,
    /// Explicit parameter as key=value; repeatable.
    #[arg(long = "param", value_parser = parse_kv)]
    params: Vec<(String, String)>,
    /// Precision slack c: p-adic checks need v(LHS - RHS) >= K - c.
    #[arg(long, default_value_t = 2)]
    slack: u32,
    /// Flip the sign of one right-hand term (negative control).
    #[arg(long)]
    mutate: bool,
    /// Check a seeded random subset of this many suite points.
    #[arg(long)]
    sample: Option<usize>,
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Failure of a command: bad usage (exit 2) or a computation error (exit 1).
enum Failure {
    Usage(String),
    Compute(Error),
    /// Output was written; some checks failed.
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            let obj = serde_json::json!({ "error": output::error_kind(&e), "message": e.to_string() });
            eprintln!("{obj}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = &cli.cfg;
    match &cli.cmd {
        Command::Genocchi { n, x, symbolic } => {
            let params = genocchi_params(*n, cfg.alpha, x.as_deref())?;
            let v = if *symbolic {
                qgenocchi_poly(&params, Regime::Symbolic)?
            } else {
                qgenocchi_poly(&params, Regime::Padic(&context(cfg)?))?
            };
            emit(cfg.output, &Record::value(&v))
        }
        Command::Dcsum { kind } => dcsum(cfg, kind),
        Command::Etilde { s, a, n, integer } => {
            let ctx = context(cfg)?;
            let s = if *integer {
                EtildeS::Int(
                    s.parse().map_err(|_| Failure::Usage(format!("--integer needs a nonnegative s, got {s:?}")))?,
                )
            } else {
                EtildeS::Padic(parse_padic(ctx.p(), ctx.precision(), s).map_err(usage)?)
            };
            let v = etilde(&EtildeQuery { s, a: *a, n: *n, alpha: cfg.alpha }, &ctx)?;
            emit(cfg.output, &Record::value(&Value::Padic(v)))
        }
        Command::Integrate { power, x, workers, max_level } => {
            let ctx = context_allow_one(cfg)?;
            let x = parse_rational(x).map_err(usage)?;
            let a = cfg.alpha as u64;
            if a == 0 {
                return Err(Failure::Usage("alpha must be positive".into()));
            }
            let icfg = IntegralConfig {
                max_level: max_level.unwrap_or(ctx.precision() + 2),
                workers: *workers,
                ..IntegralConfig::for_precision(ctx.precision())
            };
            let f = QPowerIntegrand::new(&ctx, a, a, &(x * BigRational::from_integer(BigInt::from(a))), *power)?;
            let r = fermionic_integral(&f, &ctx, &icfg)?;
            emit(cfg.output, &Record::integral(&r))
        }
        Command::Verify(args) => verify(cfg, args),
        Command::Table { kind } => table(cfg, kind),
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn context_allow_one(cfg: &CliConfig) -> Result<PadicContext, Failure> {
    PadicContext::parse_q(cfg.p, cfg.precision, &cfg.q).map_err(usage)
}

/// Context for everything except `integrate`, where `q = 1` is meaningful.
fn context(cfg: &CliConfig) -> Result<PadicContext, Failure> {
    let ctx = context_allow_one(cfg)?;
    if ctx.q_is_one() {
        return Err(Failure::Usage("q = 1 is only accepted by integrate".into()));
    }
    Ok(ctx)
}

fn genocchi_params(n: u32, alpha: u32, x: Option<&str>) -> Result<QGenocchiParams, Failure> {
    Ok(match x {
        Some(x) => QGenocchiParams::poly(n, alpha, parse_rational(x).map_err(usage)?),
        None => QGenocchiParams::number(n, alpha),
    })
}

fn dcsum(cfg: &CliConfig, kind: &DcKind) -> CmdResult {
    match *kind {
        DcKind::Classical { m, h, k } => {
            let v = dc_sum_classical(&DCSumParams::classical(m, h, k))?;
            emit(cfg.output, &Record::rational(&v))
        }
        DcKind::Q { m, h, k, l, scaled } => {
            let ctx = context(cfg)?;
            let params = DCSumParams { h, k, m, alpha: cfg.alpha, l: l.unwrap_or(k) };
            let icfg = IntegralConfig::for_precision(ctx.precision());
            let r = if scaled { q_dc_sum_scaled(&params, &ctx, &icfg)? } else { q_dc_sum(&params, &ctx, &icfg)? };
            emit(cfg.output, &Record::integral(&r))
        }
        DcKind::Padic { m, h, k } => {
            let ctx = context(cfg)?;
            let params = DCSumParams { h, k, m: 0, alpha: cfg.alpha, l: k };
            let v = padic_dc_sum(&EtildeS::Int(m), &params, &ctx)?;
            emit(cfg.output, &Record::value(&Value::Padic(v)))
        }
    }
}

fn table(cfg: &CliConfig, kind: &TableKind) -> CmdResult {
    match kind {
        TableKind::Genocchi { n_max, x, symbolic } => {
            let ctx = if *symbolic { None } else { Some(context(cfg)?) };
            let mut rows = Vec::new();
            for n in 0..=*n_max {
                let params = genocchi_params(n, cfg.alpha, x.as_deref())?;
                let regime = ctx.as_ref().map_or(Regime::Symbolic, Regime::Padic);
                let v = qgenocchi_poly(&params, regime)?;
                let x = params.x.unwrap_or_else(BigRational::zero);
                rows.push(vec![n.to_string(), cfg.alpha.to_string(), rational_to_string(&x), output::value_cell(&v)]);
            }
            emit_table(cfg.output, &["n", "alpha", "x", "value"], &rows)
        }
        TableKind::Dcsum { m, k_max } => {
            let mut rows = Vec::new();
            for k in 1..=*k_max {
                for h in 0..k {
                    if gcd(h, k) != 1 {
                        continue;
                    }
                    let v = dc_sum_classical(&DCSumParams::classical(*m, h, k))?;
                    rows.push(vec![m.to_string(), h.to_string(), k.to_string(), rational_to_string(&v)]);
                }
            }
            emit_table(cfg.output, &["m", "h", "k", "value"], &rows)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn verify(cfg: &CliConfig, args: &VerifyArgs) -> CmdResult {
    let pcfg = PrecisionConfig { slack: args.slack, ..PrecisionConfig::default() };
    let ids = args.identities.iter().map(|s| s.parse::<IdentityId>().map_err(usage)).collect::<Result<Vec<_>, _>>()?;
    let overrides: BTreeMap<String, String> = [
        ("p".to_string(), cfg.p.to_string()),
        ("K".to_string(), cfg.precision.to_string()),
        ("q".to_string(), cfg.q.clone()),
    ]
    .into_iter()
    .collect();
    let report = if args.suite.is_some() || args.manifest.is_some() {
        if !args.params.is_empty() {
            return Err(Failure::Usage("--param is only valid for an explicit check".into()));
        }
        let mut manifest = match (&args.suite, &args.manifest) {
            (Some(s), _) if s == "default" => Manifest::default_suite(),
            (Some(s), _) => return Err(Failure::Usage(format!("unknown suite {s:?}"))),
            (None, Some(path)) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                Manifest::from_json(&text).map_err(usage)?
            }
            (None, None) => unreachable!(),
        };
        if !ids.is_empty() {
            manifest = manifest.select(&ids);
        }
        match args.sample {
            None => run_suite(&manifest, &overrides, &pcfg, args.mutate)?,
            Some(n) => sampled_suite(&manifest, &overrides, &pcfg, args.mutate, n, cfg.seed)?,
        }
    } else {
        let [id] = ids[..] else {
            return Err(Failure::Usage("an explicit check needs exactly one --identity (or use --suite)".into()));
        };
        let mut params: BTreeMap<String, String> = args.params.iter().cloned().collect();
        params.entry("alpha".into()).or_insert_with(|| cfg.alpha.to_string());
        for (k, v) in &overrides {
            params.entry(k.clone()).or_insert_with(|| v.clone());
        }
        let report = verify_identity_with(id, &params, &pcfg, args.mutate)?;
        SuiteReport { outcomes: vec![PointOutcome::Report(report)] }
    };
    output::emit_suite(cfg.output, &report)?;
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

/// A seeded random subset of the suite points, in manifest order.
fn sampled_suite(
    manifest: &Manifest,
    overrides: &BTreeMap<String, String>,
    cfg: &PrecisionConfig,
    mutate: bool,
    n: usize,
    seed: u64,
) -> Result<SuiteReport, Failure> {
    let points = manifest.points(overrides)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, points.len(), n.min(points.len())).into_vec();
    idx.sort_unstable();
    let mut outcomes = Vec::with_capacity(idx.len());
    for i in idx {
        let (id, params) = &points[i];
        outcomes.push(match verify_identity_with(*id, params, cfg, mutate) {
            Ok(r) => PointOutcome::Report(r),
            Err(Error::HypothesisViolation(reason)) => {
                PointOutcome::Skipped { identity_id: *id, parameters: params.clone(), skipped: reason }
            }
            Err(e) => PointOutcome::Error { identity_id: *id, parameters: params.clone(), error: e.to_string() },
        });
    }
    Ok(SuiteReport { outcomes })
}
