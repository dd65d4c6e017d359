use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qkernel::expand::{expand, TaylorGrid, DEFAULT_EXPAND_TOL};
use qkernel::verify::{
    is_known, pattern_matches, run_catalog, run_identity, write_reports, RunConfig, Summary,
    CATALOG,
};
use qkernel::{
    genfun_rhs, phi_series, phi_series_auto, FamilyParams, GenFunKind, GenFunParams, HyperSeries,
    Mode, QContext, QError, Rational, Scalar, TruncationPolicy,
};

const EXIT_FAIL: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qkernel",
    version,
    about = "q-series kernels and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one catalog identity and print JSON Lines reports.
    Verify {
        id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the whole catalog (or the filtered part of it).
    VerifyAll {
        #[command(flatten)]
        run: RunArgs,
        /// Identity pattern such as `gf.*`; repeatable.
        #[arg(long)]
        filter: Vec<String>,
    },
    /// Evaluate a polynomial, a basic hypergeometric series or a generating function.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Expand a Taylor grid in a polynomial family.
    Expand {
        grid: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_EXPAND_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Write reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON run config; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall time per report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Coefficients of a family member, optionally its value at (x, y).
    Poly {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// `r phi s (upper; lower; q, z)`.
    Phi {
        /// Comma-separated upper parameters.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        upper: String,
        /// Comma-separated lower parameters.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lower: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value = "float")]
        mode: Mode,
        /// Last index summed in exact mode.
        #[arg(long, default_value_t = 60)]
        n_max: usize,
    },
    /// Right member of a generating function.
    GenfunRhs {
        /// l1, l2, l3, l0, univariate[-alternating|-gamma], jacobi or bailey.
        kind: String,
        #[arg(long, default_value = "0.5")]
        q: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qkernel: {e}");
            ExitCode::from(match e {
                QError::Parse(_) => EXIT_PARSE,
                QError::Index(_) => EXIT_UNKNOWN,
                _ => EXIT_FAIL,
            })
        }
    }
}

fn run(command: Command) -> Result<ExitCode, QError> {
    match command {
        Command::Verify { id, run } => {
            let cfg = run_config(run, Vec::new())?;
            if !is_known(&id) {
                return Err(QError::Index(format!("unknown identity '{id}'")));
            }
            let reports = run_identity(&id, &cfg)?;
            emit(&cfg, vec![(id, reports)])
        }
        Command::VerifyAll { run, filter } => {
            let cfg = run_config(run, filter)?;
            if let Some(bad) = cfg
                .filter
                .iter()
                .find(|p| !CATALOG.iter().any(|id| pattern_matches(p, id)))
            {
                return Err(QError::Index(format!("filter '{bad}' matches no identity")));
            }
            let runs = run_catalog(&cfg);
            emit(&cfg, runs)
        }
        Command::Eval { target } => eval(target),
        Command::Expand {
            grid,
            family,
            alpha,
            beta,
            q,
            mode,
            tol,
        } => {
            let text = std::fs::read_to_string(&grid)
                .map_err(|e| QError::Parse(format!("cannot read {}: {e}", grid.display())))?;
            let out = match mode {
                Mode::Exact => expand_with::<Rational>(
                    &text,
                    &family,
                    alpha.as_deref(),
                    beta.as_deref(),
                    &q,
                    tol,
                )?,
                Mode::Float => {
                    expand_with::<f64>(&text, &family, alpha.as_deref(), beta.as_deref(), &q, tol)?
                }
            };
            print_line(&out.to_string()).map_err(|e| QError::Io(e.to_string()))?;
            Ok(if out["admissible"] == json!(true) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }
    }
}

fn run_config(args: RunArgs, filter: Vec<String>) -> Result<RunConfig, QError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if args.q.is_some() {
        cfg.q = args.q;
    }
    if args.mode.is_some() {
        cfg.mode = args.mode;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.samples.is_some() {
        cfg.samples = args.samples;
    }
    if args.tol.is_some() {
        cfg.tol = args.tol;
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    if !filter.is_empty() {
        cfg.filter = filter;
    }
    cfg.timing |= args.timing;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(
    cfg: &RunConfig,
    runs: Vec<(String, Vec<qkernel::VerificationReport>)>,
) -> Result<ExitCode, QError> {
    let summary = Summary::from_runs(&runs);
    let reports: Vec<_> = runs.into_iter().flat_map(|(_, r)| r).collect();
    let io_err = |e: io::Error| QError::Io(format!("writing reports: {e}"));
    let summary_line = serde_json::to_string(&summary).expect("summary serializes");
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            write_reports(&mut w, &reports).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            print_line(&summary_line).map_err(io_err)?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_reports(&mut w, &reports)
                .and_then(|_| writeln!(w, "{summary_line}"))
                .and_then(|_| w.flush())
                .or_else(ignore_broken_pipe)
                .map_err(io_err)?;
        }
    }
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn ignore_broken_pipe(e: io::Error) -> io::Result<()> {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Ok(())
    } else {
        Err(e)
    }
}

fn print_line(line: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}").or_else(ignore_broken_pipe)
}

fn parse_list<S: Scalar>(text: &str) -> Result<Vec<S>, QError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(S::parse_str)
        .collect()
}

fn eval(target: EvalTarget) -> Result<ExitCode, QError> {
    let value = match target {
        EvalTarget::Poly {
            family,
            n,
            alpha,
            beta,
            q,
            mode,
            x,
            y,
        } => match mode {
            Mode::Exact => eval_poly::<Rational>(
                &family,
                n,
                alpha.as_deref(),
                beta.as_deref(),
                &q,
                x.as_deref(),
                y.as_deref(),
            )?,
            Mode::Float => eval_poly::<f64>(
                &family,
                n,
                alpha.as_deref(),
                beta.as_deref(),
                &q,
                x.as_deref(),
                y.as_deref(),
            )?,
        },
        EvalTarget::Phi {
            upper,
            lower,
            z,
            q,
            mode,
            n_max,
        } => match mode {
            Mode::Exact => eval_phi::<Rational>(&upper, &lower, &z, &q, Some(n_max))?,
            Mode::Float => eval_phi::<f64>(&upper, &lower, &z, &q, None)?,
        },
        EvalTarget::GenfunRhs {
            kind,
            q,
            alpha,
            beta,
            gamma,
            x,
            y,
            u,
            v,
            t,
        } => {
            let kind = GenFunKind::parse(&kind)?;
            let p = GenFunParams {
                alpha,
                beta,
                gamma,
                x,
                y,
                u,
                v,
                t,
            };
            let ctx = QContext::with_policy(q, TruncationPolicy::from_env()?)?;
            let s = genfun_rhs(kind, &p, &ctx)?;
            json!({ "kind": kind.label(), "value": s.value, "error": s.error, "terms": s.terms })
        }
    };
    print_line(&value.to_string()).map_err(|e| QError::Io(e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn context<S: Scalar>(q: &str) -> Result<QContext<S>, QError> {
    QContext::with_policy(S::parse_str(q)?, TruncationPolicy::from_env()?)
}

fn eval_poly<S: Scalar>(
    family: &str,
    n: usize,
    alpha: Option<&str>,
    beta: Option<&str>,
    q: &str,
    x: Option<&str>,
    y: Option<&str>,
) -> Result<Value, QError> {
    let ctx = context::<S>(q)?;
    let fam = FamilyParams::<S>::from_name(family, alpha, beta)?;
    let p = fam.basis(n, &ctx)?;
    let mut out = json!({
        "family": fam.name(),
        "n": n,
        "q": ctx.q().to_json(),
        "coeffs": p.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    if x.is_some() || y.is_some() {
        let x = S::parse_str(x.unwrap_or("1"))?;
        let y = S::parse_str(y.unwrap_or("1"))?;
        out["value"] = p.evaluate(&x, &y).to_json();
    }
    Ok(out)
}

fn eval_phi<S: Scalar>(
    upper: &str,
    lower: &str,
    z: &str,
    q: &str,
    n_max: Option<usize>,
) -> Result<Value, QError> {
    let ctx = context::<S>(q)?;
    let spec = HyperSeries::new(
        parse_list::<S>(upper)?,
        parse_list::<S>(lower)?,
        S::parse_str(z)?,
    );
    let s = match n_max {
        Some(n) => phi_series(&spec, &ctx, n)?,
        None => phi_series_auto(&spec, &ctx)?,
    };
    let mut out = json!({
        "value": s.value.to_json(),
        "error": s.error,
        "terms": s.terms,
        "terminated": s.terminated,
    });
    if s.terminated {
        out["note"] = json!(format!(
            "terminating series: exact partial sum of {} terms",
            s.terms
        ));
    }
    Ok(out)
}

fn expand_with<S: Scalar>(
    text: &str,
    family: &str,
    alpha: Option<&str>,
    beta: Option<&str>,
    q: &str,
    tol: f64,
) -> Result<Value, QError> {
    let grid = TaylorGrid::<S>::parse(text)?;
    let ctx = context::<S>(q)?;
    let fam = FamilyParams::<S>::from_name(family, alpha, beta)?;
    let result = expand(&grid, &fam, &ctx, tol)?;
    let mut out = result.to_json();
    out["family"] = json!(fam.name());
    Ok(out)
}
