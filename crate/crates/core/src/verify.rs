//! Identity catalog and batch verification harness.
//!
//! Each catalog entry runs one family of checks over a deterministic set of
//! parameter samples and yields one [`VerificationReport`] per sample.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classic::{
    asymptotic_ratio, backward_shift_residual, forward_shift_residual, orthogonality_check,
    qdifference_residual, recurrence_residual_poly, RecurrenceVariant, Residual,
};
use crate::context::QContext;
use crate::error::{QError, Result};
use crate::expand::{expand, synthesize, TaylorGrid, DEFAULT_EXPAND_TOL};
use crate::genfun::{genfun_lhs_terms, genfun_verify, GenFunKind, GenFunParams, UnivariateVariant};
use crate::ops::{qderiv_poly, qshift_poly_int, Axis};
use crate::pde::{pde_residual, pde_sides, residual_metric, PdeKind};
use crate::poly::{jacobi_bivariate, jacobi_bivariate_cleared, BivariatePolynomial, FamilyParams};
use crate::scalar::{Mode, Rational, Scalar};
use crate::series::{
    phi_series_auto, q_binomial, q_binomial_product, q_pochhammer_inf, HyperSeries,
};

pub const CATALOG: [&str; 24] = [
    "eq1.1",
    "eq1.3",
    "eq1.4a",
    "eq1.4b",
    "eq2.2",
    "pde.laguerre",
    "pde.jacobi",
    "pde.legendre",
    "pde.wall",
    "expand.laguerre",
    "expand.jacobi",
    "gf.l1",
    "gf.l2",
    "gf.l3",
    "gf.l0",
    "gf.univariate",
    "gf.jacobi",
    "gf.bailey",
    "orth.jacobi",
    "rec.jacobi",
    "shift.qdiff",
    "shift.fwd",
    "shift.bwd",
    "asym.jacobi",
];

pub const DEFAULT_SEED: u64 = 1729;

pub fn is_known(id: &str) -> bool {
    CATALOG.contains(&id)
}

/// Knobs shared by every identity. All fields are optional in the JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Base override, as a decimal or `p/q` string.
    pub q: Option<String>,
    /// Arithmetic override; ignored by identities that support one mode only.
    pub mode: Option<Mode>,
    pub seed: u64,
    pub samples: Option<usize>,
    /// Threshold override for every non-strict check.
    pub tol: Option<f64>,
    /// Thresholds keyed by identity id or by its class prefix (`"gf"`).
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    /// Identity patterns: exact ids, `prefix.*`, or `*`.
    pub filter: Vec<String>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: None,
            mode: None,
            seed: DEFAULT_SEED,
            samples: None,
            tol: None,
            tolerances: BTreeMap::new(),
            out: None,
            filter: Vec::new(),
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| QError::Parse(format!("run config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| QError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(q) = &self.q {
            let v = f64::parse_str(q)?;
            if !(v > 0.0 && v < 1.0) {
                return Err(QError::Parse(format!("q must lie in (0, 1), got {q}")));
            }
            Rational::parse_str(q)?;
        }
        if self.samples == Some(0) {
            return Err(QError::Parse("samples must be at least 1".into()));
        }
        let bad = |t: f64| !(t.is_finite() && t >= 0.0);
        if self.tol.is_some_and(bad) || self.tolerances.values().any(|t| bad(*t)) {
            return Err(QError::Parse(
                "tolerances must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }

    /// Threshold for a non-strict check of `id` whose built-in value is `default`.
    pub fn threshold(&self, id: &str, default: f64) -> f64 {
        if let Some(t) = self.tol {
            return t;
        }
        if let Some(t) = self.tolerances.get(id) {
            return *t;
        }
        let class = id.split('.').next().unwrap_or(id);
        self.tolerances.get(class).copied().unwrap_or(default)
    }

    pub fn selects(&self, id: &str) -> bool {
        self.filter.is_empty() || self.filter.iter().any(|pat| pattern_matches(pat, id))
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn q_float(&self) -> Option<f64> {
        self.q.as_deref().and_then(|q| f64::parse_str(q).ok())
    }

    fn q_exact(&self) -> Option<Rational> {
        self.q.as_deref().and_then(|q| Rational::parse_str(q).ok())
    }
}

/// Identity pattern: an exact id, `prefix*` or `*`.
pub fn pattern_matches(pattern: &str, id: &str) -> bool {
    match pattern {
        "*" => true,
        p => match p.strip_suffix('*') {
            Some(prefix) => id.starts_with(prefix),
            None => p == id,
        },
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    #[serde(rename = "N_lhs")]
    pub n_lhs: Option<usize>,
    pub terms_rhs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: BTreeMap<String, Value>,
    pub mode: Mode,
    pub metric: f64,
    pub threshold: f64,
    pub passed: bool,
    pub truncation: Truncation,
    pub seed: u64,
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_identity: BTreeMap<String, IdentitySummary>,
}

impl Summary {
    pub fn from_runs(runs: &[(String, Vec<VerificationReport>)]) -> Self {
        let mut s = Summary::default();
        for (id, reports) in runs {
            let entry = s.by_identity.entry(id.clone()).or_default();
            for r in reports {
                entry.total += 1;
                if r.passed {
                    entry.passed += 1;
                } else {
                    entry.failed += 1;
                }
            }
            s.total += entry.total;
            s.passed += entry.passed;
            s.failed += entry.failed;
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.by_identity.values().all(|e| e.total > 0)
    }
}

/// Runs one catalog identity. Unknown ids are an [`QError::Index`] error;
/// every other failure is recorded in the reports themselves.
pub fn run_identity(id: &str, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let id = *CATALOG
        .iter()
        .find(|c| **c == id)
        .ok_or_else(|| QError::Index(format!("unknown identity '{id}'")))?;
    let mut run = Run::new(id, cfg);
    match id {
        "eq1.1" => run.leibniz(),
        "eq1.3" => run.q_binomial_theorem(),
        "eq1.4a" | "eq1.4b" => run.euler(id == "eq1.4a"),
        "eq2.2" => run.q_binomial_identity(),
        "pde.laguerre" => run.pde_laguerre(),
        "pde.jacobi" => run.pde_jacobi(),
        "pde.legendre" => run.pde_special(false),
        "pde.wall" => run.pde_special(true),
        "expand.laguerre" => run.expansion(false),
        "expand.jacobi" => run.expansion(true),
        "gf.univariate" => run.genfun_univariate(),
        "orth.jacobi" => run.orthogonality(),
        "rec.jacobi" => run.recurrence(),
        "shift.qdiff" | "shift.fwd" | "shift.bwd" => run.shift(id),
        "asym.jacobi" => run.asymptotics(),
        gf => run.genfun(GenFunKind::parse(gf)?),
    }
    Ok(run.reports)
}

/// Runs every selected identity in parallel; results come back sorted by id.
pub fn run_catalog(cfg: &RunConfig) -> Vec<(String, Vec<VerificationReport>)> {
    let mut ids: Vec<&str> = CATALOG
        .iter()
        .copied()
        .filter(|id| cfg.selects(id))
        .collect();
    ids.sort_unstable();
    ids.par_iter()
        .map(|id| (id.to_string(), run_identity(id, cfg).unwrap_or_default()))
        .collect()
}

/// Writes reports as JSON Lines.
pub fn write_reports<W: Write>(mut out: W, reports: &[VerificationReport]) -> std::io::Result<()> {
    for r in reports {
        let line = serde_json::to_string(r).map_err(std::io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// `verify` as a library call: reports and summary for one id, given a JSON
/// run config (empty string for defaults).
pub fn verify_json(id: &str, config_json: &str) -> Result<String> {
    let cfg = if config_json.trim().is_empty() {
        RunConfig::default()
    } else {
        RunConfig::from_json_str(config_json)?
    };
    let reports = run_identity(id, &cfg)?;
    let summary = Summary::from_runs(&[(id.to_string(), reports.clone())]);
    Ok(json!({ "reports": reports, "summary": summary }).to_string())
}

/// Van der Corput radical inverse of `index` in `base`.
pub fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn id_hash(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// `count` points of a Halton sequence in `[0,1)^dims` under a random shift
/// drawn from `seed` and `id`.
pub fn halton_points(seed: u64, id: &str, count: usize, dims: usize) -> Vec<Vec<f64>> {
    assert!(dims <= PRIMES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ id_hash(id));
    let shift: Vec<f64> = (0..dims).map(|_| rng.random::<f64>()).collect();
    (1..=count)
        .map(|i| {
            (0..dims)
                .map(|d| (halton(i, PRIMES[d]) + shift[d]).fract())
                .collect()
        })
        .collect()
}

fn lerp(u: f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * u
}

type Params = BTreeMap<String, Value>;

fn params(pairs: &[(&str, Value)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

struct Outcome {
    metric: f64,
    threshold: f64,
    truncation: Truncation,
    extra: Vec<(&'static str, Value)>,
}

impl Outcome {
    fn new(metric: f64, threshold: f64) -> Self {
        Outcome {
            metric,
            threshold,
            truncation: Truncation::default(),
            extra: Vec::new(),
        }
    }

    fn exact(metric: f64) -> Self {
        Self::new(metric, 0.0)
    }

    fn trunc(mut self, n_lhs: Option<usize>, terms_rhs: Option<usize>) -> Self {
        self.truncation = Truncation { n_lhs, terms_rhs };
        self
    }

    fn with(mut self, key: &'static str, value: Value) -> Self {
        self.extra.push((key, value));
        self
    }
}

const BOTH: &[Mode] = &[Mode::Exact, Mode::Float];

fn exact_relative<S: Scalar>(a: &S, b: &S) -> f64 {
    if a == b {
        0.0
    } else {
        (a.clone() - b.clone()).magnitude() / a.magnitude().max(b.magnitude())
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> BivariatePolynomial<Rational> {
    BivariatePolynomial::new((0..=degree).map(|_| random_rational(rng)).collect())
}

fn float_poly(p: &BivariatePolynomial<Rational>) -> BivariatePolynomial<f64> {
    p.to_float()
}

fn exact_ctx(q: &Rational) -> Result<QContext<Rational>> {
    QContext::new(q.clone())
}

fn degenerate(alpha: &Rational, q: &Rational, n_max: usize) -> bool {
    let one = <Rational as Scalar>::one();
    (1..=n_max as i64 + 1).any(|j| alpha.clone() * q.powi(j) == one)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn family_pde_metric<S: Scalar>(
    family: &FamilyParams<S>,
    n_max: usize,
    ctx: &QContext<S>,
) -> Result<f64> {
    let kind = PdeKind::for_family(family);
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let (lhs, rhs) = pde_sides(&family.basis(n, ctx)?, &kind, ctx)?;
        worst = worst.max(residual_metric(&lhs, &rhs)?);
    }
    Ok(worst)
}

/// [`family_pde_metric`] for `(alpha q; q)_n p_n^(alpha,beta)`, used where
/// `alpha q^j = 1` leaves the plain family undefined.
fn cleared_pde_metric<S: Scalar>(
    alpha: &S,
    beta: &S,
    kind: &PdeKind<S>,
    n_max: usize,
    ctx: &QContext<S>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let (lhs, rhs) = pde_sides(&jacobi_bivariate_cleared(n, alpha, beta, ctx)?, kind, ctx)?;
        worst = worst.max(residual_metric(&lhs, &rhs)?);
    }
    Ok(worst)
}

/// Largest coefficient gap between the residuals of `a` and `b` on `polys`.
fn coherence_metric<S: Scalar>(
    polys: &[BivariatePolynomial<S>],
    a: &PdeKind<S>,
    b: &PdeKind<S>,
    ctx: &QContext<S>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in polys {
        worst = worst.max(residual_metric(
            &pde_residual(p, a, ctx)?,
            &pde_residual(p, b, ctx)?,
        )?);
    }
    Ok(worst)
}

fn leibniz_metric<S: Scalar>(
    f: &BivariatePolynomial<S>,
    g: &BivariatePolynomial<S>,
    ctx: &QContext<S>,
) -> Result<f64> {
    let lhs = qderiv_poly(&f.mul(g), Axis::X, ctx);
    let rhs = qderiv_poly(f, Axis::X, ctx)
        .mul(g)
        .add(&qshift_poly_int(f, Axis::X, 1, ctx).mul(&qderiv_poly(g, Axis::X, ctx)))?;
    residual_metric(&lhs, &rhs)
}

fn q_binomial_metric<S: Scalar>(n_max: usize, ctx: &QContext<S>) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        for k in 1..=n {
            let lhs = q_binomial(n, k, ctx)? * (S::one() - ctx.qpow(k as i64));
            let rhs = q_binomial(n, k - 1, ctx)? * (S::one() - ctx.qpow((n - k + 1) as i64));
            worst = worst.max(exact_relative(&lhs, &rhs));
            worst = worst.max(exact_relative(
                &q_binomial(n, k, ctx)?,
                &q_binomial_product(n, k, ctx)?,
            ));
        }
    }
    Ok(worst)
}

/// Each `(grid, claimed)` pair: does `expand` agree with the PDE residual of
/// every homogeneous part, and does a synthesized grid round-trip?
fn expansion_metric<S: Scalar>(
    grid: &TaylorGrid<S>,
    coeffs: Option<&[S]>,
    family: &FamilyParams<S>,
    ctx: &QContext<S>,
    tol: f64,
) -> Result<(f64, bool, bool)> {
    let result = expand(grid, family, ctx, tol)?;
    let kind = PdeKind::for_family(family);
    let mut solves = true;
    for d in 0..grid.rows().min(grid.cols()) {
        let part = grid.homogeneous_part(d).expect("degree inside grid");
        let (lhs, rhs) = pde_sides(&part, &kind, ctx)?;
        let ok = match S::MODE {
            Mode::Exact => lhs == rhs,
            Mode::Float => residual_metric(&lhs, &rhs)? <= tol,
        };
        solves &= ok;
    }
    let mut mismatch = result.admissible != solves;
    if let Some(c) = coeffs {
        mismatch |=
            match S::MODE {
                Mode::Exact => result.coeffs.as_slice() != c,
                Mode::Float => result.coeffs.iter().zip(c).any(|(a, b)| {
                    (a.clone() - b.clone()).magnitude() > tol * b.magnitude().max(1.0)
                }),
            };
    }
    Ok((if mismatch { 1.0 } else { 0.0 }, result.admissible, solves))
}

fn residual_max<S: Scalar>(
    ns: impl Iterator<Item = usize>,
    mut f: impl FnMut(usize) -> Result<Residual<S>>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in ns {
        worst = worst.max(f(n)?.relative());
    }
    Ok(worst)
}

fn shift_residual<S: Scalar>(
    id: &str,
    n: usize,
    alpha: &S,
    beta: &S,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<Residual<S>> {
    match id {
        "shift.qdiff" => qdifference_residual(n, alpha, beta, x, y, ctx),
        "shift.fwd" => forward_shift_residual(n, alpha, beta, x, y, ctx),
        _ => backward_shift_residual(n, alpha, beta, x, y, ctx),
    }
}

fn gf_params_json(kind: GenFunKind, p: &GenFunParams) -> Vec<(&'static str, Value)> {
    let mut v = vec![("alpha", json!(p.alpha)), ("t", json!(p.t))];
    match kind {
        GenFunKind::L2 | GenFunKind::LUnivariate(UnivariateVariant::Gamma) => {
            v.push(("gamma", json!(p.gamma)))
        }
        GenFunKind::Jacobi => v.push(("beta", json!(p.beta))),
        GenFunKind::Bailey => {
            v.push(("beta", json!(p.beta)));
            v.push(("u", json!(p.u)));
            v.push(("v", json!(p.v)));
        }
        _ => {}
    }
    v.push(("x", json!(p.x)));
    if !matches!(kind, GenFunKind::LUnivariate(_)) {
        v.push(("y", json!(p.y)));
    }
    v
}

struct Run<'a> {
    id: &'static str,
    cfg: &'a RunConfig,
    reports: Vec<VerificationReport>,
}

impl<'a> Run<'a> {
    fn new(id: &'static str, cfg: &'a RunConfig) -> Self {
        Run {
            id,
            cfg,
            reports: Vec::new(),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ id_hash(self.id))
    }

    fn points(&self, count: usize, dims: usize) -> Vec<Vec<f64>> {
        halton_points(self.cfg.seed, self.id, count, dims)
    }

    fn mode(&self, natural: Mode, supported: &[Mode]) -> Mode {
        self.cfg
            .mode
            .filter(|m| supported.contains(m))
            .unwrap_or(natural)
    }

    fn exact_qs(&self, defaults: &[(i64, i64)]) -> Vec<Rational> {
        match self.cfg.q_exact() {
            Some(q) => vec![q],
            None => defaults.iter().map(|&(n, d)| r(n, d)).collect(),
        }
    }

    fn float_qs(&self, defaults: &[f64]) -> Vec<f64> {
        match self.cfg.q_float() {
            Some(q) => vec![q],
            None => defaults.to_vec(),
        }
    }

    fn check(&mut self, mut params: Params, mode: Mode, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (metric, threshold, truncation) = match f() {
            Ok(o) => {
                for (k, v) in o.extra {
                    params.insert(k.to_string(), v);
                }
                let threshold = if o.threshold == 0.0 {
                    0.0
                } else {
                    self.cfg.threshold(self.id, o.threshold)
                };
                (o.metric, threshold, o.truncation)
            }
            Err(e) => {
                params.insert("error".into(), json!(e.to_string()));
                (f64::INFINITY, 0.0, Truncation::default())
            }
        };
        self.reports.push(VerificationReport {
            identity_id: self.id.to_string(),
            params,
            mode,
            metric,
            threshold,
            passed: metric <= threshold,
            truncation,
            seed: self.cfg.seed,
            wall_time_ms: self.cfg.timing.then(|| start.elapsed().as_millis() as u64),
        });
    }

    fn leibniz(&mut self) {
        let mode = self.mode(Mode::Exact, BOTH);
        let count = self.cfg.samples_or(20);
        let mut rng = self.rng();
        for q in self.exact_qs(&[(1, 2), (1, 3)]) {
            for i in 0..count {
                let (df, dg) = (rng.random_range(0..=6), rng.random_range(0..=6));
                let (f, g) = (random_poly(&mut rng, df), random_poly(&mut rng, dg));
                let p = params(&[
                    ("q", q.to_json()),
                    ("sample", json!(i)),
                    ("deg_f", json!(df)),
                    ("deg_g", json!(dg)),
                ]);
                self.check(p, mode, || match mode {
                    Mode::Exact => Ok(Outcome::exact(leibniz_metric(&f, &g, &exact_ctx(&q)?)?)),
                    Mode::Float => {
                        let ctx = QContext::float(q.to_f64())?;
                        Ok(Outcome::new(
                            leibniz_metric(&float_poly(&f), &float_poly(&g), &ctx)?,
                            1e-12,
                        ))
                    }
                });
            }
        }
    }

    fn q_binomial_theorem(&mut self) {
        let count = self.cfg.samples_or(8);
        let pts = self.points(count, 2);
        for q in self.float_qs(&[0.3, 0.5, 0.7]) {
            for pt in &pts {
                let (a, z) = (lerp(pt[0], -0.9, 0.9), lerp(pt[1], -0.9, 0.9));
                let p = params(&[("q", json!(q)), ("a", json!(a)), ("z", json!(z))]);
                self.check(p, Mode::Float, || {
                    let ctx = QContext::float(q)?;
                    let sum = phi_series_auto(&HyperSeries::new(vec![a], vec![], z), &ctx)?;
                    let num = q_pochhammer_inf(a * z, &ctx)?;
                    let den = q_pochhammer_inf(z, &ctx)?;
                    let rhs = num.value / den.value;
                    Ok(
                        Outcome::new((sum.value - rhs).abs() / (1.0 + rhs.abs()), 1e-12)
                            .trunc(Some(sum.terms), Some(num.terms.max(den.terms)))
                            .with("error_estimate", json!(sum.error)),
                    )
                });
            }
        }
    }

    fn euler(&mut self, reciprocal: bool) {
        let count = self.cfg.samples_or(8);
        let pts = self.points(count, 1);
        for q in self.float_qs(&[0.3, 0.5, 0.7]) {
            for pt in &pts {
                let z = lerp(pt[0], -0.9, 0.9);
                let p = params(&[("q", json!(q)), ("z", json!(z))]);
                self.check(p, Mode::Float, || {
                    let ctx = QContext::float(q)?;
                    let upper = if reciprocal { vec![0.0] } else { vec![] };
                    let sum = phi_series_auto(&HyperSeries::new(upper, vec![], z), &ctx)?;
                    let prod = q_pochhammer_inf(z, &ctx)?;
                    let rhs = if reciprocal {
                        1.0 / prod.value
                    } else {
                        prod.value
                    };
                    Ok(
                        Outcome::new((sum.value - rhs).abs() / (1.0 + rhs.abs()), 1e-12)
                            .trunc(Some(sum.terms), Some(prod.terms))
                            .with("error_estimate", json!(sum.error)),
                    )
                });
            }
        }
    }

    fn q_binomial_identity(&mut self) {
        let mode = self.mode(Mode::Exact, BOTH);
        for q in self.exact_qs(&[(1, 2), (1, 3)]) {
            let p = params(&[("q", q.to_json()), ("n_max", json!(30))]);
            self.check(p, mode, || match mode {
                Mode::Exact => Ok(Outcome::exact(q_binomial_metric(30, &exact_ctx(&q)?)?)),
                Mode::Float => Ok(Outcome::new(
                    q_binomial_metric(30, &QContext::float(q.to_f64())?)?,
                    1e-12,
                )),
            });
        }
    }

    fn pde_laguerre(&mut self) {
        let mode = self.mode(Mode::Exact, BOTH);
        match mode {
            Mode::Exact => {
                for q in self.exact_qs(&[(1, 2), (1, 3)]) {
                    for a in [0, 1, 2] {
                        let p = params(&[
                            ("q", q.to_json()),
                            ("alpha", json!(a)),
                            ("n_max", json!(12)),
                        ]);
                        self.check(p, mode, || {
                            let fam = FamilyParams::QLaguerre { alpha: r(a, 1) };
                            Ok(Outcome::exact(family_pde_metric(
                                &fam,
                                12,
                                &exact_ctx(&q)?,
                            )?))
                        });
                    }
                }
            }
            Mode::Float => {
                let pts = self.points(self.cfg.samples_or(4), 1);
                for q in self.float_qs(&[0.5, 1.0 / 3.0]) {
                    for pt in &pts {
                        let a = lerp(pt[0], -0.9, 2.5);
                        let p =
                            params(&[("q", json!(q)), ("alpha", json!(a)), ("n_max", json!(12))]);
                        self.check(p, mode, || {
                            let fam = FamilyParams::QLaguerre { alpha: a };
                            Ok(Outcome::new(
                                family_pde_metric(&fam, 12, &QContext::float(q)?)?,
                                1e-10,
                            ))
                        });
                    }
                }
            }
        }
    }

    fn pde_jacobi(&mut self) {
        let mode = self.mode(Mode::Exact, BOTH);
        match mode {
            Mode::Exact => {
                for q in self.exact_qs(&[(1, 2), (1, 3)]) {
                    for a in [0, 1, 2] {
                        let cleared = degenerate(&r(a, 1), &q, 12);
                        for b in [0, 1, 3] {
                            let mut p = params(&[
                                ("q", q.to_json()),
                                ("alpha", json!(a)),
                                ("beta", json!(b)),
                                ("n_max", json!(12)),
                            ]);
                            if cleared {
                                p.insert("normalization".into(), json!("cleared"));
                            }
                            self.check(p, mode, || {
                                let (a, b) = (r(a, 1), r(b, 1));
                                let ctx = exact_ctx(&q)?;
                                let metric = if cleared {
                                    let kind = PdeKind::Jacobi {
                                        alpha: a.clone(),
                                        beta: b.clone(),
                                    };
                                    cleared_pde_metric(&a, &b, &kind, 12, &ctx)?
                                } else {
                                    let fam = FamilyParams::LittleQJacobi { alpha: a, beta: b };
                                    family_pde_metric(&fam, 12, &ctx)?
                                };
                                Ok(Outcome::exact(metric))
                            });
                        }
                    }
                }
            }
            Mode::Float => {
                let pts = self.points(self.cfg.samples_or(4), 2);
                for q in self.float_qs(&[0.5, 1.0 / 3.0]) {
                    for pt in &pts {
                        let (a, b) = (lerp(pt[0], 0.05, 0.95), lerp(pt[1], 0.0, 3.0));
                        let p = params(&[
                            ("q", json!(q)),
                            ("alpha", json!(a)),
                            ("beta", json!(b)),
                            ("n_max", json!(12)),
                        ]);
                        self.check(p, mode, || {
                            let fam = FamilyParams::LittleQJacobi { alpha: a, beta: b };
                            Ok(Outcome::new(
                                family_pde_metric(&fam, 12, &QContext::float(q)?)?,
                                1e-10,
                            ))
                        });
                    }
                }
            }
        }
    }

    /// Legendre (`wall == false`) or Wall: the family solves its equation for
    /// `n <= 12`, and on random polynomials of degree `<= 10` the equation's
    /// residual coincides with the matching Jacobi one.
    fn pde_special(&mut self, wall: bool) {
        let mode = self.mode(Mode::Exact, BOTH);
        let mut rng = self.rng();
        let polys: Vec<_> = (0..=10).map(|d| random_poly(&mut rng, d)).collect();
        let alphas: &[i64] = if wall { &[0, 1, 2] } else { &[1] };
        for q in self.exact_qs(&[(1, 2), (1, 3)]) {
            for &a in alphas {
                let cleared = wall && degenerate(&r(a, 1), &q, 12);
                let mut p = params(&[
                    ("q", q.to_json()),
                    ("n_max", json!(12)),
                    ("coherence_degree_max", json!(10)),
                ]);
                if wall {
                    p.insert("alpha".into(), json!(a));
                }
                if cleared {
                    p.insert("normalization".into(), json!("cleared"));
                }
                let polys = &polys;
                self.check(p, mode, || {
                    fn metric<S: Scalar>(
                        a: S,
                        wall: bool,
                        cleared: bool,
                        polys: &[BivariatePolynomial<S>],
                        ctx: &QContext<S>,
                    ) -> Result<f64> {
                        let alpha = a.clone();
                        let (fam, kind, jac) = if wall {
                            (
                                FamilyParams::LittleQLaguerre { alpha: a.clone() },
                                PdeKind::Wall { alpha: a.clone() },
                                PdeKind::Jacobi {
                                    alpha: a,
                                    beta: S::zero(),
                                },
                            )
                        } else {
                            (
                                FamilyParams::LittleQLegendre,
                                PdeKind::Legendre,
                                PdeKind::Jacobi {
                                    alpha: S::one(),
                                    beta: S::one(),
                                },
                            )
                        };
                        let basis = if cleared {
                            cleared_pde_metric(&alpha, &S::zero(), &kind, 12, ctx)?
                        } else {
                            family_pde_metric(&fam, 12, ctx)?
                        };
                        Ok(basis.max(coherence_metric(polys, &kind, &jac, ctx)?))
                    }
                    match mode {
                        Mode::Exact => Ok(Outcome::exact(metric(
                            r(a, 1),
                            wall,
                            cleared,
                            polys,
                            &exact_ctx(&q)?,
                        )?)),
                        Mode::Float => {
                            let fp: Vec<_> = polys.iter().map(float_poly).collect();
                            Ok(Outcome::new(
                                metric(
                                    a as f64,
                                    wall,
                                    cleared,
                                    &fp,
                                    &QContext::float(q.to_f64())?,
                                )?,
                                1e-10,
                            ))
                        }
                    }
                });
            }
        }
    }

    fn expansion(&mut self, jacobi: bool) {
        const DEG: usize = 8;
        let mode = self.mode(Mode::Exact, BOTH);
        let count = self.cfg.samples_or(20);
        let mut rng = self.rng();
        let tol = match mode {
            Mode::Exact => 0.0,
            Mode::Float => self.cfg.threshold(self.id, DEFAULT_EXPAND_TOL),
        };
        for q in self.exact_qs(&[(1, 2), (1, 3)]) {
            let family = if jacobi {
                FamilyParams::LittleQJacobi {
                    alpha: r(1, 1),
                    beta: r(3, 1),
                }
            } else {
                FamilyParams::QLaguerre { alpha: r(2, 1) }
            };
            let Ok(ctx) = exact_ctx(&q) else { continue };
            for i in 0..count {
                let shape = ["basis_sum", "perturbed", "random"][i % 3];
                let coeffs: Vec<Rational> = (0..=DEG).map(|_| random_rational(&mut rng)).collect();
                let grid = match shape {
                    "random" => {
                        let mut g = TaylorGrid::zeros(DEG + 1, DEG + 1).expect("nonempty");
                        for m in 0..=DEG {
                            for n in 0..=DEG - m {
                                g.set(m, n, random_rational(&mut rng)).expect("in range");
                            }
                        }
                        Ok(g)
                    }
                    _ => synthesize(&coeffs, &family, DEG, DEG, &ctx).map(|mut g| {
                        if shape == "perturbed" {
                            let m = rng.random_range(1..=DEG);
                            let n = rng.random_range(0..=DEG - m);
                            let v = g
                                .get(m, n)
                                .cloned()
                                .unwrap_or_else(<Rational as Scalar>::zero)
                                + r(1, 1);
                            g.set(m, n, v).expect("in range");
                        }
                        g
                    }),
                };
                let mut p = params(&[
                    ("q", q.to_json()),
                    ("instance", json!(i)),
                    ("shape", json!(shape)),
                    ("degree_max", json!(DEG)),
                ]);
                match &family {
                    FamilyParams::LittleQJacobi { alpha, beta } => {
                        p.insert("alpha".into(), alpha.to_json());
                        p.insert("beta".into(), beta.to_json());
                    }
                    FamilyParams::QLaguerre { alpha } => {
                        p.insert("alpha".into(), alpha.to_json());
                    }
                    _ => {}
                }
                let family = &family;
                let roundtrip = (shape == "basis_sum").then_some(coeffs.as_slice());
                self.check(p, mode, || {
                    let grid = grid?;
                    let (metric, admissible, solves) = match mode {
                        Mode::Exact => expansion_metric(&grid, roundtrip, family, &ctx, 0.0)?,
                        Mode::Float => {
                            let fgrid = TaylorGrid::new(
                                grid.entries()
                                    .iter()
                                    .map(|row| row.iter().map(|v| v.to_f64()).collect())
                                    .collect(),
                            )?;
                            let ffam = match family {
                                FamilyParams::LittleQJacobi { alpha, beta } => {
                                    FamilyParams::LittleQJacobi {
                                        alpha: alpha.to_f64(),
                                        beta: beta.to_f64(),
                                    }
                                }
                                FamilyParams::QLaguerre { alpha } => FamilyParams::QLaguerre {
                                    alpha: alpha.to_f64(),
                                },
                                _ => unreachable!(),
                            };
                            let fc: Option<Vec<f64>> =
                                roundtrip.map(|c| c.iter().map(|v| v.to_f64()).collect());
                            expansion_metric(
                                &fgrid,
                                fc.as_deref(),
                                &ffam,
                                &QContext::float(q.to_f64())?,
                                tol,
                            )?
                        }
                    };
                    Ok(Outcome::exact(metric)
                        .with("admissible", json!(admissible))
                        .with("pde_solution", json!(solves)))
                });
            }
        }
    }

    fn genfun_default(kind: GenFunKind) -> (GenFunParams, usize, f64) {
        let laguerre = GenFunParams {
            alpha: 0.3,
            gamma: 0.6,
            x: 0.2,
            y: 0.7,
            t: 0.4,
            ..GenFunParams::default()
        };
        match kind {
            GenFunKind::Jacobi => (
                GenFunParams {
                    alpha: 0.25,
                    beta: 0.2,
                    x: 0.6,
                    y: 1.0,
                    t: 0.3,
                    ..GenFunParams::default()
                },
                60,
                1e-10,
            ),
            GenFunKind::Bailey => (
                GenFunParams {
                    alpha: 0.25,
                    beta: 0.2,
                    x: 0.1,
                    y: 1.0,
                    u: 0.15,
                    v: 1.0,
                    t: 0.3,
                    ..GenFunParams::default()
                },
                40,
                1e-8,
            ),
            _ => (laguerre, 60, 1e-10),
        }
    }

    /// Default point first, then Halton points in a box inside every
    /// generating function's domain.
    fn genfun_points(&self, kind: GenFunKind) -> Vec<GenFunParams> {
        let (base, _, _) = Self::genfun_default(kind);
        let count = self.cfg.samples_or(1);
        let mut out = vec![base];
        for pt in self.points(count.saturating_sub(1), 7) {
            let mut p = base;
            p.alpha = lerp(pt[0], 0.05, 0.9);
            p.t = lerp(pt[1], 0.05, 0.35);
            p.x = lerp(pt[2], 0.0, 0.5);
            match kind {
                GenFunKind::Jacobi | GenFunKind::Bailey => {
                    p.beta = lerp(pt[3], 0.05, 0.5);
                    p.u = lerp(pt[4], 0.0, 0.3);
                }
                _ => {
                    p.gamma = lerp(pt[3], 0.0, 0.9);
                    p.y = lerp(pt[4], 0.3, 1.0);
                }
            }
            out.push(p);
        }
        out
    }

    fn genfun_one(&mut self, kind: GenFunKind, gp: GenFunParams, q: f64, n: usize, threshold: f64) {
        let mut p = params(&[("q", json!(q)), ("N", json!(n))]);
        for (k, v) in gf_params_json(kind, &gp) {
            p.insert(k.into(), v);
        }
        if let GenFunKind::LUnivariate(v) = kind {
            p.insert("variant".into(), json!(v));
        }
        self.check(p, Mode::Float, || {
            let rec = genfun_verify(kind, &gp, &QContext::float(q)?, n)?;
            Ok(Outcome::new(rec.deviation, threshold)
                .trunc(Some(rec.n_lhs), Some(rec.terms_rhs))
                .with("lhs", json!(rec.lhs))
                .with("rhs", json!(rec.rhs))
                .with("deviation_half", json!(rec.deviation_half)))
        });
    }

    fn genfun(&mut self, kind: GenFunKind) {
        let (_, n, threshold) = Self::genfun_default(kind);
        for q in self.float_qs(&[0.5]) {
            for gp in self.genfun_points(kind) {
                self.genfun_one(kind, gp, q, n, threshold);
            }
            if kind == GenFunKind::L2 {
                let (base, _, _) = Self::genfun_default(kind);
                let gp = GenFunParams { gamma: 0.0, ..base };
                let mut p = params(&[
                    ("q", json!(q)),
                    ("N", json!(n)),
                    ("check", json!("termwise_gamma_zero")),
                ]);
                for (k, v) in gf_params_json(kind, &gp) {
                    p.insert(k.into(), v);
                }
                self.check(p, Mode::Float, || {
                    let ctx = QContext::float(q)?;
                    let a = genfun_lhs_terms(GenFunKind::L2, &gp, n, &ctx)?;
                    let b = genfun_lhs_terms(GenFunKind::L0, &gp, n, &ctx)?;
                    let worst = a
                        .iter()
                        .zip(&b)
                        .map(|(s, t)| (s - t).abs() / (1.0 + t.abs()))
                        .fold(0.0, f64::max);
                    Ok(Outcome::new(worst, f64::EPSILON).trunc(Some(n), None))
                });
            }
        }
    }

    fn genfun_univariate(&mut self) {
        let (base, n, threshold) = Self::genfun_default(GenFunKind::L1);
        for q in self.float_qs(&[0.5]) {
            for v in [
                UnivariateVariant::Plain,
                UnivariateVariant::Alternating,
                UnivariateVariant::Gamma,
            ] {
                let kind = GenFunKind::LUnivariate(v);
                for gp in self.genfun_points(kind) {
                    self.genfun_one(kind, GenFunParams { y: base.y, ..gp }, q, n, threshold);
                }
            }
        }
    }

    fn orthogonality(&mut self) {
        let mode = self.mode(Mode::Exact, BOTH);
        let q = self.cfg.q_exact().unwrap_or_else(|| r(1, 2));
        let (a, b, y) = (r(2, 5), r(3, 10), r(1, 1));
        for m in 0..=6usize {
            for n in 0..=6usize {
                let p = params(&[
                    ("q", q.to_json()),
                    ("alpha", a.to_json()),
                    ("beta", b.to_json()),
                    ("y", y.to_json()),
                    ("m", json!(m)),
                    ("n", json!(n)),
                ]);
                self.check(p, mode, || {
                    let rec = match mode {
                        Mode::Exact => orthogonality_check(m, n, &a, &b, &y, &exact_ctx(&q)?)?,
                        Mode::Float => {
                            let ctx = QContext::float(q.to_f64())?;
                            orthogonality_check(m, n, &a.to_f64(), &b.to_f64(), &y.to_f64(), &ctx)?
                        }
                    };
                    Ok(Outcome::new(rec.deviation, 1e-10)
                        .trunc(Some(rec.terms), None)
                        .with("lhs", json!(rec.lhs))
                        .with("rhs", json!(rec.rhs)))
                });
            }
        }
    }

    fn recurrence(&mut self) {
        const N_MAX: usize = 8;
        let mode = self.mode(Mode::Exact, BOTH);
        let sets: Vec<(Rational, i64, i64)> = match self.cfg.q_exact() {
            Some(q) => vec![(q, 2, 3)],
            None => vec![(r(1, 3), 2, 3), (r(1, 2), 3, 5)],
        };
        let tol = match mode {
            Mode::Exact => 0.0,
            Mode::Float => self.cfg.threshold(self.id, 1e-12),
        };
        for (q, a, b) in sets {
            let p = params(&[
                ("q", q.to_json()),
                ("alpha", json!(a)),
                ("beta", json!(b)),
                ("n_max", json!(N_MAX)),
            ]);
            self.check(p, mode, || {
                fn variant_metric<S: Scalar>(v: RecurrenceVariant, a: &S, b: &S, ctx: &QContext<S>) -> Result<f64> {
                    let mut worst = 0.0f64;
                    for n in 0..=N_MAX {
                        let res = recurrence_residual_poly(n, a, b, v, ctx)?;
                        if res.is_zero() {
                            continue;
                        }
                        let scale = 1.0 + jacobi_bivariate(n + 1, a, b, ctx)?.max_abs_coeff();
                        worst = worst.max(res.max_abs_coeff() / scale);
                    }
                    Ok(worst)
                }
                let mut residuals = BTreeMap::new();
                let mut winners = Vec::new();
                for v in RecurrenceVariant::ALL {
                    let m = match mode {
                        Mode::Exact => variant_metric(v, &r(a, 1), &r(b, 1), &exact_ctx(&q)?)?,
                        Mode::Float => variant_metric(v, &(a as f64), &(b as f64), &QContext::float(q.to_f64())?)?,
                    };
                    residuals.insert(v.label(), m);
                    if m <= tol {
                        winners.push(v);
                    }
                }
                let mut out = Outcome::exact((winners.len() as f64 - 1.0).abs())
                    .with("residuals", json!(residuals))
                    .with("variant", if winners.len() == 1 { json!(winners[0].label()) } else { Value::Null });
                if !winners.contains(&RecurrenceVariant::AsPrinted) {
                    out = out.with(
                        "discrepancy",
                        json!("C_n with the factor (1 - alpha q^n) does not satisfy the three-term recurrence; (1 - q^n) does"),
                    );
                }
                Ok(out)
            });
        }
    }

    fn shift(&mut self, id: &'static str) {
        let n_min = usize::from(id == "shift.fwd");
        let mode = self.cfg.mode;
        if mode != Some(Mode::Float) {
            let sets: Vec<(Rational, Rational, Rational)> = match self.cfg.q_exact() {
                Some(q) => vec![(q, r(2, 1), r(3, 1))],
                None => vec![(r(1, 3), r(2, 1), r(3, 1)), (r(1, 2), r(1, 1), r(1, 1))],
            };
            for (q, a, b) in sets {
                for (x, y) in [(r(5, 7), r(11, 13)), (r(-3, 2), r(2, 5))] {
                    let p = params(&[
                        ("q", q.to_json()),
                        ("alpha", a.to_json()),
                        ("beta", b.to_json()),
                        ("x", x.to_json()),
                        ("y", y.to_json()),
                        ("n_min", json!(n_min)),
                        ("n_max", json!(8)),
                    ]);
                    self.check(p, Mode::Exact, || {
                        let ctx = exact_ctx(&q)?;
                        let worst = residual_max(n_min..=8, |n| {
                            shift_residual(id, n, &a, &b, &x, &y, &ctx)
                        })?;
                        Ok(Outcome::exact(worst))
                    });
                }
            }
        }
        if mode != Some(Mode::Exact) {
            for pt in self.points(self.cfg.samples_or(50), 6) {
                let q = self.cfg.q_float().unwrap_or_else(|| lerp(pt[0], 0.2, 0.8));
                let (a, b) = (lerp(pt[1], 0.05, 0.95), lerp(pt[2], 0.05, 0.95));
                let (x, y) = (lerp(pt[3], -1.2, 1.2), lerp(pt[4], 0.2, 1.5));
                let n = 1 + (pt[5] * 8.0) as usize;
                let p = params(&[
                    ("q", json!(q)),
                    ("alpha", json!(a)),
                    ("beta", json!(b)),
                    ("x", json!(x)),
                    ("y", json!(y)),
                    ("n", json!(n)),
                ]);
                self.check(p, Mode::Float, || {
                    let ctx = QContext::float(q)?;
                    Ok(Outcome::new(
                        shift_residual(id, n, &a, &b, &x, &y, &ctx)?.relative(),
                        1e-11,
                    ))
                });
            }
        }
    }

    fn asymptotics(&mut self) {
        const DEGREES: [usize; 4] = [10, 20, 40, 80];
        let base = (0.5, 0.3, 0.2, 1.0, 0.4);
        let mut points = vec![base];
        for pt in self.points(self.cfg.samples_or(1).saturating_sub(1), 4) {
            points.push((
                0.5,
                lerp(pt[0], 0.05, 0.9),
                lerp(pt[1], 0.05, 0.9),
                lerp(pt[2], 0.5, 2.0),
                lerp(pt[3], 0.0, 0.5),
            ));
        }
        for (q0, a, b, x, y) in points {
            let q = self.cfg.q_float().unwrap_or(q0);
            let p = params(&[
                ("q", json!(q)),
                ("alpha", json!(a)),
                ("beta", json!(b)),
                ("x", json!(x)),
                ("y", json!(y)),
            ]);
            let devs = || -> Result<Vec<f64>> {
                let ctx = QContext::float(q)?;
                DEGREES
                    .iter()
                    .map(|&n| asymptotic_ratio(n, a, b, x, y, &ctx).map(|rec| rec.deviation))
                    .collect()
            };
            let mut p40 = p.clone();
            p40.insert("n".into(), json!(40));
            self.check(p40, Mode::Float, || {
                let ctx = QContext::float(q)?;
                let rec = asymptotic_ratio(40, a, b, x, y, &ctx)?;
                Ok(Outcome::new(rec.deviation, 1e-4)
                    .trunc(Some(40), None)
                    .with("ratio", json!(rec.ratio))
                    .with("limit", json!(rec.limit)))
            });
            let mut pm = p;
            pm.insert("n".into(), json!(DEGREES));
            pm.insert("check".into(), json!("monotone"));
            self.check(pm, Mode::Float, || {
                let d = devs()?;
                let worst = d
                    .windows(2)
                    .map(|w| match (w[0], w[1]) {
                        (_, 0.0) => 0.0,
                        (0.0, _) => f64::INFINITY,
                        (a, b) => b / a,
                    })
                    .fold(0.0, f64::max);
                Ok(Outcome::new(worst, 1.1).with("deviations", json!(d)))
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_prefix() {
        let v: Vec<f64> = (1..=4).map(|i| halton(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
        assert!((halton(5, 3) - 7.0 / 9.0).abs() < 1e-15);
        let a = halton_points(3, "x", 5, 3);
        assert_eq!(a, halton_points(3, "x", 5, 3));
        assert_ne!(a, halton_points(4, "x", 5, 3));
        assert!(a.iter().flatten().all(|u| (0.0..1.0).contains(u)));
    }

    #[test]
    fn filters() {
        assert!(pattern_matches("gf.*", "gf.l1"));
        assert!(!pattern_matches("gf.*", "pde.wall"));
        assert!(pattern_matches("*", "eq1.1"));
        assert!(pattern_matches("eq1.1", "eq1.1"));
        let cfg = RunConfig {
            filter: vec!["gf.*".into()],
            ..RunConfig::default()
        };
        assert_eq!(CATALOG.iter().filter(|id| cfg.selects(id)).count(), 7);
    }

    #[test]
    fn thresholds() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.threshold("gf.l1", 1e-10), 1e-10);
        cfg.tolerances.insert("gf".into(), 1e-6);
        cfg.tolerances.insert("gf.l2".into(), 1e-7);
        assert_eq!(cfg.threshold("gf.l1", 1e-10), 1e-6);
        assert_eq!(cfg.threshold("gf.l2", 1e-10), 1e-7);
        cfg.tol = Some(0.0);
        assert_eq!(cfg.threshold("gf.l2", 1e-10), 0.0);
    }

    #[test]
    fn config_parsing() {
        let cfg =
            RunConfig::from_json_str(r#"{"q": "1/3", "seed": 9, "filter": ["pde.*"]}"#).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.q_exact(), Some(r(1, 3)));
        assert!(RunConfig::from_json_str(r#"{"q": "1.5"}"#).is_err());
        assert!(RunConfig::from_json_str(r#"{"samples": 0}"#).is_err());
        assert!(RunConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
        assert!(RunConfig::from_json_str("{").is_err());
        assert_eq!(
            RunConfig::from_json_str("{}").unwrap(),
            RunConfig::default()
        );
    }

    #[test]
    fn unknown_identity() {
        assert!(matches!(
            run_identity("nonsense", &RunConfig::default()),
            Err(QError::Index(_))
        ));
    }

    #[test]
    fn report_shape() {
        let reports = run_identity("eq2.2", &RunConfig::default()).unwrap();
        assert_eq!(reports.len(), 2);
        let v: Value = serde_json::to_value(&reports[0]).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(
            keys,
            [
                "identity_id",
                "metric",
                "mode",
                "params",
                "passed",
                "seed",
                "threshold",
                "truncation",
                "wall_time_ms"
            ]
        );
        assert_eq!(v["mode"], "exact");
        assert!(v["truncation"].get("N_lhs").is_some());
        assert!(reports.iter().all(|r| r.passed && r.metric == 0.0));
    }

    #[test]
    fn domain_errors_become_failed_reports() {
        let cfg = RunConfig {
            q: Some("1/2".into()),
            ..RunConfig::default()
        };
        // alpha = 2 at q = 1/2 is degenerate for the recurrence sample
        let reports = run_identity("rec.jacobi", &cfg).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].passed);
        assert!(reports[0].params.contains_key("error"));
    }
}
