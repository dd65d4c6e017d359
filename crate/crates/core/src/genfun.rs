//! Generating functions of the two families: partial sums of the left
//! members against q-product and basic hypergeometric right members.
//!
//! Everything here runs in double precision.

use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::poly::{jacobi_bivariate_scaled, laguerre_bivariate, univariate_laguerre};
use crate::series::{phi_series_auto, q_pochhammer_inf, HyperSeries, SeriesSum, Step, TailMonitor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnivariateVariant {
    /// weight 1: `sum curly L_n t^n`
    Plain,
    /// weight `(-1)^n q^(n(n-1)/2) / (q^(alpha+1); q)_n`
    Alternating,
    /// weight `(gamma; q)_n / (q^(alpha+1); q)_n`
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenFunKind {
    /// weight `(-1)^n q^(n(n-1)/2) / (q; q)_n`
    L1,
    /// weight `(gamma; q)_n / (q; q)_n`
    L2,
    /// weight `(q^(alpha+1); q)_n / (q; q)_n`
    L3,
    /// weight `1 / (q; q)_n`
    L0,
    LUnivariate(UnivariateVariant),
    /// weight `q^(n(n-1)/2) / ((q; q)_n (beta q; q)_n)`
    Jacobi,
    /// bilinear, weight `(alpha q, alpha beta q; q)_n / (beta q, q; q)_n (beta q)^n q^(n(n-1)/2)`
    Bailey,
}

impl GenFunKind {
    pub fn label(&self) -> &'static str {
        match self {
            GenFunKind::L1 => "l1",
            GenFunKind::L2 => "l2",
            GenFunKind::L3 => "l3",
            GenFunKind::L0 => "l0",
            GenFunKind::LUnivariate(UnivariateVariant::Plain) => "univariate-plain",
            GenFunKind::LUnivariate(UnivariateVariant::Alternating) => "univariate-alternating",
            GenFunKind::LUnivariate(UnivariateVariant::Gamma) => "univariate-gamma",
            GenFunKind::Jacobi => "jacobi",
            GenFunKind::Bailey => "bailey",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.strip_prefix("gf.").unwrap_or(&s);
        Ok(match s {
            "l1" => GenFunKind::L1,
            "l2" => GenFunKind::L2,
            "l3" => GenFunKind::L3,
            "l0" => GenFunKind::L0,
            "univariate" | "univariate-plain" => GenFunKind::LUnivariate(UnivariateVariant::Plain),
            "univariate-alternating" => GenFunKind::LUnivariate(UnivariateVariant::Alternating),
            "univariate-gamma" => GenFunKind::LUnivariate(UnivariateVariant::Gamma),
            "jacobi" => GenFunKind::Jacobi,
            "bailey" => GenFunKind::Bailey,
            other => {
                return Err(QError::Parse(format!(
                    "unknown generating function '{other}'"
                )))
            }
        })
    }
}

/// Parameters shared by all generating functions; each kind reads the ones
/// it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenFunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub t: f64,
}

impl Default for GenFunParams {
    fn default() -> Self {
        GenFunParams {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            x: 0.0,
            y: 1.0,
            u: 0.0,
            v: 1.0,
            t: 0.0,
        }
    }
}

fn qpow(ctx: &QContext<f64>, e: f64) -> f64 {
    ctx.q().powf(e)
}

fn check_domain(kind: GenFunKind, p: &GenFunParams) -> Result<()> {
    let laguerre = matches!(
        kind,
        GenFunKind::L1
            | GenFunKind::L2
            | GenFunKind::L3
            | GenFunKind::L0
            | GenFunKind::LUnivariate(_)
    );
    if laguerre && !(p.alpha > -1.0) {
        return Err(QError::domain(format!(
            "q-Laguerre generating functions need alpha > -1, got {}",
            p.alpha
        )));
    }
    match kind {
        GenFunKind::L2 | GenFunKind::L3 | GenFunKind::L0 => {
            if (p.t * p.y).abs() >= 1.0 {
                return Err(QError::domain(format!(
                    "|t y| = {} must be < 1",
                    (p.t * p.y).abs()
                )));
            }
        }
        GenFunKind::LUnivariate(v) => {
            if v != UnivariateVariant::Alternating && p.t.abs() >= 1.0 {
                return Err(QError::domain(format!("|t| = {} must be < 1", p.t.abs())));
            }
        }
        GenFunKind::Bailey => {
            let tyv = p.t * p.y * p.v;
            if tyv.abs() >= 1.0 {
                return Err(QError::domain(format!(
                    "|t y v| = {} must be < 1",
                    tyv.abs()
                )));
            }
            if p.y == 0.0 || p.v == 0.0 {
                return Err(QError::domain("Bailey's formula needs y != 0 and v != 0"));
            }
        }
        GenFunKind::L1 | GenFunKind::Jacobi => {}
    }
    Ok(())
}

fn check_bailey_ratio(p: &GenFunParams, q: f64) -> Result<()> {
    let ratio = p.beta * q * q * p.u * p.x / (p.y * p.v).powi(2);
    if ratio.abs() >= 1.0 {
        return Err(QError::domain(format!(
            "|beta q^2 u x / (y v)^2| = {} must be < 1",
            ratio.abs()
        )));
    }
    Ok(())
}

/// Terms `n = 0..=n_max` of the left member.
pub fn genfun_lhs_terms(
    kind: GenFunKind,
    p: &GenFunParams,
    n_max: usize,
    ctx: &QContext<f64>,
) -> Result<Vec<f64>> {
    check_domain(kind, p)?;
    if kind == GenFunKind::Bailey {
        check_bailey_ratio(p, *ctx.q())?;
    }
    let q = *ctx.q();
    let qa1 = qpow(ctx, p.alpha + 1.0);
    let mut terms = Vec::with_capacity(n_max + 1);
    // running Pochhammers, each advanced after use
    let mut qq = 1.0; // (q;q)_n
    let mut gam = 1.0; // (gamma;q)_n
    let mut qa = 1.0; // (q^(alpha+1);q)_n
    let mut bq = 1.0; // (beta q;q)_n
    let mut aq = 1.0; // (alpha q;q)_n
    let mut abq = 1.0; // (alpha beta q;q)_n
    for n in 0..=n_max {
        let ni = n as i32;
        let tn = p.t.powi(ni);
        let half_binom = (n * n.saturating_sub(1) / 2) as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = match kind {
            GenFunKind::L1 | GenFunKind::L2 | GenFunKind::L3 | GenFunKind::L0 => {
                let w = match kind {
                    GenFunKind::L1 => sign * q.powf(half_binom) / qq,
                    GenFunKind::L2 => gam / qq,
                    GenFunKind::L3 => qa / qq,
                    _ => 1.0 / qq,
                };
                w * laguerre_bivariate(n, &p.alpha, ctx)?.evaluate(&p.x, &p.y) * tn
            }
            GenFunKind::LUnivariate(variant) => {
                let w = match variant {
                    UnivariateVariant::Plain => 1.0,
                    UnivariateVariant::Alternating => sign * q.powf(half_binom) / qa,
                    UnivariateVariant::Gamma => gam / qa,
                };
                w * univariate_laguerre(n, &p.alpha, &p.x, ctx)? * tn
            }
            GenFunKind::Jacobi => {
                let scaled =
                    jacobi_bivariate_scaled(n, &p.alpha, &p.beta, ctx)?.evaluate(&p.x, &p.y);
                tn / (qq * bq) * scaled
            }
            GenFunKind::Bailey => {
                let sx = jacobi_bivariate_scaled(n, &p.alpha, &p.beta, ctx)?.evaluate(&p.x, &p.y);
                let su = jacobi_bivariate_scaled(n, &p.alpha, &p.beta, ctx)?.evaluate(&p.u, &p.v);
                // q^(C(n,2)) p_n(x,y) p_n(u,v) = scaled(x,y) scaled(u,v) q^(-C(n,2)), split evenly
                let root = q.powf(-half_binom / 2.0);
                aq * abq / (bq * qq) * (p.beta * q).powi(ni) * (sx * root) * (su * root) * tn
            }
        };
        terms.push(term);
        let qn = q.powi(ni);
        qq *= 1.0 - qn * q;
        gam *= 1.0 - p.gamma * qn;
        qa *= 1.0 - qa1 * qn;
        bq *= 1.0 - p.beta * q * qn;
        aq *= 1.0 - p.alpha * q * qn;
        abq *= 1.0 - p.alpha * p.beta * q * qn;
    }
    Ok(terms)
}

/// Compensated sum.
fn neumaier(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Partial sum of the left member to `n = n_max`.
pub fn genfun_lhs(
    kind: GenFunKind,
    p: &GenFunParams,
    n_max: usize,
    ctx: &QContext<f64>,
) -> Result<f64> {
    Ok(neumaier(genfun_lhs_terms(kind, p, n_max, ctx)?))
}

fn inf(a: f64, ctx: &QContext<f64>) -> Result<SeriesSum<f64>> {
    q_pochhammer_inf(a, ctx)
}

fn phi(upper: Vec<f64>, lower: Vec<f64>, z: f64, ctx: &QContext<f64>) -> Result<SeriesSum<f64>> {
    phi_series_auto(&HyperSeries::new(upper, lower, z), ctx)
}

/// `value * factor` with first-order error propagation.
fn times(a: &SeriesSum<f64>, b: &SeriesSum<f64>) -> SeriesSum<f64> {
    SeriesSum {
        value: a.value * b.value,
        error: a.error * b.value.abs() + b.error * a.value.abs(),
        terms: a.terms + b.terms,
        terminated: a.terminated && b.terminated,
    }
}

fn over(a: &SeriesSum<f64>, b: &SeriesSum<f64>) -> Result<SeriesSum<f64>> {
    if b.value == 0.0 {
        return Err(QError::domain(
            "right member has a vanishing denominator product",
        ));
    }
    let value = a.value / b.value;
    Ok(SeriesSum {
        value,
        error: a.error / b.value.abs() + value.abs() * b.error / b.value.abs(),
        terms: a.terms + b.terms,
        terminated: a.terminated && b.terminated,
    })
}

fn one() -> SeriesSum<f64> {
    SeriesSum {
        value: 1.0,
        error: 0.0,
        terms: 0,
        terminated: true,
    }
}

/// Right member with an error estimate; `terms` counts series terms and
/// product factors used.
pub fn genfun_rhs(
    kind: GenFunKind,
    p: &GenFunParams,
    ctx: &QContext<f64>,
) -> Result<SeriesSum<f64>> {
    check_domain(kind, p)?;
    let qa1 = qpow(ctx, p.alpha + 1.0);
    let q = *ctx.q();
    match kind {
        GenFunKind::L1 => {
            let ty = p.t * p.y;
            Ok(times(
                &inf(ty, ctx)?,
                &phi(vec![], vec![qa1, ty], -qa1 * p.x * p.t, ctx)?,
            ))
        }
        GenFunKind::L2 => {
            let ty = p.t * p.y;
            let pre = over(&inf(p.gamma * ty, ctx)?, &inf(ty, ctx)?)?;
            Ok(times(
                &pre,
                &phi(
                    vec![p.gamma],
                    vec![qa1, p.gamma * ty],
                    -qa1 * p.x * p.t,
                    ctx,
                )?,
            ))
        }
        GenFunKind::L3 => {
            if p.y == 0.0 {
                return Err(QError::domain("this right member needs y != 0"));
            }
            let ty = p.t * p.y;
            let pre = over(&one(), &inf(ty, ctx)?)?;
            Ok(times(
                &pre,
                &phi(vec![-p.x / p.y], vec![0.0], qa1 * ty, ctx)?,
            ))
        }
        GenFunKind::L0 => {
            let ty = p.t * p.y;
            let pre = over(&one(), &inf(ty, ctx)?)?;
            Ok(times(&pre, &phi(vec![], vec![qa1], -qa1 * p.x * p.t, ctx)?))
        }
        GenFunKind::LUnivariate(UnivariateVariant::Plain) => {
            let pre = over(&one(), &inf(p.t, ctx)?)?;
            Ok(times(&pre, &phi(vec![-p.x], vec![0.0], qa1 * p.t, ctx)?))
        }
        GenFunKind::LUnivariate(UnivariateVariant::Alternating) => Ok(times(
            &inf(p.t, ctx)?,
            &phi(vec![], vec![qa1, p.t], -qa1 * p.x * p.t, ctx)?,
        )),
        GenFunKind::LUnivariate(UnivariateVariant::Gamma) => {
            let pre = over(&inf(p.gamma * p.t, ctx)?, &inf(p.t, ctx)?)?;
            Ok(times(
                &pre,
                &phi(
                    vec![p.gamma],
                    vec![qa1, p.gamma * p.t],
                    -qa1 * p.x * p.t,
                    ctx,
                )?,
            ))
        }
        GenFunKind::Jacobi => {
            if p.x == 0.0 {
                return Err(QError::domain(
                    "the Jacobi generating function needs x != 0",
                ));
            }
            let first = phi(vec![], vec![p.alpha * q], -p.alpha * q * p.x * p.t, ctx)?;
            let second = phi(vec![p.y / p.x, 0.0], vec![p.beta * q], -p.x * p.t, ctx)?;
            Ok(times(&first, &second))
        }
        GenFunKind::Bailey => {
            check_bailey_ratio(p, q)?;
            let yvt = p.y * p.v * p.t;
            let pre = over(&inf(-p.alpha * p.beta * q * yvt, ctx)?, &inf(-yvt, ctx)?)?;
            Ok(times(&pre, &bailey_double_sum(p, ctx)?))
        }
    }
}

/// `sum_{r,s} T(r,s)` over anti-diagonals `d = r + s` with
/// `T(r,s) = (beta q^2 u x)^r q^s / ((y v)^(2r+s) (q;q)_r (q;q)_s)
///   (alpha beta q;q)_(2r+2s) (beta q x/y;q)_s (beta q u/v;q)_s
///   / ((-alpha beta q y v t;q)_(r+s) (-q/(t y v);q)_(r+s) (alpha q;q)_r (beta q;q)_s)`.
pub fn bailey_double_sum(p: &GenFunParams, ctx: &QContext<f64>) -> Result<SeriesSum<f64>> {
    let q = *ctx.q();
    let policy = ctx.trunc;
    let yv = p.y * p.v;
    let tyv = p.t * yv;
    let a_r = p.beta * q * q * p.u * p.x / (yv * yv);
    let b_s = q / yv;

    // tables indexed by r (or s), extended as diagonals grow
    let mut qq = vec![1.0f64]; // (q;q)_j
    let mut aq = vec![1.0f64]; // (alpha q;q)_j
    let mut bq = vec![1.0f64]; // (beta q;q)_j
    let mut bx = vec![1.0f64]; // (beta q x/y;q)_j
    let mut bu = vec![1.0f64]; // (beta q u/v;q)_j
    let mut pow_r = vec![1.0f64];
    let mut pow_s = vec![1.0f64];
    let mut ab2 = vec![1.0f64]; // (alpha beta q;q)_(2d)
    let mut ab_run = 1.0f64;
    let mut ab_idx = 0usize;
    let mut den_t = 1.0f64; // (-alpha beta q y v t;q)_d
    let mut inv_qt = 1.0f64; // 1 / (-q/(t y v);q)_d

    let mut monitor = TailMonitor::new(policy);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_total = 0.0f64;
    let mut d = 0usize;
    loop {
        if d >= policy.max_terms {
            return Err(QError::TruncationExceeded { terms: d });
        }
        if d > 0 {
            let j = (d - 1) as i32;
            let qj = q.powi(j);
            let next = |v: &mut Vec<f64>, a: f64| {
                let last = *v.last().unwrap();
                v.push(last * (1.0 - a * qj));
            };
            next(&mut qq, q);
            next(&mut aq, p.alpha * q);
            next(&mut bq, p.beta * q);
            next(&mut bx, p.beta * q * p.x / p.y);
            next(&mut bu, p.beta * q * p.u / p.v);
            pow_r.push(pow_r[d - 1] * a_r);
            pow_s.push(pow_s[d - 1] * b_s);
            for _ in 0..2 {
                ab_run *= 1.0 - p.alpha * p.beta * q * q.powi(ab_idx as i32);
                ab_idx += 1;
            }
            ab2.push(ab_run);
            den_t *= 1.0 + p.alpha * p.beta * q * tyv * qj;
            inv_qt *= tyv / (tyv + qj * q);
        }
        let mut diag = 0.0f64;
        let mut diag_abs = 0.0f64;
        for r in 0..=d {
            let s = d - r;
            let t = pow_r[r] * pow_s[s] / (qq[r] * qq[s]) * ab2[d] * bx[s] * bu[s] * inv_qt
                / (den_t * aq[r] * bq[s]);
            diag += t;
            diag_abs += t.abs();
        }
        if !diag.is_finite() {
            return Err(QError::DivergenceSuspected { term: d });
        }
        let s_new = sum + diag;
        if sum.abs() >= diag.abs() {
            comp += (sum - s_new) + diag;
        } else {
            comp += (diag - s_new) + sum;
        }
        sum = s_new;
        abs_total += diag_abs;
        d += 1;
        if let Step::Converged = monitor.observe(d - 1, diag_abs, (sum + comp).abs())? {
            break;
        }
    }
    Ok(SeriesSum {
        value: sum + comp,
        error: monitor.tail_estimate() + f64::EPSILON * abs_total,
        terms: d,
        terminated: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenFunRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    /// `|LHS_N - RHS| / (1 + |RHS|)`
    pub deviation: f64,
    pub lhs_half: f64,
    pub deviation_half: f64,
    pub n_lhs: usize,
    pub terms_rhs: usize,
}

/// Compares the partial sum to `n_lhs` (and to `n_lhs / 2`) with the right
/// member.
pub fn genfun_verify(
    kind: GenFunKind,
    p: &GenFunParams,
    ctx: &QContext<f64>,
    n_lhs: usize,
) -> Result<GenFunRecord> {
    let terms = genfun_lhs_terms(kind, p, n_lhs, ctx)?;
    let rhs = genfun_rhs(kind, p, ctx)?;
    let lhs = neumaier(terms.iter().copied());
    let lhs_half = neumaier(terms[..=n_lhs / 2].iter().copied());
    let dev = |l: f64| {
        let d = (l - rhs.value).abs() / (1.0 + rhs.value.abs());
        if d.is_nan() {
            f64::INFINITY
        } else {
            d
        }
    };
    Ok(GenFunRecord {
        lhs,
        rhs: rhs.value,
        rhs_error: rhs.error,
        deviation: dev(lhs),
        lhs_half,
        deviation_half: dev(lhs_half),
        n_lhs,
        terms_rhs: rhs.terms,
    })
}

/// Right member of the `gamma` generating function as a function of
/// `(x, y)`, with its basic hypergeometric factor cut after `n_terms` terms.
pub fn gf_l2_rhs_truncated(
    x: f64,
    y: f64,
    p: &GenFunParams,
    n_terms: usize,
    ctx: &QContext<f64>,
) -> Result<f64> {
    let ty = p.t * y;
    let qa1 = qpow(ctx, p.alpha + 1.0);
    let pre = inf(p.gamma * ty, ctx)?.value / inf(ty, ctx)?.value;
    let spec = HyperSeries::new(vec![p.gamma], vec![qa1, p.gamma * ty], -qa1 * x * p.t);
    if n_terms == 0 {
        return Ok(0.0);
    }
    let series = crate::series::phi_series(&spec, ctx, n_terms - 1)?;
    Ok(pre * series.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::{pde_residual_fn, PdeKind};

    fn laguerre_sample() -> GenFunParams {
        GenFunParams {
            alpha: 0.3,
            gamma: 0.6,
            x: 0.2,
            y: 0.7,
            t: 0.4,
            ..GenFunParams::default()
        }
    }

    #[test]
    fn laguerre_generating_functions() {
        let ctx = QContext::float(0.5).unwrap();
        let p = laguerre_sample();
        for kind in [
            GenFunKind::L1,
            GenFunKind::L2,
            GenFunKind::L3,
            GenFunKind::L0,
        ] {
            let rec = genfun_verify(kind, &p, &ctx, 60).unwrap();
            assert!(rec.deviation <= 1e-10, "{kind:?}: {rec:?}");
            assert!(rec.deviation <= rec.deviation_half + 1e-16);
        }
    }

    #[test]
    fn univariate_generating_functions() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            y: 1.0,
            ..laguerre_sample()
        };
        for v in [
            UnivariateVariant::Plain,
            UnivariateVariant::Alternating,
            UnivariateVariant::Gamma,
        ] {
            let rec = genfun_verify(GenFunKind::LUnivariate(v), &p, &ctx, 60).unwrap();
            assert!(rec.deviation <= 1e-10, "{v:?}: {rec:?}");
        }
    }

    #[test]
    fn gamma_zero_reduces_termwise() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            gamma: 0.0,
            ..laguerre_sample()
        };
        let a = genfun_lhs_terms(GenFunKind::L2, &p, 40, &ctx).unwrap();
        let b = genfun_lhs_terms(GenFunKind::L0, &p, 40, &ctx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gamma_equal_to_q_alpha_plus_one_matches_l3_weights() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            gamma: 0.5f64.powf(1.3),
            ..laguerre_sample()
        };
        let a = genfun_lhs_terms(GenFunKind::L2, &p, 30, &ctx).unwrap();
        let b = genfun_lhs_terms(GenFunKind::L3, &p, 30, &ctx).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-15 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn trivial_arguments() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            t: 0.0,
            ..laguerre_sample()
        };
        for kind in [
            GenFunKind::L1,
            GenFunKind::L2,
            GenFunKind::L3,
            GenFunKind::L0,
        ] {
            let rec = genfun_verify(kind, &p, &ctx, 10).unwrap();
            assert!(rec.deviation <= 1e-16 && (rec.lhs - 1.0).abs() <= 1e-16);
        }
        assert_eq!(
            genfun_lhs(GenFunKind::L1, &laguerre_sample(), 0, &ctx).unwrap(),
            1.0
        );

        // x = 0 reduces several right members to q-binomial products
        let p0 = GenFunParams {
            x: 0.0,
            ..laguerre_sample()
        };
        let ty = p0.t * p0.y;
        let l1 = genfun_rhs(GenFunKind::L1, &p0, &ctx).unwrap().value;
        assert!((l1 - q_pochhammer_inf(ty, &ctx).unwrap().value).abs() < 1e-15);
        let l2 = genfun_rhs(GenFunKind::L2, &p0, &ctx).unwrap().value;
        let expect = q_pochhammer_inf(p0.gamma * ty, &ctx).unwrap().value
            / q_pochhammer_inf(ty, &ctx).unwrap().value;
        assert!((l2 - expect).abs() < 1e-14);
        let l3 = genfun_rhs(GenFunKind::L3, &p0, &ctx).unwrap().value;
        let qa1 = 0.5f64.powf(1.3);
        let expect = q_pochhammer_inf(qa1 * ty, &ctx).unwrap().value
            / q_pochhammer_inf(ty, &ctx).unwrap().value;
        assert!((l3 - expect).abs() < 1e-14);
    }

    #[test]
    fn jacobi_generating_function() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            alpha: 0.25,
            beta: 0.2,
            x: 0.6,
            y: 1.0,
            t: 0.3,
            ..GenFunParams::default()
        };
        let rec = genfun_verify(GenFunKind::Jacobi, &p, &ctx, 60).unwrap();
        assert!(rec.deviation <= 1e-10, "{rec:?}");
        // y = x: the second factor terminates at its first term
        let px = GenFunParams { y: 0.6, ..p };
        let second = phi(vec![1.0, 0.0], vec![0.1], -0.18, &ctx).unwrap();
        assert!(second.terminated && second.value == 1.0);
        assert!(
            genfun_verify(GenFunKind::Jacobi, &px, &ctx, 60)
                .unwrap()
                .deviation
                <= 1e-10
        );
        assert!(genfun_rhs(GenFunKind::Jacobi, &GenFunParams { x: 0.0, ..p }, &ctx).is_err());
    }

    #[test]
    fn bailey_guards_and_t_zero() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            alpha: 0.25,
            beta: 0.2,
            x: 0.1,
            y: 1.0,
            u: 0.15,
            v: 1.0,
            t: 0.3,
            ..GenFunParams::default()
        };
        assert!(genfun_rhs(GenFunKind::Bailey, &GenFunParams { t: 1.5, ..p }, &ctx).is_err());
        assert!(genfun_rhs(
            GenFunKind::Bailey,
            &GenFunParams {
                x: 40.0,
                u: 40.0,
                ..p
            },
            &ctx
        )
        .is_err());
        let at0 = GenFunParams { t: 0.0, ..p };
        let rec = genfun_verify(GenFunKind::Bailey, &at0, &ctx, 20).unwrap();
        assert_eq!(rec.rhs, 1.0);
        assert_eq!(rec.lhs, 1.0);
    }

    #[test]
    fn bailey_double_sum_matches_brute_force() {
        let ctx = QContext::float(0.5).unwrap();
        let p = GenFunParams {
            alpha: 0.25,
            beta: 0.2,
            x: 0.1,
            y: 1.0,
            u: 0.15,
            v: 1.0,
            t: 0.3,
            ..GenFunParams::default()
        };
        let q: f64 = 0.5;
        let poch = |a: f64, n: usize| (0..n).fold(1.0, |acc, k| acc * (1.0 - a * q.powi(k as i32)));
        let yv = p.y * p.v;
        let tyv = p.t * yv;
        let mut brute = 0.0;
        for r in 0..90usize {
            for s in 0..90usize {
                let d = r + s;
                let t = (p.beta * q * q * p.u * p.x).powi(r as i32) * q.powi(s as i32)
                    / (yv.powi((2 * r + s) as i32) * poch(q, r) * poch(q, s))
                    * poch(p.alpha * p.beta * q, 2 * d)
                    * poch(p.beta * q * p.x / p.y, s)
                    * poch(p.beta * q * p.u / p.v, s)
                    / (poch(-p.alpha * p.beta * q * tyv, d)
                        * poch(-q / tyv, d)
                        * poch(p.alpha * q, r)
                        * poch(p.beta * q, s));
                brute += t;
            }
        }
        let got = bailey_double_sum(&p, &ctx).unwrap();
        assert!(
            (got.value - brute).abs() <= 1e-14 * brute.abs(),
            "{} vs {brute}",
            got.value
        );
        // 40-digit rectangular sum over r, s < 90
        assert!((got.value - 1.644_383_679_183_927_896).abs() <= 1e-14);
    }

    #[test]
    fn truncated_gamma_rhs_tends_to_a_pde_solution() {
        let ctx = QContext::float(0.5).unwrap();
        let p = laguerre_sample();
        let kind = PdeKind::Laguerre { alpha: p.alpha };
        let mut last = f64::INFINITY;
        let residual = |n: usize| {
            let f = |x: &f64, y: &f64| gf_l2_rhs_truncated(*x, *y, &p, n, &ctx).unwrap();
            pde_residual_fn(f, &kind, &0.3, &0.6, &ctx).unwrap().abs()
        };
        for n in 1..=4 {
            let res = residual(n);
            assert!(res < last, "n = {n}: {res} !< {last}");
            last = res;
        }
        assert!(residual(20) < 1e-12);
    }
}
