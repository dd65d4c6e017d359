//! Structural properties of the bivariate little q-Jacobi polynomials:
//! orthogonality, the three-term recurrence, q-difference and shift
//! relations, and the large-degree asymptotics.

use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::poly::{jacobi_bivariate, BivariatePolynomial};
use crate::scalar::Scalar;
use crate::series::{q_binomial, q_pochhammer_inf, q_pochhammer_table, Step, TailMonitor};

/// A residual together with the magnitude of the terms it was formed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<S> {
    pub value: S,
    pub scale: f64,
}

impl<S: Scalar> Residual<S> {
    /// `|value| / scale`, or 0 when the residual vanishes.
    pub fn relative(&self) -> f64 {
        if self.value.is_zero() {
            0.0
        } else if self.scale > 0.0 {
            self.value.magnitude() / self.scale
        } else {
            f64::INFINITY
        }
    }
}

fn p_or_zero<S: Scalar>(
    n: isize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    if n < 0 {
        Ok(BivariatePolynomial::zero())
    } else {
        jacobi_bivariate(n as usize, alpha, beta, ctx)
    }
}

fn nonzero<S: Scalar>(v: S, what: &str) -> Result<S> {
    if v.is_zero() {
        Err(QError::domain(format!("{what} vanishes")))
    } else {
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityRecord {
    pub lhs: f64,
    pub rhs: f64,
    /// Diagonal: relative error. Off-diagonal: `|lhs|` over
    /// `min(h_m, h_n) |y|^(m+n)`.
    pub deviation: f64,
    pub terms: usize,
}

/// Norm `h_n` at `y = 1`:
/// `(ab q^2;q)_inf / (aq;q)_inf (1 - ab q) (aq)^n / (1 - ab q^(2n+1))
///  (q, bq;q)_n / (aq, abq;q)_n`.
pub fn orthogonality_norm(n: usize, alpha: f64, beta: f64, ctx: &QContext<f64>) -> Result<f64> {
    let q = *ctx.q();
    let ab = alpha * beta;
    let pre = q_pochhammer_inf(ab * q * q, ctx)?.value / q_pochhammer_inf(alpha * q, ctx)?.value;
    let qq = q_pochhammer_table(&q, ctx, n)[n];
    let bq = q_pochhammer_table(&(beta * q), ctx, n)[n];
    let aq = q_pochhammer_table(&(alpha * q), ctx, n)[n];
    let abq = q_pochhammer_table(&(ab * q), ctx, n)[n];
    Ok(
        pre * (1.0 - ab * q) * (alpha * q).powi(n as i32) / (1.0 - ab * q.powi(2 * n as i32 + 1))
            * qq
            * bq
            / (aq * abq),
    )
}

/// Discrete orthogonality on the lattice `x = q^k y`. The lattice sum runs in
/// the context's arithmetic; the closed form is evaluated in floating point.
pub fn orthogonality_check<S: Scalar>(
    m: usize,
    n: usize,
    alpha: &S,
    beta: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<OrthogonalityRecord> {
    let q = ctx.q().clone();
    let inv_q = S::one() / q.clone();
    if !(alpha.clone() > S::zero()
        && alpha.clone() < inv_q
        && beta.clone() > S::zero()
        && beta.clone() < inv_q)
    {
        return Err(QError::domain(format!(
            "orthogonality needs 0 < alpha, beta < 1/q, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if y.is_zero() {
        return Err(QError::domain("orthogonality needs y != 0"));
    }
    let pm = jacobi_bivariate(m, alpha, beta, ctx)?;
    let pn = jacobi_bivariate(n, alpha, beta, ctx)?;
    let aq = alpha.clone() * q.clone();
    let bq = beta.clone() * q.clone();

    let mut weight = S::one(); // (bq;q)_k (aq)^k / (q;q)_k
    let mut point = y.clone(); // q^k y
    let mut qk = S::one();
    let mut sum = S::zero();
    let mut monitor = TailMonitor::new(ctx.trunc);
    let mut k = 0usize;
    loop {
        if k >= ctx.trunc.max_terms {
            return Err(QError::TruncationExceeded { terms: k });
        }
        let term = weight.clone() * pm.evaluate(&point, y) * pn.evaluate(&point, y);
        sum = sum + term.clone();
        let step = monitor.observe(k, term.magnitude(), sum.magnitude())?;
        k += 1;
        if let Step::Converged = step {
            break;
        }
        weight = weight * (S::one() - bq.clone() * qk.clone()) * aq.clone()
            / (S::one() - q.clone() * qk.clone());
        qk = qk * q.clone();
        point = point * q.clone();
    }

    let fctx = ctx.to_float();
    let (a, b, yf) = (alpha.to_f64(), beta.to_f64(), y.to_f64());
    let lhs = sum.to_f64();
    let y_pow = yf.abs().powi((m + n) as i32);
    let (rhs, deviation) = if m == n {
        let rhs = orthogonality_norm(n, a, b, &fctx)? * yf.powi(2 * n as i32);
        (rhs, (lhs - rhs).abs() / rhs.abs())
    } else {
        let scale =
            orthogonality_norm(m, a, b, &fctx)?.min(orthogonality_norm(n, a, b, &fctx)?) * y_pow;
        (0.0, lhs.abs() / scale)
    };
    Ok(OrthogonalityRecord {
        lhs,
        rhs,
        deviation,
        terms: k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RecurrenceVariant {
    /// `C_n` with the factor `(1 - alpha q^n)`.
    AsPrinted,
    /// `C_n` with the factor `(1 - q^n)`.
    StandardKS,
}

impl RecurrenceVariant {
    pub const ALL: [RecurrenceVariant; 2] =
        [RecurrenceVariant::AsPrinted, RecurrenceVariant::StandardKS];

    pub fn label(&self) -> &'static str {
        match self {
            RecurrenceVariant::AsPrinted => "as_printed",
            RecurrenceVariant::StandardKS => "standard_ks",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs<S> {
    pub a_n: S,
    pub c_n: S,
    pub variant: RecurrenceVariant,
}

/// `A_n = q^n (1 - a q^(n+1)) (1 - ab q^(n+1)) / ((1 - ab q^(2n+1)) (1 - ab q^(2n+2)))`,
/// `C_n = a q^n (.) (1 - b q^n) / ((1 - ab q^(2n)) (1 - ab q^(2n+1)))`.
pub fn recurrence_coeffs<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    variant: RecurrenceVariant,
    ctx: &QContext<S>,
) -> Result<RecurrenceCoeffs<S>> {
    let ni = n as i64;
    let ab = alpha.clone() * beta.clone();
    let one = S::one;
    let d0 = nonzero(
        one() - ab.clone() * ctx.qpow(2 * ni),
        "1 - alpha beta q^(2n)",
    )?;
    let d1 = nonzero(
        one() - ab.clone() * ctx.qpow(2 * ni + 1),
        "1 - alpha beta q^(2n+1)",
    )?;
    let d2 = nonzero(
        one() - ab.clone() * ctx.qpow(2 * ni + 2),
        "1 - alpha beta q^(2n+2)",
    )?;
    let qn = ctx.qpow(ni);
    let a_n =
        qn.clone() * (one() - alpha.clone() * ctx.qpow(ni + 1)) * (one() - ab * ctx.qpow(ni + 1))
            / (d1.clone() * d2);
    let first = match variant {
        RecurrenceVariant::AsPrinted => one() - alpha.clone() * qn.clone(),
        RecurrenceVariant::StandardKS => one() - qn.clone(),
    };
    let c_n = alpha.clone() * qn.clone() * first * (one() - beta.clone() * qn) / (d0 * d1);
    Ok(RecurrenceCoeffs { a_n, c_n, variant })
}

/// `-x p_n - [A_n p_(n+1) - y (A_n + C_n) p_n + y^2 C_n p_(n-1)]` as a
/// homogeneous polynomial of degree `n + 1`, with `p_(-1) = 0`.
pub fn recurrence_residual_poly<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    variant: RecurrenceVariant,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    let rc = recurrence_coeffs(n, alpha, beta, variant, ctx)?;
    let x = BivariatePolynomial::new(vec![S::zero(), S::one()]);
    let y = BivariatePolynomial::new(vec![S::one(), S::zero()]);
    let y2 = y.mul(&y);
    let pn = jacobi_bivariate(n, alpha, beta, ctx)?;
    let pn1 = jacobi_bivariate(n + 1, alpha, beta, ctx)?;
    let pm1 = p_or_zero(n as isize - 1, alpha, beta, ctx)?;
    let lhs = x.mul(&pn).scale(&-S::one());
    let rhs = pn1
        .scale(&rc.a_n)
        .sub(&y.mul(&pn).scale(&(rc.a_n.clone() + rc.c_n.clone())))?
        .add(&y2.mul(&pm1).scale(&rc.c_n))?;
    lhs.sub(&rhs)
}

pub fn recurrence_residual<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    x: &S,
    y: &S,
    variant: RecurrenceVariant,
    ctx: &QContext<S>,
) -> Result<Residual<S>> {
    let rc = recurrence_coeffs(n, alpha, beta, variant, ctx)?;
    let pn = jacobi_bivariate(n, alpha, beta, ctx)?;
    let pn1 = jacobi_bivariate(n + 1, alpha, beta, ctx)?;
    let pm1 = p_or_zero(n as isize - 1, alpha, beta, ctx)?;
    let ac = rc.a_n.clone() + rc.c_n.clone();
    let value = -x.clone() * pn.evaluate(x, y)
        - (rc.a_n.clone() * pn1.evaluate(x, y) - y.clone() * ac.clone() * pn.evaluate(x, y)
            + y.clone() * y.clone() * rc.c_n.clone() * pm1.evaluate(x, y));
    let scale = x.magnitude() * pn.evaluate_abs(x, y)
        + rc.a_n.magnitude() * pn1.evaluate_abs(x, y)
        + (y.clone() * ac).magnitude() * pn.evaluate_abs(x, y)
        + (y.clone() * y.clone() * rc.c_n).magnitude() * pm1.evaluate_abs(x, y);
    Ok(Residual { value, scale })
}

/// Variants whose residual polynomial vanishes identically for every
/// `n <= n_max`.
pub fn recurrence_adjudicate<S: Scalar>(
    n_max: usize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<Vec<RecurrenceVariant>> {
    let mut winners = Vec::new();
    for variant in RecurrenceVariant::ALL {
        let mut ok = true;
        for n in 0..=n_max {
            if !recurrence_residual_poly(n, alpha, beta, variant, ctx)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            winners.push(variant);
        }
    }
    Ok(winners)
}

/// `x (q^-n - 1)(1 - ab q^(n+1)) p_n(x,y) - [a (bqx - y) p_n(qx,y)
///  - (x - y + a(bqx - y)) p_n(x,y) + (x - y) p_n(x/q,y)]`.
pub fn qdifference_residual<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<Residual<S>> {
    let q = ctx.q().clone();
    let ni = n as i64;
    let p = jacobi_bivariate(n, alpha, beta, ctx)?;
    let qx = q.clone() * x.clone();
    let xq = x.clone() / q.clone();
    let lead = x.clone()
        * (ctx.qpow(-ni) - S::one())
        * (S::one() - alpha.clone() * beta.clone() * ctx.qpow(ni + 1));
    let c1 = alpha.clone() * (beta.clone() * qx.clone() - y.clone());
    let c2 = x.clone() - y.clone() + c1.clone();
    let c3 = x.clone() - y.clone();
    let value = lead.clone() * p.evaluate(x, y)
        - (c1.clone() * p.evaluate(&qx, y) - c2.clone() * p.evaluate(x, y)
            + c3.clone() * p.evaluate(&xq, y));
    let scale = lead.magnitude() * p.evaluate_abs(x, y)
        + c1.magnitude() * p.evaluate_abs(&qx, y)
        + c2.magnitude() * p.evaluate_abs(x, y)
        + c3.magnitude() * p.evaluate_abs(&xq, y);
    Ok(Residual { value, scale })
}

/// `[p_n(x,y) - p_n(qx,y)] + q^(1-n)(1 - q^n)(1 - ab q^(n+1))/(1 - aq) x p_(n-1)^(qa,qb)(x,y)`,
/// for `n >= 1`.
pub fn forward_shift_residual<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<Residual<S>> {
    if n == 0 {
        return Err(QError::domain("the forward shift relation needs n >= 1"));
    }
    let q = ctx.q().clone();
    let ni = n as i64;
    let den = nonzero(S::one() - alpha.clone() * q.clone(), "1 - alpha q")?;
    let p = jacobi_bivariate(n, alpha, beta, ctx)?;
    let shifted = jacobi_bivariate(
        n - 1,
        &(q.clone() * alpha.clone()),
        &(q.clone() * beta.clone()),
        ctx,
    )?;
    let qx = q * x.clone();
    let coef = ctx.qpow(1 - ni)
        * (S::one() - ctx.qpow(ni))
        * (S::one() - alpha.clone() * beta.clone() * ctx.qpow(ni + 1))
        / den
        * x.clone();
    let value = p.evaluate(x, y) - p.evaluate(&qx, y) + coef.clone() * shifted.evaluate(x, y);
    let scale = p.evaluate_abs(x, y)
        + p.evaluate_abs(&qx, y)
        + coef.magnitude() * shifted.evaluate_abs(x, y);
    Ok(Residual { value, scale })
}

/// `(1 - alpha) p_N^(alpha/q, beta/q)` with `N = n + 1`, written without the
/// `(1 - alpha)` denominator of the `k >= 1` coefficients so it stays finite
/// at `alpha = 1`:
/// `c_0 = 1 - alpha`, `c_k = (-1)^k q^(k(k+1-2N)/2) [N,k] (alpha beta q^n;q)_k / (alpha q;q)_(k-1)`.
pub fn backward_shift_target<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    let big_n = n + 1;
    let aq = q_pochhammer_table(&(alpha.clone() * ctx.q().clone()), ctx, n);
    if let Some(j) = aq.iter().position(|v| v.is_zero()) {
        return Err(QError::domain(format!(
            "(alpha q; q)_{j} vanishes for alpha = {alpha}"
        )));
    }
    let top = q_pochhammer_table(
        &(alpha.clone() * beta.clone() * ctx.qpow(n as i64)),
        ctx,
        big_n,
    );
    let mut coeffs = Vec::with_capacity(big_n + 1);
    coeffs.push(S::one() - alpha.clone());
    for k in 1..=big_n {
        let ki = k as i64;
        let e = ki * (ki + 1 - 2 * big_n as i64) / 2;
        let c = ctx.qpow(e) * q_binomial(big_n, k, ctx)? * top[k].clone() / aq[k - 1].clone();
        coeffs.push(if k % 2 == 1 { -c } else { c });
    }
    Ok(BivariatePolynomial::new(coeffs))
}

/// `a (bx - y) p_n(x,y) - (x - y) p_n(x/q,y) - (1 - a) p_(n+1)^(a/q,b/q)(x,y)`.
pub fn backward_shift_residual<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<Residual<S>> {
    let q = ctx.q().clone();
    let p = jacobi_bivariate(n, alpha, beta, ctx)?;
    let target = backward_shift_target(n, alpha, beta, ctx)?;
    let xq = x.clone() / q;
    let c1 = alpha.clone() * (beta.clone() * x.clone() - y.clone());
    let c2 = x.clone() - y.clone();
    let value =
        c1.clone() * p.evaluate(x, y) - c2.clone() * p.evaluate(&xq, y) - target.evaluate(x, y);
    let scale = c1.magnitude() * p.evaluate_abs(x, y)
        + c2.magnitude() * p.evaluate_abs(&xq, y)
        + target.evaluate_abs(x, y);
    Ok(Residual { value, scale })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRecord {
    pub ratio: f64,
    pub limit: f64,
    pub deviation: f64,
}

/// `p_n(x,y) / ((-x)^n q^(n(1-n)/2))` against `(y/x;q)_inf / (aq;q)_inf`.
///
/// The ratio is summed as
/// `sum_j (-y/x)^j q^(j(j-1)/2) [n,j] (ab q^(n+1);q)_(n-j) / (aq;q)_(n-j)`,
/// which avoids forming `p_n` itself.
pub fn asymptotic_ratio(
    n: usize,
    alpha: f64,
    beta: f64,
    x: f64,
    y: f64,
    ctx: &QContext<f64>,
) -> Result<AsymptoticRecord> {
    if x == 0.0 {
        return Err(QError::domain("the asymptotic formula needs x != 0"));
    }
    let q = *ctx.q();
    let qq = q_pochhammer_table(&q, ctx, n);
    let top = q_pochhammer_table(&(alpha * beta * q.powi(n as i32 + 1)), ctx, n);
    let aq = q_pochhammer_table(&(alpha * q), ctx, n);
    if let Some(j) = aq.iter().position(|v| *v == 0.0) {
        return Err(QError::domain(format!(
            "(alpha q; q)_{j} vanishes for alpha = {alpha}"
        )));
    }
    let z = -y / x;
    let mut ratio = 0.0;
    for j in 0..=n {
        let binom = qq[n] / (qq[j] * qq[n - j]);
        ratio +=
            z.powi(j as i32) * q.powf((j * j.saturating_sub(1) / 2) as f64) * binom * top[n - j]
                / aq[n - j];
    }
    let limit = q_pochhammer_inf(y / x, ctx)?.value / q_pochhammer_inf(alpha * q, ctx)?.value;
    let deviation = if limit == 0.0 {
        ratio.abs()
    } else {
        (ratio - limit).abs() / limit.abs()
    };
    Ok(AsymptoticRecord {
        ratio,
        limit,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn recurrence_variants_at_n_zero() {
        let ctx = QContext::exact(1, 3).unwrap();
        let (a, b) = (r(2, 1), r(3, 1));
        let (x, y) = (r(5, 7), r(11, 13));
        let std =
            recurrence_residual(0, &a, &b, &x, &y, RecurrenceVariant::StandardKS, &ctx).unwrap();
        assert!(std.value.is_zero());
        let printed =
            recurrence_residual(0, &a, &b, &x, &y, RecurrenceVariant::AsPrinted, &ctx).unwrap();
        let c0 = recurrence_coeffs(0, &a, &b, RecurrenceVariant::AsPrinted, &ctx)
            .unwrap()
            .c_n;
        let one = r(1, 1);
        assert_eq!(
            c0,
            a.clone() * (one.clone() - a.clone()) * (one.clone() - b.clone())
                / ((one.clone() - a.clone() * b.clone())
                    * (one - a.clone() * b.clone() * ctx.q().clone()))
        );
        // with p_(-1) = 0 the printed variant leaves y C_0 p_0
        assert_eq!(printed.value, y * c0);
    }

    #[test]
    fn recurrence_adjudication_picks_standard() {
        let ctx = QContext::exact(1, 3).unwrap();
        let winners = recurrence_adjudicate(8, &r(2, 1), &r(3, 1), &ctx).unwrap();
        assert_eq!(winners, vec![RecurrenceVariant::StandardKS]);
    }

    #[test]
    fn shift_relations_exact() {
        let ctx = QContext::exact(1, 3).unwrap();
        let (a, b) = (r(2, 1), r(3, 1));
        let (x, y) = (r(5, 7), r(11, 13));
        for n in 0..=8 {
            assert!(qdifference_residual(n, &a, &b, &x, &y, &ctx)
                .unwrap()
                .value
                .is_zero());
            assert!(backward_shift_residual(n, &a, &b, &x, &y, &ctx)
                .unwrap()
                .value
                .is_zero());
            if n >= 1 {
                assert!(forward_shift_residual(n, &a, &b, &x, &y, &ctx)
                    .unwrap()
                    .value
                    .is_zero());
            }
        }
        assert!(forward_shift_residual(0, &a, &b, &x, &y, &ctx).is_err());
        // x = 0: both differences vanish
        assert!(forward_shift_residual(3, &a, &b, &r(0, 1), &y, &ctx)
            .unwrap()
            .value
            .is_zero());
    }

    #[test]
    fn backward_shift_at_alpha_one() {
        let ctx = QContext::exact(1, 2).unwrap();
        let (a, b) = (r(1, 1), r(1, 1));
        let (x, y) = (r(3, 7), r(2, 5));
        for n in 0..=6 {
            let res = backward_shift_residual(n, &a, &b, &x, &y, &ctx).unwrap();
            assert!(res.value.is_zero(), "n = {n}");
            let target = backward_shift_target(n, &a, &b, &ctx).unwrap();
            assert_eq!(target.is_zero(), n == 0, "n = {n}");
        }
    }

    #[test]
    fn backward_target_matches_plain_family_off_alpha_one() {
        let ctx = QContext::exact(1, 3).unwrap();
        let (a, b) = (r(5, 2), r(3, 1));
        let q = ctx.q().clone();
        for n in 0..6 {
            let plain = jacobi_bivariate(
                n + 1,
                &(a.clone() / q.clone()),
                &(b.clone() / q.clone()),
                &ctx,
            )
            .unwrap();
            let reg = backward_shift_target(n, &a, &b, &ctx).unwrap();
            assert_eq!(plain.scale(&(r(1, 1) - a.clone())), reg);
        }
    }

    #[test]
    fn shift_relations_float() {
        let ctx = QContext::float(0.5).unwrap();
        let (a, b, x, y) = (0.3, 0.2, 0.7, 1.1);
        assert!(
            qdifference_residual(4, &a, &b, &x, &y, &ctx)
                .unwrap()
                .relative()
                <= 1e-11
        );
        assert!(
            forward_shift_residual(5, &a, &b, &x, &y, &ctx)
                .unwrap()
                .relative()
                <= 1e-11
        );
        assert!(
            backward_shift_residual(3, &a, &b, &x, &y, &ctx)
                .unwrap()
                .relative()
                <= 1e-11
        );
    }

    #[test]
    fn orthogonality_exact_lattice() {
        let ctx = QContext::exact(1, 2).unwrap();
        let (a, b, y) = (r(2, 5), r(3, 10), r(1, 1));
        for (m, n) in [(0, 0), (1, 1), (2, 3), (0, 4), (3, 3)] {
            let rec = orthogonality_check(m, n, &a, &b, &y, &ctx).unwrap();
            assert!(rec.deviation <= 1e-10, "({m},{n}) {rec:?}");
        }
        let rec = orthogonality_check(1, 1, &r(2, 5), &r(3, 10), &r(2, 1), &ctx).unwrap();
        let base = orthogonality_check(1, 1, &r(2, 5), &r(3, 10), &r(1, 1), &ctx).unwrap();
        assert!((rec.rhs - 4.0 * base.rhs).abs() <= 1e-14 * rec.rhs);
        assert!(orthogonality_check(0, 0, &r(3, 1), &b, &y, &ctx).is_err());
    }

    #[test]
    fn orthogonality_zero_zero_is_binomial_theorem() {
        let ctx = QContext::float(0.5).unwrap();
        let (a, b) = (0.4, 0.3);
        let rec = orthogonality_check(0, 0, &a, &b, &1.0, &ctx).unwrap();
        let oracle = q_pochhammer_inf(a * b * 0.25, &ctx).unwrap().value
            / q_pochhammer_inf(a * 0.5, &ctx).unwrap().value;
        assert!((rec.lhs - oracle).abs() <= 1e-14);
        assert!((rec.rhs - oracle).abs() <= 1e-14);
    }

    #[test]
    fn asymptotics() {
        let ctx = QContext::float(0.5).unwrap();
        let (a, b, x, y) = (0.3, 0.2, 1.0, 0.4);
        let d: Vec<f64> = [10, 20, 40, 80]
            .iter()
            .map(|&n| asymptotic_ratio(n, a, b, x, y, &ctx).unwrap().deviation)
            .collect();
        assert!(d[2] < d[1] && d[2] < 1e-4);
        // the ratio agrees with the polynomial itself at moderate degree
        let n = 12;
        let p = jacobi_bivariate(n, &a, &b, &ctx).unwrap();
        let rec = asymptotic_ratio(n, a, b, x, y, &ctx).unwrap();
        let direct =
            p.evaluate(&x, &y) / ((-x).powi(n as i32) * 0.5f64.powf(-((n * (n - 1)) as f64) / 2.0));
        assert!((rec.ratio - direct).abs() <= 1e-10 * direct.abs());
        // y = 0: p_n(x, 0) is its top coefficient times x^n
        let rec0 = asymptotic_ratio(n, a, b, x, 0.0, &ctx).unwrap();
        let top = q_pochhammer_table(&(a * b * 0.5f64.powi(n as i32 + 1)), &ctx, n)[n]
            / q_pochhammer_table(&(a * 0.5), &ctx, n)[n];
        assert!((rec0.ratio - top).abs() <= 1e-15);
        assert!((rec0.limit - 1.0 / q_pochhammer_inf(a * 0.5, &ctx).unwrap().value).abs() <= 1e-15);
        assert!(asymptotic_ratio(n, a, b, 0.0, y, &ctx).is_err());
    }
}
