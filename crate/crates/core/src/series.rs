//! Scalar q-arithmetic: shifted factorials, Gaussian binomials, infinite
//! products and the basic hypergeometric series `r phi s`.

use crate::context::{QContext, TruncationPolicy};
use crate::error::{QError, Result};
use crate::scalar::Scalar;

/// Relative threshold below which `1 - a q^n` counts as zero in float mode.
pub const TERMINATION_REL_TOL: f64 = 1e-14;

/// Value of a (possibly truncated) series or product.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum<S> {
    pub value: S,
    /// Estimated absolute error (tail plus rounding). Zero for exact sums.
    pub error: f64,
    /// Number of terms (or factors) used.
    pub terms: usize,
    /// True when an upper parameter `q^{-m}` ended the series.
    pub terminated: bool,
}

/// Applies the stopping rule and the divergence heuristic to a stream of
/// term magnitudes.
#[derive(Debug)]
pub(crate) struct TailMonitor {
    policy: TruncationPolicy,
    small_run: usize,
    grow_run: usize,
    last: f64,
    prev: f64,
}

pub(crate) enum Step {
    Continue,
    Converged,
}

impl TailMonitor {
    pub(crate) fn new(policy: TruncationPolicy) -> Self {
        TailMonitor {
            policy,
            small_run: 0,
            grow_run: 0,
            last: f64::NAN,
            prev: f64::NAN,
        }
    }

    /// `index` is the position of the term just added.
    pub(crate) fn observe(&mut self, index: usize, term: f64, sum: f64) -> Result<Step> {
        if term <= self.policy.tail_tol * (1.0 + sum) {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        if index > 20 && term > self.last && !self.last.is_nan() {
            self.grow_run += 1;
            if self.grow_run >= self.policy.consecutive_small {
                return Err(QError::DivergenceSuspected { term: index });
            }
        } else {
            self.grow_run = 0;
        }
        self.prev = self.last;
        self.last = term;
        if self.small_run >= self.policy.consecutive_small {
            Ok(Step::Converged)
        } else {
            Ok(Step::Continue)
        }
    }

    /// Geometric estimate of the neglected tail from the last two terms.
    pub(crate) fn tail_estimate(&self) -> f64 {
        if self.last.is_nan() {
            return 0.0;
        }
        if self.prev.is_nan() || self.prev == 0.0 {
            return self.last;
        }
        let ratio = self.last / self.prev;
        if ratio < 1.0 {
            self.last * ratio / (1.0 - ratio)
        } else {
            self.last
        }
    }
}

/// `(a;q)_n = prod_{k<n} (1 - a q^k)`.
pub fn q_pochhammer<S: Scalar>(a: &S, ctx: &QContext<S>, n: usize) -> S {
    let q = ctx.q();
    let mut acc = S::one();
    let mut aqk = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aqk.clone());
        aqk = aqk * q.clone();
    }
    acc
}

/// `(a;q)_0, (a;q)_1, ..., (a;q)_n`.
pub fn q_pochhammer_table<S: Scalar>(a: &S, ctx: &QContext<S>, n: usize) -> Vec<S> {
    let q = ctx.q();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = S::one();
    let mut aqk = a.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc = acc * (S::one() - aqk.clone());
        aqk = aqk * q.clone();
        out.push(acc.clone());
    }
    out
}

/// `(a;q)_inf`, truncated once `|a q^k| < tail_tol` for `consecutive_small`
/// successive factors.
pub fn q_pochhammer_inf(a: f64, ctx: &QContext<f64>) -> Result<SeriesSum<f64>> {
    let q = *ctx.q();
    let policy = ctx.trunc;
    let mut product = 1.0;
    let mut aqk = a;
    let mut run = 0;
    let mut k = 0;
    loop {
        if k >= policy.max_terms {
            return Err(QError::TruncationExceeded { terms: k });
        }
        product *= 1.0 - aqk;
        k += 1;
        aqk *= q;
        if aqk.abs() < policy.tail_tol {
            run += 1;
            if run >= policy.consecutive_small {
                break;
            }
        } else {
            run = 0;
        }
    }
    // log-remainder: sum_{j>=k} |a| q^j / (1 - |a| q^j) <= s / ((1 - q)(1 - s)), s = |a| q^k
    let s = aqk.abs();
    let log_tail = s / ((1.0 - q) * (1.0 - s));
    let error = product.abs() * (log_tail.exp_m1() + f64::EPSILON * k as f64);
    Ok(SeriesSum {
        value: product,
        error,
        terms: k,
        terminated: false,
    })
}

/// Gaussian binomial `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial<S: Scalar>(n: usize, k: usize, ctx: &QContext<S>) -> Result<S> {
    if k > n {
        return Err(QError::domain(format!(
            "q-binomial [{n}, {k}] needs k <= n"
        )));
    }
    let table = q_pochhammer_table(ctx.q(), ctx, n);
    Ok(table[n].clone() / (table[k].clone() * table[n - k].clone()))
}

/// Same coefficient via `prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)`.
pub fn q_binomial_product<S: Scalar>(n: usize, k: usize, ctx: &QContext<S>) -> Result<S> {
    if k > n {
        return Err(QError::domain(format!(
            "q-binomial [{n}, {k}] needs k <= n"
        )));
    }
    let mut acc = S::one();
    for i in 1..=k {
        let num = S::one() - ctx.qpow((n - k + i) as i64);
        let den = S::one() - ctx.qpow(i as i64);
        acc = acc * num / den;
    }
    Ok(acc)
}

/// A basic hypergeometric series `r phi s (a_1..a_r; b_1..b_s; q, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSeries<S> {
    pub upper: Vec<S>,
    pub lower: Vec<S>,
    pub z: S,
}

impl<S: Scalar> HyperSeries<S> {
    pub fn new(upper: Vec<S>, lower: Vec<S>, z: S) -> Self {
        HyperSeries { upper, lower, z }
    }

    /// Exponent `1 + s - r` on `(-1)^n q^{n(n-1)/2}`.
    pub fn balance_exponent(&self) -> i64 {
        1 + self.lower.len() as i64 - self.upper.len() as i64
    }
}

/// Sums `r phi s` for `n = 0..=n_max` with the term-ratio recursion.
///
/// The sum ends early when an upper parameter equals `q^{-m}` (the series
/// terminates at `n = m`) or, in float mode, when the stopping rule fires.
pub fn phi_series<S: Scalar>(
    spec: &HyperSeries<S>,
    ctx: &QContext<S>,
    n_max: usize,
) -> Result<SeriesSum<S>> {
    let q = ctx.q().clone();
    let policy = ctx.trunc;
    let exact = S::MODE == crate::scalar::Mode::Exact;
    let exponent = spec.balance_exponent();

    let mut term = S::one();
    let mut sum = S::one();
    let mut abs_sum = 1.0;
    let mut monitor = TailMonitor::new(policy);
    let mut qn = S::one();
    let mut n = 0usize;
    let mut terminated = false;
    let mut converged = false;

    while n < n_max {
        if n + 1 >= policy.max_terms {
            return Err(QError::TruncationExceeded { terms: n + 1 });
        }
        let mut ratio = S::one();
        for a in &spec.upper {
            let factor = S::one() - a.clone() * qn.clone();
            if factor.near_zero(TERMINATION_REL_TOL) {
                terminated = true;
                break;
            }
            ratio = ratio * factor;
        }
        if terminated {
            break;
        }
        for b in &spec.lower {
            let factor = S::one() - b.clone() * qn.clone();
            if factor.is_zero() {
                return Err(QError::domain(format!(
                    "lower parameter {b} makes (b;q)_{} vanish",
                    n + 1
                )));
            }
            ratio = ratio / factor;
        }
        let qn1 = qn.clone() * q.clone();
        ratio = ratio / (S::one() - qn1.clone());
        if exponent != 0 {
            ratio = ratio * (-qn.clone()).powi(exponent);
        }
        term = term * ratio * spec.z.clone();
        sum = sum + term.clone();
        n += 1;
        qn = qn1;

        if !exact {
            let mag = term.magnitude();
            abs_sum += mag;
            if !mag.is_finite() {
                return Err(QError::DivergenceSuspected { term: n });
            }
            if let Step::Converged = monitor.observe(n, mag, sum.magnitude())? {
                converged = true;
                break;
            }
        }
    }

    let error = if exact {
        0.0
    } else if terminated {
        f64::EPSILON * abs_sum
    } else if converged {
        monitor.tail_estimate() + f64::EPSILON * abs_sum
    } else {
        // stopped at the caller's n_max
        monitor.tail_estimate().max(term.magnitude()) + f64::EPSILON * abs_sum
    };
    Ok(SeriesSum {
        value: sum,
        error,
        terms: n + 1,
        terminated,
    })
}

/// [`phi_series`] with the context's `max_terms` as the only cap.
pub fn phi_series_auto<S: Scalar>(
    spec: &HyperSeries<S>,
    ctx: &QContext<S>,
) -> Result<SeriesSum<S>> {
    phi_series(spec, ctx, ctx.trunc.max_terms)
}
