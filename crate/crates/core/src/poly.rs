//! Homogeneous bivariate polynomials and the two polynomial families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::scalar::Scalar;
use crate::series::{q_binomial, q_pochhammer, q_pochhammer_table, TERMINATION_REL_TOL};

/// `sum_k c_k x^k y^(n-k)`. The zero polynomial has no coefficients and
/// degree -1.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> BivariatePolynomial<S> {
    /// Coefficient vector `c_0..c_n`; its length fixes the degree.
    pub fn new(coeffs: Vec<S>) -> Self {
        BivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        BivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        BivariatePolynomial { coeffs: vec![c] }
    }

    /// `x^k y^(n-k)`.
    pub fn monomial(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(QError::domain(format!(
                "monomial x^{k} y^(n-k) needs k <= n = {n}"
            )));
        }
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[k] = S::one();
        Ok(BivariatePolynomial { coeffs })
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// True for the empty polynomial and for any all-zero coefficient vector.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, x: &S, y: &S) -> S {
        let n = self.coeffs.len();
        if n == 0 {
            return S::zero();
        }
        let deg = (n - 1) as i64;
        if x.is_zero() {
            return self.coeffs[0].clone() * y.powi(deg);
        }
        if y.is_zero() {
            return self.coeffs[n - 1].clone() * x.powi(deg);
        }
        if y.abs() >= x.abs() {
            let t = x.clone() / y.clone();
            let mut acc = S::zero();
            for c in self.coeffs.iter().rev() {
                acc = acc * t.clone() + c.clone();
            }
            acc * y.powi(deg)
        } else {
            let u = y.clone() / x.clone();
            let mut acc = S::zero();
            for c in self.coeffs.iter() {
                acc = acc * u.clone() + c.clone();
            }
            acc * x.powi(deg)
        }
    }

    /// `sum_k |c_k| |x|^k |y|^(n-k)`, a scale for residuals.
    pub fn evaluate_abs(&self, x: &S, y: &S) -> f64 {
        let abs = BivariatePolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.magnitude())
                .collect::<Vec<f64>>(),
        };
        abs.evaluate(&x.magnitude(), &y.magnitude())
    }

    fn check_same_degree(&self, other: &Self) -> Result<()> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() || self.degree() == other.degree() {
            Ok(())
        } else {
            Err(QError::domain(format!(
                "cannot combine homogeneous polynomials of degrees {} and {}",
                self.degree(),
                other.degree()
            )))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        self.check_same_degree(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
        let coeffs = (0..n)
            .map(|i| f(get(&self.coeffs, i), get(&other.coeffs, i)))
            .collect();
        Ok(BivariatePolynomial { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product of two homogeneous polynomials; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return BivariatePolynomial::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BivariatePolynomial { coeffs }
    }

    /// Largest coefficient magnitude, 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> BivariatePolynomial<f64> {
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for BivariatePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let n = self.coeffs.len() - 1;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match k {
                0 => {}
                1 => f.write_str("*x")?,
                _ => write!(f, "*x^{k}")?,
            }
            match n - k {
                0 => {}
                1 => f.write_str("*y")?,
                e => write!(f, "*y^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A polynomial family with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams<S> {
    QLaguerre { alpha: S },
    LittleQJacobi { alpha: S, beta: S },
    LittleQLegendre,
    LittleQLaguerre { alpha: S },
}

impl<S: Scalar> FamilyParams<S> {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::QLaguerre { .. } => "laguerre",
            FamilyParams::LittleQJacobi { .. } => "jacobi",
            FamilyParams::LittleQLegendre => "legendre",
            FamilyParams::LittleQLaguerre { .. } => "wall",
        }
    }

    /// Builds a family from its short name and textual parameters.
    pub fn from_name(name: &str, alpha: Option<&str>, beta: Option<&str>) -> Result<Self> {
        let need = |v: Option<&str>, what: &str| -> Result<S> {
            let s = v.ok_or_else(|| QError::Parse(format!("family '{name}' needs --{what}")))?;
            S::parse_str(s)
        };
        match name.to_ascii_lowercase().as_str() {
            "laguerre" => Ok(FamilyParams::QLaguerre {
                alpha: need(alpha, "alpha")?,
            }),
            "jacobi" => Ok(FamilyParams::LittleQJacobi {
                alpha: need(alpha, "alpha")?,
                beta: need(beta, "beta")?,
            }),
            "legendre" => Ok(FamilyParams::LittleQLegendre),
            "wall" => Ok(FamilyParams::LittleQLaguerre {
                alpha: need(alpha, "alpha")?,
            }),
            other => Err(QError::Parse(format!(
                "unknown family '{other}' (expected laguerre, jacobi, legendre or wall)"
            ))),
        }
    }

    /// `(alpha, beta)` of the underlying little q-Jacobi family, if any.
    pub fn jacobi_params(&self) -> Option<(S, S)> {
        match self {
            FamilyParams::QLaguerre { .. } => None,
            FamilyParams::LittleQJacobi { alpha, beta } => Some((alpha.clone(), beta.clone())),
            FamilyParams::LittleQLegendre => Some((S::one(), S::one())),
            FamilyParams::LittleQLaguerre { alpha } => Some((alpha.clone(), S::zero())),
        }
    }

    /// Degree-`n` member of the family.
    pub fn basis(&self, n: usize, ctx: &QContext<S>) -> Result<BivariatePolynomial<S>> {
        specialize(self, n, ctx)
    }
}

/// `q^alpha`, rejecting non-integer exponents in exact mode.
pub(crate) fn q_power<S: Scalar>(alpha: &S, ctx: &QContext<S>) -> Result<S> {
    ctx.qpow_real(alpha)
}

fn check_laguerre_alpha<S: Scalar>(alpha: &S) -> Result<()> {
    if !(alpha.clone() > -S::one()) {
        return Err(QError::domain(format!(
            "q-Laguerre needs alpha > -1, got {alpha}"
        )));
    }
    Ok(())
}

/// `L_n^(alpha)(x, y)`: `c_k = (-1)^k [n,k] q^(k^2 + k alpha) / (q^(alpha+1); q)_k`.
pub fn laguerre_bivariate<S: Scalar>(
    n: usize,
    alpha: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    check_laguerre_alpha(alpha)?;
    let qa = q_power(alpha, ctx)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = S::one();
    coeffs.push(c.clone());
    for k in 1..=n {
        let qk = ctx.qpow(k as i64);
        let num =
            (S::one() - ctx.qpow((n - k + 1) as i64)) * ctx.qpow(2 * k as i64 - 1) * qa.clone();
        let den = (S::one() - qk.clone()) * (S::one() - qa.clone() * qk);
        c = -(c * num / den);
        coeffs.push(c.clone());
    }
    Ok(BivariatePolynomial::new(coeffs))
}

fn check_jacobi_alpha<S: Scalar>(n: usize, alpha: &S, ctx: &QContext<S>) -> Result<()> {
    for j in 1..=n {
        if (S::one() - alpha.clone() * ctx.qpow(j as i64)).near_zero(TERMINATION_REL_TOL) {
            return Err(QError::domain(format!(
                "alpha = {alpha} makes 1 - alpha q^{j} vanish (degenerate little q-Jacobi family)"
            )));
        }
    }
    Ok(())
}

/// `p_n^(alpha,beta)(x, y)`:
/// `c_k = (-1)^k q^(k(k+1-2n)/2) [n,k] (alpha beta q^(n+1); q)_k / (alpha q; q)_k`.
pub fn jacobi_bivariate<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    check_jacobi_alpha(n, alpha, ctx)?;
    let ab = alpha.clone() * beta.clone();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = S::one();
    coeffs.push(c.clone());
    for k in 1..=n {
        let qk = ctx.qpow(k as i64);
        let num = ctx.qpow(k as i64 - n as i64)
            * (S::one() - ctx.qpow((n - k + 1) as i64))
            * (S::one() - ab.clone() * ctx.qpow((n + k) as i64));
        let den = (S::one() - qk.clone()) * (S::one() - alpha.clone() * qk);
        c = -(c * num / den);
        coeffs.push(c.clone());
    }
    Ok(BivariatePolynomial::new(coeffs))
}

/// `q^(n(n-1)/2) p_n^(alpha,beta)(x, y)`, whose coefficients
/// `(-1)^k q^((n-k)(n-k-1)/2) [n,k] (alpha beta q^(n+1); q)_k / (alpha q; q)_k`
/// stay bounded for large `n` where the plain coefficients overflow.
pub fn jacobi_bivariate_scaled<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    check_jacobi_alpha(n, alpha, ctx)?;
    let qq = q_pochhammer_table(ctx.q(), ctx, n);
    let top = q_pochhammer_table(
        &(alpha.clone() * beta.clone() * ctx.qpow(n as i64 + 1)),
        ctx,
        n,
    );
    let aq = q_pochhammer_table(&(alpha.clone() * ctx.q().clone()), ctx, n);
    let coeffs = (0..=n)
        .map(|k| {
            let m = (n - k) as i64;
            let binom = qq[n].clone() / (qq[k].clone() * qq[n - k].clone());
            let c = ctx.qpow(m * (m - 1) / 2) * binom * top[k].clone() / aq[k].clone();
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(BivariatePolynomial::new(coeffs))
}

/// `(alpha q; q)_n p_n^(alpha,beta)(x, y)`:
/// `c_k = (-1)^k q^(k(k+1-2n)/2) [n,k] (alpha beta q^(n+1); q)_k (alpha q^(k+1); q)_(n-k)`.
///
/// Defined for every `alpha`, including the values where `p_n` has a pole.
pub fn jacobi_bivariate_cleared<S: Scalar>(
    n: usize,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    let top = q_pochhammer_table(
        &(alpha.clone() * beta.clone() * ctx.qpow(n as i64 + 1)),
        ctx,
        n,
    );
    let coeffs = (0..=n)
        .map(|k| {
            let kk = k as i64;
            let tail = q_pochhammer(&(alpha.clone() * ctx.qpow(kk + 1)), ctx, n - k);
            let c = ctx.qpow(kk * (kk + 1 - 2 * n as i64) / 2)
                * q_binomial(n, k, ctx)?
                * top[k].clone()
                * tail;
            Ok(if k % 2 == 1 { -c } else { c })
        })
        .collect::<Result<Vec<S>>>()?;
    Ok(BivariatePolynomial::new(coeffs))
}

/// Degree-`n` member of any family; Legendre is `alpha = beta = 1`, Wall is
/// `beta = 0`.
pub fn specialize<S: Scalar>(
    params: &FamilyParams<S>,
    n: usize,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    match params {
        FamilyParams::QLaguerre { alpha } => laguerre_bivariate(n, alpha, ctx),
        _ => {
            let (alpha, beta) = params.jacobi_params().expect("jacobi-type family");
            jacobi_bivariate(n, &alpha, &beta, ctx)
        }
    }
}

/// `curly L_n^(alpha)(x) = (q^(alpha+1); q)_n / (q; q)_n * L_n^(alpha)(x, 1)`.
pub fn univariate_laguerre<S: Scalar>(n: usize, alpha: &S, x: &S, ctx: &QContext<S>) -> Result<S> {
    let p = laguerre_bivariate(n, alpha, ctx)?;
    let qa1 = q_power(alpha, ctx)? * ctx.q().clone();
    let num = q_pochhammer_table(&qa1, ctx, n);
    let den = q_pochhammer_table(ctx.q(), ctx, n);
    Ok(num[n].clone() / den[n].clone() * p.evaluate(x, &S::one()))
}
