//! Taylor grids and expansions in the q-Laguerre and little q-Jacobi bases.
//!
//! A function `f(x, y) = sum lambda_{m,n} x^m y^n` solving the family's
//! q-PDE is determined by its first row: every `lambda_{m,n}` is a fixed
//! multiple of `lambda_{0,n+m}`, and `f = sum_n lambda_{0,n} basis_n`.

use serde_json::{json, Value};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::poly::{q_power, BivariatePolynomial, FamilyParams};
use crate::scalar::{Mode, Scalar};
use crate::series::{q_binomial, q_pochhammer};

/// Default relative tolerance for float admissibility checks.
pub const DEFAULT_EXPAND_TOL: f64 = 1e-9;

/// `entries[m][n]` is the coefficient of `x^m y^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorGrid<S> {
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> TaylorGrid<S> {
    pub fn new(entries: Vec<Vec<S>>) -> Result<Self> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(QError::Parse(
                "Taylor grid must have at least one row and one column".into(),
            ));
        }
        let cols = entries[0].len();
        if let Some(m) = entries.iter().position(|row| row.len() != cols) {
            return Err(QError::Parse(format!(
                "Taylor grid row {m} has {} entries, expected {cols}",
                entries[m].len()
            )));
        }
        Ok(TaylorGrid { entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![vec![S::zero(); cols]; rows])
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&S> {
        self.entries.get(m).and_then(|row| row.get(n))
    }

    pub fn set(&mut self, m: usize, n: usize, value: S) -> Result<()> {
        let (rows, cols) = (self.rows(), self.cols());
        let slot = self
            .entries
            .get_mut(m)
            .and_then(|row| row.get_mut(n))
            .ok_or_else(|| QError::Index(format!("({m}, {n}) outside a {rows}x{cols} grid")))?;
        *slot = value;
        Ok(())
    }

    pub fn entries(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn first_row(&self) -> &[S] {
        &self.entries[0]
    }

    /// Degree-`d` homogeneous part `sum_k lambda_{k,d-k} x^k y^(d-k)`, when
    /// the grid holds all of it.
    pub fn homogeneous_part(&self, d: usize) -> Option<BivariatePolynomial<S>> {
        if d >= self.rows().min(self.cols()) {
            return None;
        }
        let coeffs = (0..=d).map(|k| self.entries[k][d - k].clone()).collect();
        Some(BivariatePolynomial::new(coeffs))
    }

    /// Adds a homogeneous polynomial into the grid, dropping terms that fall
    /// outside it.
    pub fn add_polynomial(&mut self, p: &BivariatePolynomial<S>, scale: &S) {
        let c = p.coeffs();
        if c.is_empty() {
            return;
        }
        let d = c.len() - 1;
        for (k, ck) in c.iter().enumerate() {
            if k < self.rows() && d - k < self.cols() {
                let cell = &mut self.entries[k][d - k];
                *cell = cell.clone() + ck.clone() * scale.clone();
            }
        }
    }

    /// `{"rows", "cols", "entries"}` with numbers in float mode and strings in
    /// exact mode.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| v.to_json()).collect()))
            .collect();
        json!({ "rows": self.rows(), "cols": self.cols(), "entries": entries })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| QError::Parse("Taylor grid must be a JSON object".into()))?;
        let count = |key: &str| -> Result<usize> {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| {
                    QError::Parse(format!("Taylor grid needs a non-negative integer '{key}'"))
                })
        };
        let rows = count("rows")?;
        let cols = count("cols")?;
        let raw = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| QError::Parse("Taylor grid needs an 'entries' array".into()))?;
        if raw.len() != rows {
            return Err(QError::Parse(format!(
                "'rows' is {rows} but 'entries' has {} rows",
                raw.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows);
        for (m, row) in raw.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| QError::Parse(format!("row {m} of 'entries' is not an array")))?;
            if row.len() != cols {
                return Err(QError::Parse(format!(
                    "row {m} has {} entries but 'cols' is {cols}",
                    row.len()
                )));
            }
            entries.push(row.iter().map(S::from_json).collect::<Result<Vec<S>>>()?);
        }
        Self::new(entries)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| QError::Parse(format!("Taylor grid JSON: {e}")))?;
        Self::from_json(&value)
    }
}

fn first_row_entry<S: Scalar>(lambda0: &[S], j: usize) -> Result<S> {
    lambda0.get(j).cloned().ok_or_else(|| {
        QError::Index(format!(
            "lambda_(0,{j}) needed but only {} first-row entries given",
            lambda0.len()
        ))
    })
}

fn sign<S: Scalar>(m: usize) -> S {
    if m % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// `lambda_{m,n} = lambda_{0,n+m} (-1)^m [n+m, m] q^(m^2 + m alpha) / (q^(alpha+1); q)_m`.
pub fn laguerre_lambda<S: Scalar>(
    m: usize,
    n: usize,
    lambda0: &[S],
    alpha: &S,
    ctx: &QContext<S>,
) -> Result<S> {
    let base = first_row_entry(lambda0, n + m)?;
    if m == 0 {
        return Ok(base);
    }
    let qa = q_power(alpha, ctx)?;
    let qm = ctx.qpow((m * m) as i64) * qa.powi(m as i64);
    let den = q_pochhammer(&(qa * ctx.q().clone()), ctx, m);
    Ok(base * sign::<S>(m) * q_binomial(n + m, m, ctx)? * qm / den)
}

/// `lambda_{m,n} = lambda_{0,n+m} (-1)^m q^(m(1-2n-m)/2) [n+m, m]
/// (alpha beta q^(m+n+1); q)_m / (alpha q; q)_m`.
pub fn jacobi_lambda<S: Scalar>(
    m: usize,
    n: usize,
    lambda0: &[S],
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<S> {
    let base = first_row_entry(lambda0, n + m)?;
    if m == 0 {
        return Ok(base);
    }
    let den = q_pochhammer(&(alpha.clone() * ctx.q().clone()), ctx, m);
    if den.is_zero() {
        return Err(QError::domain(format!(
            "(alpha q; q)_{m} vanishes for alpha = {alpha}"
        )));
    }
    let (mi, ni) = (m as i64, n as i64);
    let e = mi * (1 - 2 * ni - mi) / 2;
    let num = q_pochhammer(
        &(alpha.clone() * beta.clone() * ctx.qpow(mi + ni + 1)),
        ctx,
        m,
    );
    Ok(base * sign::<S>(m) * ctx.qpow(e) * q_binomial(n + m, m, ctx)? * num / den)
}

/// One step of the Laguerre recurrence, `lambda_{m,n}` from `lambda_{m-1,n+1}`:
/// `-q^(alpha+1) q^(2(m-1)) (1 - q^(n+1)) / ((1 - q^(alpha+m)) (1 - q^m))`.
pub fn laguerre_lambda_step<S: Scalar>(
    m: usize,
    n: usize,
    prev: &S,
    alpha: &S,
    ctx: &QContext<S>,
) -> Result<S> {
    if m == 0 {
        return Err(QError::Index("the one-step relation needs m >= 1".into()));
    }
    let qa = q_power(alpha, ctx)?;
    let mi = m as i64;
    let num = qa.clone() * ctx.qpow(2 * mi - 1) * (S::one() - ctx.qpow(n as i64 + 1));
    let den = (S::one() - qa * ctx.qpow(mi)) * (S::one() - ctx.qpow(mi));
    Ok(-(prev.clone() * num / den))
}

/// One step of the Jacobi recurrence:
/// `-q (1 - q^(n+1)) (q^-(n+1) - alpha beta q^(2(m-1)+1)) / ((1 - q^m)(1 - alpha q^m))`.
pub fn jacobi_lambda_step<S: Scalar>(
    m: usize,
    n: usize,
    prev: &S,
    alpha: &S,
    beta: &S,
    ctx: &QContext<S>,
) -> Result<S> {
    if m == 0 {
        return Err(QError::Index("the one-step relation needs m >= 1".into()));
    }
    let (mi, ni) = (m as i64, n as i64);
    let den = (S::one() - ctx.qpow(mi)) * (S::one() - alpha.clone() * ctx.qpow(mi));
    if den.is_zero() {
        return Err(QError::domain(format!(
            "1 - alpha q^{m} vanishes for alpha = {alpha}"
        )));
    }
    let num = ctx.q().clone()
        * (S::one() - ctx.qpow(ni + 1))
        * (ctx.qpow(-(ni + 1)) - alpha.clone() * beta.clone() * ctx.qpow(2 * mi - 1));
    Ok(-(prev.clone() * num / den))
}

/// Predicted `lambda_{m,n}` for any family.
pub fn family_lambda<S: Scalar>(
    m: usize,
    n: usize,
    lambda0: &[S],
    family: &FamilyParams<S>,
    ctx: &QContext<S>,
) -> Result<S> {
    match family {
        FamilyParams::QLaguerre { alpha } => laguerre_lambda(m, n, lambda0, alpha, ctx),
        _ => {
            let (a, b) = family.jacobi_params().expect("jacobi-type family");
            jacobi_lambda(m, n, lambda0, &a, &b, ctx)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionResult<S> {
    /// `lambda_{0,n}`, the candidate expansion coefficients.
    pub coeffs: Vec<S>,
    pub admissible: bool,
    /// Largest `|grid - predicted| / max(1, |predicted|)`.
    pub max_violation: f64,
    pub max_violation_at: Option<(usize, usize)>,
}

impl<S: Scalar> ExpansionResult<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "admissible": self.admissible,
            "max_violation": self.max_violation,
            "max_violation_at": self.max_violation_at.map(|(m, n)| json!([m, n])),
        })
    }
}

/// Reads the expansion coefficients off the first row and checks every
/// entry `(m, n)` with `m + n < cols` against the family's closed form.
///
/// Exact mode admits a grid only on strict equality; float mode compares the
/// largest relative violation against `tol`.
pub fn expand<S: Scalar>(
    grid: &TaylorGrid<S>,
    family: &FamilyParams<S>,
    ctx: &QContext<S>,
    tol: f64,
) -> Result<ExpansionResult<S>> {
    let lambda0 = grid.first_row();
    let mut max_violation = 0.0f64;
    let mut max_at = None;
    let mut all_equal = true;
    for m in 1..grid.rows() {
        for n in 0..grid.cols() {
            if m + n >= grid.cols() {
                break;
            }
            let predicted = family_lambda(m, n, lambda0, family, ctx)?;
            let actual = &grid.entries[m][n];
            if *actual != predicted {
                all_equal = false;
            }
            let diff = (actual.clone() - predicted.clone()).magnitude();
            let violation = diff / predicted.magnitude().max(1.0);
            if violation > max_violation || (max_at.is_none() && *actual != predicted) {
                max_violation = violation;
                max_at = Some((m, n));
            }
        }
    }
    let admissible = match S::MODE {
        Mode::Exact => all_equal,
        Mode::Float => max_violation <= tol,
    };
    Ok(ExpansionResult {
        coeffs: lambda0.to_vec(),
        admissible,
        max_violation,
        max_violation_at: max_at,
    })
}

/// Grid of `sum_n coeffs_n basis_n` truncated to `(m_max + 1) x (n_max + 1)`.
pub fn synthesize<S: Scalar>(
    coeffs: &[S],
    family: &FamilyParams<S>,
    m_max: usize,
    n_max: usize,
    ctx: &QContext<S>,
) -> Result<TaylorGrid<S>> {
    let mut grid = TaylorGrid::zeros(m_max + 1, n_max + 1)?;
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = family.basis(n, ctx)?;
        grid.add_polynomial(&basis, c);
    }
    Ok(grid)
}
