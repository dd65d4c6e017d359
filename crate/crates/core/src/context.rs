use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::scalar::{Mode, Rational, Scalar};

/// Environment variable that overrides [`TruncationPolicy::max_terms`].
pub const MAX_TERMS_ENV: &str = "QKERNEL_MAX_TERMS";

/// Controls when infinite series and products are cut off.
///
/// A sum stops once `consecutive_small` successive terms satisfy
/// `|term| <= tail_tol * (1 + |partial sum|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_terms: usize,
    pub tail_tol: f64,
    pub consecutive_small: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_terms: 10_000,
            tail_tol: 1e-16,
            consecutive_small: 3,
        }
    }
}

impl TruncationPolicy {
    pub fn new(max_terms: usize, tail_tol: f64, consecutive_small: usize) -> Result<Self> {
        let policy = TruncationPolicy {
            max_terms,
            tail_tol,
            consecutive_small,
        };
        policy.validate()?;
        Ok(policy)
    }

    /// Default policy with `max_terms` taken from `QKERNEL_MAX_TERMS` when set.
    pub fn from_env() -> Result<Self> {
        let mut policy = TruncationPolicy::default();
        if let Ok(raw) = std::env::var(MAX_TERMS_ENV) {
            policy.max_terms = raw
                .trim()
                .parse()
                .map_err(|_| QError::Parse(format!("{MAX_TERMS_ENV}='{raw}' is not a count")))?;
        }
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(QError::domain("max_terms must be at least 1"));
        }
        if !(self.tail_tol > 0.0) {
            return Err(QError::domain("tail_tol must be positive"));
        }
        if self.consecutive_small < 2 {
            return Err(QError::domain("consecutive_small must be at least 2"));
        }
        Ok(())
    }
}

/// Base `q` plus truncation policy. The arithmetic mode is the scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext<S> {
    q: S,
    pub trunc: TruncationPolicy,
}

impl<S: Scalar> QContext<S> {
    pub fn new(q: S) -> Result<Self> {
        Self::with_policy(q, TruncationPolicy::from_env()?)
    }

    pub fn with_policy(q: S, trunc: TruncationPolicy) -> Result<Self> {
        if !(q > S::zero() && q < S::one()) {
            return Err(QError::domain(format!("q must lie in (0, 1), got {q}")));
        }
        trunc.validate()?;
        Ok(QContext { q, trunc })
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    /// `q^k` for integer `k`.
    pub fn qpow(&self, k: i64) -> S {
        self.q.powi(k)
    }

    /// `q^e` for a real exponent; exact mode requires `e` integral.
    pub fn qpow_real(&self, e: &S) -> Result<S> {
        self.q.pow_real(e)
    }

    /// Float copy of this context, used for the infinite products that only
    /// exist in floating point.
    pub fn to_float(&self) -> QContext<f64> {
        QContext {
            q: self.q.to_f64(),
            trunc: self.trunc,
        }
    }
}

impl QContext<f64> {
    pub fn float(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl QContext<Rational> {
    pub fn exact(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(QError::domain("zero denominator for q"));
        }
        Self::new(Rational::from_ratio(num, den))
    }
}
