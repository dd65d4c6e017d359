//! Arithmetic backends.
//!
//! Every algorithm in the crate is written once against [`Scalar`] and runs
//! either on `f64` or on exact arbitrary-precision rationals ([`Rational`]).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Exact rational numbers backed by big integers.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(QError::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Exact conversion of the binary value in exact mode.
    fn from_f64(v: f64) -> Result<Self>;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// Integer power; negative exponents invert.
    fn powi(&self, e: i64) -> Self;
    /// Real power. Exact mode only accepts integer exponents.
    fn pow_real(&self, e: &Self) -> Result<Self>;
    fn as_integer(&self) -> Option<i64>;
    /// Parses integers, decimals (`0.25`, `1e-3`) and fractions (`3/4`).
    fn parse_str(s: &str) -> Result<Self>;
    /// JSON form: numbers in float mode, strings in exact mode.
    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => Self::parse_str(s),
            serde_json::Value::Number(n) => Self::parse_str(&n.to_string()),
            other => Err(QError::Parse(format!(
                "expected a number or numeric string, got {other}"
            ))),
        }
    }

    /// Zero test used for terminating-series detection: exact in exact mode,
    /// `|self| <= rel` in float mode.
    fn near_zero(&self, rel: f64) -> bool;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn signum_f64(&self) -> f64 {
        let v = self.to_f64();
        if v == 0.0 {
            0.0
        } else {
            v.signum()
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64(v: f64) -> Result<Self> {
        Ok(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, e: i64) -> Self {
        match i32::try_from(e) {
            Ok(e) => f64::powi(*self, e),
            Err(_) => f64::powf(*self, e as f64),
        }
    }
    fn pow_real(&self, e: &Self) -> Result<Self> {
        if let Some(k) = e.as_integer() {
            return Ok(self.powi(k));
        }
        if *self <= 0.0 {
            return Err(QError::domain(format!(
                "non-integer power {e} of non-positive base {self}"
            )));
        }
        Ok((e * self.ln()).exp())
    }
    fn as_integer(&self) -> Option<i64> {
        if self.is_finite() && self.fract() == 0.0 && f64::abs(*self) < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }
    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| QError::Parse(format!("bad numerator in '{s}'")))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| QError::Parse(format!("bad denominator in '{s}'")))?;
            return Ok(n / d);
        }
        s.parse()
            .map_err(|_| QError::Parse(format!("cannot parse '{s}' as a number")))
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(*self)
    }
    fn near_zero(&self, rel: f64) -> bool {
        f64::abs(*self) <= rel
    }
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || QError::Parse(format!("cannot parse '{s}' as an exact number"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut value = Rational::from_integer(numer) * ten.powi(scale);
    if negative {
        value = -value;
    }
    Ok(value)
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(v: f64) -> Result<Self> {
        Rational::from_float(v)
            .ok_or_else(|| QError::domain(format!("{v} has no exact rational value")))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            num_traits::pow::Pow::pow(self, e as u64)
        } else {
            num_traits::pow::Pow::pow(&self.recip(), e.unsigned_abs())
        }
    }
    fn pow_real(&self, e: &Self) -> Result<Self> {
        match e.as_integer() {
            Some(k) => {
                if k < 0 && Zero::is_zero(self) {
                    return Err(QError::domain("negative power of zero"));
                }
                Ok(self.powi(k))
            }
            None => Err(QError::domain(format!(
                "exact mode needs integer exponents, got {e}"
            ))),
        }
    }
    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') {
            return Rational::from_str(s)
                .map_err(|_| QError::Parse(format!("cannot parse '{s}' as a fraction")));
        }
        parse_decimal(s)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn near_zero(&self, _rel: f64) -> bool {
        Zero::is_zero(self)
    }
}
