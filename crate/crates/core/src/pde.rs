//! Residuals of the q-partial differential equations that characterize the
//! two families.
//!
//! * q-Laguerre: `D_x (1 - q^a eta_x) f = -q^(a+1) eta_x^2 D_y f`
//! * little q-Jacobi: `D_x (1 - a eta_x) f = -q D_y (eta_y^-1 - q a b eta_x^2) f`
//!
//! Legendre is the Jacobi equation at `a = b = 1`, Wall at `b = 0`.

use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::ops::{qderiv_poly, qshift_poly_int, Axis};
use crate::poly::{q_power, BivariatePolynomial, FamilyParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PdeKind<S> {
    Laguerre { alpha: S },
    Jacobi { alpha: S, beta: S },
    Legendre,
    Wall { alpha: S },
}

impl<S: Scalar> PdeKind<S> {
    /// Equation satisfied by every member of `family`.
    pub fn for_family(family: &FamilyParams<S>) -> Self {
        match family {
            FamilyParams::QLaguerre { alpha } => PdeKind::Laguerre {
                alpha: alpha.clone(),
            },
            FamilyParams::LittleQJacobi { alpha, beta } => PdeKind::Jacobi {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            FamilyParams::LittleQLegendre => PdeKind::Legendre,
            FamilyParams::LittleQLaguerre { alpha } => PdeKind::Wall {
                alpha: alpha.clone(),
            },
        }
    }

    fn jacobi_params(&self) -> Option<(S, S)> {
        match self {
            PdeKind::Laguerre { .. } => None,
            PdeKind::Jacobi { alpha, beta } => Some((alpha.clone(), beta.clone())),
            PdeKind::Legendre => Some((S::one(), S::one())),
            PdeKind::Wall { alpha } => Some((alpha.clone(), S::zero())),
        }
    }

    fn validate(&self) -> Result<()> {
        if let PdeKind::Laguerre { alpha } = self {
            if !(alpha.clone() > -S::one()) {
                return Err(QError::domain(format!(
                    "q-Laguerre equation needs alpha > -1, got {alpha}"
                )));
            }
        }
        Ok(())
    }
}

/// Both members of the equation applied to `p`.
pub fn pde_sides<S: Scalar>(
    p: &BivariatePolynomial<S>,
    kind: &PdeKind<S>,
    ctx: &QContext<S>,
) -> Result<(BivariatePolynomial<S>, BivariatePolynomial<S>)> {
    kind.validate()?;
    match kind.jacobi_params() {
        None => {
            let PdeKind::Laguerre { alpha } = kind else {
                unreachable!()
            };
            let qa = q_power(alpha, ctx)?;
            let inner = p.sub(&qshift_poly_int(p, Axis::X, 1, ctx).scale(&qa))?;
            let lhs = qderiv_poly(&inner, Axis::X, ctx);
            let rhs = qshift_poly_int(&qderiv_poly(p, Axis::Y, ctx), Axis::X, 2, ctx)
                .scale(&-(qa * ctx.q().clone()));
            Ok((lhs, rhs))
        }
        Some((alpha, beta)) => {
            let q = ctx.q().clone();
            let inner = p.sub(&qshift_poly_int(p, Axis::X, 1, ctx).scale(&alpha))?;
            let lhs = qderiv_poly(&inner, Axis::X, ctx);
            let qab = q.clone() * alpha * beta;
            let shifted = qshift_poly_int(p, Axis::Y, -1, ctx)
                .sub(&qshift_poly_int(p, Axis::X, 2, ctx).scale(&qab))?;
            let rhs = qderiv_poly(&shifted, Axis::Y, ctx).scale(&-q);
            Ok((lhs, rhs))
        }
    }
}

/// `LHS - RHS` as a polynomial of degree `n - 1`.
pub fn pde_residual<S: Scalar>(
    p: &BivariatePolynomial<S>,
    kind: &PdeKind<S>,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    let (lhs, rhs) = pde_sides(p, kind, ctx)?;
    lhs.sub(&rhs)
}

/// `max |L - R| / (1 + max(max |L|, max |R|))` over coefficients.
pub fn residual_metric<S: Scalar>(
    lhs: &BivariatePolynomial<S>,
    rhs: &BivariatePolynomial<S>,
) -> Result<f64> {
    let diff = lhs.sub(rhs)?;
    let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff());
    Ok(diff.max_abs_coeff() / (1.0 + scale))
}

/// Pointwise `LHS - RHS` for an arbitrary function of two variables.
pub fn pde_residual_fn<S: Scalar, F: Fn(&S, &S) -> S>(
    f: F,
    kind: &PdeKind<S>,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<S> {
    let (lhs, rhs) = pde_sides_fn(f, kind, x, y, ctx)?;
    Ok(lhs - rhs)
}

/// Pointwise `(LHS, RHS)`.
pub fn pde_sides_fn<S: Scalar, F: Fn(&S, &S) -> S>(
    f: F,
    kind: &PdeKind<S>,
    x: &S,
    y: &S,
    ctx: &QContext<S>,
) -> Result<(S, S)> {
    kind.validate()?;
    if x.is_zero() || y.is_zero() {
        return Err(QError::domain(
            "pointwise q-derivatives need x != 0 and y != 0",
        ));
    }
    let q = ctx.q().clone();
    let qx = q.clone() * x.clone();
    let q2x = q.clone() * qx.clone();
    let qy = q.clone() * y.clone();
    match kind.jacobi_params() {
        None => {
            let PdeKind::Laguerre { alpha } = kind else {
                unreachable!()
            };
            let qa = q_power(alpha, ctx)?;
            let g0 = f(x, y) - qa.clone() * f(&qx, y);
            let g1 = f(&qx, y) - qa.clone() * f(&q2x, y);
            let lhs = (g0 - g1) / x.clone();
            let rhs = -(qa * q) * (f(&q2x, y) - f(&q2x, &qy)) / y.clone();
            Ok((lhs, rhs))
        }
        Some((alpha, beta)) => {
            let g0 = f(x, y) - alpha.clone() * f(&qx, y);
            let g1 = f(&qx, y) - alpha.clone() * f(&q2x, y);
            let lhs = (g0 - g1) / x.clone();
            let qab = q.clone() * alpha * beta;
            let y_over_q = y.clone() / q.clone();
            let h0 = f(x, &y_over_q) - qab.clone() * f(&q2x, y);
            let h1 = f(x, y) - qab * f(&q2x, &qy);
            let rhs = -q * (h0 - h1) / y.clone();
            Ok((lhs, rhs))
        }
    }
}
