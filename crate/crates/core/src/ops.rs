//! q-derivative `D_q` and q-shift `eta^r` on polynomials and on functions.

use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::poly::BivariatePolynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// `D_x` or `D_y` acting on coefficients. Constants map to the zero
/// polynomial.
pub fn qderiv_poly<S: Scalar>(
    p: &BivariatePolynomial<S>,
    axis: Axis,
    ctx: &QContext<S>,
) -> BivariatePolynomial<S> {
    let c = p.coeffs();
    if c.len() <= 1 {
        return BivariatePolynomial::zero();
    }
    let n = c.len() - 1;
    let coeffs = match axis {
        Axis::X => (1..=n)
            .map(|k| (S::one() - ctx.qpow(k as i64)) * c[k].clone())
            .collect(),
        Axis::Y => (0..n)
            .map(|k| (S::one() - ctx.qpow((n - k) as i64)) * c[k].clone())
            .collect(),
    };
    BivariatePolynomial::new(coeffs)
}

/// `eta^r` for integer `r`.
pub fn qshift_poly_int<S: Scalar>(
    p: &BivariatePolynomial<S>,
    axis: Axis,
    r: i64,
    ctx: &QContext<S>,
) -> BivariatePolynomial<S> {
    let base = ctx.qpow(r);
    shift_with_base(p, axis, &base)
}

/// `eta^r`: substitutes `x -> q^r x` (or `y`). Exact mode needs integer `r`.
pub fn qshift_poly<S: Scalar>(
    p: &BivariatePolynomial<S>,
    axis: Axis,
    r: &S,
    ctx: &QContext<S>,
) -> Result<BivariatePolynomial<S>> {
    let base = ctx.qpow_real(r)?;
    Ok(shift_with_base(p, axis, &base))
}

fn shift_with_base<S: Scalar>(
    p: &BivariatePolynomial<S>,
    axis: Axis,
    base: &S,
) -> BivariatePolynomial<S> {
    let c = p.coeffs();
    if c.is_empty() {
        return BivariatePolynomial::zero();
    }
    let n = c.len() - 1;
    let coeffs = c
        .iter()
        .enumerate()
        .map(|(k, ck)| {
            let e = match axis {
                Axis::X => k,
                Axis::Y => n - k,
            };
            ck.clone() * base.powi(e as i64)
        })
        .collect();
    BivariatePolynomial::new(coeffs)
}

/// `(f(x) - f(qx)) / x`.
pub fn qderiv_fn<S: Scalar, F: Fn(&S) -> S>(f: F, x: &S, ctx: &QContext<S>) -> Result<S> {
    if x.is_zero() {
        return Err(QError::domain("q-derivative of a function at x = 0"));
    }
    let qx = ctx.q().clone() * x.clone();
    Ok((f(x) - f(&qx)) / x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::laguerre_bivariate;
    use crate::scalar::Rational;
    use crate::series::q_pochhammer;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn derivative_of_monomial() {
        let ctx = QContext::exact(1, 2).unwrap();
        let xn = BivariatePolynomial::<Rational>::monomial(4, 4).unwrap();
        let d = qderiv_poly(&xn, Axis::X, &ctx);
        assert_eq!(
            d.coeffs(),
            &[r(0, 1), r(0, 1), r(0, 1), r(1, 1) - ctx.qpow(4)]
        );
        let c = BivariatePolynomial::constant(r(5, 1));
        assert_eq!(qderiv_poly(&c, Axis::X, &ctx).degree(), -1);
        assert_eq!(qderiv_poly(&c, Axis::Y, &ctx).degree(), -1);
        assert_eq!(
            qderiv_poly(&BivariatePolynomial::zero(), Axis::Y, &ctx).degree(),
            -1
        );
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let ctx = QContext::float(0.45).unwrap();
        let p = laguerre_bivariate(3, &0.7, &ctx).unwrap();
        let dx = qderiv_poly(&p, Axis::X, &ctx);
        let dy = qderiv_poly(&p, Axis::Y, &ctx);
        for i in 0..100 {
            let x = -1.5 + 0.031 * i as f64 + 0.001;
            let y = 0.8 - 0.017 * i as f64;
            let fx = qderiv_fn(|t: &f64| p.evaluate(t, &y), &x, &ctx).unwrap();
            let fy = qderiv_fn(|t: &f64| p.evaluate(&x, t), &y, &ctx).unwrap();
            let sx = dx.evaluate_abs(&x, &y) + p.evaluate_abs(&x, &y) / x.abs();
            let sy = dy.evaluate_abs(&x, &y) + p.evaluate_abs(&x, &y) / y.abs();
            assert!((dx.evaluate(&x, &y) - fx).abs() <= 1e-12 * sx);
            assert!((dy.evaluate(&x, &y) - fy).abs() <= 1e-12 * sy);
        }
    }

    #[test]
    fn shifts() {
        let ctx = QContext::exact(1, 3).unwrap();
        let p = BivariatePolynomial::new(vec![r(1, 1), r(-2, 7), r(3, 5), r(9, 1)]);
        assert_eq!(qshift_poly(&p, Axis::X, &r(0, 1), &ctx).unwrap(), p);
        let mono = BivariatePolynomial::<Rational>::monomial(3, 2).unwrap();
        let s = qshift_poly(&mono, Axis::X, &r(2, 1), &ctx).unwrap();
        assert_eq!(s.coeffs()[2], ctx.qpow(4));
        let round = qshift_poly_int(&qshift_poly_int(&p, Axis::Y, -1, &ctx), Axis::Y, 1, &ctx);
        assert_eq!(round, p);
        assert!(qshift_poly(&p, Axis::X, &r(1, 2), &ctx).is_err());
    }

    #[test]
    fn operators_commute_on_coefficients() {
        let ctx = QContext::exact(2, 5).unwrap();
        let p = BivariatePolynomial::new(vec![r(1, 1), r(-2, 7), r(3, 5), r(9, 1), r(4, 3)]);
        let a = qderiv_poly(&qshift_poly_int(&p, Axis::Y, 1, &ctx), Axis::X, &ctx);
        let b = qshift_poly_int(&qderiv_poly(&p, Axis::X, &ctx), Axis::Y, 1, &ctx);
        assert_eq!(a, b);
    }

    #[test]
    fn function_derivative_rules() {
        let ctx = QContext::float(0.5).unwrap();
        assert_eq!(qderiv_fn(|_: &f64| 3.0, &0.7, &ctx).unwrap(), 0.0);
        let x = 0.7f64;
        let d = qderiv_fn(|t: &f64| t.powi(5), &x, &ctx).unwrap();
        assert!((d - (1.0 - 0.5f64.powi(5)) * x.powi(4)).abs() < 1e-15);
        assert!(qderiv_fn(|t: &f64| *t, &0.0, &ctx).is_err());

        let f = |t: &f64| t * t;
        let g = |t: &f64| q_pochhammer(t, &ctx, 3);
        for x in [0.3, -0.8, 1.7] {
            let lhs = qderiv_fn(|t: &f64| f(t) * g(t), &x, &ctx).unwrap();
            let rhs = qderiv_fn(f, &x, &ctx).unwrap() * g(&x)
                + f(&(0.5 * x)) * qderiv_fn(g, &x, &ctx).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
