//! q-series and bivariate q-orthogonal polynomials.
//!
//! Core pieces:
//!
//! * [`series`]: q-shifted factorials, Gaussian binomials, infinite products
//!   and basic hypergeometric series.
//! * [`poly`]: homogeneous bivariate q-Laguerre and little q-Jacobi families.
//! * [`ops`]: q-derivative and q-shift operators.
//! * [`pde`]: residuals of the characterizing q-partial differential equations.
//! * [`expand`]: Taylor grids and basis expansion coefficients.
//! * [`genfun`]: generating function left and right members.
//! * [`classic`]: orthogonality, recurrence, shift relations, asymptotics.
//! * [`verify`]: the identity catalog driven by the `qkernel` binary.
//!
//! Every algorithm is generic over [`Scalar`], implemented for `f64` and for
//! exact big rationals ([`Rational`]).

pub mod classic;
pub mod context;
pub mod error;
pub mod expand;
pub mod genfun;
pub mod ops;
pub mod pde;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod verify;

pub use classic::{
    asymptotic_ratio, backward_shift_residual, backward_shift_target, forward_shift_residual,
    orthogonality_check, orthogonality_norm, qdifference_residual, recurrence_adjudicate,
    recurrence_coeffs, recurrence_residual, recurrence_residual_poly, AsymptoticRecord,
    OrthogonalityRecord, RecurrenceCoeffs, RecurrenceVariant, Residual,
};
pub use context::{QContext, TruncationPolicy, MAX_TERMS_ENV};
pub use error::{QError, Result};
pub use expand::{
    expand, jacobi_lambda, jacobi_lambda_step, laguerre_lambda, laguerre_lambda_step, synthesize,
    ExpansionResult, TaylorGrid,
};
pub use genfun::{
    genfun_lhs, genfun_lhs_terms, genfun_rhs, genfun_verify, GenFunKind, GenFunParams,
    GenFunRecord, UnivariateVariant,
};
pub use ops::{qderiv_fn, qderiv_poly, qshift_poly, qshift_poly_int, Axis};
pub use pde::{pde_residual, pde_residual_fn, pde_sides, residual_metric, PdeKind};
pub use poly::{
    jacobi_bivariate, jacobi_bivariate_cleared, jacobi_bivariate_scaled, laguerre_bivariate,
    specialize, univariate_laguerre, BivariatePolynomial, FamilyParams,
};
pub use scalar::{Mode, Rational, Scalar};
pub use series::{
    phi_series, phi_series_auto, q_binomial, q_binomial_product, q_pochhammer, q_pochhammer_inf,
    HyperSeries, SeriesSum,
};
pub use verify::{
    run_catalog, run_identity, verify_json, RunConfig, Summary, Truncation, VerificationReport,
    CATALOG,
};
