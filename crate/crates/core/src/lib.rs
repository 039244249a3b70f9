//! Generalized hypergeometric series and the series-form antiderivatives of
//! `x^α · kernel(η x^β) · pFq(λ x^γ)` for the kernels exp, cosh, sinh, cos and sin.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_functions`]: complex log-gamma, Pochhammer symbols, the `pFq`
//!   series engine and the two asymptotic forms (`1F1` for large argument,
//!   optimally truncated `2F0`).
//! * [`series_integrals`]: antiderivatives as double series with lifted
//!   parameter lists, and definite integrals by endpoint differences.
//! * [`identities`]: residuals of the product identity behind the parameter
//!   lifting and of the six kernel-decomposition identities.
//! * [`transforms`]: Fourier and Laplace transforms of Gaussian-weighted monomials.
//! * [`orr_sommerfeld`]: the Green's-function and series forms of the
//!   Orr-Sommerfeld solution for plane Couette flow.
//! * [`oracle`]: adaptive quadrature and finite differences that share no code
//!   with the series modules and serve as ground truth in tests.
//! * [`cli`]: the command-line front end used by the `pfq` binary.
//!
//! Every function is pure; nothing caches state between calls.

pub mod cli;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod orr_sommerfeld;
pub mod series_integrals;
pub mod special_functions;
pub mod transforms;

pub use error::{Error, Result};

/// Universal numeric carrier: every parameter and argument may be complex.
pub type ComplexScalar = num_complex::Complex64;

pub use identities::{lemma1_residual, theorem_residual, IdentityCase, IdentityId};
pub use orr_sommerfeld::{airy_ai, os_residual, phi_quadrature, phi_series, OSParams, OSSolution};
pub use series_integrals::{
    antiderivative, definite_integral, lifted_params, AntiderivativeValue, IntegrandSpec, Kernel,
};
pub use special_functions::{
    log_gamma, pfq, pfq_1f1_asymptotic, pochhammer, two_f_zero_asymptotic, PFqParams,
    SeriesEvaluation, SeriesMode, TruncationPolicy,
};
pub use transforms::{
    fourier_gaussian, fourier_moment_gaussian, laplace_erf, laplace_moment_gaussian,
};
