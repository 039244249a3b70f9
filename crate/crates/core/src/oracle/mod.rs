//! Reference integration and differentiation.
//!
//! Nothing here calls into the series modules: integrands are plain closures
//! and the Airy function is computed from its contour integral. Tests use
//! these routines as the ground truth for every series result.

mod airy;
mod derivative;
mod quadrature;

use num_complex::Complex64;

pub use airy::airy_integral;
pub use derivative::{fd_derivative, fd_nth_derivative, FiniteDifference};
pub use quadrature::{quad_finite, quad_oscillatory_fourier, quad_semi_infinite, MAX_PANELS};

/// Outcome of an adaptive quadrature.
///
/// `converged` implies `error_estimate <= tol`. A result that stopped at the
/// rounding floor before reaching `tol` is returned with `converged = false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}
