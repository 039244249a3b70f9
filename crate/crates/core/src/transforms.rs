//! Fourier and Laplace transforms of Gaussian-weighted monomials.
//!
//! * `∫_{−∞}^{∞} e^{−θ²x²} e^{ikx} dx = (√π/|θ|) e^{−k²/4θ²}`
//! * `∫_{−∞}^{∞} x^α e^{−θ²x²} e^{ikx} dx`, integer `α ≥ −1`:
//!   even `α`: `Γ((α+1)/2)/|θ|^{α+1} · 1F1((α+1)/2; 1/2; −k²/4θ²)`;
//!   odd `α`: `i k Γ(α/2+1)/|θ|^{α+2} · 1F1(α/2+1; 3/2; −k²/4θ²)`
//!   (`α = −1` as a principal value).
//! * `∫_0^∞ x^α e^{−θ²x²} e^{−ux} dx ~ Γ(α+1)/u^{α+1} · 2F0((α+1)/2, α/2+1;; −4θ²/u²)`,
//!   an asymptotic series returned with its optimal-truncation error bound.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::special_functions::{
    gamma, pfq, two_f_zero_asymptotic, PFqParams, SeriesEvaluation, TruncationPolicy,
};
use crate::{Error, Result};

/// Parameters shared by the Gaussian transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTransformSpec {
    pub alpha: f64,
    pub theta: f64,
    /// Fourier wavenumber.
    pub k: f64,
    /// Laplace variable.
    pub u: Complex64,
}

impl GaussianTransformSpec {
    pub fn fourier(&self, policy: &TruncationPolicy) -> Result<SeriesEvaluation> {
        if self.alpha.fract() != 0.0 || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Fourier moments need an integer alpha, got {}",
                self.alpha
            )));
        }
        fourier_moment_gaussian(self.alpha as i64, self.theta, self.k, policy)
    }

    pub fn laplace(&self) -> Result<SeriesEvaluation> {
        laplace_moment_gaussian(self.alpha, self.theta, self.u)
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta == 0.0 || !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("theta must be finite and nonzero, got {theta}")));
    }
    Ok(())
}

/// `(√π/|θ|) e^{−k²/4θ²}`.
pub fn fourier_gaussian(theta: f64, k: f64) -> Result<f64> {
    check_theta(theta)?;
    if !k.is_finite() {
        return Err(Error::NonFinite("wavenumber"));
    }
    Ok(PI.sqrt() / theta.abs() * (-k * k / (4.0 * theta * theta)).exp())
}

/// `1F1(a; b; −z)` through Kummer's transformation `e^{−z} 1F1(b−a; b; z)`,
/// which turns the alternating series into one with terms of fixed sign and,
/// for the parameters used here, often into a polynomial.
fn kummer_1f1_negative(a: f64, b: f64, z: f64, policy: &TruncationPolicy) -> Result<SeriesEvaluation> {
    let params = PFqParams::real(&[b - a], &[b])?;
    Ok(pfq(&params, Complex64::new(z, 0.0), policy)?.scaled(Complex64::new((-z).exp(), 0.0)))
}

/// `∫ x^α e^{−θ²x²} e^{ikx} dx` over the real line for integer `α ≥ −1`.
///
/// Even `α` gives a real value and odd `α` a purely imaginary one; the
/// other component is exactly zero.
pub fn fourier_moment_gaussian(alpha: i64, theta: f64, k: f64, policy: &TruncationPolicy) -> Result<SeriesEvaluation> {
    check_theta(theta)?;
    if !k.is_finite() {
        return Err(Error::NonFinite("wavenumber"));
    }
    if alpha < -1 {
        return Err(Error::ParityDomainViolation(alpha));
    }
    let a = alpha as f64;
    let abs_theta = theta.abs();
    let z = k * k / (4.0 * theta * theta);
    if alpha % 2 == 0 {
        let prefactor = gamma(Complex64::new((a + 1.0) / 2.0, 0.0))?.re / abs_theta.powf(a + 1.0);
        let series = kummer_1f1_negative((a + 1.0) / 2.0, 0.5, z, policy)?;
        Ok(SeriesEvaluation {
            value: Complex64::new(prefactor * series.value.re, 0.0),
            error_estimate: series.error_estimate * prefactor.abs(),
            ..series
        })
    } else {
        let prefactor = gamma(Complex64::new(a / 2.0 + 1.0, 0.0))?.re / abs_theta.powf(a + 2.0) * k;
        let series = kummer_1f1_negative(a / 2.0 + 1.0, 1.5, z, policy)?;
        Ok(SeriesEvaluation {
            value: Complex64::new(0.0, prefactor * series.value.re),
            error_estimate: series.error_estimate * prefactor.abs(),
            ..series
        })
    }
}

/// `∫_0^∞ x^α e^{−θ²x²} e^{−ux} dx` for real `α > −1` and `Re u > 0`, as the
/// optimally truncated asymptotic series in `θ²/u²`.
///
/// `error_estimate` is the magnitude of the first omitted term, scaled by the
/// prefactor `|Γ(α+1)/u^{α+1}|`.
pub fn laplace_moment_gaussian(alpha: f64, theta: f64, u: Complex64) -> Result<SeriesEvaluation> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must exceed -1, got {alpha}")));
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    if !(u.re > 0.0) || !u.im.is_finite() || !u.re.is_finite() {
        return Err(Error::InvalidParameter(format!("Laplace variable needs Re u > 0, got {u}")));
    }
    let prefactor = gamma(Complex64::new(alpha + 1.0, 0.0))? / (u.ln() * (alpha + 1.0)).exp();
    let z = -4.0 * theta * theta / (u * u);
    let series = two_f_zero_asymptotic(
        Complex64::new((alpha + 1.0) / 2.0, 0.0),
        Complex64::new(alpha / 2.0 + 1.0, 0.0),
        z,
    )?;
    Ok(series.scaled(prefactor))
}

/// Laplace transform of `∫_0^x e^{−v²} dv` (the error function without the
/// `2/√π` normalisation): `(1/u) · laplace_moment_gaussian(0, 1, u)`.
pub fn laplace_erf(u: Complex64) -> Result<SeriesEvaluation> {
    Ok(laplace_moment_gaussian(0.0, 1.0, u)?.scaled(1.0 / u))
}
