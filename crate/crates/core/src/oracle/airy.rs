use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;

use super::quadrature::quad_semi_infinite;
use super::QuadratureResult;
use crate::{Error, Result};

/// Below this `Re √z` the Gaussian damping of the saddle-point form is too
/// weak and the ray form is used instead.
const SADDLE_MIN_DAMPING: f64 = 1.5;

fn settle(r: Result<QuadratureResult>) -> Result<QuadratureResult> {
    match r {
        Err(Error::MaxSubdivisions(partial)) => Ok(*partial),
        other => other,
    }
}

/// Ai(z) from its contour integral, to relative accuracy about `tol`.
///
/// Two contours are used. Near the origin and in the oscillatory sector the
/// contour is the pair of rays `r·e^{±iπ/3}`:
///
/// `Ai(z) = (I₊ − I₋)/(2πi)`, `I± = ∫₀^∞ exp(−r³/3 − z r e^{±iπ/3}) e^{±iπ/3} dr`.
///
/// Where `Re √z` is large the contour is moved through the saddle at `√z`:
///
/// `Ai(z) = e^{−ζ}/π ∫₀^∞ exp(−√z t²) cos(t³/3) dt`, `ζ = (2/3) z^{3/2}`,
///
/// which carries the exponential decay analytically instead of by cancellation.
pub fn airy_integral(z: Complex64, tol: f64) -> Result<QuadratureResult> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("Airy argument"));
    }
    let root = z.sqrt();
    if root.re >= SADDLE_MIN_DAMPING {
        let width = (PI.sqrt() / (2.0 * root.sqrt())).norm();
        let integrand = |t: f64| (-root * t * t).exp() * (t * t * t / 3.0).cos();
        let r = settle(quad_semi_infinite(integrand, tol * 0.1 * width))?;
        let zeta = 2.0 / 3.0 * z * root;
        let scale = (-zeta).exp() / PI;
        return Ok(QuadratureResult {
            value: r.value * scale,
            error_estimate: r.error_estimate * scale.norm(),
            ..r
        });
    }

    let ray_tol = tol * 1e-2;
    let ray = |sign: f64| {
        let w = Complex64::from_polar(1.0, sign * FRAC_PI_3);
        let integrand = move |r: f64| (-(r * r * r) / 3.0 - z * w * r).exp() * w;
        settle(quad_semi_infinite(integrand, ray_tol))
    };
    let upper = ray(1.0)?;
    let lower = ray(-1.0)?;
    let denom = Complex64::new(0.0, 2.0 * PI);
    Ok(QuadratureResult {
        value: (upper.value - lower.value) / denom,
        error_estimate: (upper.error_estimate + lower.error_estimate) / (2.0 * PI),
        evaluations: upper.evaluations + lower.evaluations,
        converged: upper.converged && lower.converged,
    })
}
