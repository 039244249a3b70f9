use num_complex::Complex64;

use super::gamma::{exact_nonpositive_integer, log_gamma, nonpositive_integer, POLE_TOL};
use super::pfq::{SeriesEvaluation, SeriesMode};
use super::sum::CompensatedSum;
use crate::{Error, Result};

/// Smallest |z| at which the leading-order `1F1` asymptotic is accepted.
pub const ONE_F_ONE_ASYMPTOTIC_FLOOR: f64 = 30.0;

const TWO_F_ZERO_TERM_CAP: usize = 1_000_000;

/// Leading-order large-|z| form of `1F1(a; b; z)`:
///
/// `Γ(b)/Γ(a) · e^z z^{a-b}  +  Γ(b)/Γ(b-a) · (-z)^{-a}`
///
/// The first piece dominates for `Re z → +∞`, the second for `Re z → -∞`.
/// A piece whose reciprocal gamma vanishes is dropped, so `a = b` returns
/// `e^z` exactly. `error_estimate` is the magnitude of the first omitted
/// term of each expansion.
pub fn pfq_1f1_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<SeriesEvaluation> {
    if nonpositive_integer(b, POLE_TOL).is_some() {
        return Err(Error::LowerParameterPole { index: 0, value: b });
    }
    if a == b {
        return Ok(SeriesEvaluation::exact(z.exp(), SeriesMode::Asymptotic));
    }
    let modulus = z.norm();
    if modulus < ONE_F_ONE_ASYMPTOTIC_FLOOR {
        return Err(Error::ArgumentTooSmall { modulus, floor: ONE_F_ONE_ASYMPTOTIC_FLOOR });
    }
    let ln_gamma_b = log_gamma(b)?;

    let growing = match log_gamma(a) {
        Ok(ln_gamma_a) => (ln_gamma_b - ln_gamma_a + z + (a - b) * z.ln()).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    };
    let algebraic = match log_gamma(b - a) {
        Ok(ln_gamma_ba) => (ln_gamma_b - ln_gamma_ba - a * (-z).ln()).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    };
    let value = growing + algebraic;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("1F1 asymptotic"));
    }
    let error_estimate = growing.norm() * ((b - a) * (1.0 - a) / z).norm()
        + algebraic.norm() * (a * (a - b + 1.0) / z).norm();
    Ok(SeriesEvaluation {
        value,
        terms_used: 1,
        error_estimate,
        mode: SeriesMode::Asymptotic,
        converged: true,
    })
}

/// Optimally truncated `2F0(a1, a2;; z)`.
///
/// Terms `(a1)_n (a2)_n zⁿ/n!` are summed while the next term is strictly
/// smaller in magnitude; the smallest term is the first omitted one and its
/// magnitude is the error estimate. Terminating parameter lists are summed
/// exactly.
pub fn two_f_zero_asymptotic(a1: Complex64, a2: Complex64, z: Complex64) -> Result<SeriesEvaluation> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("2F0 argument"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesEvaluation::exact(Complex64::new(1.0, 0.0), SeriesMode::Asymptotic));
    }
    let ratio_at = |n: f64| (a1 + n) * (a2 + n) * z / (n + 1.0);

    if exact_nonpositive_integer(a1).is_some() || exact_nonpositive_integer(a2).is_some() {
        let mut acc = CompensatedSum::new();
        let mut term = Complex64::new(1.0, 0.0);
        let mut n = 0usize;
        while term != Complex64::new(0.0, 0.0) {
            acc.add(term);
            term *= ratio_at(n as f64);
            n += 1;
        }
        return Ok(SeriesEvaluation {
            value: acc.value(),
            terms_used: n,
            error_estimate: 0.0,
            mode: SeriesMode::Asymptotic,
            converged: true,
        });
    }

    let first_ratio = ratio_at(0.0).norm();
    if first_ratio >= 1.0 {
        return Err(Error::NoDecreasingRegime { ratio: first_ratio });
    }

    let mut acc = CompensatedSum::new();
    let mut current = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    loop {
        let next = current * ratio_at(n as f64);
        if next.norm() >= current.norm() || n >= TWO_F_ZERO_TERM_CAP {
            break;
        }
        acc.add(current);
        current = next;
        n += 1;
    }
    Ok(SeriesEvaluation {
        value: acc.value(),
        terms_used: n,
        error_estimate: current.norm(),
        mode: SeriesMode::Asymptotic,
        converged: true,
    })
}
