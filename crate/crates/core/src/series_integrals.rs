//! Antiderivatives of `x^α · kernel(η x^β) · pFq(λ x^γ)` as double series.
//!
//! Repeated integration by parts against the kernel gives an outer series in
//! `w = β η x^β` whose k-th term is
//!
//! ```text
//! t_k = w^k / ∏_{m=0}^{k} (α + mβ + 1) · F_k(λ x^γ)
//! ```
//!
//! where `F_k` is the input `pFq` with the k+1 lifted pairs
//! `(α+mβ+1)/γ` (upper) and `(α+γ+mβ+1)/γ` (lower), `m = 0..=k`, appended.
//! The kernels combine the `t_k` as
//!
//! | kernel | antiderivative / x^{α+1}                                  |
//! |--------|------------------------------------------------------------|
//! | exp    | `e^{θ} Σ (−1)^k t_k`                                      |
//! | cosh   | `cosh θ Σ_even t_k − sinh θ Σ_odd t_k`                    |
//! | sinh   | `sinh θ Σ_even t_k − cosh θ Σ_odd t_k`                    |
//! | cos    | `cos θ Σ_even (−1)^{k/2} t_k + sin θ Σ_odd (−1)^{(k−1)/2} t_k` |
//! | sin    | `sin θ Σ_even (−1)^{k/2} t_k − cos θ Σ_odd (−1)^{(k−1)/2} t_k` |
//!
//! with `θ = η x^β`. The constant of integration is zero throughout.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::special_functions::{
    nonpositive_integer, pfq, PFqParams, SeriesEvaluation, SeriesMode, TruncationPolicy, POLE_TOL,
};
use crate::{Error, Result};

/// `|α + mβ + 1|` below this is treated as a pole of the outer coefficients.
pub const PRODUCT_POLE_TOL: f64 = 1e-12;
/// `|α + mβ + 1|` below this (but above the pole tolerance) raises a warning.
pub const PRODUCT_NEAR_POLE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Exp,
    Cosh,
    Sinh,
    Cos,
    Sin,
}

impl Kernel {
    pub const ALL: [Kernel; 5] = [Kernel::Exp, Kernel::Cosh, Kernel::Sinh, Kernel::Cos, Kernel::Sin];

    pub fn name(self) -> &'static str {
        match self {
            Kernel::Exp => "exp",
            Kernel::Cosh => "cosh",
            Kernel::Sinh => "sinh",
            Kernel::Cos => "cos",
            Kernel::Sin => "sin",
        }
    }

    /// The kernel function itself.
    pub fn apply(self, theta: Complex64) -> Complex64 {
        match self {
            Kernel::Exp => theta.exp(),
            Kernel::Cosh => theta.cosh(),
            Kernel::Sinh => theta.sinh(),
            Kernel::Cos => theta.cos(),
            Kernel::Sin => theta.sin(),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exp" => Ok(Kernel::Exp),
            "cosh" => Ok(Kernel::Cosh),
            "sinh" => Ok(Kernel::Sinh),
            "cos" => Ok(Kernel::Cos),
            "sin" => Ok(Kernel::Sin),
            other => Err(Error::InvalidParameter(format!("unknown kernel '{other}'"))),
        }
    }
}

/// Integrand `x^α · kernel(η x^β) · pFq(a; b; λ x^γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandSpec {
    pub kernel: Kernel,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub eta: Complex64,
    pub lambda: Complex64,
    pub gamma: Complex64,
    pub pfq: PFqParams,
}

impl IntegrandSpec {
    pub fn new(
        kernel: Kernel,
        alpha: Complex64,
        beta: Complex64,
        eta: Complex64,
        lambda: Complex64,
        gamma: Complex64,
        pfq: PFqParams,
    ) -> Result<Self> {
        let spec = Self { kernel, alpha, beta, eta, lambda, gamma, pfq };
        spec.validate()?;
        Ok(spec)
    }

    /// Real-parameter shorthand.
    pub fn real(
        kernel: Kernel,
        alpha: f64,
        beta: f64,
        eta: f64,
        lambda: f64,
        gamma: f64,
        pfq: PFqParams,
    ) -> Result<Self> {
        let c = |v: f64| Complex64::new(v, 0.0);
        Self::new(kernel, c(alpha), c(beta), c(eta), c(lambda), c(gamma), pfq)
    }

    pub fn with_kernel(&self, kernel: Kernel) -> Self {
        Self { kernel, ..self.clone() }
    }

    pub fn with_eta(&self, eta: Complex64) -> Self {
        Self { eta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.beta, self.eta, self.lambda, self.gamma]
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite());
        if !finite {
            return Err(Error::NonFinite("integrand parameter"));
        }
        if self.gamma == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        Ok(())
    }

    /// Direct evaluation of the integrand at a positive real `x`.
    pub fn integrand(&self, x: f64, policy: &TruncationPolicy) -> Result<Complex64> {
        let x = positive_real(Complex64::new(x, 0.0))?;
        let lnx = x.ln();
        let xa = (self.alpha * lnx).exp();
        let theta = self.eta * (self.beta * lnx).exp();
        let z = self.lambda * (self.gamma * lnx).exp();
        let f = pfq(&self.pfq, z, policy)?;
        Ok(xa * self.kernel.apply(theta) * f.value)
    }
}

/// Value of an antiderivative or definite integral with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiderivativeValue {
    pub value: Complex64,
    pub outer_terms_used: usize,
    /// The inner `pFq` evaluation with the largest relative error estimate.
    pub inner_diagnostics: SeriesEvaluation,
    pub error_estimate: f64,
    pub warnings: Vec<String>,
}

impl AntiderivativeValue {
    fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            outer_terms_used: 0,
            inner_diagnostics: SeriesEvaluation {
                value: Complex64::new(1.0, 0.0),
                terms_used: 0,
                error_estimate: 0.0,
                mode: SeriesMode::Convergent,
                converged: true,
            },
            error_estimate: 0.0,
            warnings: Vec::new(),
        }
    }
}

fn relative_error(s: &SeriesEvaluation) -> f64 {
    s.error_estimate / s.value.norm().max(f64::MIN_POSITIVE)
}

/// Input lists with the lifted pairs for `m = 0..=j` appended:
/// `p + j + 1` upper and `q + j + 1` lower parameters.
pub fn lifted_params(spec: &IntegrandSpec, j: usize) -> Result<PFqParams> {
    spec.validate()?;
    let mut upper = spec.pfq.upper().to_vec();
    let mut lower = spec.pfq.lower().to_vec();
    for m in 0..=j {
        let shift = spec.alpha + spec.beta * m as f64 + 1.0;
        let b = (shift + spec.gamma) / spec.gamma;
        if nonpositive_integer(b, POLE_TOL).is_some() {
            return Err(Error::LiftedLowerPole { m, value: b });
        }
        upper.push(shift / spec.gamma);
        lower.push(b);
    }
    PFqParams::new(upper, lower)
}

fn positive_real(x: Complex64) -> Result<f64> {
    if x.im == 0.0 && x.re > 0.0 && x.re.is_finite() {
        Ok(x.re)
    } else {
        Err(Error::BranchDomain(x))
    }
}

struct OuterSums {
    even: Complex64,
    odd: Complex64,
    terms: usize,
    error: f64,
    worst: SeriesEvaluation,
    warnings: Vec<String>,
    converged: bool,
}

/// Sums `Σ_even s_k t_k` and `Σ_odd s_k t_k`, where `s_k` is the kernel's sign pattern.
fn outer_sums(spec: &IntegrandSpec, x: f64, policy: &TruncationPolicy) -> Result<OuterSums> {
    let lnx = x.ln();
    let w = spec.beta * spec.eta * (spec.beta * lnx).exp();
    let z = spec.lambda * (spec.gamma * lnx).exp();
    let budget = (policy.max_terms / 10).max(1);
    let sign = |k: usize| -> f64 {
        match spec.kernel {
            Kernel::Exp | Kernel::Cosh | Kernel::Sinh => 1.0,
            Kernel::Cos | Kernel::Sin => {
                if (k / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    };

    let mut even = crate::special_functions::CompensatedSum::new();
    let mut odd = crate::special_functions::CompensatedSum::new();
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut inner_error = 0.0;
    let mut worst: Option<SeriesEvaluation> = None;
    let mut warnings = Vec::new();
    let mut max_term = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    let mut ratio = 1.0;
    let mut small_run = 0;
    let mut k = 0;
    let mut converged = false;

    while k < budget {
        let factor = spec.alpha + spec.beta * k as f64 + 1.0;
        if factor.norm() < PRODUCT_POLE_TOL {
            return Err(Error::ProductPole { m: k });
        }
        if factor.norm() < PRODUCT_NEAR_POLE {
            warnings.push(format!("alpha + {k}*beta + 1 = {factor} is close to zero"));
        }
        coeff = if k == 0 { coeff / factor } else { coeff * w / factor };

        let inner = if z == Complex64::new(0.0, 0.0) {
            SeriesEvaluation {
                value: Complex64::new(1.0, 0.0),
                terms_used: 1,
                error_estimate: 0.0,
                mode: SeriesMode::Convergent,
                converged: true,
            }
        } else {
            let params = lifted_params(spec, k)?.cancel_common();
            pfq(&params, z, policy)?
        };
        if worst.as_ref().map_or(true, |w| relative_error(&inner) > relative_error(w)) {
            worst = Some(inner);
        }
        let term = coeff * inner.value * sign(k);
        inner_error += coeff.norm() * inner.error_estimate;
        if k % 2 == 0 {
            even.add(term);
        } else {
            odd.add(term);
        }
        let mag = term.norm();
        max_term = max_term.max(mag);
        if k > 0 && last > 0.0 {
            ratio = mag / last;
        }
        last = mag;
        k += 1;

        let reference = even.value().norm().max(odd.value().norm());
        let shrinking = mag < prev;
        prev = mag;
        if (mag <= policy.rel_tol * reference + policy.abs_tol) && (shrinking || mag == 0.0) {
            small_run += 1;
            if small_run >= policy.consecutive_small {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        // A zero coefficient ends the series: every later term carries it.
        if coeff == Complex64::new(0.0, 0.0) {
            converged = true;
            break;
        }
    }

    let tail = if ratio < 1.0 { last * ratio / (1.0 - ratio) } else { last };
    let error = tail.max(last) + inner_error + k as f64 * f64::EPSILON * max_term;
    Ok(OuterSums {
        even: even.value(),
        odd: odd.value(),
        terms: k,
        error,
        worst: worst.expect("at least one outer term"),
        warnings,
        converged,
    })
}

fn evaluate(spec: &IntegrandSpec, x: Complex64, policy: &TruncationPolicy, with_power: bool) -> Result<AntiderivativeValue> {
    spec.validate()?;
    if x == Complex64::new(0.0, 0.0) {
        if with_power && spec.alpha.re > -1.0 {
            return Ok(AntiderivativeValue::zero());
        }
        return Err(Error::BranchDomain(x));
    }
    let x = positive_real(x)?;
    let sums = outer_sums(spec, x, policy)?;
    let theta = spec.eta * (spec.beta * x.ln()).exp();
    let (a, b) = match spec.kernel {
        Kernel::Exp => {
            let e = theta.exp();
            (e, -e)
        }
        Kernel::Cosh => (theta.cosh(), -theta.sinh()),
        Kernel::Sinh => (theta.sinh(), -theta.cosh()),
        Kernel::Cos => (theta.cos(), theta.sin()),
        Kernel::Sin => (theta.sin(), -theta.cos()),
    };
    let power = if with_power {
        ((spec.alpha + 1.0) * x.ln()).exp()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let value = power * (a * sums.even + b * sums.odd);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("antiderivative"));
    }
    let result = AntiderivativeValue {
        value,
        outer_terms_used: sums.terms,
        inner_diagnostics: sums.worst,
        error_estimate: power.norm() * a.norm().max(b.norm()) * sums.error,
        warnings: sums.warnings,
    };
    if sums.converged {
        Ok(result)
    } else {
        Err(Error::OuterNotConverged(Box::new(result)))
    }
}

/// The antiderivative at a positive real `x`, with zero constant of integration.
///
/// `x = 0` is accepted when `Re α > −1` and returns exactly zero. The outer
/// series gets a tenth of `policy.max_terms`; each inner `pFq` the full policy.
pub fn antiderivative(spec: &IntegrandSpec, x: Complex64, policy: &TruncationPolicy) -> Result<AntiderivativeValue> {
    evaluate(spec, x, policy, true)
}

/// The antiderivative divided by `x^{α+1}`: the kernel-weighted double series alone.
pub fn series_factor(spec: &IntegrandSpec, x: Complex64, policy: &TruncationPolicy) -> Result<AntiderivativeValue> {
    evaluate(spec, x, policy, false)
}

/// `∫_a^b` by differencing the antiderivative at the endpoints.
pub fn definite_integral(spec: &IntegrandSpec, a: f64, b: f64, policy: &TruncationPolicy) -> Result<AntiderivativeValue> {
    spec.validate()?;
    if a == b {
        return Ok(AntiderivativeValue::zero());
    }
    let upper = antiderivative(spec, Complex64::new(b, 0.0), policy)?;
    let lower = antiderivative(spec, Complex64::new(a, 0.0), policy)?;
    let inner_diagnostics = if relative_error(&upper.inner_diagnostics) >= relative_error(&lower.inner_diagnostics) {
        upper.inner_diagnostics
    } else {
        lower.inner_diagnostics
    };
    let mut warnings = upper.warnings;
    for w in lower.warnings {
        if !warnings.contains(&w) {
            warnings.push(w);
        }
    }
    Ok(AntiderivativeValue {
        value: upper.value - lower.value,
        outer_terms_used: upper.outer_terms_used.max(lower.outer_terms_used),
        inner_diagnostics,
        error_estimate: upper.error_estimate + lower.error_estimate,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn lifted_lists() {
        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 1.0, 0.0, 2.0, PFqParams::empty()).unwrap();
        let p = lifted_params(&spec, 0).unwrap();
        assert_eq!(p.upper(), &[c(0.5)]);
        assert_eq!(p.lower(), &[c(1.5)]);

        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 2.0, 1.0, 0.0, 2.0, PFqParams::real(&[], &[0.5]).unwrap())
            .unwrap();
        let p = lifted_params(&spec, 0).unwrap();
        assert_eq!(p.upper(), &[c(0.5)]);
        assert_eq!(p.lower(), &[c(0.5), c(1.5)]);
        for j in 0..5 {
            let p = lifted_params(&spec, j).unwrap();
            assert_eq!((p.p(), p.q()), (j + 1, j + 2));
        }
    }

    #[test]
    fn lifted_lower_pole() {
        // (α + γ + 1)/γ = (-3 + 1 + 1)/1 = -1
        let spec = IntegrandSpec::real(Kernel::Exp, -3.0, 1.0, 1.0, 1.0, 1.0, PFqParams::empty()).unwrap();
        assert!(matches!(lifted_params(&spec, 0), Err(Error::LiftedLowerPole { m: 0, .. })));
    }

    #[test]
    fn cos_kernel_collapses_to_sine() {
        let spec = IntegrandSpec::real(Kernel::Cos, 0.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = antiderivative(&spec, c(FRAC_PI_2), &policy()).unwrap();
        assert!((r.value - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn exp_kernel_closed_form() {
        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = definite_integral(&spec, 0.0, 1.0, &policy()).unwrap();
        assert!((r.value.re - (1f64.exp() - 1.0)).abs() < 1e-14);
        // The series antiderivative of x e^x vanishes at 0: (x - 1) e^x + 1.
        let spec = IntegrandSpec::real(Kernel::Exp, 1.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = antiderivative(&spec, c(2.0), &policy()).unwrap();
        assert!((r.value.re - (2f64.exp() + 1.0)).abs() < 1e-13);
    }

    #[test]
    fn cosine_through_zero_f_one() {
        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 0.0, -0.25, 2.0, PFqParams::real(&[], &[0.5]).unwrap())
            .unwrap();
        let r = definite_integral(&spec, 0.0, 1.0, &policy()).unwrap();
        assert!((r.value.re - 1f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn x_cosh_x() {
        let spec = IntegrandSpec::real(Kernel::Cosh, 1.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = definite_integral(&spec, 0.0, 1.0, &policy()).unwrap();
        // x sinh x − cosh x from 0 to 1
        let exact = 1f64.sinh() - 1f64.cosh() + 1.0;
        assert!((r.value.re - exact).abs() < 1e-14);
        assert!((exact - (1.0 - (-1f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn sin_kernel() {
        let spec = IntegrandSpec::real(Kernel::Sin, 0.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = definite_integral(&spec, 0.0, PI, &policy()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn cosh_plus_sinh_is_exp() {
        let base = IntegrandSpec::real(Kernel::Exp, 0.5, 1.5, 0.7, 0.3, 1.0, PFqParams::real(&[1.5], &[2.5]).unwrap())
            .unwrap();
        let x = c(1.3);
        let e = antiderivative(&base, x, &policy()).unwrap().value;
        let ch = antiderivative(&base.with_kernel(Kernel::Cosh), x, &policy()).unwrap().value;
        let sh = antiderivative(&base.with_kernel(Kernel::Sinh), x, &policy()).unwrap().value;
        assert!(((ch + sh) - e).norm() / e.norm() < 1e-12);
    }

    #[test]
    fn lambda_zero_ignores_lists() {
        let a = IntegrandSpec::real(Kernel::Sin, 0.3, 1.0, 2.0, 0.0, 1.0, PFqParams::real(&[2.0, 3.0], &[0.5]).unwrap())
            .unwrap();
        let b = IntegrandSpec { pfq: PFqParams::empty(), ..a.clone() };
        let x = c(0.8);
        assert_eq!(antiderivative(&a, x, &policy()).unwrap().value, antiderivative(&b, x, &policy()).unwrap().value);
    }

    #[test]
    fn domain_errors() {
        let spec = IntegrandSpec::real(Kernel::Exp, -1.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        assert!(matches!(antiderivative(&spec, c(1.0), &policy()), Err(Error::ProductPole { m: 0 })));
        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        assert!(matches!(antiderivative(&spec, c(-1.0), &policy()), Err(Error::BranchDomain(_))));
        assert!(matches!(
            antiderivative(&spec, Complex64::new(1.0, 1.0), &policy()),
            Err(Error::BranchDomain(_))
        ));
        assert!(IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 1.0, 0.0, 0.0, PFqParams::empty()).is_err());
        let r = definite_integral(&spec, 0.7, 0.7, &policy()).unwrap();
        assert_eq!(r.value, c(0.0));
    }

    #[test]
    fn near_pole_warns() {
        let spec = IntegrandSpec::real(Kernel::Exp, -1.0 + 1e-8, 1.0, 1.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let r = antiderivative(&spec, c(0.5), &policy()).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn outer_budget_exhaustion() {
        let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 30.0, 0.0, 1.0, PFqParams::empty()).unwrap();
        let tight = policy().with_max_terms(50);
        assert!(matches!(antiderivative(&spec, c(1.0), &tight), Err(Error::OuterNotConverged(_))));
    }
}
