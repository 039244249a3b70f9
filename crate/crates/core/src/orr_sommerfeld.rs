//! Orr-Sommerfeld solution for plane Couette flow `U(y) = y`, `y ≥ 0`.
//!
//! With `κ = rk` the equation
//!
//! ```text
//! φ'''' − [2κ² + i Re k (y − ω/k)] φ'' + [κ⁴ + i κ² Re k (y − ω/k)] φ = 0
//! ```
//!
//! factors as `(D² − κ²) ψ = ...` with `ψ = φ'' − κ²φ` solving the Airy
//! equation `ψ'' = i Re k (y − s) ψ`, `s = λ/(i Re k)`, `λ = i Re ω − κ²`.
//! The Green's-function solution is
//!
//! ```text
//! φ(y) = e^{−κy}/κ ∫_0^y cosh(κξ) Ai[c(ξ − s)] dξ + cosh(κy)/κ ∫_y^∞ e^{−κξ} Ai[c(ξ − s)] dξ
//! ```
//!
//! with `c = (i Re k)^{1/3}` on the principal branch. The Airy centre `s` is
//! configurable: [`AiryCenter::Consistent`] uses `λ/(i Re k)`, which makes `φ`
//! satisfy the equation above; [`AiryCenter::AsPrinted`] uses `λ` itself.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::oracle::{airy_integral, fd_nth_derivative, quad_finite, quad_semi_infinite, QuadratureResult};
use crate::special_functions::{gamma, pfq, CompensatedSum, PFqParams, SeriesEvaluation, SeriesMode, TruncationPolicy};
use crate::{Error, Result};

/// Largest |z| accepted by the `0F1` form of Ai.
pub const AIRY_SERIES_CAP: f64 = 12.0;
/// Below this |z| the `0F1` form is used inside the Green's-function integrals.
const AIRY_SERIES_SWITCH: f64 = 4.0;
/// Above this |z| (and away from the negative real axis) the large-argument expansion is used.
const AIRY_EXPANSION_SWITCH: f64 = 9.0;
/// Kernel weights below this skip the Airy evaluation.
const NEGLIGIBLE_WEIGHT: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OSParams {
    pub k: f64,
    pub r: f64,
    pub re: f64,
    pub omega: Complex64,
}

impl Default for OSParams {
    /// `k = 1, r = 10, Re = 100, ω = 0.1i`.
    fn default() -> Self {
        Self { k: 1.0, r: 10.0, re: 100.0, omega: Complex64::new(0.0, 0.1) }
    }
}

impl OSParams {
    pub fn new(k: f64, r: f64, re: f64, omega: Complex64) -> Result<Self> {
        let p = Self { k, r, re, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(Error::InvalidParameter(format!("wavenumber k must be positive, got {}", self.k)));
        }
        if !(self.r >= 1.0 && self.r.is_finite()) {
            return Err(Error::InvalidParameter(format!("aspect ratio r must be at least 1, got {}", self.r)));
        }
        if !(self.re > 0.0 && self.re.is_finite()) {
            return Err(Error::InvalidParameter(format!("Reynolds number must be positive, got {}", self.re)));
        }
        if !(self.omega.re.is_finite() && self.omega.im.is_finite()) {
            return Err(Error::NonFinite("omega"));
        }
        Ok(())
    }

    /// `κ = r k`.
    pub fn kappa(&self) -> f64 {
        self.r * self.k
    }

    /// `λ = i Re ω − r²k²`, always recomputed from the stored fields.
    pub fn lambda_os(&self) -> Complex64 {
        Complex64::i() * self.re * self.omega - self.kappa() * self.kappa()
    }

    /// `i Re k`.
    pub fn shear(&self) -> Complex64 {
        Complex64::new(0.0, self.re * self.k)
    }

    /// Principal cube root of `i Re k`.
    pub fn airy_scale(&self) -> Complex64 {
        self.shear().powf(1.0 / 3.0)
    }

    pub fn center(&self, center: AiryCenter) -> Complex64 {
        match center {
            AiryCenter::Consistent => self.lambda_os() / self.shear(),
            AiryCenter::AsPrinted => self.lambda_os(),
        }
    }
}

/// Shift `s` inside `Ai[c(ξ − s)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AiryCenter {
    /// `s = λ/(i Re k)`: `φ` then solves the Orr-Sommerfeld equation.
    #[default]
    Consistent,
    /// `s = λ`, the literal shift in the Green's-function formula.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OSMethod {
    Quadrature,
    Series,
}

/// Interpretation choices attached to every series-form result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpretationFlag {
    /// Adjacent bracket blocks without an operator are added.
    ImplicitBlockSum,
    /// Each j-sum runs over the product of its coefficient and the `2F3` factor carrying `j`.
    TwoFThreeInsideSum,
    /// The overall `3^{−2/3}` and the printed `0F1` pair are used as written,
    /// which differs from the standard Ai normalisation in the linear term.
    PrintedNormalization,
    /// Which Airy centre was used.
    Center(AiryCenter),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OSSolution {
    pub y: f64,
    pub phi: Complex64,
    pub method: OSMethod,
    pub error_estimate: f64,
    pub flags: Vec<InterpretationFlag>,
    pub evaluations: usize,
    pub converged: bool,
}

/// Ai(z) from `3^{−2/3}/Γ(2/3) · 0F1(;2/3;z³/9) − 3^{−1/3} z/Γ(1/3) · 0F1(;4/3;z³/9)`.
///
/// Rejects `|z| > 12`, where the two series cancel too heavily.
pub fn airy_ai(z: Complex64, policy: &TruncationPolicy) -> Result<SeriesEvaluation> {
    let modulus = z.norm();
    if !modulus.is_finite() {
        return Err(Error::NonFinite("Airy argument"));
    }
    if modulus > AIRY_SERIES_CAP {
        return Err(Error::ArgumentTooLarge { modulus, cap: AIRY_SERIES_CAP });
    }
    let (c1, c2) = airy_origin_constants()?;
    let w = z * z * z / 9.0;
    let f1 = pfq(&PFqParams::real(&[], &[2.0 / 3.0])?, w, policy)?;
    let f2 = pfq(&PFqParams::real(&[], &[4.0 / 3.0])?, w, policy)?;
    let value = c1 * f1.value - c2 * z * f2.value;
    // Rounding in each series is relative to its largest term, which can
    // exceed the result by the cancellation factor.
    let error = c1 * f1.error_estimate + c2 * modulus * f2.error_estimate;
    Ok(SeriesEvaluation {
        value,
        terms_used: f1.terms_used.max(f2.terms_used),
        error_estimate: error,
        mode: SeriesMode::Convergent,
        converged: f1.converged && f2.converged,
    })
}

/// `Ai(0) = 3^{−2/3}/Γ(2/3)` and `−Ai'(0) = 3^{−1/3}/Γ(1/3)`.
fn airy_origin_constants() -> Result<(f64, f64)> {
    let g23 = gamma(Complex64::new(2.0 / 3.0, 0.0))?.re;
    let g13 = gamma(Complex64::new(1.0 / 3.0, 0.0))?.re;
    Ok((3f64.powf(-2.0 / 3.0) / g23, 3f64.powf(-1.0 / 3.0) / g13))
}

/// Large-|z| expansions of Ai and Ai', each summed to its smallest term:
///
/// `Ai(z) ~ e^{−ζ}/(2√π z^{1/4}) Σ (−1)^k u_k ζ^{−k}`,
/// `Ai'(z) ~ −z^{1/4} e^{−ζ}/(2√π) Σ (−1)^k v_k ζ^{−k}`, `v_k = −(6k+1)/(6k−1) u_k`.
fn airy_expansion(z: Complex64) -> (Complex64, Complex64) {
    let root = z.sqrt();
    let zeta = 2.0 / 3.0 * z * root;
    let mut u = Complex64::new(1.0, 0.0);
    let mut ai = CompensatedSum::new();
    let mut dai = CompensatedSum::new();
    ai.add(u);
    dai.add(u);
    let (mut ai_done, mut dai_done) = (false, false);
    for k in 1..200 {
        let kf = k as f64;
        let ratio = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        let next = -u * ratio / zeta;
        let v_prev = if k == 1 { u } else { -u * (6.0 * kf - 5.0) / (6.0 * kf - 7.0) };
        let v_next = -next * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        if !ai_done {
            if next.norm() >= u.norm() || next.norm() < 1e-17 * ai.value().norm() {
                ai_done = true;
            } else {
                ai.add(next);
            }
        }
        if !dai_done {
            if v_next.norm() >= v_prev.norm() || v_next.norm() < 1e-17 * dai.value().norm() {
                dai_done = true;
            } else {
                dai.add(v_next);
            }
        }
        if ai_done && dai_done {
            break;
        }
        u = next;
    }
    let scale = (-zeta).exp() / (2.0 * PI.sqrt());
    let quarter = root.sqrt();
    (scale / quarter * ai.value(), -scale * quarter * dai.value())
}

/// Ai at `anchor + step` from Ai and Ai' at `anchor`, by the Taylor series of
/// `w'' = z w`: `(n+1)(n+2) c_{n+2} = anchor · c_n + c_{n−1}`.
fn airy_taylor(anchor: Complex64, ai: Complex64, dai: Complex64, step: Complex64) -> Complex64 {
    let mut prev = Complex64::new(0.0, 0.0);
    let (mut c0, mut c1) = (ai, dai);
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    acc.add(c0);
    power *= step;
    acc.add(c1 * power);
    let mut small = 0;
    for n in 0..400 {
        let nf = n as f64;
        let c2 = (anchor * c0 + prev) / ((nf + 1.0) * (nf + 2.0));
        power *= step;
        let term = c2 * power;
        acc.add(term);
        if term.norm() <= 1e-17 * acc.value().norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        prev = c0;
        c0 = c1;
        c1 = c2;
    }
    acc.value()
}

/// Ai anywhere in the plane. Near the origin the `0F1` pair is used; off the
/// negative axis the large-|z| expansion is used at `|z| ≥ 9`. In the
/// sector `|arg z| ≤ π/3` the expansion at radius 9 is carried inward by a
/// Taylor step; the contour integral covers what remains.
fn airy_anywhere(z: Complex64) -> Result<Complex64> {
    let modulus = z.norm();
    if modulus <= AIRY_SERIES_SWITCH {
        return Ok(airy_ai(z, &TruncationPolicy::default())?.value);
    }
    let arg = z.arg().abs();
    if modulus >= AIRY_EXPANSION_SWITCH && arg <= 2.0 * PI / 3.0 {
        return Ok(airy_expansion(z).0);
    }
    // Inward steps are stable only where |Ai| grows toward the origin.
    if arg <= PI / 3.0 {
        let anchor = z * (AIRY_EXPANSION_SWITCH / modulus);
        let (ai, dai) = airy_expansion(anchor);
        return Ok(airy_taylor(anchor, ai, dai, z - anchor));
    }
    Ok(airy_integral(z, 1e-13)?.value)
}

fn accept(r: Result<QuadratureResult>) -> Result<QuadratureResult> {
    match r {
        Err(Error::MaxSubdivisions(partial)) => Ok(*partial),
        other => other,
    }
}

/// φ(y) from the Green's-function integrals with the consistent Airy centre.
pub fn phi_quadrature(y: f64, params: &OSParams, tol: f64) -> Result<OSSolution> {
    phi_quadrature_with(y, params, AiryCenter::Consistent, tol)
}

/// φ(y) from the Green's-function integrals, both evaluated by the oracle
/// quadratures. `tol` is the absolute tolerance of each integral.
pub fn phi_quadrature_with(y: f64, params: &OSParams, center: AiryCenter, tol: f64) -> Result<OSSolution> {
    params.validate()?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::InvalidParameter(format!("y must be nonnegative, got {y}")));
    }
    let kappa = params.kappa();
    let c = params.airy_scale();
    let s = params.center(center);
    let ai = |xi: f64| airy_anywhere(c * (xi - s));
    let failure = std::cell::RefCell::new(None);
    let guarded = |weight: f64, xi: f64| -> Complex64 {
        if weight < NEGLIGIBLE_WEIGHT {
            return Complex64::new(0.0, 0.0);
        }
        match ai(xi) {
            Ok(v) => v * weight,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };

    // e^{−κy} cosh(κξ) = (e^{−κ(y−ξ)} + e^{−κ(y+ξ)})/2 for 0 ≤ ξ ≤ y
    let near = accept(quad_finite(
        |xi: f64| guarded(0.5 * ((-kappa * (y - xi)).exp() + (-kappa * (y + xi)).exp()), xi),
        0.0,
        y,
        tol,
    ));
    // cosh(κy) e^{−κ(y+t)} = (1 + e^{−2κy})/2 · e^{−κt}
    let far = accept(quad_semi_infinite(
        |t: f64| guarded(0.5 * (1.0 + (-2.0 * kappa * y).exp()) * (-kappa * t).exp(), y + t),
        tol,
    ));
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let (near, far) = (near?, far?);
    Ok(OSSolution {
        y,
        phi: (near.value + far.value) / kappa,
        method: OSMethod::Quadrature,
        error_estimate: (near.error_estimate + far.error_estimate) / kappa,
        flags: vec![InterpretationFlag::Center(center)],
        evaluations: near.evaluations + far.evaluations,
        converged: near.converged && far.converged,
    })
}

/// Coefficient of the first `2F3` factor at `j = 0` in the series form:
/// `s/Γ(2/3) · (cosh²(κs) + sinh²(κs))/Γ(2)`.
pub fn series_leading_coefficient(params: &OSParams, center: AiryCenter) -> Result<Complex64> {
    params.validate()?;
    let s = params.center(center);
    let ks = s * params.kappa();
    let g23 = gamma(Complex64::new(2.0 / 3.0, 0.0))?;
    Ok(s / g23 * (ks.cosh().powi(2) + ks.sinh().powi(2)))
}

struct BlockSum {
    value: Complex64,
    error: f64,
    terms: usize,
    converged: bool,
}

/// `Σ_j coeff(j) · 2F3(a, 1; (j+o)/3, (j+o+1)/3, (j+o+2)/3; z)`.
fn block_sum<C>(coeff: C, a: f64, offset: f64, z: Complex64, policy: &TruncationPolicy) -> Result<BlockSum>
where
    C: Fn(usize, f64) -> Complex64,
{
    let mut acc = CompensatedSum::new();
    let mut error = 0.0;
    let mut small_run = 0;
    let mut prev = f64::INFINITY;
    let budget = (policy.max_terms / 10).max(1);
    let mut j = 0;
    let mut converged = false;
    while j < budget {
        let jf = j as f64;
        let lower = [(jf + offset) / 3.0, (jf + offset + 1.0) / 3.0, (jf + offset + 2.0) / 3.0];
        let params = PFqParams::real(&[a, 1.0], &lower)?.cancel_common();
        let f = pfq(&params, z, policy)?;
        let c = coeff(j, jf);
        let term = c * f.value;
        acc.add(term);
        error += c.norm() * f.error_estimate;
        let mag = term.norm();
        j += 1;
        if mag <= policy.rel_tol * acc.value().norm() + policy.abs_tol && mag <= prev {
            small_run += 1;
            if small_run >= policy.consecutive_small {
                error += mag;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        prev = mag;
    }
    Ok(BlockSum { value: acc.value(), error, terms: j, converged })
}

/// φ(y) from the `2F3` series form with the consistent Airy centre.
pub fn phi_series(y: f64, params: &OSParams, policy: &TruncationPolicy) -> Result<OSSolution> {
    phi_series_with(y, params, AiryCenter::Consistent, policy)
}

/// φ(y) from the six-block `2F3` series form, evaluated as written.
///
/// Blocks sharing the `e^{−κy}/(3^{2/3}κ)` prefactor are added (the printed
/// form juxtaposes them without an operator) and every j-sum encloses the
/// `2F3` factor whose lower parameters depend on `j`. Those choices are
/// reported in `flags`. The form is a large-y approximation and is meant
/// for comparison with [`phi_quadrature`], not as a replacement.
pub fn phi_series_with(y: f64, params: &OSParams, center: AiryCenter, policy: &TruncationPolicy) -> Result<OSSolution> {
    params.validate()?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::InvalidParameter(format!("y must be nonnegative, got {y}")));
    }
    let kappa = params.kappa();
    let q = params.shear();
    let s = params.center(center);
    let u = y - s;
    let g13 = gamma(Complex64::new(1.0 / 3.0, 0.0))?;
    let g23 = gamma(Complex64::new(2.0 / 3.0, 0.0))?;
    let cube_root_3 = 3f64.powf(1.0 / 3.0);
    let fact = |n: f64| gamma(Complex64::new(n, 0.0)).map(|g| g.re).unwrap_or(f64::INFINITY);

    let ks = kappa * s;
    let ku = kappa * u;
    let (chs, shs) = (ks.cosh(), ks.sinh());
    let (chu, shu) = (ku.cosh(), ku.sinh());
    let sq_s = kappa * kappa * s * s;
    let sq_u = kappa * kappa * u * u;
    let z_s = -q * s * s * s / 9.0;
    let z_u = q * u * u * u / 9.0;

    let b1 = block_sum(
        |j, jf| {
            let p = sq_s.powi(j as i32);
            (chs * chs + shs * shs) * p / fact(2.0 * jf + 2.0) - 2.0 * ks * chs * shs * p / fact(2.0 * jf + 3.0)
        },
        1.0 / 3.0,
        1.0,
        z_s,
        policy,
    )?;
    let b2 = block_sum(
        |j, jf| {
            let p = sq_u.powi(j as i32);
            let even = p / fact(2.0 * jf + 2.0);
            let odd = p / fact(2.0 * jf + 3.0);
            chs / g23 * (u * chu * even - kappa * u * u * shu * odd)
                - shs / g23 * (u * shu * even - kappa * u * u * chu * odd)
        },
        1.0 / 3.0,
        1.0,
        z_u,
        policy,
    )?;
    let b3 = block_sum(
        |j, jf| {
            let p = sq_s.powi(j as i32);
            (chs * chs + shs * shs) * p / fact(2.0 * jf + 3.0) - 2.0 * ks * chs * shs * p / fact(2.0 * jf + 4.0)
        },
        1.0 / 3.0,
        2.0,
        z_s,
        policy,
    )?;
    let b4 = block_sum(
        |j, jf| {
            let p = sq_u.powi(j as i32);
            let even = p / fact(2.0 * jf + 3.0);
            let odd = p / fact(2.0 * jf + 4.0);
            cube_root_3 * chs / g13 * (u * u * chu * even - kappa * u * u * u * shu * odd)
                - cube_root_3 * shs / g13 * (u * u * shu * even - kappa * u * u * u * chu * odd)
        },
        2.0 / 3.0,
        2.0,
        z_u,
        policy,
    )?;
    let b5 = block_sum(|j, jf| ku.powi(j as i32) / fact(jf + 2.0), 1.0 / 3.0, 1.0, z_u, policy)?;
    let b6 = block_sum(|j, jf| ku.powi(j as i32) / fact(jf + 3.0), 2.0 / 3.0, 2.0, z_u, policy)?;

    let first = s / g23 * b1.value + b2.value - s * s / g23 * b3.value + b4.value;
    let second = u / g23 * b5.value + cube_root_3 * u * u / g13 * b6.value;
    let first_error = (s / g23).norm() * b1.error + b2.error + (s * s / g23).norm() * b3.error + b4.error;
    let second_error = (u / g23).norm() * b5.error + (cube_root_3 * u * u / g13).norm() * b6.error;

    let pre = (-kappa * y).exp() / (3f64.powf(2.0 / 3.0) * kappa);
    let pre_cosh = (kappa * y).cosh() * pre;
    let phi = pre * first + pre_cosh * second;
    let blocks = [&b1, &b2, &b3, &b4, &b5, &b6];
    let evaluations = blocks.iter().map(|b| b.terms).sum();
    let converged = blocks.iter().all(|b| b.converged);
    let result = OSSolution {
        y,
        phi,
        method: OSMethod::Series,
        error_estimate: pre * first_error + pre_cosh * second_error,
        flags: vec![
            InterpretationFlag::ImplicitBlockSum,
            InterpretationFlag::TwoFThreeInsideSum,
            InterpretationFlag::PrintedNormalization,
            InterpretationFlag::Center(center),
        ],
        evaluations,
        converged,
    };
    if !(phi.re.is_finite() && phi.im.is_finite()) {
        return Err(Error::NonFinite("series form of phi"));
    }
    if !converged {
        return Err(Error::NotConverged(Box::new(SeriesEvaluation {
            value: result.phi,
            terms_used: result.evaluations,
            error_estimate: result.error_estimate,
            mode: SeriesMode::Convergent,
            converged: false,
        })));
    }
    Ok(result)
}

/// Normalised residual of the Orr-Sommerfeld operator applied to `phi` at `y`:
///
/// `|φ'''' − [2κ² + iRe k(y − ω/k)]φ'' + [κ⁴ + iκ²Re k(y − ω/k)]φ| / (max(|φ|, 1) κ⁴)`.
///
/// Derivatives come from Ridders-extrapolated central differences starting at
/// step `0.5/κ`.
pub fn os_residual<F>(y: f64, params: &OSParams, phi: F) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    params.validate()?;
    let kappa = params.kappa();
    let h0 = 0.5 / kappa;
    let d4 = fd_nth_derivative(&phi, y, 4, h0, 1e-3)?;
    let d2 = fd_nth_derivative(&phi, y, 2, h0, 1e-3)?;
    let value = phi(y);
    let drift = params.shear() * (y - params.omega / params.k);
    let k2 = kappa * kappa;
    let residual = d4.value - (2.0 * k2 + drift) * d2.value + (k2 * k2 + k2 * drift) * value;
    if !(residual.re.is_finite() && residual.im.is_finite()) {
        return Err(Error::NonFinite("Orr-Sommerfeld residual"));
    }
    Ok(residual.norm() / (value.norm().max(1.0) * k2 * k2))
}
