use num_complex::Complex64;

use super::gamma::{exact_nonpositive_integer, nonpositive_integer, POLE_TOL};
use super::sum::CompensatedSum;
use crate::{Error, Result};

/// Upper parameters a₁..a_p and lower parameters b₁..b_q of a `pFq` series.
#[derive(Debug, Clone, PartialEq)]
pub struct PFqParams {
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

impl PFqParams {
    /// Rejects lower parameters that sit on a nonpositive integer.
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        for (index, b) in lower.iter().enumerate() {
            if !(b.re.is_finite() && b.im.is_finite()) {
                return Err(Error::NonFinite("lower parameter"));
            }
            if nonpositive_integer(*b, POLE_TOL).is_some() {
                return Err(Error::LowerParameterPole { index, value: *b });
            }
        }
        if upper.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite("upper parameter"));
        }
        Ok(Self { upper, lower })
    }

    pub fn real(upper: &[f64], lower: &[f64]) -> Result<Self> {
        Self::new(
            upper.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            lower.iter().map(|&b| Complex64::new(b, 0.0)).collect(),
        )
    }

    /// `0F0`, the exponential series.
    pub fn empty() -> Self {
        Self { upper: Vec::new(), lower: Vec::new() }
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Removes upper/lower pairs that agree to a few ulps; `(c)_n / (c)_n = 1`.
    pub fn cancel_common(&self) -> Self {
        let mut upper = self.upper.clone();
        let mut lower = Vec::with_capacity(self.lower.len());
        for b in &self.lower {
            let hit = upper.iter().position(|a| {
                let scale = a.norm().max(b.norm()).max(1.0);
                (a - b).norm() <= 4.0 * f64::EPSILON * scale
            });
            match hit {
                Some(i) => {
                    upper.swap_remove(i);
                }
                None => lower.push(*b),
            }
        }
        Self { upper, lower }
    }
}

/// Truncation controls for series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { rel_tol: 1e-14, abs_tol: 1e-300, max_terms: 10_000, consecutive_small: 3 }
    }
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize, consecutive_small: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if max_terms == 0 || consecutive_small == 0 {
            return Err(Error::InvalidParameter(
                "max_terms and consecutive_small must be at least 1".into(),
            ));
        }
        Ok(Self { rel_tol, abs_tol, max_terms, consecutive_small })
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Self { max_terms: max_terms.max(1), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMode {
    Convergent,
    Asymptotic,
}

/// Result of a truncated series.
///
/// For `Asymptotic` mode `error_estimate` is the magnitude of the first
/// omitted term. When `converged` is false the value is the partial sum at
/// the point summation stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: Complex64,
    pub terms_used: usize,
    pub error_estimate: f64,
    pub mode: SeriesMode,
    pub converged: bool,
}

impl SeriesEvaluation {
    pub(crate) fn exact(value: Complex64, mode: SeriesMode) -> Self {
        Self { value, terms_used: 1, error_estimate: 0.0, mode, converged: true }
    }

    /// Scales value and error by a constant factor.
    pub fn scaled(self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.norm(),
            ..self
        }
    }
}

/// Evaluates `pFq(a; b; z)` by summing its power series.
///
/// Terms follow the ratio recurrence
/// `t_{n+1} = t_n · ∏(a_i+n) / ∏(b_j+n) · z/(n+1)` and are accumulated with
/// Neumaier compensation. Summation stops after `consecutive_small`
/// successive shrinking terms below `rel_tol·|partial| + abs_tol`, or
/// immediately when a nonpositive-integer upper parameter ends the series.
pub fn pfq(params: &PFqParams, z: Complex64, policy: &TruncationPolicy) -> Result<SeriesEvaluation> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("pfq argument"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesEvaluation::exact(Complex64::new(1.0, 0.0), SeriesMode::Convergent));
    }
    let (p, q) = (params.p(), params.q());
    let terminates = params.upper.iter().any(|&a| exact_nonpositive_integer(a).is_some());
    if !terminates {
        if p > q + 1 {
            return Err(Error::DivergentSeries { p, q });
        }
        if p == q + 1 && z.norm() >= 1.0 {
            return Err(Error::OutsideConvergenceDisc { modulus: z.norm() });
        }
    }

    let mut acc = CompensatedSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut max_abs: f64 = 1.0;
    let mut small_run = 0usize;
    let mut terms_used = 1usize;
    let mut last_ratio;

    let finish = |value: Complex64, terms_used: usize, tail: f64, max_abs: f64, converged: bool| {
        let rounding = terms_used as f64 * f64::EPSILON * max_abs;
        SeriesEvaluation {
            value,
            terms_used,
            error_estimate: tail + rounding,
            mode: SeriesMode::Convergent,
            converged,
        }
    };

    loop {
        let n = (terms_used - 1) as f64;
        let mut ratio = z / (n + 1.0);
        for a in &params.upper {
            ratio *= a + n;
        }
        for b in &params.lower {
            ratio /= b + n;
        }
        if ratio == Complex64::new(0.0, 0.0) && terminates {
            // Polynomial case: every later term is exactly zero.
            return Ok(finish(acc.value(), terms_used, 0.0, max_abs, true));
        }
        if terms_used >= policy.max_terms {
            let eval = finish(acc.value(), terms_used, term.norm(), max_abs, false);
            return Err(Error::NotConverged(Box::new(eval)));
        }
        term *= ratio;
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::NonFinite("pfq term"));
        }
        acc.add(term);
        terms_used += 1;
        let mag = term.norm();
        max_abs = max_abs.max(mag);
        let ratio_mag = ratio.norm();
        last_ratio = ratio_mag;

        let small = mag <= policy.rel_tol * acc.value().norm() + policy.abs_tol && ratio_mag < 1.0;
        if small {
            small_run += 1;
            if small_run >= policy.consecutive_small {
                break;
            }
        } else {
            small_run = 0;
        }
    }

    let mag = term.norm();
    let tail = if last_ratio < 1.0 { mag * last_ratio / (1.0 - last_ratio) } else { mag };
    Ok(finish(acc.value(), terms_used, tail, max_abs, true))
}
