//! Residuals of the product identity behind the parameter lifting and of the
//! kernel-decomposition identities between the antiderivative series.
//!
//! The product identity, for integers `n, j ≥ 0`:
//!
//! ```text
//! ∏_{m=0}^{j} (nγ + α + mβ + 1)
//!     = ∏_{m=0}^{j} (α + mβ + 1) · ∏ ((α+γ+mβ+1)/γ)_n / ∏ ((α+mβ+1)/γ)_n
//! ```
//!
//! The six decompositions compare series factors `S_kernel(η)` (antiderivative
//! over `x^{α+1}`):
//!
//! | id | left        | right                                   |
//! |----|-------------|-----------------------------------------|
//! | T1 | `S_cosh(η)` | `½[S_exp(η) + S_exp(−η)]`               |
//! | T2 | `S_sinh(η)` | `½[S_exp(η) − S_exp(−η)]`               |
//! | T3 | `S_exp(η)`  | `S_cosh(η) + S_sinh(η)`                 |
//! | T4 | `S_cos(η)`  | `½[S_exp(iη) + S_exp(−iη)]`             |
//! | T5 | `S_sin(η)`  | `(1/2i)[S_exp(iη) − S_exp(−iη)]`        |
//! | T6 | `S_exp(iη)` | `S_cos(η) + i S_sin(η)`                 |

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series_integrals::{series_factor, IntegrandSpec, Kernel};
use crate::special_functions::{nonpositive_integer, pochhammer, TruncationPolicy, POLE_TOL};
use crate::{Error, Result};

/// Seed used by the randomized verification grids unless one is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Lemma1,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl IdentityId {
    pub const THEOREMS: [IdentityId; 6] =
        [IdentityId::T1, IdentityId::T2, IdentityId::T3, IdentityId::T4, IdentityId::T5, IdentityId::T6];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Lemma1 => "lemma1",
            IdentityId::T1 => "t1",
            IdentityId::T2 => "t2",
            IdentityId::T3 => "t3",
            IdentityId::T4 => "t4",
            IdentityId::T5 => "t5",
            IdentityId::T6 => "t6",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lemma1" | "lemma" => Ok(IdentityId::Lemma1),
            "t1" => Ok(IdentityId::T1),
            "t2" => Ok(IdentityId::T2),
            "t3" => Ok(IdentityId::T3),
            "t4" => Ok(IdentityId::T4),
            "t5" => Ok(IdentityId::T5),
            "t6" => Ok(IdentityId::T6),
            other => Err(Error::InvalidParameter(format!("unknown identity '{other}'"))),
        }
    }
}

/// One identity evaluation. The kernel of `spec` is ignored; `n` and `j`
/// are used only by `Lemma1`, `x` only by the theorems.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub spec: IntegrandSpec,
    pub x: Complex64,
    pub n: usize,
    pub j: usize,
}

/// Relative residual `|LHS − RHS| / max(|LHS|, 1)` of the product identity.
pub fn lemma1_residual(alpha: Complex64, beta: Complex64, gamma: Complex64, n: usize, j: usize) -> Result<f64> {
    if gamma == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("gamma must be nonzero".into()));
    }
    let mut lhs = Complex64::new(1.0, 0.0);
    let mut base = Complex64::new(1.0, 0.0);
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for m in 0..=j {
        let shift = alpha + beta * m as f64 + 1.0;
        lhs *= gamma * n as f64 + shift;
        base *= shift;
        let lower = shift / gamma;
        if let Some(k) = nonpositive_integer(lower, POLE_TOL) {
            if (-k as usize) < n {
                return Err(Error::PochhammerPole { value: lower, n });
            }
        }
        num *= pochhammer((shift + gamma) / gamma, n as u64);
        den *= pochhammer(lower, n as u64);
    }
    let rhs = base * num / den;
    if !(rhs.re.is_finite() && rhs.im.is_finite()) {
        return Err(Error::NonFinite("product identity"));
    }
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}

/// Both sides of a decomposition identity, assembled from series factors.
pub fn theorem_sides(case: &IdentityCase, policy: &TruncationPolicy) -> Result<(Complex64, Complex64)> {
    let i = Complex64::i();
    let spec = &case.spec;
    let eta = spec.eta;
    let s = |kernel: Kernel, eta: Complex64| -> Result<Complex64> {
        let spec = IntegrandSpec { kernel, eta, ..spec.clone() };
        Ok(series_factor(&spec, case.x, policy)?.value)
    };
    let sides = match case.id {
        IdentityId::Lemma1 => {
            return Err(Error::InvalidParameter("the product identity has no series sides".into()))
        }
        IdentityId::T1 => (s(Kernel::Cosh, eta)?, 0.5 * (s(Kernel::Exp, eta)? + s(Kernel::Exp, -eta)?)),
        IdentityId::T2 => (s(Kernel::Sinh, eta)?, 0.5 * (s(Kernel::Exp, eta)? - s(Kernel::Exp, -eta)?)),
        IdentityId::T3 => (s(Kernel::Exp, eta)?, s(Kernel::Cosh, eta)? + s(Kernel::Sinh, eta)?),
        IdentityId::T4 => (s(Kernel::Cos, eta)?, 0.5 * (s(Kernel::Exp, i * eta)? + s(Kernel::Exp, -i * eta)?)),
        IdentityId::T5 => {
            (s(Kernel::Sin, eta)?, (s(Kernel::Exp, i * eta)? - s(Kernel::Exp, -i * eta)?) / (2.0 * i))
        }
        IdentityId::T6 => (s(Kernel::Exp, i * eta)?, s(Kernel::Cos, eta)? + i * s(Kernel::Sin, eta)?),
    };
    Ok(sides)
}

/// Relative residual of an identity case.
///
/// Theorems use `|LHS − RHS| / max(|LHS|, |RHS|, 1)`; `Lemma1` delegates to
/// [`lemma1_residual`] with the spec's α, β, γ and the case's `n`, `j`.
pub fn theorem_residual(case: &IdentityCase, policy: &TruncationPolicy) -> Result<f64> {
    if case.id == IdentityId::Lemma1 {
        return lemma1_residual(case.spec.alpha, case.spec.beta, case.spec.gamma, case.n, case.j);
    }
    let (lhs, rhs) = theorem_sides(case, policy)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0))
}

/// A product-identity grid point: `(α, β, γ, n, j)`.
pub type Lemma1Point = (f64, f64, f64, usize, usize);

/// Smallest distance kept between `(α+mβ+1)/γ + i` and zero on random grids.
const LEMMA1_POLE_MARGIN: f64 = 1e-3;

/// Random product-identity cases: α, β uniform on `[−2, 2]`, γ from
/// `{±1, ±2, 3}`, `n, j ≤ 6`. Points within `1e-3` of a Pochhammer or
/// product zero are redrawn.
pub fn lemma1_grid(count: usize, seed: u64) -> Vec<Lemma1Point> {
    const GAMMAS: [f64; 5] = [1.0, -1.0, 2.0, -2.0, 3.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let alpha = rng.gen_range(-2.0..=2.0);
        let beta = rng.gen_range(-2.0..=2.0);
        let gamma = GAMMAS[rng.gen_range(0..GAMMAS.len())];
        let n = rng.gen_range(0..=6usize);
        let j = rng.gen_range(0..=6usize);
        let near_pole = (0..=j).any(|m| {
            let t: f64 = (alpha + m as f64 * beta + 1.0) / gamma;
            (0..n.max(1)).any(|i| (t + i as f64).abs() < LEMMA1_POLE_MARGIN)
                || (t * gamma + n as f64 * gamma).abs() < LEMMA1_POLE_MARGIN
        });
        if !near_pole {
            out.push((alpha, beta, gamma, n, j));
        }
    }
    out
}
