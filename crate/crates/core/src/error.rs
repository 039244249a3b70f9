use thiserror::Error;

use crate::oracle::QuadratureResult;
use crate::series_integrals::AntiderivativeValue;
use crate::special_functions::SeriesEvaluation;
use crate::ComplexScalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(ComplexScalar),

    #[error("lower parameter b[{index}] = {value} is a nonpositive integer")]
    LowerParameterPole { index: usize, value: ComplexScalar },

    #[error("series with p = {p} > q + 1 = {} diverges for z != 0", q + 1)]
    DivergentSeries { p: usize, q: usize },

    #[error("series with p = q + 1 requires |z| < 1, got |z| = {modulus}")]
    OutsideConvergenceDisc { modulus: f64 },

    #[error("series did not converge after {} terms (last estimate {:.3e})", .0.terms_used, .0.error_estimate)]
    NotConverged(Box<SeriesEvaluation>),

    #[error("outer series did not converge after {} terms", .0.outer_terms_used)]
    OuterNotConverged(Box<AntiderivativeValue>),

    #[error("argument |z| = {modulus} is below the asymptotic validity floor {floor}")]
    ArgumentTooSmall { modulus: f64, floor: f64 },

    #[error("argument |z| = {modulus} exceeds the series cap {cap}")]
    ArgumentTooLarge { modulus: f64, cap: f64 },

    #[error("asymptotic series has no decreasing regime: first term ratio {ratio:.3e} >= 1")]
    NoDecreasingRegime { ratio: f64 },

    #[error("lifted lower parameter {value} (m = {m}) is a nonpositive integer")]
    LiftedLowerPole { m: usize, value: ComplexScalar },

    #[error("alpha + m*beta + 1 vanishes at m = {m}")]
    ProductPole { m: usize },

    #[error("Pochhammer denominator ({value})_{n} vanishes")]
    PochhammerPole { value: ComplexScalar, n: usize },

    #[error("power x^s needs a positive real x, got {0}")]
    BranchDomain(ComplexScalar),

    #[error("alpha = {0} is outside the parity domain (even alpha > -1, odd alpha > -2)")]
    ParityDomainViolation(i64),

    #[error("quadrature hit the subdivision cap ({} panels)", .0.evaluations / 15)]
    MaxSubdivisions(Box<QuadratureResult>),

    #[error("integrand is not finite at interior point x = {0}")]
    SingularInterior(f64),

    #[error("integrand tail estimate {tail:.3e} exceeds tolerance {tol:.3e}")]
    DecayTooSlow { tail: f64, tol: f64 },

    #[error("finite-difference extrapolation stalled at error {error:.3e}")]
    NoiseFloor { error: f64 },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for the not-converged family, where a best-effort result is still available.
    pub fn is_not_converged(&self) -> bool {
        matches!(
            self,
            Error::NotConverged(_) | Error::OuterNotConverged(_) | Error::MaxSubdivisions(_)
        )
    }
}
