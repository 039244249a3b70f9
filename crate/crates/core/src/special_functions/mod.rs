//! Complex log-gamma, Pochhammer symbols and generalized hypergeometric series.

mod asymptotic;
mod gamma;
mod pfq;
mod sum;

pub use asymptotic::{pfq_1f1_asymptotic, two_f_zero_asymptotic, ONE_F_ONE_ASYMPTOTIC_FLOOR};
pub use gamma::{gamma, log_gamma, pochhammer, recip_gamma};
pub use pfq::{pfq, PFqParams, SeriesEvaluation, SeriesMode, TruncationPolicy};
pub use sum::CompensatedSum;

pub(crate) use gamma::{nonpositive_integer, POLE_TOL};
