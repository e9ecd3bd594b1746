//! Exact polynomials, rational functions and truncated series in `u`, `v`.

mod frac;
mod poly;
#[allow(clippy::module_inception)]
mod ratfun;
mod series;
mod univariate;

pub use frac::{frac_rep, FracClass};
pub use poly::BivarPoly;
pub use ratfun::{Assignment, RatFun2, Specialized};
pub use series::{expand_series, TruncSeries2, DEFAULT_ORDER};
pub use univariate::{UniPoly, UniRatFun};

pub(crate) use series::Dense;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFunError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("denominator vanishes at the origin")]
    NonUnitDenominator,
    #[error("series expansion has a non-integral coefficient")]
    NonIntegralExpansion,
    #[error("denominator vanishes after substitution")]
    ZeroDenominatorAfterSubstitution,
    #[error("rational function is not a polynomial within the degree bound")]
    NotPolynomialWithinBound,
    #[error("exponent out of range")]
    ExponentTooLarge,
}
