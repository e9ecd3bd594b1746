//! Exact Hodge-Poincare series of moduli stacks of principal bundles on
//! curves.

pub mod formulas;
pub mod hn;
pub mod linalg;
pub mod ratfun;
pub mod roots;
pub mod vhs;

pub use formulas::{FactoredSum, FormulaError, SpecializeKind, Term};
pub use ratfun::{BivarPoly, RatFun2, RatFunError, Rational, TruncSeries2};
pub use roots::{Degree, Family, GroupSpec, RootDataError, RootDatum};
