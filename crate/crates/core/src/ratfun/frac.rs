use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Representative of `x mod Z` in the half-open interval `(0, 1]`.
///
/// Integers map to `1`, not `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FracClass(BigRational);

impl FracClass {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for FracClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn frac_rep(x: &BigRational) -> FracClass {
    let (n, d) = (x.numer(), x.denom());
    let r = n.mod_floor(d);
    if r.is_zero() {
        FracClass(BigRational::one())
    } else {
        FracClass(BigRational::new(r, d.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn representatives() {
        assert_eq!(frac_rep(&q(0, 1)).value(), &q(1, 1));
        assert_eq!(frac_rep(&q(3, 1)).value(), &q(1, 1));
        assert_eq!(frac_rep(&q(-1, 3)).value(), &q(2, 3));
        assert_eq!(frac_rep(&q(7, 2)).value(), &q(1, 2));
        assert_eq!(frac_rep(&q(-5, 2)).value(), &q(1, 2));
    }
}
