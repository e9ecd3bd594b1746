use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::expand_series;
use super::univariate::{UniPoly, UniRatFun};
use super::{BivarPoly, RatFunError};

/// Quotient of two bivariate integer polynomials.
///
/// No gcd reduction is performed; [`RatFun2::rat_eq`] (and `==`) compares by
/// cross-multiplication.
#[derive(Clone)]
pub struct RatFun2 {
    num: BivarPoly,
    den: BivarPoly,
}

/// A substitution for one or both variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// `u = v = t`
    Diagonal,
    /// `u = a`; the result is a function of `t = v`.
    U(BigRational),
    /// `v = b`; the result is a function of `t = u`.
    V(BigRational),
    /// `u = a`, `v = b`.
    Point(BigRational, BigRational),
}

/// Outcome of [`RatFun2::substitute`].
#[derive(Clone, Debug, PartialEq)]
pub enum Specialized {
    Function(UniRatFun),
    Value(BigRational),
}

impl RatFun2 {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Result<Self, RatFunError> {
        if den.is_zero() {
            return Err(RatFunError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        Self {
            num: p,
            den: BivarPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(BivarPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(BivarPoly::zero())
    }

    pub fn num(&self) -> &BivarPoly {
        &self.num
    }

    pub fn den(&self) -> &BivarPoly {
        &self.den
    }

    pub fn into_parts(self) -> (BivarPoly, BivarPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality of rational functions: `n1 d2 == n2 d1`.
    pub fn rat_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn inv(&self) -> Result<Self, RatFunError> {
        if self.num.is_zero() {
            return Err(RatFunError::DivisionByZeroFunction);
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RatFunError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, RatFunError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| RatFunError::ExponentTooLarge)?;
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Divide the largest common power of `f` out of numerator and
    /// denominator; returns the reduced function and that power.
    pub fn cancel_factor(&self, f: &BivarPoly) -> (Self, u32) {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut k = 0;
        if f.as_constant().is_some() || num.is_zero() {
            return (self.clone(), 0);
        }
        while let (Ok(n), Ok(d)) = (num.div_exact(f), den.div_exact(f)) {
            num = n;
            den = d;
            k += 1;
        }
        (Self { num, den }, k)
    }

    /// Exact polynomial equal to `self`, provided its total degree is at most
    /// `bound`.
    pub fn to_polynomial(&self, bound: u32) -> Result<BivarPoly, RatFunError> {
        let candidate = match expand_series(self, bound) {
            Ok(s) => s.to_poly(),
            Err(_) => {
                let q = self
                    .num
                    .div_exact(&self.den)
                    .map_err(|_| RatFunError::NotPolynomialWithinBound)?;
                if q.total_degree().unwrap_or(0) > bound {
                    return Err(RatFunError::NotPolynomialWithinBound);
                }
                q
            }
        };
        if &candidate * &self.den == self.num {
            Ok(candidate)
        } else {
            Err(RatFunError::NotPolynomialWithinBound)
        }
    }

    pub fn substitute(&self, a: &Assignment) -> Result<Specialized, RatFunError> {
        match a {
            Assignment::Point(x, y) => {
                let d = self.den.eval(x, y);
                if d.is_zero() {
                    return Err(RatFunError::ZeroDenominatorAfterSubstitution);
                }
                Ok(Specialized::Value(self.num.eval(x, y) / d))
            }
            _ => {
                let num = to_univariate(&self.num, a);
                let den = to_univariate(&self.den, a);
                UniRatFun::new(num, den)
                    .map(Specialized::Function)
                    .ok_or(RatFunError::ZeroDenominatorAfterSubstitution)
            }
        }
    }

    pub fn swap_uv(&self) -> Self {
        Self {
            num: self.num.swap_uv(),
            den: self.den.swap_uv(),
        }
    }

    pub fn to_plain(&self) -> String {
        if self.den.is_one() {
            return self.num.to_plain();
        }
        let num = if self.num.len() > 1 {
            format!("({})", self.num.to_plain())
        } else {
            self.num.to_plain()
        };
        format!("{num}/({})", self.den.to_plain())
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            return self.num.to_latex();
        }
        format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
    }
}

fn to_univariate(p: &BivarPoly, a: &Assignment) -> UniPoly {
    let mut out = UniPoly::zero();
    for (&(i, j), c) in p.terms() {
        let c = BigRational::from_integer(c.clone());
        let (k, w) = match a {
            Assignment::Diagonal => ((i + j) as usize, BigRational::one()),
            Assignment::U(x) => (j as usize, super::poly::pow_q(x, i)),
            Assignment::V(y) => (i as usize, super::poly::pow_q(y, j)),
            Assignment::Point(..) => unreachable!("handled by caller"),
        };
        out.add_at(k, c * w);
    }
    out
}

impl PartialEq for RatFun2 {
    fn eq(&self, other: &Self) -> bool {
        self.rat_eq(other)
    }
}

impl fmt::Debug for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun2({})", self.to_plain())
    }
}

impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl Add for &RatFun2 {
    type Output = RatFun2;
    fn add(self, rhs: &RatFun2) -> RatFun2 {
        if self.den == rhs.den {
            return RatFun2 {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RatFun2 {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFun2 {
    type Output = RatFun2;
    fn sub(self, rhs: &RatFun2) -> RatFun2 {
        self + &(-rhs)
    }
}

impl Neg for &RatFun2 {
    type Output = RatFun2;
    fn neg(self) -> RatFun2 {
        RatFun2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun2 {
    type Output = RatFun2;
    fn mul(self, rhs: &RatFun2) -> RatFun2 {
        RatFun2 {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl From<BivarPoly> for RatFun2 {
    fn from(p: BivarPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFun2 {
    fn from(c: i64) -> Self {
        Self::from_poly(BivarPoly::constant(BigInt::from(c)))
    }
}
