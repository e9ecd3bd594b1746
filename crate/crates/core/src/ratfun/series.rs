use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BivarPoly, RatFun2, RatFunError};

/// Default truncation order for series expansions.
pub const DEFAULT_ORDER: u32 = 24;

/// Power series in `u`, `v` truncated at total degree `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries2 {
    order: u32,
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl TruncSeries2 {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_poly(&BivarPoly::one(), order)
    }

    pub fn from_poly(p: &BivarPoly, order: u32) -> Self {
        Self {
            order,
            coeffs: p.truncate(order).into_terms(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All stored coefficients are `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// First coefficient (in `(i, j)` order) that is negative.
    pub fn first_negative(&self) -> Option<((u32, u32), BigInt)> {
        self.coeffs
            .iter()
            .find(|(_, c)| c.is_negative())
            .map(|(k, c)| (*k, c.clone()))
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(i, j), _)| i + j <= order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// The series as a polynomial (forgetting the truncation).
    pub fn to_poly(&self) -> BivarPoly {
        BivarPoly::from_terms(self.coeffs.iter().map(|(k, c)| (*k, c.clone())))
    }

    /// Multiply by `u^i v^j`, dropping what falls past the order.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(a, b), _)| a + b + i + j <= self.order)
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.order);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect();
        }
        out
    }

    fn combine(&self, rhs: &Self, sign: i32) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (&(i, j), c) in &rhs.coeffs {
            if i + j > order {
                continue;
            }
            let e = out.coeffs.entry((i, j)).or_default();
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub(crate) fn from_dense(d: &Dense) -> Self {
        let mut coeffs = BTreeMap::new();
        for i in 0..=d.order {
            for j in 0..=(d.order - i) {
                let c = d.get(i, j);
                if !c.is_zero() {
                    coeffs.insert((i, j), c.clone());
                }
            }
        }
        Self { order: d.order, coeffs }
    }

    pub(crate) fn to_dense(&self) -> Dense {
        let mut d = Dense::zero(self.order);
        for (&(i, j), c) in &self.coeffs {
            *d.get_mut(i, j) = c.clone();
        }
        d
    }
}

impl Add for &TruncSeries2 {
    type Output = TruncSeries2;
    fn add(self, rhs: &TruncSeries2) -> TruncSeries2 {
        self.combine(rhs, 1)
    }
}

impl Sub for &TruncSeries2 {
    type Output = TruncSeries2;
    fn sub(self, rhs: &TruncSeries2) -> TruncSeries2 {
        self.combine(rhs, -1)
    }
}

impl Neg for &TruncSeries2 {
    type Output = TruncSeries2;
    fn neg(self) -> TruncSeries2 {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &TruncSeries2 {
    type Output = TruncSeries2;
    fn mul(self, rhs: &TruncSeries2) -> TruncSeries2 {
        let order = self.order.min(rhs.order);
        let mut d = self.truncate(order).to_dense();
        d.mul_poly(&rhs.to_poly());
        TruncSeries2::from_dense(&d)
    }
}

/// Dense triangular work buffer indexed by `(i, j)` with `i + j <= order`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    order: u32,
    data: Vec<BigInt>,
}

impl Dense {
    pub(crate) fn zero(order: u32) -> Self {
        let n = (order as usize + 1) * (order as usize + 1);
        Self {
            order,
            data: vec![BigInt::zero(); n],
        }
    }

    fn idx(&self, i: u32, j: u32) -> usize {
        i as usize * (self.order as usize + 1) + j as usize
    }

    pub(crate) fn get(&self, i: u32, j: u32) -> &BigInt {
        &self.data[self.idx(i, j)]
    }

    pub(crate) fn get_mut(&mut self, i: u32, j: u32) -> &mut BigInt {
        let k = self.idx(i, j);
        &mut self.data[k]
    }

    /// In-place multiplication by a (sparse) polynomial.
    pub(crate) fn mul_poly(&mut self, p: &BivarPoly) {
        let n = self.order;
        let mut out = Dense::zero(n);
        for (&(a, b), c) in p.terms() {
            if a + b > n {
                continue;
            }
            for i in a..=n - b {
                for j in b..=(n - i) {
                    let x = self.get(i - a, j - b);
                    if !x.is_zero() {
                        *out.get_mut(i, j) += x * c;
                    }
                }
            }
        }
        *self = out;
    }

    /// In-place multiplication by `1 + u^a v^b`, `(a, b) != (0, 0)`.
    pub(crate) fn mul_one_plus(&mut self, a: u32, b: u32) {
        let n = self.order;
        if a + b > n {
            return;
        }
        for i in (a..=n - b).rev() {
            for j in (b..=(n - i)).rev() {
                let prev = self.get(i - a, j - b).clone();
                if !prev.is_zero() {
                    *self.get_mut(i, j) += prev;
                }
            }
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Dense) {
        debug_assert_eq!(self.order, other.order);
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    /// In-place multiplication by `1 / (1 - (uv)^k)`.
    pub(crate) fn div_one_minus_uv(&mut self, k: u32) {
        let n = self.order;
        for i in k..=n {
            for j in k..=(n - i) {
                let prev = self.get(i - k, j - k).clone();
                if !prev.is_zero() {
                    *self.get_mut(i, j) += prev;
                }
            }
        }
    }

    /// In-place multiplication by `1 / p`, for `p` with constant term `±1`
    /// or, more generally, whenever every quotient stays integral.
    pub(crate) fn div_poly(&mut self, p: &BivarPoly) -> Result<(), RatFunError> {
        let c0 = p.coeff(0, 0);
        if c0.is_zero() {
            return Err(RatFunError::NonUnitDenominator);
        }
        let rest: Vec<((u32, u32), BigInt)> = p
            .terms()
            .filter(|(k, _)| **k != (0, 0))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        let n = self.order;
        for i in 0..=n {
            for j in 0..=(n - i) {
                let mut acc = self.get(i, j).clone();
                for ((a, b), c) in &rest {
                    let (a, b) = (*a, *b);
                    if a <= i && b <= j {
                        let x = self.get(i - a, j - b);
                        if !x.is_zero() {
                            acc -= x * c;
                        }
                    }
                }
                if acc.is_zero() {
                    *self.get_mut(i, j) = acc;
                    continue;
                }
                let (q, r) = acc.div_rem(&c0);
                if !r.is_zero() {
                    return Err(RatFunError::NonIntegralExpansion);
                }
                *self.get_mut(i, j) = q;
            }
        }
        Ok(())
    }
}

/// Taylor expansion of `r` at the origin, truncated at total degree `order`.
///
/// Fails when the denominator vanishes at the origin or a coefficient would
/// not be an integer.
pub fn expand_series(r: &RatFun2, order: u32) -> Result<TruncSeries2, RatFunError> {
    let mut d = TruncSeries2::from_poly(r.num(), order).to_dense();
    let den = r.den();
    if !den.is_one() {
        d.div_poly(den)?;
    }
    Ok(TruncSeries2::from_dense(&d))
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: u32,
    terms: Vec<(u32, u32, String)>,
}

impl Serialize for TruncSeries2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order,
            terms: self.coeffs.iter().map(|(&(i, j), c)| (i, j, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        let mut coeffs = BTreeMap::new();
        for (i, j, c) in repr.terms {
            if i + j > repr.order {
                return Err(D::Error::custom(format!("term ({i},{j}) beyond order {}", repr.order)));
            }
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if !c.is_zero() {
                coeffs.insert((i, j), c);
            }
        }
        Ok(Self {
            order: repr.order,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ts: &[(u32, u32, i64)]) -> BivarPoly {
        BivarPoly::from_terms(ts.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))))
    }

    #[test]
    fn geometric_series() {
        let r = RatFun2::new(BivarPoly::one(), BivarPoly::one_minus_uv(1)).unwrap();
        let s = expand_series(&r, 6).unwrap();
        for i in 0..=6u32 {
            for j in 0..=(6 - i) {
                assert_eq!(s.coeff(i, j), BigInt::from((i == j) as i32), "({i},{j})");
            }
        }
    }

    #[test]
    fn small_example() {
        // (1+u)^2 (1+v)^2 / (1-uv) to order 2
        let num = &BivarPoly::one_plus(1, 1, 0).pow(2) * &BivarPoly::one_plus(1, 0, 1).pow(2);
        let r = RatFun2::new(num, BivarPoly::one_minus_uv(1)).unwrap();
        let s = expand_series(&r, 2).unwrap();
        assert_eq!(
            s.to_poly(),
            poly(&[(0, 0, 1), (1, 0, 2), (0, 1, 2), (2, 0, 1), (1, 1, 5), (0, 2, 1)])
        );
    }

    #[test]
    fn zero_at_origin_is_rejected() {
        let r = RatFun2::new(BivarPoly::one(), BivarPoly::u()).unwrap();
        assert_eq!(expand_series(&r, 3), Err(RatFunError::NonUnitDenominator));
        let r = RatFun2::new(BivarPoly::one(), BivarPoly::constant(BigInt::from(2))).unwrap();
        assert_eq!(expand_series(&r, 3), Err(RatFunError::NonIntegralExpansion));
    }

    #[test]
    fn special_division_matches_generic() {
        let p = &BivarPoly::one_plus(3, 2, 1) * &BivarPoly::one_plus(-1, 0, 1);
        let mut a = TruncSeries2::from_poly(&p, 10).to_dense();
        let mut b = a.clone();
        a.div_one_minus_uv(2);
        b.div_poly(&BivarPoly::one_minus_uv(2)).unwrap();
        assert_eq!(TruncSeries2::from_dense(&a), TruncSeries2::from_dense(&b));
    }

    #[test]
    fn json_round_trip() {
        let s = TruncSeries2::from_poly(&poly(&[(0, 0, 1), (3, 1, -4)]), 5);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"order":5,"terms":[[0,0,"1"],[3,1,"-4"]]}"#);
        let back: TruncSeries2 = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn products_respect_order() {
        let a = TruncSeries2::from_poly(&BivarPoly::one_plus(1, 1, 0), 3);
        let b = TruncSeries2::from_poly(&BivarPoly::one_plus(1, 0, 1), 2);
        let c = &a * &b;
        assert_eq!(c.order(), 2);
        assert_eq!(c.to_poly(), poly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]));
    }
}
