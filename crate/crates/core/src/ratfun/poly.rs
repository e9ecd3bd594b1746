use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RatFunError;

/// Sparse polynomial in `u`, `v` with integer coefficients.
///
/// Keys are exponent pairs `(i, j)` for the monomial `u^i v^j`. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `(uv)^k`
    pub fn uv_pow(k: u32) -> Self {
        Self::monomial(BigInt::one(), k, k)
    }

    /// `1 + c u^i v^j`
    pub fn one_plus(c: i64, i: u32, j: u32) -> Self {
        let mut p = Self::one();
        p.add_term((i, j), BigInt::from(c));
        p
    }

    /// `1 - (uv)^k`
    pub fn one_minus_uv(k: u32) -> Self {
        Self::one_plus(-1, k, k)
    }

    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<(u32, u32), BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiply by `u^i v^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, failing when a remainder is left.
    ///
    /// Uses division by leading terms in lex order; for an exact division
    /// the leading term of the quotient is forced at every step.
    pub fn div_exact(&self, divisor: &BivarPoly) -> Result<BivarPoly, RatFunError> {
        let (&lead_key, lead_c) = divisor.terms.iter().next_back().ok_or(RatFunError::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        while let Some((&(ri, rj), rc)) = rem.terms.iter().next_back() {
            if ri < lead_key.0 || rj < lead_key.1 {
                return Err(RatFunError::NotDivisible);
            }
            let (q, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return Err(RatFunError::NotDivisible);
            }
            let (qi, qj) = (ri - lead_key.0, rj - lead_key.1);
            for (&(a, b), c) in divisor.terms.iter() {
                rem.add_term((a + qi, b + qj), -(c * &q));
            }
            quot.add_term((qi, qj), q);
        }
        Ok(quot)
    }

    /// Evaluate with rational values for `u` and `v`.
    pub fn eval(&self, u: &num_rational::BigRational, v: &num_rational::BigRational) -> num_rational::BigRational {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_q(u, i) * pow_q(v, j);
        }
        acc
    }

    /// Drop every monomial of total degree above `order`.
    pub fn truncate(&self, order: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j <= order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Product, keeping only monomials of total degree `<= order`.
    pub fn mul_trunc(&self, other: &Self, order: u32) -> Self {
        let mut out = BTreeMap::<(u32, u32), BigInt>::new();
        for (&(a, b), x) in &self.terms {
            if a + b > order {
                continue;
            }
            for (&(c, d), y) in &other.terms {
                if a + b + c + d > order {
                    continue;
                }
                *out.entry((a + c, b + d)).or_default() += x * y;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    /// Swap the roles of `u` and `v`.
    pub fn swap_uv(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Plain rendering such as `1 + 2*u*v - u^2`.
    pub fn to_plain(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

pub(crate) fn pow_q(x: &num_rational::BigRational, e: u32) -> num_rational::BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Graded order: total degree, then `u`-degree descending.
fn display_order(p: &BivarPoly) -> Vec<(&(u32, u32), &BigInt)> {
    let mut ts: Vec<_> = p.terms.iter().collect();
    ts.sort_by(|(a, _), (b, _)| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
    ts
}

fn monomial_str(i: u32, j: u32, latex: bool) -> String {
    let var = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ if latex => format!("{name}^{{{e}}}"),
        _ => format!("{name}^{e}"),
    };
    let parts: Vec<String> = [var("u", i), var("v", j)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    parts.join(if latex { " " } else { "*" })
}

fn render(p: &BivarPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (&(i, j), c)) in display_order(p).into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_str(i, j, latex);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else if latex {
            out.push_str(&format!("{abs} {mono}"));
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({})", self.to_plain())
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &BivarPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c);
        }
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(mut self, rhs: BivarPoly) -> BivarPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BTreeMap::<(u32, u32), BigInt>::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                *out.entry((a + c, b + d)).or_default() += x * y;
            }
        }
        out.retain(|_, c| !c.is_zero());
        BivarPoly { terms: out }
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(u32, u32, String)> = self.terms.iter().map(|(&(i, j), c)| (i, j, c.to_string())).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        let mut p = BivarPoly::zero();
        for (i, j, c) in triples {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term((i, j), c);
        }
        Ok(p)
    }
}
