use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ratfun::{BivarPoly, Dense, RatFun2, TruncSeries2};

/// `coeff * (uv)^uv_power * prod (1 + u^i v^j)^e / prod (1 - (uv)^k)^m`.
///
/// Every formula in this crate is a signed sum of such products; keeping them
/// factored makes common denominators and truncated expansions cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub uv_power: u32,
    pub binomials: BTreeMap<(u32, u32), u32>,
    pub den: BTreeMap<u32, u32>,
}

impl Default for Term {
    fn default() -> Self {
        Self::one()
    }
}

impl Term {
    pub fn one() -> Self {
        Self {
            coeff: 1,
            uv_power: 0,
            binomials: BTreeMap::new(),
            den: BTreeMap::new(),
        }
    }

    pub fn scalar(c: i64) -> Self {
        Self {
            coeff: c,
            ..Self::one()
        }
    }

    pub fn uv(k: u32) -> Self {
        Self {
            uv_power: k,
            ..Self::one()
        }
    }

    /// `(1 + u^i v^j)^e`
    pub fn binomial(i: u32, j: u32, e: u32) -> Self {
        let mut t = Self::one();
        t.mul_binomial(i, j, e);
        t
    }

    /// `1 / (1 - (uv)^k)^m`
    pub fn inv_one_minus_uv(k: u32, m: u32) -> Self {
        let mut t = Self::one();
        t.div_one_minus_uv(k, m);
        t
    }

    pub fn mul_binomial(&mut self, i: u32, j: u32, e: u32) {
        if e > 0 {
            *self.binomials.entry((i, j)).or_default() += e;
        }
    }

    pub fn div_one_minus_uv(&mut self, k: u32, m: u32) {
        assert!(k > 0, "1 - (uv)^0 vanishes");
        if m > 0 {
            *self.den.entry(k).or_default() += m;
        }
    }

    pub fn times(&self, other: &Term) -> Term {
        let mut out = self.clone();
        out.coeff *= other.coeff;
        out.uv_power += other.uv_power;
        for (&(i, j), &e) in &other.binomials {
            out.mul_binomial(i, j, e);
        }
        for (&k, &m) in &other.den {
            out.div_one_minus_uv(k, m);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Term {
        (0..e).fold(Term::one(), |acc, _| acc.times(self))
    }

    pub fn negated(&self) -> Term {
        Term {
            coeff: -self.coeff,
            ..self.clone()
        }
    }

    fn binomial_product(&self) -> BivarPoly {
        let mut p = BivarPoly::one();
        for (&(i, j), &e) in &self.binomials {
            p = &p * &BivarPoly::one_plus(1, i, j).pow(e);
        }
        p
    }

    pub fn numerator(&self) -> BivarPoly {
        self.binomial_product()
            .shift(self.uv_power, self.uv_power)
            .scale(&BigInt::from(self.coeff))
    }

    pub fn denominator(&self) -> BivarPoly {
        den_poly(&self.den)
    }

    pub fn to_ratfun(&self) -> RatFun2 {
        RatFun2::new(self.numerator(), self.denominator()).expect("products of 1 - (uv)^k are nonzero")
    }

    fn expand_dense(&self, order: u32) -> Option<Dense> {
        if self.coeff == 0 || 2 * self.uv_power > order {
            return None;
        }
        let mut d = Dense::zero(order);
        *d.get_mut(self.uv_power, self.uv_power) = BigInt::from(self.coeff);
        for (&(i, j), &e) in &self.binomials {
            for _ in 0..e {
                d.mul_one_plus(i, j);
            }
        }
        for (&k, &m) in &self.den {
            for _ in 0..m {
                d.div_one_minus_uv(k);
            }
        }
        Some(d)
    }

    pub fn expand(&self, order: u32) -> TruncSeries2 {
        self.expand_dense(order)
            .map_or_else(|| TruncSeries2::zero(order), |d| TruncSeries2::from_dense(&d))
    }

    pub fn to_latex(&self) -> String {
        let mut num = String::new();
        if self.uv_power == 1 {
            num.push_str("uv");
        } else if self.uv_power > 1 {
            let _ = write!(num, "(uv)^{{{}}}", self.uv_power);
        }
        for (&(i, j), &e) in &self.binomials {
            let mono = latex_monomial(i, j);
            if e == 1 {
                let _ = write!(num, "(1+{mono})");
            } else {
                let _ = write!(num, "(1+{mono})^{{{e}}}");
            }
        }
        if num.is_empty() {
            num.push('1');
        }
        let mut den = String::new();
        for (&k, &m) in &self.den {
            let base = if k == 1 {
                "uv".to_string()
            } else {
                format!("(uv)^{{{k}}}")
            };
            if m == 1 {
                let _ = write!(den, "(1-{base})");
            } else {
                let _ = write!(den, "(1-{base})^{{{m}}}");
            }
        }
        let body = if den.is_empty() {
            num
        } else {
            format!("\\frac{{{num}}}{{{den}}}")
        };
        match self.coeff.abs() {
            1 => body,
            c => format!("{c}\\,{body}"),
        }
    }
}

fn latex_monomial(i: u32, j: u32) -> String {
    let p = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{{{e}}}"),
    };
    format!("{}{}", p("u", i), p("v", j))
}

fn den_poly(den: &BTreeMap<u32, u32>) -> BivarPoly {
    let mut p = BivarPoly::one();
    for (&k, &m) in den {
        p = &p * &BivarPoly::one_minus_uv(k).pow(m);
    }
    p
}

/// A signed sum of [`Term`]s, kept in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredSum {
    pub terms: Vec<Term>,
}

impl FactoredSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: Term) {
        if t.coeff != 0 {
            self.terms.push(t);
        }
    }

    pub fn extend(&mut self, other: FactoredSum) {
        self.terms.extend(other.terms);
    }

    pub fn times(&self, t: &Term) -> FactoredSum {
        FactoredSum {
            terms: self.terms.iter().map(|x| x.times(t)).collect(),
        }
    }

    /// Denominator multiplicities of the common denominator (largest power
    /// of each `1 - (uv)^k` over all terms).
    pub fn common_den(&self) -> BTreeMap<u32, u32> {
        let mut out: BTreeMap<u32, u32> = BTreeMap::new();
        for t in &self.terms {
            for (&k, &m) in &t.den {
                let e = out.entry(k).or_default();
                *e = (*e).max(m);
            }
        }
        out
    }

    /// Sum over a common denominator. Terms are combined in their stored
    /// order, so the representative is deterministic.
    pub fn to_ratfun(&self) -> RatFun2 {
        let common = self.common_den();
        let mut cache: HashMap<&BTreeMap<(u32, u32), u32>, BivarPoly> = HashMap::new();
        for t in &self.terms {
            cache.entry(&t.binomials).or_insert_with(|| t.binomial_product());
        }
        let parts: Vec<BivarPoly> = self
            .terms
            .par_iter()
            .map(|t| {
                let missing: BTreeMap<u32, u32> = common
                    .iter()
                    .map(|(&k, &m)| (k, m - t.den.get(&k).copied().unwrap_or(0)))
                    .collect();
                let p = &cache[&t.binomials] * &den_poly(&missing);
                p.shift(t.uv_power, t.uv_power).scale(&BigInt::from(t.coeff))
            })
            .collect();
        let mut num = BivarPoly::zero();
        for p in &parts {
            num += p;
        }
        RatFun2::new(num, den_poly(&common)).expect("products of 1 - (uv)^k are nonzero")
    }

    pub fn expand(&self, order: u32) -> TruncSeries2 {
        let parts: Vec<Option<Dense>> = self.terms.par_iter().map(|t| t.expand_dense(order)).collect();
        let mut acc = Dense::zero(order);
        for d in parts.iter().flatten() {
            acc.add_assign(d);
        }
        TruncSeries2::from_dense(&acc)
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < 0;
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&t.to_latex());
        }
        out
    }
}
