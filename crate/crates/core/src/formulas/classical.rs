//! Composition-sum formulas for the classical families, used as an
//! independent check of the closed formula.

use num_rational::BigRational;
use num_traits::Zero;

use super::{a_term, integral_exponent, pair_products, require_genus, FactoredSum, FormulaError, Term};
use crate::linalg::q;
use crate::ratfun::{frac_rep, RatFun2};
use crate::roots::{Factor, Family};

/// Ordered compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn gl_block(s: usize, g: u32) -> Term {
    a_term(&(1..=s as u32).collect::<Vec<_>>(), g)
}

fn sl_block(s: usize, g: u32) -> Term {
    a_term(&(2..=s as u32).collect::<Vec<_>>(), g)
}

fn factor_block(family: Family, s: usize, g: u32) -> Term {
    a_term(&Factor { family, rank: s }.degrees(), g)
}

fn half_class(d: i64) -> BigRational {
    frac_rep(&BigRational::new(d.into(), 2.into())).value().clone()
}

fn sign(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

/// Accumulates one summand; the final `(uv)` exponent must be integral.
struct Builder {
    term: Term,
    exp: BigRational,
}

impl Builder {
    fn new(coeff: i64) -> Self {
        Self {
            term: Term::scalar(coeff),
            exp: BigRational::zero(),
        }
    }

    fn mul(&mut self, t: &Term) {
        self.term = self.term.times(t);
    }

    /// `(uv)^{k w} / (1 - (uv)^k)`
    fn root(&mut self, k: usize, w: BigRational) {
        self.term.div_one_minus_uv(k as u32, 1);
        self.exp += q(k as i64) * w;
    }

    fn shift(&mut self, k: usize) {
        self.exp += q(k as i64);
    }

    fn finish(mut self) -> Result<Term, FormulaError> {
        let e = integral_exponent(&self.exp).ok_or_else(|| FormulaError::NonIntegralExponent {
            subset: 0,
            value: self.exp.to_string(),
        })?;
        self.term.uv_power += e;
        Ok(self.term)
    }
}

fn gl_sum(r: usize, d: i64, g: u32, special: bool) -> Result<FactoredSum, FormulaError> {
    let mut sum = FactoredSum::new();
    let p = a_term(&[1], g);
    for comp in compositions(r) {
        let l = comp.len();
        let mut b = Builder::new(sign(l % 2 == 0));
        if special {
            b.mul(&p.pow(l as u32 - 1));
        }
        for &ri in &comp {
            b.mul(&if special { sl_block(ri, g) } else { gl_block(ri, g) });
        }
        b.shift((g as usize - 1) * pair_products(&comp));
        let mut partial = 0i64;
        for i in 0..l - 1 {
            partial += comp[i] as i64;
            let w = frac_rep(&BigRational::new((-partial * d).into(), (r as i64).into()));
            b.root(comp[i] + comp[i + 1], w.value().clone());
        }
        sum.push(b.finish()?);
    }
    Ok(sum)
}

/// Chain of `GL` blocks `r_1, ..., r_m` joined by roots with trivial weight.
fn gl_chain(b: &mut Builder, comp: &[usize], g: u32) {
    for &ri in comp {
        b.mul(&gl_block(ri, g));
    }
    for i in 0..comp.len().saturating_sub(1) {
        b.root(comp[i] + comp[i + 1], q(1));
    }
}

/// Types B and C share their shape; `c` is 0 for B and 1 for C.
fn bc_sum(family: Family, r: usize, d: i64, g: u32) -> Result<FactoredSum, FormulaError> {
    let c = usize::from(family == Family::Sp);
    let mut sum = FactoredSum::new();
    let gm = g as usize - 1;
    for comp in compositions(r) {
        let l = comp.len();
        let s = comp[l - 1];
        let pp = pair_products(&comp);

        let mut b = Builder::new(sign(l % 2 == 1));
        gl_chain(&mut b, &comp, g);
        b.shift(gm * (pp + r * (r + 1) / 2));
        if c == 0 {
            b.root(2 * s, half_class(d));
        } else {
            b.root(s + 1, q(1));
        }
        sum.push(b.finish()?);

        let mut b = Builder::new(sign(l % 2 == 0));
        gl_chain(&mut b, &comp[..l - 1], g);
        b.mul(&factor_block(family, s, g));
        b.shift(gm * (pp + r * (r + 1) / 2 - s * (s + 1) / 2));
        if l > 1 {
            b.root(comp[l - 2] + 2 * s + c, q(1));
        }
        sum.push(b.finish()?);
    }
    Ok(sum)
}

fn d_sum(r: usize, d: i64, g: u32) -> Result<FactoredSum, FormulaError> {
    let mut sum = FactoredSum::new();
    let gm = g as usize - 1;
    for comp in compositions(r) {
        let l = comp.len();
        let s = comp[l - 1];
        let pp = pair_products(&comp);
        let base = gm * (pp + r * (r - 1) / 2);
        if s == 1 {
            if l < 2 {
                continue;
            }
            let mut b = Builder::new(sign(l % 2 == 1));
            gl_chain(&mut b, &comp, g);
            b.shift(base);
            let k = comp[l - 2] + 1;
            b.term.div_one_minus_uv(k as u32, 1);
            b.exp += q(2 * k as i64) * half_class(d) - q(k as i64);
            sum.push(b.finish()?);
        } else {
            let mut b = Builder::new(2 * sign(l % 2 == 1));
            gl_chain(&mut b, &comp, g);
            b.shift(base);
            b.root(2 * (s - 1), half_class(d));
            sum.push(b.finish()?);

            let mut b = Builder::new(sign(l % 2 == 0));
            gl_chain(&mut b, &comp[..l - 1], g);
            b.mul(&factor_block(Family::SOEven, s, g));
            b.shift(gm * (pp + r * (r - 1) / 2 - s * (s - 1) / 2));
            if l > 1 {
                b.root(comp[l - 2] + 2 * s - 1, q(1));
            }
            sum.push(b.finish()?);
        }
    }
    Ok(sum)
}

/// Composition-sum form of the semistable series for a single classical
/// factor. `d` is the degree in `pi_1`.
pub fn semistable_classical_terms(family: Family, rank: usize, d: i64, g: u32) -> Result<FactoredSum, FormulaError> {
    require_genus(g)?;
    let f = Factor::new(family, rank)?;
    let bad_degree = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(FormulaError::RootData(crate::roots::RootDataError::InvalidDegree(
                format!("{d} for {f}"),
            )))
        }
    };
    match family {
        Family::GL => gl_sum(rank, d, g, false),
        Family::SL => {
            bad_degree(d == 0)?;
            gl_sum(rank, 0, g, true)
        }
        Family::SOOdd => {
            bad_degree((0..=1).contains(&d))?;
            bc_sum(family, rank, d, g)
        }
        Family::Sp => {
            bad_degree(d == 0)?;
            bc_sum(family, rank, d, g)
        }
        Family::SOEven => {
            bad_degree((0..=1).contains(&d))?;
            d_sum(rank, d, g)
        }
    }
}

pub fn hp_semistable_classical(family: Family, rank: usize, d: i64, g: u32) -> Result<RatFun2, FormulaError> {
    Ok(semistable_classical_terms(family, rank, d, g)?.to_ratfun())
}
