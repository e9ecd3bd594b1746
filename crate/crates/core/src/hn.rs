//! Harder-Narasimhan strata: enumeration up to a codimension bound, the GL
//! block oracle, and the stratified recursion as truncated series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::formulas::{a_term, closed_formula_terms, semistable_terms, FormulaError};
use crate::linalg::{inverse, q};
use crate::ratfun::{frac_rep, TruncSeries2};
use crate::roots::{Degree, GroupSpec, RootDataError, RootDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HnError {
    #[error("codimension {0} is not an integer")]
    NonIntegralCodim(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// A Harder-Narasimhan type `(I, delta)` with its slope and codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnType {
    /// Simple roots defining the parabolic, as a bitmask.
    pub subset: u32,
    /// Representative in `Z^n` of the degree of the Levi reduction.
    pub delta_lift: Vec<i64>,
    pub mu: Vec<BigRational>,
    pub codim: u32,
}

/// `sum_{beta > 0, beta(mu) > 0} (beta(mu) + g - 1)`.
pub fn codim(datum: &RootDatum, mu: &[BigRational], g: u32) -> Result<u32, HnError> {
    let gm = q(g as i64 - 1);
    let mut total = BigRational::zero();
    for b in datum.positive_roots() {
        let x = datum.pair(&b.weight, mu);
        if x.is_positive() {
            total += x + &gm;
        }
    }
    to_codim(&total)
}

fn to_codim(x: &BigRational) -> Result<u32, HnError> {
    if x.is_integer() {
        x.to_integer()
            .to_u32()
            .ok_or_else(|| HnError::NonIntegralCodim(x.to_string()))
    } else {
        Err(HnError::NonIntegralCodim(x.to_string()))
    }
}

fn ceil(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("box bound fits in i64")
}

fn floor(x: &BigRational) -> i64 {
    x.floor().to_integer().to_i64().expect("box bound fits in i64")
}

fn lattice_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut acc: Vec<Vec<i64>> = vec![vec![]];
    for (&a, &b) in lo.iter().zip(hi) {
        acc = acc
            .into_iter()
            .flat_map(|p| (a..=b).map(move |x| [p.as_slice(), &[x]].concat()))
            .collect();
    }
    acc
}

#[allow(clippy::needless_range_loop)]
fn types_for_subset(datum: &RootDatum, x0: &[i64], mask: u32, g: u32, max_codim: u32) -> Result<Vec<HnType>, HnError> {
    let nil: Vec<_> = datum.nilradical(mask).collect();
    let base = nil.len() as u32 * (g - 1);
    if base > max_codim {
        return Ok(Vec::new());
    }
    let x0q: Vec<BigRational> = x0.iter().map(|&v| q(v)).collect();
    let (ids, y0, m) = datum.slope_system(mask, &x0q);
    let w = inverse(&m).expect("slope system is invertible");
    let h: Vec<i64> = ids.iter().map(|&a| nil.iter().map(|b| b.coeffs[a]).sum()).collect();
    let room = q((max_codim - base) as i64);
    let bound: Vec<BigRational> = h.iter().map(|&x| &room / q(x)).collect();
    let k = ids.len();
    let (mut lo, mut hi) = (Vec::with_capacity(k), Vec::with_capacity(k));
    for b in 0..k {
        let shift: BigRational = (0..k).map(|a| &w[b][a] * &y0[a]).sum();
        let (mut l, mut u) = (-shift.clone(), -shift);
        for a in 0..k {
            let t = &w[b][a] * &bound[a];
            if t.is_negative() {
                l += t;
            } else {
                u += t;
            }
        }
        lo.push(ceil(&l));
        hi.push(floor(&u));
    }
    let coroots = datum.simple_coroots();
    let mut out = Vec::new();
    for n in lattice_box(&lo, &hi) {
        let y: Vec<BigRational> = (0..k)
            .map(|a| &y0[a] + (0..k).map(|b| &m[a][b] * q(n[b])).sum::<BigRational>())
            .collect();
        if !y.iter().all(Signed::is_positive) {
            continue;
        }
        let total = q(base as i64) + y.iter().zip(&h).map(|(ya, &ha)| ya * q(ha)).sum::<BigRational>();
        let c = to_codim(&total)?;
        if c > max_codim {
            continue;
        }
        let mut x = x0.to_vec();
        for (&nb, &b) in n.iter().zip(&ids) {
            for (xi, &ci) in x.iter_mut().zip(&coroots[b]) {
                *xi += nb * ci;
            }
        }
        let xq: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
        out.push(HnType {
            subset: mask,
            mu: datum.project_to_center(mask, &xq),
            delta_lift: x,
            codim: c,
        });
    }
    Ok(out)
}

/// All non-semistable HN types of degree `d` with codimension at most
/// `max_codim`, ordered by codimension, subset, then lift.
pub fn enumerate_hn_types(spec: &GroupSpec, d: &Degree, g: u32, max_codim: u32) -> Result<Vec<HnType>, HnError> {
    if g < 2 {
        return Err(FormulaError::GenusTooSmall(g).into());
    }
    let x0 = spec.lift(d)?;
    let datum = spec.root_datum();
    let per_mask: Vec<Result<Vec<HnType>, HnError>> = (1..=datum.full_mask())
        .into_par_iter()
        .map(|mask| types_for_subset(&datum, &x0, mask, g, max_codim))
        .collect();
    let mut out = Vec::new();
    for r in per_mask {
        out.extend(r?);
    }
    out.sort_by(|a, b| (a.codim, a.subset, &a.delta_lift).cmp(&(b.codim, b.subset, &b.delta_lift)));
    Ok(out)
}

/// An HN type of a rank `r` vector bundle as blocks `(r_i, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlHnType {
    pub blocks: Vec<(usize, i64)>,
    pub codim: i64,
}

fn gl_codim(blocks: &[(usize, i64)], g: u32) -> i64 {
    let mut c = 0;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let (ri, di) = (blocks[i].0 as i64, blocks[i].1);
            let (rj, dj) = (blocks[j].0 as i64, blocks[j].1);
            c += rj * di - ri * dj + ri * rj * (g as i64 - 1);
        }
    }
    c
}

/// Direct enumeration of block data with strictly decreasing slopes.
pub fn hn_gl_oracle(r: usize, d: i64, max_codim: u32, g: u32) -> Vec<GlHnType> {
    let mut out = Vec::new();
    let rr = r as i64;
    let mc = max_codim as i64;
    for comp in crate::formulas::compositions(r) {
        if comp.len() < 2 {
            continue;
        }
        // every slope lies within max_codim of the average d/r
        let ranges: Vec<(i64, i64)> = comp
            .iter()
            .map(|&ri| {
                let ri = ri as i64;
                (
                    Integer::div_floor(&(ri * d - ri * rr * mc), &rr),
                    Integer::div_ceil(&(ri * d + ri * rr * mc), &rr),
                )
            })
            .collect();
        let free = &ranges[..comp.len() - 1];
        let lo: Vec<i64> = free.iter().map(|x| x.0).collect();
        let hi: Vec<i64> = free.iter().map(|x| x.1).collect();
        for ds in lattice_box(&lo, &hi) {
            let last = d - ds.iter().sum::<i64>();
            let blocks: Vec<(usize, i64)> = comp
                .iter()
                .copied()
                .zip(ds.iter().copied().chain(std::iter::once(last)))
                .collect();
            let decreasing = blocks
                .windows(2)
                .all(|w| w[0].1 * w[1].0 as i64 > w[1].1 * w[0].0 as i64);
            if !decreasing {
                continue;
            }
            let c = gl_codim(&blocks, g);
            if c <= mc {
                out.push(GlHnType { blocks, codim: c });
            }
        }
    }
    out.sort();
    out
}

/// Block data of an HN type of `GL_r` (single factor).
pub fn gl_blocks(t: &HnType, r: usize) -> Vec<(usize, i64)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for cut in 0..r {
        if cut + 1 == r || t.subset >> cut & 1 == 1 {
            let deg = t.delta_lift[start..=cut].iter().sum();
            blocks.push((cut + 1 - start, deg));
            start = cut + 1;
        }
    }
    blocks
}

fn levi_key(levi: &RootDatum, x: &[i64]) -> Vec<BigRational> {
    let xq: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
    (0..levi.semisimple_rank())
        .map(|a| frac_rep(&levi.fund_weight_at(a, &xq)).value().clone())
        .collect()
}

/// Right-hand side of the stratified recursion, truncated at total degree
/// `order`, with strata up to `max_codim`.
pub fn recursion_rhs_with(
    spec: &GroupSpec,
    d: &Degree,
    g: u32,
    order: u32,
    max_codim: u32,
) -> Result<TruncSeries2, HnError> {
    let types = enumerate_hn_types(spec, d, g, max_codim)?;
    let datum = spec.root_datum();
    let mut levis: BTreeMap<u32, RootDatum> = BTreeMap::new();
    // smallest codimension per Levi series
    let mut needed: BTreeMap<(u32, Vec<BigRational>), (u32, Vec<i64>)> = BTreeMap::new();
    let mut keys = Vec::with_capacity(types.len());
    for t in &types {
        let levi = levis.entry(t.subset).or_insert_with(|| datum.levi(t.subset));
        let key = (t.subset, levi_key(levi, &t.delta_lift));
        needed
            .entry(key.clone())
            .or_insert_with(|| (t.codim, t.delta_lift.clone()));
        keys.push(key);
    }
    let jobs: Vec<_> = needed.iter().filter(|(_, (c, _))| 2 * c <= order).collect();
    let series: Vec<Result<TruncSeries2, HnError>> = jobs
        .par_iter()
        .map(|((mask, _), (c, x))| {
            let terms = closed_formula_terms(&levis[mask], x, g)?;
            Ok(terms.expand(order - 2 * c))
        })
        .collect();
    let mut cache: BTreeMap<&(u32, Vec<BigRational>), TruncSeries2> = BTreeMap::new();
    for ((key, _), s) in jobs.iter().zip(series) {
        cache.insert(key, s?);
    }
    let mut acc = a_term(&spec.degrees(), g).expand(order);
    for (t, key) in types.iter().zip(&keys) {
        if 2 * t.codim > order {
            continue;
        }
        let s = cache[key].truncate(order - 2 * t.codim);
        let shifted = TruncSeries2::from_poly(&s.to_poly(), order).shift(t.codim, t.codim);
        acc = &acc - &shifted;
    }
    Ok(acc)
}

/// Right-hand side of the stratified recursion to total degree `order`.
/// Only strata with `2 d_nu <= order` contribute.
pub fn recursion_rhs(spec: &GroupSpec, d: &Degree, g: u32, order: u32) -> Result<TruncSeries2, HnError> {
    recursion_rhs_with(spec, d, g, order, order / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionReport {
    pub matches: bool,
    /// `(i, j, closed, recursion)` at the first differing coefficient.
    pub first_mismatch: Option<(u32, u32, BigInt, BigInt)>,
}

/// Compares the closed formula with the recursion coefficientwise.
pub fn verify_recursion(spec: &GroupSpec, d: &Degree, g: u32, order: u32) -> Result<RecursionReport, HnError> {
    let lhs = semistable_terms(spec, d, g)?.expand(order);
    let rhs = recursion_rhs(spec, d, g, order)?;
    let diff = &lhs - &rhs;
    let first_mismatch = diff
        .terms()
        .next()
        .map(|(&(i, j), _)| (i, j, lhs.coeff(i, j), rhs.coeff(i, j)));
    Ok(RecursionReport {
        matches: first_mismatch.is_none(),
        first_mismatch,
    })
}
