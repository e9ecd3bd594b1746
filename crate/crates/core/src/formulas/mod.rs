//! Generating functions: classifying spaces, stacks of all bundles, the
//! closed formula for semistable bundles, moduli spaces and specializations.

mod classical;
mod terms;

pub use classical::{compositions, hp_semistable_classical, semistable_classical_terms};
pub use terms::{FactoredSum, Term};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::q;
use crate::ratfun::{Assignment, BivarPoly, RatFun2, RatFunError, Specialized, UniPoly, UniRatFun};
use crate::roots::{good_case, Degree, Family, GroupSpec, RootDataError, RootDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
    #[error("exponent of uv is not a nonnegative integer for I={subset:#b}: {value}")]
    NonIntegralExponent { subset: u32, value: String },
    #[error("degree {degree} of {group} admits strictly semistable bundles")]
    NotGoodCase { group: String, degree: String },
    #[error("rank {r} and degree {d} are not coprime")]
    NotCoprime { r: usize, d: i64 },
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
    #[error("{0}")]
    Unsupported(String),
}

fn require_genus(g: u32) -> Result<(), FormulaError> {
    if g < 2 {
        Err(FormulaError::GenusTooSmall(g))
    } else {
        Ok(())
    }
}

/// `1 / prod_k (1 - (uv)^{d_k})`
pub fn hp_classifying(spec: &GroupSpec) -> RatFun2 {
    let mut t = Term::one();
    for d in spec.degrees() {
        t.div_one_minus_uv(d, 1);
    }
    t.to_ratfun()
}

/// The factor of the stack of all bundles attached to degrees `d_k`.
pub fn a_term(degrees: &[u32], g: u32) -> Term {
    let mut t = Term::one();
    for &d in degrees {
        if d == 1 {
            t.mul_binomial(1, 0, g);
            t.mul_binomial(0, 1, g);
            t.div_one_minus_uv(1, 1);
        } else {
            t.mul_binomial(d, d - 1, g);
            t.mul_binomial(d - 1, d, g);
            t.div_one_minus_uv(d - 1, 1);
            t.div_one_minus_uv(d, 1);
        }
    }
    t
}

/// Hodge-Poincare series of the stack of all bundles of a fixed degree, from
/// the tabulated degrees of the group.
pub fn a_series(spec: &GroupSpec, g: u32) -> RatFun2 {
    a_term(&spec.degrees(), g).to_ratfun()
}

/// Terms of the closed formula: one per subset `I` of simple roots, in
/// increasing bitmask order.
pub fn closed_formula_terms(datum: &RootDatum, lift: &[i64], g: u32) -> Result<FactoredSum, FormulaError> {
    require_genus(g)?;
    let k = datum.semisimple_rank();
    let xq: Vec<BigRational> = lift.iter().map(|&x| q(x)).collect();
    let mut sum = FactoredSum::new();
    for mask in 0..(1u32 << k) {
        let ld = datum.levi_datum(mask)?;
        let mut t = a_term(&ld.exponents, g);
        let mut shift = BigRational::from_integer(((g as usize - 1) * ld.dim_u).into());
        for (&a, &rho) in &ld.rho_pairings {
            let rho_u =
                u32::try_from(rho)
                    .ok()
                    .filter(|&x| x > 0)
                    .ok_or_else(|| FormulaError::NonIntegralExponent {
                        subset: mask,
                        value: rho.to_string(),
                    })?;
            t.div_one_minus_uv(rho_u, 1);
            let w = crate::ratfun::frac_rep(&datum.fund_weight_at(a, &xq));
            shift += q(rho) * w.value();
        }
        let e = integral_exponent(&shift).ok_or_else(|| FormulaError::NonIntegralExponent {
            subset: mask,
            value: shift.to_string(),
        })?;
        t.uv_power += e;
        if mask.count_ones() % 2 == 1 {
            t.coeff = -t.coeff;
        }
        sum.push(t);
    }
    Ok(sum)
}

fn integral_exponent(x: &BigRational) -> Option<u32> {
    if x.is_integer() {
        x.to_integer().to_u32()
    } else {
        None
    }
}

pub fn semistable_terms(spec: &GroupSpec, d: &Degree, g: u32) -> Result<FactoredSum, FormulaError> {
    let lift = spec.lift(d)?;
    closed_formula_terms(&spec.root_datum(), &lift, g)
}

/// Closed formula for the stack of semistable bundles of degree `d`.
pub fn hp_semistable_closed(spec: &GroupSpec, d: &Degree, g: u32) -> Result<RatFun2, FormulaError> {
    Ok(semistable_terms(spec, d, g)?.to_ratfun())
}

/// `(1 - uv)^m` times the semistable series, when every semistable bundle is
/// stable.
pub fn hp_moduli_space(spec: &GroupSpec, d: &Degree, g: u32) -> Result<RatFun2, FormulaError> {
    if !good_case(spec, d)? {
        return Err(FormulaError::NotGoodCase {
            group: spec.to_string(),
            degree: d.to_string(),
        });
    }
    let m = spec.root_datum().center_dim() as u32;
    let base = hp_semistable_closed(spec, d, g)?;
    Ok(&RatFun2::from_poly(BivarPoly::one_minus_uv(1).pow(m)) * &base)
}

/// Total degree of the Hodge-Poincare polynomial of the moduli space:
/// twice its dimension `(g-1) dim G + dim Z_G`.
pub fn moduli_degree_bound(spec: &GroupSpec, g: u32) -> u32 {
    let m = spec.root_datum().center_dim();
    2 * ((g as usize - 1) * spec.dim() + m) as u32
}

/// Terms of the composition sum for moduli of rank `r` bundles with fixed
/// determinant.
pub fn fixed_det_terms(r: usize, d: i64, g: u32) -> Result<FactoredSum, FormulaError> {
    require_genus(g)?;
    if r == 0 || d.gcd(&(r as i64)) != 1 {
        return Err(FormulaError::NotCoprime { r, d });
    }
    let mut p = a_term(&[1], g);
    p.coeff = 1;
    let mut sum = FactoredSum::new();
    for comp in compositions(r) {
        let l = comp.len() as u32;
        let mut t = p.pow(l - 1);
        if l.is_multiple_of(2) {
            t = t.negated();
        }
        for &ri in &comp {
            for k in 2..=ri as u32 {
                t.mul_binomial(k, k - 1, g);
                t.mul_binomial(k - 1, k, g);
                t.div_one_minus_uv(k - 1, 1);
                t.div_one_minus_uv(k, 1);
            }
        }
        t.uv_power += (g - 1) * pair_products(&comp) as u32;
        let mut partial = 0i64;
        let mut exp = BigRational::zero();
        for i in 0..comp.len() - 1 {
            partial += comp[i] as i64;
            let s = (comp[i] + comp[i + 1]) as u32;
            t.div_one_minus_uv(s, 1);
            let w = crate::ratfun::frac_rep(&BigRational::new((-partial * d).into(), (r as i64).into()));
            exp += q(s as i64) * w.value();
        }
        t.uv_power += integral_exponent(&exp).ok_or_else(|| FormulaError::NonIntegralExponent {
            subset: 0,
            value: exp.to_string(),
        })?;
        sum.push(t);
    }
    Ok(sum)
}

pub(crate) fn pair_products(comp: &[usize]) -> usize {
    let mut s = 0;
    for i in 0..comp.len() {
        for j in i + 1..comp.len() {
            s += comp[i] * comp[j];
        }
    }
    s
}

/// Moduli space of rank `r`, degree `d` bundles with fixed determinant.
pub fn hp_moduli_fixed_det(r: usize, d: i64, g: u32) -> Result<RatFun2, FormulaError> {
    Ok(fixed_det_terms(r, d, g)?.to_ratfun())
}

/// Checks that the fixed-determinant series times `(1+u)^g (1+v)^g` is the
/// series of the full moduli space.
pub fn fixed_det_consistent(r: usize, d: i64, g: u32) -> Result<bool, FormulaError> {
    let fixed = hp_moduli_fixed_det(r, d, g)?;
    let spec = GroupSpec::single(Family::GL, r)?;
    let full = hp_moduli_space(&spec, &Degree(vec![d]), g)?;
    let pic = RatFun2::from_poly(&BivarPoly::one_plus(1, 1, 0).pow(g) * &BivarPoly::one_plus(1, 0, 1).pow(g));
    Ok((&fixed * &pic).rat_eq(&full))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecializeKind {
    /// `u = v = t`
    Poincare,
    /// `u = -1`, a polynomial in `t = v`
    ChiT,
    /// `u = v = -1`
    Euler,
    /// `u = -1, v = 1`
    Signature,
}

/// Specialization after cancelling the factors that vanish at the
/// evaluation point.
pub fn specialize(r: &RatFun2, kind: SpecializeKind) -> Result<Specialized, FormulaError> {
    let reduced;
    let r = match r.num().div_exact(r.den()) {
        Ok(p) if !r.den().is_one() => {
            reduced = RatFun2::from_poly(p);
            &reduced
        }
        _ => r,
    };
    let one_u = BivarPoly::one_plus(1, 1, 0);
    let one_v = BivarPoly::one_plus(1, 0, 1);
    let minus = -BigRational::one();
    let out = match kind {
        SpecializeKind::Poincare => r.substitute(&Assignment::Diagonal)?,
        SpecializeKind::ChiT => r.cancel_factor(&one_u).0.substitute(&Assignment::U(minus))?,
        SpecializeKind::Euler => {
            let (c, _) = r.cancel_factor(&one_u);
            let (c, _) = c.cancel_factor(&one_v);
            c.substitute(&Assignment::Point(minus.clone(), minus))?
        }
        SpecializeKind::Signature => r
            .cancel_factor(&one_u)
            .0
            .substitute(&Assignment::Point(minus, BigRational::one()))?,
    };
    Ok(out)
}

/// `prod_{k=2}^r (1 - (-t)^{k-1})^{g-1} (1 - (-t)^k)^{g-1}`
pub fn chi_t_fixed_det_product(r: usize, g: u32) -> UniPoly {
    let mut p = UniPoly::one();
    let sign = |k: usize| if k.is_multiple_of(2) { -1 } else { 1 };
    for k in 2..=r {
        p = &p * &UniPoly::one_plus(sign(k - 1), k - 1).pow(g - 1);
        p = &p * &UniPoly::one_plus(sign(k), k).pow(g - 1);
    }
    p
}

/// Poincare series of the stack of all bundles as a product over the degrees.
pub fn poincare_product(spec: &GroupSpec, g: u32) -> UniRatFun {
    let mut num = UniPoly::one();
    let mut den = UniPoly::one();
    for d in spec.degrees() {
        let d = d as usize;
        if d == 1 {
            num = &num * &UniPoly::one_plus(1, 1).pow(2 * g);
            den = &den * &UniPoly::one_plus(-1, 2);
        } else {
            num = &num * &UniPoly::one_plus(1, 2 * d - 1).pow(2 * g);
            den = &den * &(&UniPoly::one_plus(-1, 2 * d - 2) * &UniPoly::one_plus(-1, 2 * d));
        }
    }
    UniRatFun::new(num, den).expect("nonzero product")
}
