//! Root data of classical reductive groups, their Levi subgroups and the
//! combinatorial invariants the series formulas need.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::linalg::{inverse, q, smith_invariants, solve, QMatrix};
use crate::ratfun::{frac_rep, FracClass, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDataError {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unsupported rank in `{0}`")]
    UnsupportedRank(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("subset {0:#b} is not a set of simple roots")]
    BadSubset(u32),
    #[error(
        "the two definitions of 2rho disagree for I={subset:#b}, simple root {root}: literal {literal}, nilradical {nilradical}"
    )]
    DefinitionMismatch {
        subset: u32,
        root: usize,
        literal: i64,
        nilradical: i64,
    },
}

/// Classical families; `rank` conventions follow the group names
/// (`GL_r`, `SL_r`, `SO_{2r+1}`, `Sp_r` of rank `r`, `SO_{2r}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    SOOdd,
    Sp,
    SOEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl Factor {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let ok = match family {
            Family::GL | Family::SOOdd | Family::Sp => rank >= 1,
            Family::SL | Family::SOEven => rank >= 2,
        };
        let f = Self { family, rank };
        if ok {
            Ok(f)
        } else {
            Err(RootDataError::UnsupportedRank(f.to_string()))
        }
    }

    /// Dimension of the group.
    pub fn dim(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::GL => r * r,
            Family::SL => r * r - 1,
            Family::SOOdd | Family::Sp => r * (2 * r + 1),
            Family::SOEven => r * (2 * r - 1),
        }
    }

    /// Tabulated degrees `d_k` of the generators of `H^*(BG)`, sorted.
    pub fn degrees(&self) -> Vec<u32> {
        let r = self.rank as u32;
        let mut e: Vec<u32> = match self.family {
            Family::GL => (1..=r).collect(),
            Family::SL => (2..=r).collect(),
            Family::SOOdd | Family::Sp => (1..=r).map(|k| 2 * k).collect(),
            Family::SOEven => (1..r).map(|k| 2 * k).chain([r]).collect(),
        };
        e.sort_unstable();
        e
    }

    /// Whether the degree of this factor lives in `Z` (true) or a finite group.
    pub fn has_free_degree(&self) -> bool {
        self.family == Family::GL
    }

    /// Order of `pi_1`, `None` for the infinite cyclic case.
    pub fn pi1_order(&self) -> Option<i64> {
        match self.family {
            Family::GL => None,
            Family::SL | Family::Sp => Some(1),
            Family::SOOdd | Family::SOEven => Some(2),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank;
        match self.family {
            Family::GL => write!(f, "GL{r}"),
            Family::SL => write!(f, "SL{r}"),
            Family::SOOdd => write!(f, "SO{}", 2 * r + 1),
            Family::Sp => write!(f, "Sp{r}"),
            Family::SOEven => write!(f, "SO{}", 2 * r),
        }
    }
}

impl FromStr for Factor {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let split = t
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| RootDataError::UnknownGroup(t.into()))?;
        let (name, num) = t.split_at(split);
        let n: usize = num.parse().map_err(|_| RootDataError::UnknownGroup(t.into()))?;
        match name.to_ascii_uppercase().as_str() {
            "GL" => Factor::new(Family::GL, n),
            "SL" => Factor::new(Family::SL, n),
            "SP" => Factor::new(Family::Sp, n),
            "SO" if n % 2 == 1 => Factor::new(Family::SOOdd, n / 2),
            "SO" => Factor::new(Family::SOEven, n / 2).map_err(|_| RootDataError::UnsupportedRank(t.into())),
            _ => Err(RootDataError::UnknownGroup(t.into())),
        }
    }
}

/// A product of classical groups, e.g. `GL2xGL3xSO5`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn single(family: Family, rank: usize) -> Result<Self, RootDataError> {
        Ok(Self {
            factors: vec![Factor::new(family, rank)?],
        })
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum()
    }

    /// Tabulated degrees `d_k` of all factors, sorted.
    pub fn degrees(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.factors.iter().flat_map(Factor::degrees).collect();
        e.sort_unstable();
        e
    }

    pub fn root_datum(&self) -> RootDatum {
        let parts: Vec<RootDatum> = self.factors.iter().map(factor_datum).collect();
        RootDatum::product(&parts)
    }

    /// A cocharacter lifting `d` along `Z^n -> pi_1 G`.
    pub fn lift(&self, d: &Degree) -> Result<Vec<i64>, RootDataError> {
        if d.0.len() != self.factors.len() {
            return Err(RootDataError::InvalidDegree(format!(
                "{} entries for {} factors",
                d.0.len(),
                self.factors.len()
            )));
        }
        let mut out = Vec::new();
        for (f, &x) in self.factors.iter().zip(&d.0) {
            let n = f.rank;
            match f.family {
                Family::GL => {
                    let mut v = vec![0; n];
                    v[0] = x;
                    out.extend(v);
                }
                Family::SL | Family::Sp => {
                    if x != 0 {
                        return Err(RootDataError::InvalidDegree(format!(
                            "{f} is simply connected; degree must be 0"
                        )));
                    }
                    out.extend(vec![0; if f.family == Family::SL { n - 1 } else { n }]);
                }
                Family::SOOdd | Family::SOEven => {
                    if !(0..=1).contains(&x) {
                        return Err(RootDataError::InvalidDegree(format!(
                            "{f} degree must be 0 or 1, got {x}"
                        )));
                    }
                    let mut v = vec![0; n];
                    v[n - 1] = x;
                    out.extend(v);
                }
            }
        }
        Ok(out)
    }

    pub fn zero_degree(&self) -> Degree {
        Degree(vec![0; self.factors.len()])
    }

    /// All degrees with GL entries in `0..r` and the finite factors exhausted.
    pub fn degree_representatives(&self) -> Vec<Degree> {
        let mut acc: Vec<Vec<i64>> = vec![vec![]];
        for f in &self.factors {
            let range: Vec<i64> = match f.family {
                Family::GL => (0..f.rank as i64).collect(),
                Family::SL | Family::Sp => vec![0],
                Family::SOOdd | Family::SOEven => vec![0, 1],
            };
            acc = acc
                .into_iter()
                .flat_map(|p| range.iter().map(move |&x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        acc.into_iter().map(Degree).collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(RootDataError::UnknownGroup(s.into()));
        }
        let factors = s
            .split(['x', 'X', '*'])
            .map(str::parse)
            .collect::<Result<Vec<Factor>, _>>()?;
        Ok(Self { factors })
    }
}

/// Topological type: one integer per factor (`Z/2` entries are 0 or 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Degree(pub Vec<i64>);

impl FromStr for Degree {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| RootDataError::InvalidDegree(s.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self(v))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `pi_1` as `Z^free x prod Z/t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1 {
    pub free: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the character lattice.
    pub weight: Vec<i64>,
    /// Coefficients on the simple roots.
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// Root datum on `X_*(H) = Z^n`, with simple roots and coroots given in
/// coordinates.
#[derive(Debug, Clone)]
pub struct RootDatum {
    n: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    positive: Vec<Root>,
    fund: Vec<Vec<BigRational>>,
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[i64], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| q(*x) * y).sum()
}

fn factor_datum(f: &Factor) -> RootDatum {
    let r = f.rank;
    let e = |i: usize, n: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let diff = |i: usize, j: usize, n: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    let sum = |i: usize, j: usize, n: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] += 1;
        v[j] += 1;
        v
    };
    let scaled = |v: Vec<i64>, k: i64| -> Vec<i64> { v.into_iter().map(|x| k * x).collect() };
    match f.family {
        Family::GL => {
            let roots = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            let coroots = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            RootDatum::new(r, roots, coroots)
        }
        Family::SL => {
            // coordinates on the coroot basis of the simply connected torus
            let n = r - 1;
            let a =
                |i: usize, j: usize| -> Vec<i64> { (0..n).map(|k| dot(&diff(i, j, r), &diff(k, k + 1, r))).collect() };
            let roots = (0..n).map(|i| a(i, i + 1)).collect();
            let coroots = (0..n).map(|i| e(i, n)).collect();
            RootDatum::new(n, roots, coroots)
        }
        Family::SOOdd => {
            let mut roots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            let mut coroots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            roots.push(e(r - 1, r));
            coroots.push(scaled(e(r - 1, r), 2));
            RootDatum::new(r, roots, coroots)
        }
        Family::Sp => {
            let mut roots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            let mut coroots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            roots.push(scaled(e(r - 1, r), 2));
            coroots.push(e(r - 1, r));
            RootDatum::new(r, roots, coroots)
        }
        Family::SOEven => {
            let mut roots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            let mut coroots: Vec<Vec<i64>> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            roots.push(sum(r - 2, r - 1, r));
            coroots.push(sum(r - 2, r - 1, r));
            RootDatum::new(r, roots, coroots)
        }
    }
}

impl RootDatum {
    pub fn new(n: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Self {
        let positive = generate_positive_roots(&simple_roots, &simple_coroots);
        let mut d = Self {
            n,
            simple_roots,
            simple_coroots,
            positive,
            fund: Vec::new(),
        };
        d.fund = d.compute_fundamental_weights();
        d
    }

    /// Block-diagonal product.
    pub fn product(parts: &[RootDatum]) -> Self {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut off = 0;
        for p in parts {
            let pad = |v: &Vec<i64>| -> Vec<i64> {
                let mut w = vec![0; n];
                w[off..off + p.n].copy_from_slice(v);
                w
            };
            roots.extend(p.simple_roots.iter().map(pad));
            coroots.extend(p.simple_coroots.iter().map(pad));
            off += p.n;
        }
        Self::new(n, roots, coroots)
    }

    /// Rank of the ambient torus.
    pub fn torus_rank(&self) -> usize {
        self.n
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Dimension of the centre.
    pub fn center_dim(&self) -> usize {
        self.n - self.semisimple_rank()
    }

    pub fn dim(&self) -> usize {
        self.n + 2 * self.positive.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Mask with every simple root set.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.semisimple_rank()) - 1) as u32
    }

    pub fn check_mask(&self, mask: u32) -> Result<(), RootDataError> {
        if mask & !self.full_mask() != 0 {
            Err(RootDataError::BadSubset(mask))
        } else {
            Ok(())
        }
    }

    /// `C[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.simple_coroots
            .iter()
            .map(|c| self.simple_roots.iter().map(|a| dot(a, c)).collect())
            .collect()
    }

    /// Sub-datum of the Levi subgroup whose simple roots are `Delta \ I`.
    pub fn levi(&self, mask: u32) -> RootDatum {
        let keep: Vec<usize> = (0..self.semisimple_rank()).filter(|a| mask >> a & 1 == 0).collect();
        let roots = keep.iter().map(|&a| self.simple_roots[a].clone()).collect();
        let coroots = keep.iter().map(|&a| self.simple_coroots[a].clone()).collect();
        Self::new(self.n, roots, coroots)
    }

    /// Roots of the unipotent radical of the parabolic with Levi `L^I`.
    pub fn nilradical(&self, mask: u32) -> impl Iterator<Item = &Root> {
        self.positive
            .iter()
            .filter(move |b| b.coeffs.iter().enumerate().any(|(a, &c)| c != 0 && mask >> a & 1 == 1))
    }

    /// Weyl-group exponents from the heights of positive roots (dual
    /// partition of the height multiset), sorted.
    pub fn weyl_exponents(&self) -> Vec<u32> {
        let mut by_height: BTreeMap<i64, u32> = BTreeMap::new();
        for b in &self.positive {
            *by_height.entry(b.height()).or_default() += 1;
        }
        let counts: Vec<u32> = by_height.values().copied().collect();
        let mut e: Vec<u32> = (1..=self.semisimple_rank() as u32)
            .map(|k| counts.iter().filter(|&&c| c >= k).count() as u32)
            .collect();
        e.sort_unstable();
        e
    }

    /// Degrees `d_1 <= ... <= d_n` of generators of `H^*(BG)`: one `1` per
    /// central dimension followed by exponents plus one.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![1; self.center_dim()];
        d.extend(self.weyl_exponents().into_iter().map(|e| e + 1));
        d
    }

    pub fn pi1(&self) -> Pi1 {
        if self.simple_coroots.is_empty() {
            return Pi1 {
                free: self.n,
                torsion: Vec::new(),
            };
        }
        let inv = smith_invariants(&self.simple_coroots);
        let rank = inv.iter().filter(|&&x| x != 0).count();
        Pi1 {
            free: self.n - rank,
            torsion: inv.into_iter().filter(|&x| x > 1).collect(),
        }
    }

    fn compute_fundamental_weights(&self) -> Vec<Vec<BigRational>> {
        let k = self.semisimple_rank();
        if k == 0 {
            return Vec::new();
        }
        let ct: QMatrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| q(dot(&self.simple_roots[i], &self.simple_coroots[j])))
                    .collect()
            })
            .collect();
        let w = inverse(&ct).expect("Cartan matrix is invertible");
        (0..k)
            .map(|a| {
                (0..self.n)
                    .map(|x| (0..k).map(|j| &w[a][j] * q(self.simple_roots[j][x])).sum())
                    .collect()
            })
            .collect()
    }

    /// Fundamental weight dual to the simple coroot `a`, as a rational vector.
    pub fn fundamental_weight(&self, a: usize) -> &[BigRational] {
        &self.fund[a]
    }

    /// `varpi_a(X)` for a rational cocharacter.
    pub fn fund_weight_at(&self, a: usize, x: &[BigRational]) -> BigRational {
        self.fund[a].iter().zip(x).map(|(w, y)| w * y).sum()
    }

    /// `<varpi_a(X)>` in `(0, 1]`.
    pub fn fund_weight_mod_z(&self, a: usize, x: &[i64]) -> FracClass {
        let xq: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
        frac_rep(&self.fund_weight_at(a, &xq))
    }

    /// `beta(X)` for a weight `beta` and a rational cocharacter `X`.
    pub fn pair(&self, beta: &[i64], x: &[BigRational]) -> BigRational {
        dot_q(beta, x)
    }

    /// Image of `X` in the centre of the Levi `L^I`:
    /// `X - sum_{b not in I} c_b alpha_b^vee` with every `alpha_b(mu) = 0`.
    pub fn project_to_center(&self, mask: u32, x: &[BigRational]) -> Vec<BigRational> {
        let j: Vec<usize> = (0..self.semisimple_rank()).filter(|a| mask >> a & 1 == 0).collect();
        if j.is_empty() {
            return x.to_vec();
        }
        let m: QMatrix = j
            .iter()
            .map(|&a| {
                j.iter()
                    .map(|&b| q(dot(&self.simple_roots[a], &self.simple_coroots[b])))
                    .collect()
            })
            .collect();
        let rhs: Vec<BigRational> = j.iter().map(|&a| dot_q(&self.simple_roots[a], x)).collect();
        let c = solve(&m, &rhs).expect("Levi Cartan matrix is invertible");
        let mut mu = x.to_vec();
        for (cb, &b) in c.iter().zip(&j) {
            for (m, &v) in mu.iter_mut().zip(&self.simple_coroots[b]) {
                *m -= cb * q(v);
            }
        }
        mu
    }

    /// `2 rho_P(alpha_a^vee)`: sum over roots of the unipotent radical.
    pub fn nilradical_rho(&self, mask: u32, a: usize) -> i64 {
        self.nilradical(mask)
            .map(|b| dot(&b.weight, &self.simple_coroots[a]))
            .sum()
    }

    /// Sum over positive roots `beta` having `<beta, alpha^vee> > 0` for some
    /// `alpha` in `I`, paired with `alpha_a^vee`.
    pub fn literal_rho(&self, mask: u32, a: usize) -> i64 {
        let in_i: Vec<usize> = (0..self.semisimple_rank()).filter(|x| mask >> x & 1 == 1).collect();
        self.positive
            .iter()
            .filter(|b| in_i.iter().any(|&x| dot(&b.weight, &self.simple_coroots[x]) > 0))
            .map(|b| dot(&b.weight, &self.simple_coroots[a]))
            .sum()
    }

    /// `2 rho^I(alpha_a^vee)`; errors when the literal sum over roots pairing
    /// positively with `I` disagrees with the unipotent-radical sum.
    pub fn rho_pairing(&self, mask: u32, a: usize) -> Result<Rational, RootDataError> {
        self.check_mask(mask)?;
        let literal = self.literal_rho(mask, a);
        let nilradical = self.nilradical_rho(mask, a);
        if literal != nilradical {
            return Err(RootDataError::DefinitionMismatch {
                subset: mask,
                root: a,
                literal,
                nilradical,
            });
        }
        Ok(q(nilradical))
    }

    pub fn levi_datum(&self, mask: u32) -> Result<LeviDatum, RootDataError> {
        self.check_mask(mask)?;
        let l = self.levi(mask);
        let rho_pairings = (0..self.semisimple_rank())
            .filter(|a| mask >> a & 1 == 1)
            .map(|a| (a, self.nilradical_rho(mask, a)))
            .collect();
        Ok(LeviDatum {
            subset: mask,
            rank: self.n,
            dim_z: l.center_dim(),
            exponents: l.degrees(),
            dim_u: self.positive.len() - l.positive.len(),
            rho_pairings,
        })
    }
}

/// Root datum of `spec` in the coordinates of its factors.
pub fn build_root_system(spec: &GroupSpec) -> RootDatum {
    spec.root_datum()
}

/// Tabulated degrees `d_k` of `spec`, with one `1` per central dimension.
pub fn exponents_of(spec: &GroupSpec) -> Vec<u32> {
    spec.degrees()
}

impl RootDatum {
    /// Slopes of Levi reductions: for `I` (indices `ids`) returns `y0` and
    /// `M` with `alpha_a(mu) = y0_a + sum_b M_ab n_b` for the reduction of
    /// degree `X + sum_{b in I} n_b alpha_b^vee`.
    pub fn slope_system(&self, mask: u32, x: &[BigRational]) -> (Vec<usize>, Vec<BigRational>, QMatrix) {
        let ids: Vec<usize> = (0..self.semisimple_rank()).filter(|a| mask >> a & 1 == 1).collect();
        let mu0 = self.project_to_center(mask, x);
        let y0 = ids.iter().map(|&a| dot_q(&self.simple_roots[a], &mu0)).collect();
        let m = ids
            .iter()
            .map(|&a| {
                ids.iter()
                    .map(|&b| {
                        let cb: Vec<BigRational> = self.simple_coroots[b].iter().map(|&v| q(v)).collect();
                        dot_q(&self.simple_roots[a], &self.project_to_center(mask, &cb))
                    })
                    .collect()
            })
            .collect();
        (ids, y0, m)
    }
}

/// True when no proper parabolic reduction of degree `d` has slope central
/// in `G`, so that semistable bundles of degree `d` are stable.
pub fn good_case(spec: &GroupSpec, d: &Degree) -> Result<bool, RootDataError> {
    let lift = spec.lift(d)?;
    let datum = spec.root_datum();
    let x: Vec<BigRational> = lift.iter().map(|&v| q(v)).collect();
    for mask in 1..=datum.full_mask() {
        let (_, y0, m) = datum.slope_system(mask, &x);
        let neg: Vec<BigRational> = y0.iter().map(|y| -y).collect();
        let n = solve(&m, &neg).expect("slope system is invertible");
        if n.iter().all(|v| v.is_integer()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariants of `L^I` and its parabolic that enter the closed formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviDatum {
    pub subset: u32,
    pub rank: usize,
    pub dim_z: usize,
    /// Degrees `d_k` of `L^I`, starting with `dim_z` ones.
    pub exponents: Vec<u32>,
    pub dim_u: usize,
    /// `2 rho_P(alpha^vee)` for each simple root index in `I`.
    pub rho_pairings: BTreeMap<usize, i64>,
}

fn generate_positive_roots(roots: &[Vec<i64>], coroots: &[Vec<i64>]) -> Vec<Root> {
    let k = roots.len();
    let n = roots.first().map_or(0, Vec::len);
    let mut found: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = Vec::new();
    for a in 0..k {
        let mut c = vec![0; k];
        c[a] = 1;
        found.insert(c.clone());
        layer.push(c);
    }
    let mut all = layer.clone();
    let weight_of = |c: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|x| c.iter().zip(roots).map(|(ci, r)| ci * r[x]).sum())
            .collect()
    };
    while !layer.is_empty() {
        let mut next = Vec::new();
        for c in &layer {
            let w = weight_of(c);
            for i in 0..k {
                let mut p = 0;
                let mut down = c.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !found.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let qv = p - dot(&w, &coroots[i]);
                if qv > 0 {
                    let mut up = c.clone();
                    up[i] += 1;
                    if found.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
    all.into_iter()
        .map(|c| Root {
            weight: weight_of(&c),
            coeffs: c,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let g = spec("GL2xGL3xSO5");
        assert_eq!(g.factors.len(), 3);
        assert_eq!(g.factors[2], Factor::new(Family::SOOdd, 2).unwrap());
        assert_eq!(g.to_string(), "GL2xGL3xSO5");
        assert_eq!(spec("SO8").factors[0], Factor::new(Family::SOEven, 4).unwrap());
        assert_eq!(spec("Sp3").factors[0], Factor::new(Family::Sp, 3).unwrap());
        assert!("SO2".parse::<GroupSpec>().is_err());
        assert!("SL1".parse::<GroupSpec>().is_err());
        assert!("E8".parse::<GroupSpec>().is_err());
        assert!("GL".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn gl_simple_roots() {
        let d = spec("GL3").root_datum();
        assert_eq!(d.simple_roots(), &[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(d.positive_roots().len(), 3);
        assert_eq!(d.weyl_exponents(), vec![1, 2]);
        assert_eq!(d.degrees(), vec![1, 2, 3]);
    }

    #[test]
    fn explicit_positive_root_lists() {
        let d = spec("SO7").root_datum();
        let mut got: Vec<Vec<i64>> = d.positive_roots().iter().map(|b| b.weight.clone()).collect();
        let mut want = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let mut a = vec![0; 3];
                a[i] = 1;
                a[j] = -1;
                want.push(a);
                let mut b = vec![0; 3];
                b[i] = 1;
                b[j] = 1;
                want.push(b);
            }
            let mut c = vec![0; 3];
            c[i] = 1;
            want.push(c);
        }
        got.sort();
        want.sort();
        assert_eq!(got, want);

        let sp = spec("Sp2").root_datum();
        let mut got: Vec<Vec<i64>> = sp.positive_roots().iter().map(|b| b.weight.clone()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 2], vec![1, -1], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn exponents_from_heights() {
        assert_eq!(spec("SO5").root_datum().weyl_exponents(), vec![1, 3]);
        assert_eq!(spec("SO8").root_datum().degrees(), vec![2, 4, 4, 6]);
        assert_eq!(spec("SO4").root_datum().degrees(), vec![2, 2]);
        assert_eq!(spec("Sp3").root_datum().degrees(), vec![2, 4, 6]);
        assert_eq!(spec("GL3").degrees(), vec![1, 2, 3]);
        assert_eq!(spec("SO8").degrees(), vec![2, 4, 4, 6]);
    }

    #[test]
    fn fundamental_groups() {
        assert_eq!(spec("GL3").root_datum().pi1().to_string(), "Z");
        assert_eq!(spec("SL3").root_datum().pi1().to_string(), "0");
        assert_eq!(spec("SO7").root_datum().pi1().to_string(), "Z/2");
        assert_eq!(spec("SO8").root_datum().pi1().to_string(), "Z/2");
        assert_eq!(spec("Sp2").root_datum().pi1().to_string(), "0");
        assert_eq!(spec("GL2xSO5").root_datum().pi1().to_string(), "Z x Z/2");
    }

    #[test]
    fn gl_fundamental_weights() {
        let d = spec("GL3").root_datum();
        let x = d.fund_weight_mod_z(0, &[1, 0, 0]);
        assert_eq!(x.value(), &BigRational::new(2.into(), 3.into()));
        let x = d.fund_weight_mod_z(1, &[1, 0, 0]);
        assert_eq!(x.value(), &BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn spin_weights() {
        let d = spec("SO5").root_datum();
        assert_eq!(
            d.fund_weight_mod_z(1, &[0, 1]).value(),
            &BigRational::new(1.into(), 2.into())
        );
        assert!(d.fund_weight_mod_z(0, &[0, 1]).is_one());
    }

    #[test]
    fn projection_to_centre() {
        let d = spec("GL3").root_datum();
        let x = vec![q(1), q(0), q(0)];
        assert_eq!(
            d.project_to_center(0, &x),
            vec![BigRational::new(1.into(), 3.into()); 3]
        );
        assert_eq!(d.project_to_center(0b11, &x), x);
        let mu = d.project_to_center(0b10, &x);
        assert_eq!(
            mu,
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into()),
                q(0)
            ]
        );
    }

    #[test]
    fn rho_pairings_for_gl() {
        let d = spec("GL4").root_datum();
        // blocks (1,2,1): I = {alpha_1, alpha_3}
        let ld = d.levi_datum(0b101).unwrap();
        assert_eq!(ld.rho_pairings[&0], 3);
        assert_eq!(ld.rho_pairings[&2], 3);
        assert_eq!(ld.dim_u, 5);
        assert_eq!(ld.dim_z, 3);
        assert_eq!(ld.exponents, vec![1, 1, 1, 2]);
    }

    #[test]
    fn rho_definitions_can_disagree() {
        let d = spec("Sp3").root_datum();
        assert_eq!(d.nilradical_rho(0b101, 0), 3);
        assert_eq!(d.literal_rho(0b101, 0), 5);
        assert!(matches!(
            d.rho_pairing(0b101, 0),
            Err(RootDataError::DefinitionMismatch { .. })
        ));
        assert_eq!(d.rho_pairing(0b111, 0).unwrap(), q(2));
    }

    #[test]
    fn good_cases() {
        assert!(!good_case(&spec("GL2"), &Degree(vec![0])).unwrap());
        assert!(good_case(&spec("GL2"), &Degree(vec![1])).unwrap());
        assert!(good_case(&spec("GL3"), &Degree(vec![2])).unwrap());
        assert!(!good_case(&spec("GL4"), &Degree(vec![2])).unwrap());
        assert!(!good_case(&spec("SL2"), &Degree(vec![0])).unwrap());
        assert!(good_case(&spec("GL1"), &Degree(vec![5])).unwrap());
        // SO3 = PGL2 in the nontrivial class
        assert!(good_case(&spec("SO3"), &Degree(vec![1])).unwrap());
        assert!(!good_case(&spec("SO5"), &Degree(vec![1])).unwrap());
    }

    #[test]
    fn lifts() {
        let g = spec("GL2xSO5");
        assert_eq!(g.lift(&"1,1".parse().unwrap()).unwrap(), vec![1, 0, 0, 1]);
        assert!(g.lift(&"1,2".parse().unwrap()).is_err());
        assert!(spec("Sp2").lift(&Degree(vec![1])).is_err());
    }
}
