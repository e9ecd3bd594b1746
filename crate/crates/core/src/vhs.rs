//! Period matrices and the coefficients of the Hodge classes `theta^j` in
//! the symplectic basis `a^i, b^i` of `H^1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::linalg::{det, inverse, q, QMatrix};

pub type ComplexQ = Complex<BigRational>;
pub type CMatrix = Vec<Vec<ComplexQ>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VhsError {
    #[error("period matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("declared genus {declared} but the matrix has size {actual}")]
    GenusMismatch { declared: usize, actual: usize },
    #[error("cannot parse `{0}` as an exact number")]
    BadNumber(String),
    #[error("malformed period matrix JSON: {0}")]
    Json(String),
    #[error("imaginary part of the period matrix is singular")]
    SingularImaginaryPart,
}

/// Exact value of a decimal (`-1.25`, `3e-2`) or fraction (`7/3`) string.
pub fn parse_exact(s: &str) -> Result<BigRational, VhsError> {
    let t = s.trim();
    let bad = || VhsError::BadNumber(s.to_string());
    if t.contains('/') {
        return BigRational::from_str(t).map_err(|_| bad());
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(p) => (&t[..p], t[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut x = if scale >= 0 {
        BigRational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(digits, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if neg {
        x = -x;
    }
    Ok(x)
}

/// A `g x g` complex matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    pub tau: CMatrix,
}

#[derive(Deserialize)]
struct RawPeriodMatrix {
    g: Option<usize>,
    tau: Vec<Vec<[Value; 2]>>,
}

fn value_to_q(v: &Value) -> Result<BigRational, VhsError> {
    match v {
        Value::String(s) => parse_exact(s),
        Value::Number(n) => parse_exact(&n.to_string()),
        other => Err(VhsError::BadNumber(other.to_string())),
    }
}

impl PeriodMatrix {
    pub fn new(tau: CMatrix) -> Result<Self, VhsError> {
        let rows = tau.len();
        if let Some((row, r)) = tau.iter().enumerate().find(|(_, r)| r.len() != rows) {
            return Err(VhsError::NotSquare {
                rows,
                row,
                len: r.len(),
            });
        }
        Ok(Self { tau })
    }

    /// `tau = i I_g`
    pub fn identity_i(g: usize) -> Self {
        let tau = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        if i == j {
                            Complex::new(q(0), q(1))
                        } else {
                            Complex::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { tau }
    }

    pub fn from_parts(re: &QMatrix, im: &QMatrix) -> Result<Self, VhsError> {
        let tau = re
            .iter()
            .zip(im)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| Complex::new(x.clone(), y.clone()))
                    .collect()
            })
            .collect();
        Self::new(tau)
    }

    /// Parses `{"g": g, "tau": [[[re, im], ...], ...]}`; entries are decimal
    /// or `p/q` strings (JSON numbers are read through their decimal text).
    pub fn from_json(s: &str) -> Result<Self, VhsError> {
        let raw: RawPeriodMatrix = serde_json::from_str(s).map_err(|e| VhsError::Json(e.to_string()))?;
        let tau = raw
            .tau
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[re, im]| Ok(Complex::new(value_to_q(re)?, value_to_q(im)?)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<CMatrix, VhsError>>()?;
        let m = Self::new(tau)?;
        if let Some(g) = raw.g {
            if g != m.genus() {
                return Err(VhsError::GenusMismatch {
                    declared: g,
                    actual: m.genus(),
                });
            }
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.tau.len()
    }

    pub fn re(&self) -> QMatrix {
        self.tau
            .iter()
            .map(|r| r.iter().map(|z| z.re.clone()).collect())
            .collect()
    }

    pub fn im(&self) -> QMatrix {
        self.tau
            .iter()
            .map(|r| r.iter().map(|z| z.im.clone()).collect())
            .collect()
    }
}

/// Outcome of [`validate_period_matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub symmetric: bool,
    pub positive_definite: bool,
    pub diagnostics: Vec<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.symmetric && self.positive_definite
    }
}

/// Symmetry of `tau` and positivity of the leading principal minors of
/// `Im tau`.
pub fn validate_period_matrix(tau: &PeriodMatrix) -> Validation {
    let g = tau.genus();
    let mut diagnostics = Vec::new();
    let mut symmetric = true;
    for i in 0..g {
        for j in i + 1..g {
            if tau.tau[i][j] != tau.tau[j][i] {
                symmetric = false;
                diagnostics.push(format!("tau[{i}][{j}] != tau[{j}][{i}]"));
            }
        }
    }
    let y = tau.im();
    let mut positive_definite = true;
    for k in 1..=g {
        let minor: QMatrix = y[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(&minor);
        if !d.is_positive() {
            positive_definite = false;
            diagnostics.push(format!("leading minor {k} of Im tau is {d}"));
            break;
        }
    }
    Validation {
        symmetric,
        positive_definite,
        diagnostics,
    }
}

fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b).fold(Complex::zero(), |acc, (x, row)| acc + x * &row[j]))
                .collect()
        })
        .collect()
}

fn ctranspose(a: &CMatrix) -> CMatrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn conj(a: &CMatrix) -> CMatrix {
    a.iter().map(|r| r.iter().map(Complex::conj).collect()).collect()
}

fn blocks(tl: &CMatrix, tr: &CMatrix, bl: &CMatrix, br: &CMatrix) -> CMatrix {
    let top = tl.iter().zip(tr).map(|(a, b)| [a.as_slice(), b].concat());
    let bottom = bl.iter().zip(br).map(|(a, b)| [a.as_slice(), b].concat());
    top.chain(bottom).collect()
}

fn cidentity(n: usize) -> CMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Complex::one() } else { Complex::zero() })
                .collect()
        })
        .collect()
}

/// Coefficients `theta^j = sum_i A[j][i] a^i + B[j][i] b^i` with
/// `A[j][i] = (delta_ij + i (X Y^-1)_ij) / 2` and `B[j][i] = -(i/2) (Y^-1)_ij`
/// for `tau = X + iY`.
pub fn theta_coefficients(tau: &PeriodMatrix) -> Result<(CMatrix, CMatrix), VhsError> {
    let g = tau.genus();
    let y_inv = inverse(&tau.im()).ok_or(VhsError::SingularImaginaryPart)?;
    let x = tau.re();
    let half = BigRational::new(1.into(), 2.into());
    let xy: QMatrix = (0..g)
        .map(|i| (0..g).map(|j| (0..g).map(|k| &x[i][k] * &y_inv[k][j]).sum()).collect())
        .collect();
    let mut a = vec![vec![Complex::zero(); g]; g];
    let mut b = vec![vec![Complex::zero(); g]; g];
    for i in 0..g {
        for j in 0..g {
            let delta = if i == j { q(1) } else { q(0) };
            a[j][i] = Complex::new(&half * delta, &half * &xy[i][j]);
            b[j][i] = Complex::new(q(0), -(&half * &y_inv[i][j]));
        }
    }
    Ok((a, b))
}

/// The `2g x 2g` matrix taking `(a, b)` to `(theta, theta-bar)`.
pub fn change_of_basis(tau: &PeriodMatrix) -> Result<CMatrix, VhsError> {
    let (a, b) = theta_coefficients(tau)?;
    Ok(blocks(&a, &b, &conj(&a), &conj(&b)))
}

/// Checks that pairing the coefficient matrix with the periods
/// `[[I, tau], [I, tau-bar]]` of `omega_i` and its conjugate gives the
/// identity, so the change of basis is inverse to the period map.
pub fn basis_consistency(tau: &PeriodMatrix) -> Result<bool, VhsError> {
    let g = tau.genus();
    let c = change_of_basis(tau)?;
    let id = cidentity(g);
    let p = blocks(&id, &tau.tau, &id, &conj(&tau.tau));
    Ok(cmul(&ctranspose(&c), &p) == cidentity(2 * g))
}

/// Real and imaginary parts of a complex matrix as a serializable table.
pub fn to_string_table(m: &CMatrix) -> Vec<Vec<[String; 2]>> {
    m.iter()
        .map(|r| r.iter().map(|z| [z.re.to_string(), z.im.to_string()]).collect())
        .collect()
}

/// `a + b*i` with exact rationals.
pub struct DisplayComplex<'a>(pub &'a ComplexQ);

impl fmt::Display for DisplayComplex<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        match (z.re.is_zero(), z.im.is_zero()) {
            (_, true) => write!(f, "{}", z.re),
            (true, false) => write!(f, "{}*i", z.im),
            (false, false) if z.im.is_negative() => write!(f, "{} - {}*i", z.re, -&z.im),
            _ => write!(f, "{} + {}*i", z.re, z.im),
        }
    }
}
