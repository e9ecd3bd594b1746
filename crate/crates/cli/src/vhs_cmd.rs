use std::fmt::Write as _;
use std::io::Read;

use hodge_core::vhs::{
    basis_consistency, theta_coefficients, to_string_table, validate_period_matrix, CMatrix, ComplexQ, DisplayComplex,
    PeriodMatrix,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};
use serde::Serialize;

use crate::error::CliError;
use crate::{Format, VhsArgs};

#[derive(Serialize)]
struct VhsReport {
    genus: usize,
    a: Vec<Vec<[String; 2]>>,
    b: Vec<Vec<[String; 2]>>,
    basis_consistency: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_decimal: Option<Vec<Vec<[String; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_decimal: Option<Vec<Vec<[String; 2]>>>,
}

/// `x` rounded half away from zero to `digits` places.
fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = Pow::pow(BigInt::from(10), digits);
    let n = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let n = n.abs();
    if digits == 0 {
        return format!("{sign}{n}");
    }
    let (int, frac) = (&n / &scale, &n % &scale);
    format!("{sign}{int}.{:0>digits$}", frac.to_string())
}

fn decimal_table(m: &CMatrix, digits: usize) -> Vec<Vec<[String; 2]>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|z| [decimal(&z.re, digits), decimal(&z.im, digits)])
                .collect()
        })
        .collect()
}

fn show(z: &ComplexQ, digits: Option<usize>) -> String {
    match digits {
        None => DisplayComplex(z).to_string(),
        Some(n) => {
            let im = decimal(&z.im, n);
            match im.strip_prefix('-') {
                Some(abs) => format!("{} - {abs}*i", decimal(&z.re, n)),
                None => format!("{} + {im}*i", decimal(&z.re, n)),
            }
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

pub fn vhs(a: &VhsArgs) -> Result<String, CliError> {
    let tau = PeriodMatrix::from_json(&read_input(&a.input)?)?;
    let v = validate_period_matrix(&tau);
    if !v.is_valid() {
        return Err(CliError::Precondition(format!(
            "not in the Siegel upper half-space: {}",
            v.diagnostics.join("; ")
        )));
    }
    let (ma, mb) = theta_coefficients(&tau)?;
    let consistent = basis_consistency(&tau)?;
    let mut out = String::new();
    match a.format {
        Format::Json => {
            let report = VhsReport {
                genus: tau.genus(),
                a: to_string_table(&ma),
                b: to_string_table(&mb),
                basis_consistency: consistent,
                a_decimal: a.decimals.map(|n| decimal_table(&ma, n)),
                b_decimal: a.decimals.map(|n| decimal_table(&mb, n)),
            };
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).unwrap();
        }
        Format::Plain | Format::Latex => {
            writeln!(out, "genus {}", tau.genus()).unwrap();
            writeln!(out, "theta^j = sum_i A[j][i] a^i + B[j][i] b^i").unwrap();
            for (name, m) in [("A", &ma), ("B", &mb)] {
                writeln!(out, "{name}:").unwrap();
                for row in m {
                    let cells: Vec<String> = row.iter().map(|z| show(z, a.decimals)).collect();
                    writeln!(out, "  {}", cells.join("  |  ")).unwrap();
                }
            }
            writeln!(out, "basis consistency: {}", if consistent { "PASS" } else { "FAIL" }).unwrap();
        }
    }
    if consistent {
        Ok(out)
    } else {
        Err(CliError::VerifyFailed(out))
    }
}
