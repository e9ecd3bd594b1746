use std::fmt::Write as _;

use hodge_core::formulas::{
    self, a_term, hp_classifying, hp_moduli_fixed_det, hp_moduli_space, moduli_degree_bound, semistable_terms,
    SpecializeKind,
};
use hodge_core::hn::enumerate_hn_types;
use hodge_core::ratfun::{expand_series, Specialized, UniPoly};
use hodge_core::{BivarPoly, Family, RatFun2, TruncSeries2};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::{check_genus, At, ComputeArgs, Format, SpecializeArgs, StrataArgs, TableFormat, Target, What};

/// JSON form of `compute` output.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ComputeReport {
    pub group: String,
    pub degree: Vec<i64>,
    pub genus: u32,
    pub what: String,
    pub numerator: BivarPoly,
    pub denominator: BivarPoly,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub series: Option<TruncSeries2>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct SpecializeReport {
    pub group: String,
    pub degree: Vec<i64>,
    pub genus: u32,
    pub what: String,
    pub at: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numerator: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denominator: Option<Vec<String>>,
}

pub fn what_name(w: What) -> &'static str {
    match w {
        What::Stack => "stack",
        What::Semistable => "semistable",
        What::Moduli => "moduli",
        What::FixedDet => "fixed-det",
        What::Classifying => "classifying",
    }
}

fn at_name(a: At) -> &'static str {
    match a {
        At::Poincare => "poincare",
        At::ChiT => "chi-t",
        At::Euler => "euler",
        At::Signature => "signature",
    }
}

fn single_gl(t: &Target) -> Result<usize, CliError> {
    match t.group.factors.as_slice() {
        [f] if f.family == Family::GL => Ok(f.rank),
        _ => Err(CliError::Usage(format!(
            "--what fixed-det needs a single GL factor, got {}",
            t.group
        ))),
    }
}

/// The requested generating function and its LaTeX rendering.
fn evaluate(t: &Target) -> Result<(RatFun2, String), CliError> {
    check_genus(t.genus, t.allow_large_genus)?;
    let d = t.degree();
    t.group.lift(&d)?;
    let g = t.genus;
    if g < 2 && t.what != What::Classifying {
        return Err(CliError::Precondition(format!("genus {g} is below 2")));
    }
    Ok(match t.what {
        What::Classifying => {
            let r = hp_classifying(&t.group);
            let latex = r.to_latex();
            (r, latex)
        }
        What::Stack => {
            let term = a_term(&t.group.degrees(), g);
            (term.to_ratfun(), term.to_latex())
        }
        What::Semistable => {
            let sum = semistable_terms(&t.group, &d, g)?;
            (sum.to_ratfun(), sum.to_latex())
        }
        What::Moduli => {
            let r = hp_moduli_space(&t.group, &d, g)?;
            let p = r.to_polynomial(moduli_degree_bound(&t.group, g))?;
            let latex = p.to_latex();
            (RatFun2::from_poly(p), latex)
        }
        What::FixedDet => {
            let r = single_gl(t)?;
            let f = hp_moduli_fixed_det(r, d.0[0], g)?;
            let bound = 2 * (g - 1) * (r * r - 1) as u32;
            let p = f.to_polynomial(bound)?;
            let latex = p.to_latex();
            (RatFun2::from_poly(p), latex)
        }
    })
}

pub fn compute(a: &ComputeArgs) -> Result<String, CliError> {
    let t = &a.target;
    let (r, latex) = evaluate(t)?;
    let series = a.expand.map(|n| expand_series(&r, n)).transpose()?;
    let mut out = String::new();
    match a.format {
        Format::Plain => {
            writeln!(out, "{}", r.to_plain()).unwrap();
            if let (Some(s), Some(n)) = (&series, a.expand) {
                writeln!(out, "expansion to total degree {n}: {}", s.to_poly().to_plain()).unwrap();
            }
        }
        Format::Latex => {
            writeln!(out, "{latex}").unwrap();
            if let Some(s) = &series {
                writeln!(out, "{} + O({})", s.to_poly().to_latex(), s.order() + 1).unwrap();
            }
        }
        Format::Json => {
            let (num, den) = r.into_parts();
            let report = ComputeReport {
                group: t.group.to_string(),
                degree: t.degree().0,
                genus: t.genus,
                what: what_name(t.what).into(),
                numerator: num,
                denominator: den,
                series,
            };
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).unwrap();
        }
    }
    Ok(out)
}

pub fn kind(a: At) -> SpecializeKind {
    match a {
        At::Poincare => SpecializeKind::Poincare,
        At::ChiT => SpecializeKind::ChiT,
        At::Euler => SpecializeKind::Euler,
        At::Signature => SpecializeKind::Signature,
    }
}

fn uni_latex(p: &UniPoly) -> String {
    let plain = p.to_plain("t");
    let mut out = String::new();
    let mut chars = plain.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            out.push('{');
            while let Some(d) = chars.next_if(char::is_ascii_digit) {
                out.push(d);
            }
            out.push('}');
        }
    }
    out.replace('*', " ")
}

pub fn specialize_cmd(a: &SpecializeArgs) -> Result<Specialized, CliError> {
    let (r, _) = evaluate(&a.target)?;
    Ok(formulas::specialize(&r, kind(a.at))?)
}

pub fn specialize(a: &SpecializeArgs) -> Result<String, CliError> {
    let s = specialize_cmd(a)?;
    let t = &a.target;
    let mut out = String::new();
    match (a.format, &s) {
        (Format::Json, _) => {
            let mut report = SpecializeReport {
                group: t.group.to_string(),
                degree: t.degree().0,
                genus: t.genus,
                what: what_name(t.what).into(),
                at: at_name(a.at).into(),
                value: None,
                numerator: None,
                denominator: None,
            };
            match &s {
                Specialized::Value(v) => report.value = Some(v.to_string()),
                Specialized::Function(f) => match f.as_poly() {
                    Some(p) => report.numerator = Some(p.coeffs().iter().map(ToString::to_string).collect()),
                    None => {
                        report.numerator = Some(f.num.coeffs().iter().map(ToString::to_string).collect());
                        report.denominator = Some(f.den.coeffs().iter().map(ToString::to_string).collect());
                    }
                },
            }
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).unwrap();
        }
        (_, Specialized::Value(v)) => writeln!(out, "{v}").unwrap(),
        (Format::Plain, Specialized::Function(f)) => writeln!(out, "{}", f.to_plain("t")).unwrap(),
        (Format::Latex, Specialized::Function(f)) => match f.as_poly() {
            Some(p) => writeln!(out, "{}", uni_latex(&p)).unwrap(),
            None => writeln!(out, "\\frac{{{}}}{{{}}}", uni_latex(&f.num), uni_latex(&f.den)).unwrap(),
        },
    }
    Ok(out)
}

#[derive(Serialize)]
struct StratumRow {
    subset: u32,
    delta: Vec<i64>,
    mu: Vec<String>,
    codim: u32,
}

pub fn strata(a: &StrataArgs) -> Result<String, CliError> {
    check_genus(a.genus, a.allow_large_genus)?;
    let d = a.degree.clone().unwrap_or_else(|| a.group.zero_degree());
    let types = enumerate_hn_types(&a.group, &d, a.genus, a.max_codim)?;
    let rows: Vec<StratumRow> = types
        .into_iter()
        .map(|t| StratumRow {
            subset: t.subset,
            delta: t.delta_lift,
            mu: t.mu.iter().map(ToString::to_string).collect(),
            codim: t.codim,
        })
        .collect();
    let mut out = String::new();
    match a.format {
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string(&rows).unwrap()).unwrap(),
        TableFormat::Csv => {
            out.push_str("I,delta,mu,codim\n");
            for r in &rows {
                let delta: Vec<String> = r.delta.iter().map(ToString::to_string).collect();
                writeln!(out, "{},{},{},{}", r.subset, delta.join(" "), r.mu.join(" "), r.codim).unwrap();
            }
        }
    }
    Ok(out)
}
