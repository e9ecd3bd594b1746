use std::fmt::Write as _;

use hodge_core::formulas::{
    a_series, chi_t_fixed_det_product, hp_moduli_fixed_det, hp_moduli_space, hp_semistable_classical,
    hp_semistable_closed, moduli_degree_bound, poincare_product, specialize, SpecializeKind,
};
use hodge_core::hn::verify_recursion;
use hodge_core::ratfun::{Specialized, UniRatFun};
use hodge_core::roots::good_case;
use hodge_core::{Degree, Family, GroupSpec};
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::{check_genus, Format, Suite, VerifyArgs};

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: String, pass: bool) -> Self {
        Self {
            name,
            value: None,
            pass,
            detail: None,
        }
    }

    fn failed(name: String, detail: impl ToString) -> Self {
        Self {
            detail: Some(detail.to_string()),
            ..Self::new(name, false)
        }
    }

    fn line(&self) -> String {
        let mut s = self.name.clone();
        if let Some(v) = &self.value {
            write!(s, " = {v}").unwrap();
        }
        s.push_str(if self.pass { " PASS" } else { " FAIL" });
        if let Some(d) = &self.detail {
            write!(s, " ({d})").unwrap();
        }
        s
    }
}

#[derive(Serialize)]
struct Report<'a> {
    suite: &'a str,
    checks: &'a [Check],
    passed: usize,
    failed: usize,
}

type Job = Box<dyn Fn() -> Check + Send + Sync>;

/// Classical single-factor groups with rank index at most `max_rank`.
fn classical_specs(max_rank: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for (family, min) in [
        (Family::GL, 1),
        (Family::SL, 2),
        (Family::SOOdd, 1),
        (Family::Sp, 1),
        (Family::SOEven, 2),
    ] {
        for r in min..=max_rank {
            out.push(GroupSpec::single(family, r).expect("supported rank"));
        }
    }
    out
}

fn label(spec: &GroupSpec, d: &Degree) -> String {
    format!("{spec},d={d}")
}

fn recursion_jobs(a: &VerifyArgs) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let order = a.order;
    for spec in classical_specs(a.max_rank) {
        for d in spec.degree_representatives() {
            for &g in &a.genus_list {
                let (spec, d) = (spec.clone(), d.clone());
                jobs.push(Box::new(move || {
                    let name = format!("recursion({},g={g},N={order})", label(&spec, &d));
                    match verify_recursion(&spec, &d, g, order) {
                        Ok(r) => match r.first_mismatch {
                            None => Check::new(name, true),
                            Some((i, j, x, y)) => {
                                Check::failed(name, format!("coefficient of u^{i}v^{j}: closed {x}, recursion {y}"))
                            }
                        },
                        Err(e) => Check::failed(name, e),
                    }
                }));
            }
        }
    }
    jobs
}

fn classical_jobs(a: &VerifyArgs) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for spec in classical_specs(a.max_rank) {
        let f = spec.factors[0];
        for d in spec.degree_representatives() {
            for &g in &a.genus_list {
                let (spec, d) = (spec.clone(), d.clone());
                jobs.push(Box::new(move || {
                    let name = format!("classical({},g={g})", label(&spec, &d));
                    let lhs = hp_semistable_classical(f.family, f.rank, d.0[0], g);
                    let rhs = hp_semistable_closed(&spec, &d, g);
                    match (lhs, rhs) {
                        (Ok(x), Ok(y)) => Check::new(name, x.rat_eq(&y)),
                        (Err(e), _) | (_, Err(e)) => Check::failed(name, e),
                    }
                }));
            }
        }
    }
    jobs
}

fn polynomial_check(spec: &GroupSpec, d: &Degree, g: u32) -> Check {
    let name = format!("moduli({},g={g}) polynomial", label(spec, d));
    let bound = moduli_degree_bound(spec, g);
    let p = match hp_moduli_space(spec, d, g).and_then(|r| Ok(r.to_polynomial(bound)?)) {
        Ok(p) => p,
        Err(e) => return Check::failed(name, e),
    };
    let ok = p.total_degree() == Some(bound)
        && p.coeff(0, 0) == 1.into()
        && p.coeff(bound / 2, bound / 2) == 1.into()
        && p.swap_uv() == p
        && p.terms().all(|(_, c)| *c >= 0.into());
    let mut c = Check::new(name, ok);
    c.value = Some(format!("degree {}", p.total_degree().unwrap_or(0)));
    c
}

fn good_case_jobs(a: &VerifyArgs) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for spec in classical_specs(a.max_rank) {
        for d in spec.degree_representatives() {
            let (s, e) = (spec.clone(), d.clone());
            jobs.push(Box::new(move || {
                let (spec, d) = (&s, &e);
                let name = format!("good-case({})", label(spec, d));
                let good = match good_case(spec, d) {
                    Ok(b) => b,
                    Err(e) => return Check::failed(name, e),
                };
                let f = spec.factors[0];
                let expected = match f.family {
                    Family::GL => Some(d.0[0].gcd(&(f.rank as i64)) == 1),
                    Family::SL | Family::Sp => Some(false),
                    _ => None,
                };
                let mut c = Check::new(name, expected.is_none_or(|e| e == good));
                c.value = Some(good.to_string());
                c
            }));
            for &g in &a.genus_list {
                let (spec, d) = (spec.clone(), d.clone());
                jobs.push(Box::new(move || match good_case(&spec, &d) {
                    Ok(true) => polynomial_check(&spec, &d, g),
                    Ok(false) => {
                        let mut c = Check::new(format!("moduli({},g={g}) polynomial", label(&spec, &d)), true);
                        c.value = Some("not a good case, skipped".into());
                        c
                    }
                    Err(e) => Check::failed(format!("moduli({},g={g})", label(&spec, &d)), e),
                }));
            }
        }
    }
    jobs
}

fn as_function(s: Specialized) -> UniRatFun {
    match s {
        Specialized::Function(f) => f,
        Specialized::Value(v) => UniRatFun::from_poly(hodge_core::ratfun::UniPoly::constant(v)),
    }
}

fn value_check(name: String, s: Result<Specialized, hodge_core::FormulaError>) -> Check {
    match s {
        Ok(Specialized::Value(v)) => {
            let mut c = Check::new(name, v.is_zero());
            c.value = Some(v.to_string());
            c
        }
        Ok(Specialized::Function(f)) => Check::failed(name, format!("expected a number, got {}", f.to_plain("t"))),
        Err(e) => Check::failed(name, e),
    }
}

fn corollary_jobs(a: &VerifyArgs) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for r in 2..=a.max_rank.max(2) {
        for d in (1..r as i64).filter(|d| d.gcd(&(r as i64)) == 1) {
            for &g in &a.genus_list {
                let tag = format!("GL{r},d={d},g={g}");
                let fixed = move || hp_moduli_fixed_det(r, d, g);
                let t = tag.clone();
                jobs.push(Box::new(move || {
                    let name = format!("chi_t({t})");
                    match fixed().and_then(|f| specialize(&f, SpecializeKind::ChiT)) {
                        Ok(s) => {
                            let f = as_function(s);
                            let expected = UniRatFun::from_poly(chi_t_fixed_det_product(r, g));
                            let mut c = Check::new(name, f == expected);
                            c.value = Some(f.to_plain("t"));
                            c
                        }
                        Err(e) => Check::failed(name, e),
                    }
                }));
                let t = tag.clone();
                jobs.push(Box::new(move || {
                    value_check(
                        format!("euler({t})"),
                        fixed().and_then(|f| specialize(&f, SpecializeKind::Euler)),
                    )
                }));
                let t = tag.clone();
                jobs.push(Box::new(move || {
                    value_check(
                        format!("signature({t})"),
                        fixed().and_then(|f| specialize(&f, SpecializeKind::Signature)),
                    )
                }));
                jobs.push(Box::new(move || {
                    let name = format!("chi_t_moduli({tag})");
                    let spec = GroupSpec::single(Family::GL, r).expect("GL rank");
                    match hp_moduli_space(&spec, &Degree(vec![d]), g).and_then(|m| specialize(&m, SpecializeKind::ChiT))
                    {
                        Ok(s) => {
                            let f = as_function(s);
                            let mut c = Check::new(name, f.num.is_zero());
                            c.value = Some(f.to_plain("t"));
                            c
                        }
                        Err(e) => Check::failed(name, e),
                    }
                }));
            }
        }
    }
    for spec in classical_specs(a.max_rank) {
        for &g in &a.genus_list {
            let spec = spec.clone();
            jobs.push(Box::new(move || {
                let name = format!("poincare({spec},g={g})");
                match specialize(&a_series(&spec, g), SpecializeKind::Poincare) {
                    Ok(s) => Check::new(name, as_function(s) == poincare_product(&spec, g)),
                    Err(e) => Check::failed(name, e),
                }
            }));
        }
    }
    jobs
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Recursion => "recursion",
        Suite::Classical => "classical",
        Suite::GoodCase => "good-case",
        Suite::Corollaries => "corollaries",
        Suite::All => "all",
    }
}

pub fn run_checks(a: &VerifyArgs) -> Vec<Check> {
    let mut jobs = Vec::new();
    let all = a.suite == Suite::All;
    if all || a.suite == Suite::Recursion {
        jobs.extend(recursion_jobs(a));
    }
    if all || a.suite == Suite::Classical {
        jobs.extend(classical_jobs(a));
    }
    if all || a.suite == Suite::GoodCase {
        jobs.extend(good_case_jobs(a));
    }
    if all || a.suite == Suite::Corollaries {
        jobs.extend(corollary_jobs(a));
    }
    jobs.par_iter().map(|j| j()).collect()
}

pub fn verify(a: &VerifyArgs) -> Result<String, CliError> {
    if a.genus_list.is_empty() {
        return Err(CliError::Usage("--genus-list is empty".into()));
    }
    for &g in &a.genus_list {
        check_genus(g, a.allow_large_genus)?;
        if g < 2 {
            return Err(CliError::Precondition(format!("genus {g} is below 2")));
        }
    }
    if a.max_rank == 0 {
        return Err(CliError::Usage("--max-rank must be positive".into()));
    }
    let checks = run_checks(a);
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut out = String::new();
    match a.format {
        Format::Json => {
            let report = Report {
                suite: suite_name(a.suite),
                checks: &checks,
                passed: checks.len() - failed,
                failed,
            };
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).unwrap();
        }
        Format::Plain | Format::Latex => {
            for c in &checks {
                writeln!(out, "{}", c.line()).unwrap();
            }
            writeln!(out, "{} passed, {failed} failed", checks.len() - failed).unwrap();
        }
    }
    if failed > 0 {
        Err(CliError::VerifyFailed(out))
    } else {
        Ok(out)
    }
}
