//! Acceptance checks, one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use hodge_core::formulas::{
    a_series, a_term, chi_t_fixed_det_product, hp_moduli_fixed_det, hp_moduli_space, hp_semistable_classical,
    hp_semistable_closed, poincare_product, semistable_classical_terms, semistable_terms, specialize, SpecializeKind,
};
use hodge_core::hn::{enumerate_hn_types, gl_blocks, hn_gl_oracle, verify_recursion, GlHnType};
use hodge_core::linalg::q;
use hodge_core::ratfun::{BivarPoly, RatFun2, Specialized, UniRatFun};
use hodge_core::vhs::{basis_consistency, theta_coefficients, validate_period_matrix, PeriodMatrix};
use hodge_core::{Degree, Family, GroupSpec};

type Check = Result<String, String>;

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

fn all_ok(results: Vec<Result<(), String>>, summary: String) -> Check {
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

fn p_factor(g: u32) -> RatFun2 {
    a_term(&[1], g).to_ratfun()
}

fn binomials(g: u32) -> RatFun2 {
    RatFun2::from_poly(&BivarPoly::one_plus(1, 2, 1).pow(g) * &BivarPoly::one_plus(1, 1, 2).pow(g))
}

fn one_minus(k: u32) -> RatFun2 {
    RatFun2::from_poly(BivarPoly::one_minus_uv(k))
}

fn rank_two_example(g: u32, d: i64) -> RatFun2 {
    let p = p_factor(g);
    let first = &(&p * &binomials(g)) * &(&one_minus(1) * &one_minus(2)).inv().unwrap();
    let e = if d == 1 { g } else { g + 1 };
    let second = &(&RatFun2::from_poly(BivarPoly::uv_pow(e)) * &one_minus(2).inv().unwrap()) * &(&p * &p);
    &first - &second
}

fn criterion_1() -> Check {
    let results = (2..=5u32)
        .flat_map(|g| [0i64, 1].map(|d| (g, d)))
        .map(|(g, d)| {
            let closed = hp_semistable_closed(&spec("GL2"), &Degree(vec![d]), g).map_err(|e| e.to_string())?;
            if closed == rank_two_example(g, d) {
                Ok(())
            } else {
                Err(format!("GL2 d={d} g={g} differs"))
            }
        })
        .collect();
    all_ok(results, "GL2, d in {0,1}, g = 2..5".into())
}

fn criterion_2() -> Check {
    let results = (2..=5u32)
        .map(|g| {
            let closed = hp_semistable_closed(&spec("GL2"), &Degree(vec![1]), g).map_err(|e| e.to_string())?;
            let pic = RatFun2::from_poly(&BivarPoly::one_plus(1, 1, 0).pow(g) * &BivarPoly::one_plus(1, 0, 1).pow(g));
            let fixed = (&one_minus(1) * &closed).div(&pic).map_err(|e| e.to_string())?;
            let a = &BivarPoly::one_plus(1, 2, 1) * &BivarPoly::one_plus(1, 1, 2);
            let b = &BivarPoly::uv_pow(1) * &(&BivarPoly::one_plus(1, 1, 0) * &BivarPoly::one_plus(1, 0, 1));
            let want = (0..g).fold(BivarPoly::zero(), |acc, k| &acc + &(&a.pow(g - 1 - k) * &b.pow(k)));
            let bound = 2 * (g - 1) * 3;
            let poly = fixed.to_polynomial(bound).map_err(|e| format!("g={g}: {e}"))?;
            if poly != want {
                return Err(format!("g={g}: polynomial differs"));
            }
            let direct = hp_moduli_fixed_det(2, 1, g).map_err(|e| e.to_string())?;
            if direct.to_polynomial(bound).ok() != Some(want) {
                return Err(format!("g={g}: composition sum differs"));
            }
            Ok(())
        })
        .collect();
    all_ok(results, "g = 2..5, polynomial within 2(g-1)(r^2-1)".into())
}

fn classical_cases() -> Vec<(Family, usize, i64)> {
    let mut out = Vec::new();
    for r in 1..=4 {
        for d in 0..r as i64 {
            out.push((Family::GL, r, d));
        }
    }
    for r in 2..=4 {
        out.push((Family::SL, r, 0));
    }
    for r in 1..=3 {
        out.push((Family::SOOdd, r, 0));
        out.push((Family::SOOdd, r, 1));
        out.push((Family::Sp, r, 0));
    }
    for r in 2..=3 {
        out.push((Family::SOEven, r, 0));
        out.push((Family::SOEven, r, 1));
    }
    out
}

fn criterion_3() -> Check {
    let mut cases: Vec<(Family, usize, i64, u32)> = classical_cases()
        .into_iter()
        .flat_map(|(f, r, d)| [2, 3].map(|g| (f, r, d, g)))
        .collect();
    cases.sort_by_key(|c| std::cmp::Reverse(c.1));
    let mut results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|&(f, r, d, g)| {
            let s = GroupSpec::single(f, r).unwrap();
            let closed = hp_semistable_closed(&s, &Degree(vec![d]), g).map_err(|e| e.to_string())?;
            let classical = hp_semistable_classical(f, r, d, g).map_err(|e| e.to_string())?;
            if closed == classical {
                Ok(())
            } else {
                Err(format!("{s} d={d} g={g}"))
            }
        })
        .collect();
    let rank5: Vec<(Family, i64, u32)> = (0..5)
        .map(|d| (Family::GL, d, 2))
        .chain((0..5).map(|d| (Family::GL, d, 3)))
        .chain([(Family::SL, 0, 2), (Family::SL, 0, 3)])
        .collect();
    results.par_extend(rank5.par_iter().map(|&(f, d, g)| {
        let s = GroupSpec::single(f, 5).unwrap();
        let closed = semistable_terms(&s, &Degree(vec![d]), g)
            .map_err(|e| e.to_string())?
            .expand(24);
        let classical = semistable_classical_terms(f, 5, d, g)
            .map_err(|e| e.to_string())?
            .expand(24);
        if closed == classical {
            Ok(())
        } else {
            Err(format!("{s} d={d} g={g} (order 24)"))
        }
    }));
    let n = results.len();
    all_ok(results, format!("{n} configurations"))
}

fn recursion_cases() -> Vec<(GroupSpec, Degree)> {
    let mut out = Vec::new();
    for r in 1..=4 {
        for d in 0..r as i64 {
            out.push((GroupSpec::single(Family::GL, r).unwrap(), Degree(vec![d])));
        }
    }
    for s in ["SL3", "SO5", "SO7", "Sp2", "Sp3", "SO6", "SO8"] {
        let g = spec(s);
        for d in g.degree_representatives() {
            out.push((g.clone(), d));
        }
    }
    out
}

fn criterion_4() -> Check {
    let cases: Vec<(GroupSpec, Degree, u32)> = recursion_cases()
        .into_iter()
        .flat_map(|(s, d)| [2, 3].map(|g| (s.clone(), d.clone(), g)))
        .collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|(s, d, g)| {
            let r = verify_recursion(s, d, *g, 20).map_err(|e| e.to_string())?;
            match r.first_mismatch {
                None => Ok(()),
                Some((i, j, a, b)) => Err(format!("{s} d={d} g={g}: u^{i}v^{j} closed {a} vs recursion {b}")),
            }
        })
        .collect();
    let n = results.len();
    all_ok(results, format!("{n} configurations to order 20"))
}

fn criterion_5() -> Check {
    let cases: Vec<(usize, i64, u32)> = (1..=4)
        .flat_map(|r| (-4..=4).flat_map(move |d| [2, 3].map(|g| (r, d, g))))
        .collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|&(r, d, g)| {
            let s = GroupSpec::single(Family::GL, r).unwrap();
            let types = enumerate_hn_types(&s, &Degree(vec![d]), g, 24).map_err(|e| e.to_string())?;
            let mut ours: Vec<GlHnType> = types
                .iter()
                .map(|t| GlHnType {
                    blocks: gl_blocks(t, r),
                    codim: t.codim as i64,
                })
                .collect();
            ours.sort();
            let oracle = hn_gl_oracle(r, d, 24, g);
            if ours == oracle {
                Ok(())
            } else {
                Err(format!(
                    "GL{r} d={d} g={g}: {} enumerated vs {} oracle",
                    ours.len(),
                    oracle.len()
                ))
            }
        })
        .collect();
    let n = results.len();
    all_ok(results, format!("{n} configurations, max codim 24"))
}

fn criterion_6() -> Check {
    let mut cases = Vec::new();
    for r in 2..=4usize {
        for d in 1..r as i64 {
            if d.gcd(&(r as i64)) == 1 {
                cases.extend([2u32, 3].map(|g| (r, d, g)));
            }
        }
    }
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|&(r, d, g)| {
            let tag = format!("r={r} d={d} g={g}");
            let fixed = hp_moduli_fixed_det(r, d, g).map_err(|e| e.to_string())?;
            let want = Specialized::Function(UniRatFun::from_poly(chi_t_fixed_det_product(r, g)));
            if specialize(&fixed, SpecializeKind::ChiT).map_err(|e| e.to_string())? != want {
                return Err(format!("{tag}: chi_t"));
            }
            for kind in [SpecializeKind::Euler, SpecializeKind::Signature] {
                if specialize(&fixed, kind).map_err(|e| e.to_string())? != Specialized::Value(BigRational::zero()) {
                    return Err(format!("{tag}: {kind:?} nonzero"));
                }
            }
            let full = hp_moduli_space(&GroupSpec::single(Family::GL, r).unwrap(), &Degree(vec![d]), g)
                .map_err(|e| e.to_string())?;
            match specialize(&full, SpecializeKind::ChiT).map_err(|e| e.to_string())? {
                Specialized::Function(f) if f.num.is_zero() => Ok(()),
                _ => Err(format!("{tag}: chi_t of the full moduli space is nonzero")),
            }
        })
        .collect();
    let n = results.len();
    all_ok(results, format!("{n} coprime configurations"))
}

fn criterion_7() -> Check {
    let mut specs = Vec::new();
    for r in 1..=4 {
        specs.push(GroupSpec::single(Family::GL, r).unwrap());
        specs.push(GroupSpec::single(Family::SOOdd, r).unwrap());
        specs.push(GroupSpec::single(Family::Sp, r).unwrap());
    }
    for r in 2..=4 {
        specs.push(GroupSpec::single(Family::SL, r).unwrap());
        specs.push(GroupSpec::single(Family::SOEven, r).unwrap());
    }
    let results: Vec<Result<(), String>> = specs
        .par_iter()
        .flat_map(|s| [2u32, 3].map(|g| (s.clone(), g)))
        .map(|(s, g)| {
            let got = specialize(&a_series(&s, g), SpecializeKind::Poincare).map_err(|e| e.to_string())?;
            if got == Specialized::Function(poincare_product(&s, g)) {
                Ok(())
            } else {
                Err(format!("{s} g={g}"))
            }
        })
        .collect();
    let n = results.len();
    all_ok(results, format!("{n} configurations"))
}

fn criterion_8() -> Check {
    let cases: Vec<(GroupSpec, Degree, u32)> = recursion_cases()
        .into_iter()
        .flat_map(|(s, d)| [2, 3].map(|g| (s.clone(), d.clone(), g)))
        .collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|(s, d, g)| {
            let series = semistable_terms(s, d, *g).map_err(|e| e.to_string())?.expand(24);
            match series.first_negative() {
                None => Ok(()),
                Some(((i, j), c)) => Err(format!("{s} d={d} g={g}: coefficient of u^{i}v^{j} is {c}")),
            }
        })
        .collect();
    let n = results.len();
    all_ok(results, format!("{n} configurations to order 24"))
}

fn random_period_matrix(rng: &mut StdRng, g: usize) -> PeriodMatrix {
    let mut small = |lo: i64, hi: i64| rng.gen_range(lo..=hi);
    let mut x = vec![vec![q(0); g]; g];
    let mut l = vec![vec![q(0); g]; g];
    for i in 0..g {
        for j in 0..=i {
            let v = BigRational::new(small(-9, 9).into(), small(1, 7).into());
            x[i][j] = v.clone();
            x[j][i] = v;
            l[i][j] = BigRational::new(small(-5, 5).into(), small(1, 4).into());
        }
        l[i][i] = BigRational::new(small(1, 6).into(), small(1, 4).into());
    }
    // Y = L L^T with L lower triangular and positive diagonal
    let y: Vec<Vec<BigRational>> = (0..g)
        .map(|i| (0..g).map(|j| (0..g).map(|k| &l[i][k] * &l[j][k]).sum()).collect())
        .collect();
    PeriodMatrix::from_parts(&x, &y).unwrap()
}

fn criterion_9() -> Check {
    let mut results = Vec::new();
    for g in 1..=4 {
        let tau = PeriodMatrix::identity_i(g);
        let (a, b) = theta_coefficients(&tau).map_err(|e| e.to_string())?;
        let half = BigRational::new(1.into(), 2.into());
        let ok = (0..g).all(|i| {
            (0..g).all(|j| {
                let d = if i == j { half.clone() } else { q(0) };
                a[i][j].re == d && a[i][j].im.is_zero() && b[i][j].re.is_zero() && b[i][j].im == -d
            })
        });
        results.push(if ok { Ok(()) } else { Err(format!("i*I_{g}")) });
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 0..20 {
        let g = 1 + n % 4;
        let tau = random_period_matrix(&mut rng, g);
        let r = if !validate_period_matrix(&tau).is_valid() {
            Err(format!("sample {n} not in the Siegel space"))
        } else if basis_consistency(&tau).map_err(|e| e.to_string())? {
            Ok(())
        } else {
            Err(format!("sample {n} (g={g})"))
        };
        results.push(r);
    }
    all_ok(
        results,
        "i*I_g for g = 1..4 and 20 random rational period matrices".into(),
    )
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("rank-2 worked example", criterion_1),
        ("fixed-determinant polynomial", criterion_2),
        ("classical composition sums equal the closed formula", criterion_3),
        ("recursion identity", criterion_4),
        ("HN enumeration equals the GL oracle", criterion_5),
        ("specialization corollaries", criterion_6),
        ("Poincare product formula", criterion_7),
        ("nonnegative integer coefficients", criterion_8),
        ("period matrix coefficients", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
