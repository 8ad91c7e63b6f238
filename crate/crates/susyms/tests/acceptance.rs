//! Acceptance run: one PASS/FAIL line per criterion. Built without the test
//! harness so the lines are always printed.
//!
//! A failing criterion is reported, not panicked on. The run only fails when a
//! criterion outside `KNOWN_UNATTAINABLE` fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use susyms::commands::{self, SolutionOptions};
use susyms::report::Format;
use susyms::{parse_source, serialize};
use susyms_core::classification::{classify_stage, published_l, reflect_and_dedupe, Label, Stage, NON_STANDARD};
use susyms_core::elliptic::{elliptic_integral, EllipticKind};
use susyms_core::reduction::reduce_bodiless;
use susyms_core::superalgebra::{adjoint_action, bracket, Algebra, Element};
use susyms_core::{Exponent, GradedExpr};

/// The derived G136 equation differs from the printed one by more than a
/// constant factor; see the README.
const KNOWN_UNATTAINABLE: &[u32] = &[7];

const IDENTITIES_BUDGET: Duration = Duration::from_secs(1);
const EXTENSION_BUDGET: Duration = Duration::from_secs(10);
const CLASSIFY_BUDGET: Duration = Duration::from_secs(60);
const ELLIPTIC_TOLERANCE: f64 = 1e-10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(e) => {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        }
    }
}

fn solution(name: &str) -> String {
    format!("{}/solutions/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn c1_identities() -> Outcome {
    let t = Instant::now();
    let r = commands::verify_identities().unwrap();
    let dt = t.elapsed();
    let n = r.fields["relations"].as_array().unwrap().len();
    outcome(r.passed && dt < IDENTITIES_BUDGET, format!("{n} anticommutation relations, {dt:.2?} (budget {IDENTITIES_BUDGET:?})"))
}

fn c2_extension() -> Outcome {
    let t = Instant::now();
    let r = commands::verify_extension().unwrap();
    let dt = t.elapsed();
    outcome(r.passed && dt < EXTENSION_BUDGET, format!("operator form equals component form, {dt:.2?} (budget {EXTENSION_BUDGET:?})"))
}

fn c3_table() -> Outcome {
    let r = commands::tables().unwrap();
    let md = r.render(Format::Markdown).unwrap();
    let golden = std::fs::read_to_string(format!("{}/tests/golden/v1/tables.md", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let mm = r.fields["susy"]["mismatches"].as_array().unwrap().len();
    outcome(r.passed && md == golden, format!("{mm} mismatching cells, Jacobi violations {}, golden {}", r.fields["susy"]["jacobi_violations"], if md == golden { "equal" } else { "differs" }))
}

fn c4_classical() -> Outcome {
    let r = commands::classical_symmetries().unwrap();
    let n = r.fields["generators"].as_array().unwrap().len();
    let mm = r.fields["table"]["mismatches"].as_array().unwrap().len();
    outcome(r.passed && n == 7, format!("{n} prolonged generators, negative control rejected, {mm} table mismatches"))
}

fn c5_bch() -> Outcome {
    let alg = Algebra::susy().unwrap();
    let (got, want) = commands::bch_example(&alg).unwrap();
    outcome(got.sub(&want).is_zero(), got.render(&alg))
}

fn c6_classification() -> Outcome {
    let t = Instant::now();
    let alg = Algebra::susy().unwrap();
    let mut counts = Vec::new();
    let mut full = Vec::new();
    for (stage, _) in commands::STAGE_COUNTS {
        let c = classify_stage(&alg, stage).unwrap();
        counts.push(c.len());
        if stage == Stage::Full {
            full = c;
        }
    }
    let d = reflect_and_dedupe(&alg, &full).unwrap();
    let published = published_l().unwrap();
    let listed = d.classes.len() == published.len()
        && d.classes.iter().zip(&published).all(|(c, (n, e))| c.label == Label::L(*n) && c.element.sub(e).is_zero());
    let odd = commands::pure_odd_labels(&d.classes);
    let dt = t.elapsed();
    let want: Vec<usize> = commands::STAGE_COUNTS.iter().map(|(_, n)| *n).collect();
    let ok = counts == want && d.classes.len() == commands::DEDUPED_COUNT && listed && odd == NON_STANDARD && dt < CLASSIFY_BUDGET;
    outcome(ok, format!("counts {counts:?}, deduplicated {}, L list {}, non-standard {odd:?}, {dt:.2?} (budget {CLASSIFY_BUDGET:?})", d.classes.len(), if listed { "equal" } else { "differs" }))
}

fn c7_reduction() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, printed) in [(Label::L(74), commands::PRINTED_L74_ODE), (Label::G(136), commands::PRINTED_G136_ODE)] {
        let ode = reduce_bodiless(label).unwrap();
        let m = commands::ode_matches(&ode.lhs, printed).unwrap();
        ok &= m;
        parts.push(format!("{label}: derived {ode} {} printed {printed}", if m { "==" } else { "!=" }));
    }
    outcome(ok, parts.join("; "))
}

fn c8_solutions() -> Outcome {
    let mut bad = Vec::new();
    let zero = ["translation_l1.expr", "travelling_l4.expr", "stationary_l8.expr", "l74_radial.expr", "l74_centered.expr", "g136_polynomial.expr"];
    for f in zero {
        let r = commands::verify_solution(&solution(f), &SolutionOptions::default()).unwrap();
        if !(r.passed && r.fields["verdict"]["kind"] == "identically-zero") {
            bad.push(f.to_string());
        }
    }
    for (f, ode) in [("g136_omega.expr", commands::PRINTED_G136_ODE), ("l74_omega.expr", commands::PRINTED_L74_ODE)] {
        let opts = SolutionOptions { ode: Some(ode.into()), ..Default::default() };
        if !commands::verify_solution(&solution(f), &opts).unwrap().passed {
            bad.push(f.to_string());
        }
    }
    let mut constraints = Vec::new();
    for (f, want) in [("l72_quadratic_a.expr", "C4 + c2 = 0"), ("l72_quadratic_b.expr", "M - a = 0")] {
        let r = commands::verify_solution(&solution(f), &SolutionOptions::default()).unwrap();
        let v = &r.fields["verdict"];
        if v["kind"] != "zero-on-constraints" || v["constraints"][0] != want {
            bad.push(f.to_string());
        }
        constraints.push(format!("{f}: {}", v["constraints"]));
    }
    outcome(bad.is_empty(), format!("{} identically zero, 2 reduced profiles, constraints {}{}", zero.len(), constraints.join(", "), if bad.is_empty() { String::new() } else { format!("; failing {bad:?}") }))
}

fn c9_numerics() -> Outcome {
    let k = 0.5f64.sqrt();
    let mut worst: f64 = 0.0;
    for j in 0..25 {
        let phi = j as f64 * PI / 50.0;
        for (kind, first) in [(EllipticKind::F, true), (EllipticKind::E, false)] {
            let got = elliptic_integral(kind, phi, k).unwrap();
            worst = worst.max((got - common::elliptic_oracle(first, phi, k)).abs());
        }
    }
    let fd = [0.5, 1.0, 2.0].iter().flat_map(|s| [0.0, 1.0].map(|k0| susyms_core::classical::e4_solution_fd_max(*s, k0, commands::FD_STEP))).fold(0.0f64, f64::max);
    let abel = [Exponent::new(1, 2), Exponent::from_integer(1), Exponent::from_integer(2)]
        .into_iter()
        .map(|s| susyms_core::classical::e4_abel_residual_max(s, Exponent::from_integer(0), 41).unwrap())
        .fold(0.0f64, f64::max);
    let ok = worst <= ELLIPTIC_TOLERANCE && fd <= commands::FD_TOLERANCE && abel <= commands::ABEL_TOLERANCE;
    outcome(ok, format!(
        "elliptic max deviation {worst:.3e} (tol {ELLIPTIC_TOLERANCE:e}) at 25 points, finite differences {fd:.3e} (tol {:e}), Abel {abel:.3e} (tol {:e})",
        commands::FD_TOLERANCE,
        commands::ABEL_TOLERANCE
    ))
}

fn run_property<S: proptest::strategy::Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn c10_properties() -> Outcome {
    use proptest::prelude::*;
    let alg = Algebra::susy().unwrap();
    let mut failures = Vec::new();

    let ring = run_property(1000, (common::grass(), common::grass(), common::grass()), |(a, b, c)| {
        let (ea, eb, ec) = (a.to_expr(), b.to_expr(), c.to_expr());
        prop_assert_eq!(ea.gmul(&eb), a.mul(&b).to_expr());
        prop_assert_eq!(ea.gadd(&eb), a.add(&b).to_expr());
        prop_assert_eq!(ea.gmul(&eb).gmul(&ec), ea.gmul(&eb.gmul(&ec)));
        prop_assert_eq!(ea.gmul(&eb.gadd(&ec)), ea.gmul(&eb).gadd(&ea.gmul(&ec)));
        Ok(())
    });
    if let Err(e) = ring {
        failures.push(format!("graded ring: {e}"));
    }

    let unit = |i: usize| Element::basis(i, GradedExpr::one());
    let mut jacobi = 0;
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let lhs = bracket(&alg, &x, &bracket(&alg, &y, &z).unwrap()).unwrap();
                let a = bracket(&alg, &bracket(&alg, &x, &y).unwrap(), &z).unwrap();
                let mut b = bracket(&alg, &y, &bracket(&alg, &x, &z).unwrap()).unwrap();
                if alg.parities[i].is_odd() && alg.parities[j].is_odd() {
                    b = b.scale_left(&GradedExpr::int(-1));
                }
                if lhs.sub(&a.add(&b)).is_zero() {
                    jacobi += 1;
                }
            }
        }
    }
    if jacobi != 512 {
        failures.push(format!("super-Jacobi: {jacobi}/512"));
    }

    let conj = run_property(1000, (common::element(true), common::element(false)), |(x, y)| {
        let there = adjoint_action(&alg, &y, &x).unwrap();
        let back = adjoint_action(&alg, &y.scale_left(&GradedExpr::int(-1)), &there).unwrap();
        prop_assert!(back.sub(&x).is_zero());
        Ok(())
    });
    if let Err(e) = conj {
        failures.push(format!("conjugation: {e}"));
    }

    let parser = run_property(500, common::expr(), |e| {
        let back = parse_source(&serialize(&e)).map_err(|err| TestCaseError::fail(err.to_string()))?;
        prop_assert_eq!(back.expr, e);
        Ok(())
    });
    if let Err(e) = parser {
        failures.push(format!("parser: {e}"));
    }

    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "graded ring 1000 cases, super-Jacobi 512 triples, conjugation 1000 cases, parser 500 cases".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "odd operator anticommutation relations", c1_identities),
        (2, "operator and component forms of the equation agree", c2_extension),
        (3, "supercommutation table", c3_table),
        (4, "classical symmetries and commutators", c4_classical),
        (5, "adjoint action example", c5_bch),
        (6, "classification of one-dimensional subalgebras", c6_classification),
        (7, "bodiless reductions match the printed equations", c7_reduction),
        (8, "symbolic solution verification", c8_solutions),
        (9, "elliptic integrals and classical radial solution", c9_numerics),
        (10, "property suites", c10_properties),
    ];
    let mut failed = Vec::new();
    for (n, name, f) in criteria {
        let t = Instant::now();
        let o = guarded(f);
        println!("{} criterion {n}: {name} [{:.2?}] {}", if o.passed { "PASS" } else { "FAIL" }, t.elapsed(), o.detail);
        if !o.passed {
            failed.push(n);
        }
    }
    let unexpected: Vec<u32> = failed.iter().copied().filter(|n| !KNOWN_UNATTAINABLE.contains(n)).collect();
    println!("{} of {} criteria passed; known unattainable: {KNOWN_UNATTAINABLE:?}", 10 - failed.len(), 10);
    if !unexpected.is_empty() {
        eprintln!("unexpected failing criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
