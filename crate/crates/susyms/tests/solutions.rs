use susyms::commands::{verify_solution, SolutionOptions, PRINTED_G136_ODE, PRINTED_L74_ODE};
use susyms::report::Report;

fn path(name: &str) -> String {
    format!("{}/solutions/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn symbolic(name: &str) -> Report {
    verify_solution(&path(name), &SolutionOptions::default()).unwrap()
}

fn kind(r: &Report) -> &str {
    r.fields["verdict"]["kind"].as_str().unwrap()
}

#[test]
fn identically_zero_residuals() {
    for f in ["translation_l1.expr", "travelling_l4.expr", "stationary_l8.expr", "l74_radial.expr", "l74_centered.expr", "g136_polynomial.expr"] {
        let r = symbolic(f);
        assert!(r.passed, "{f}: {}", r.fields["residual"]);
        assert_eq!(kind(&r), "identically-zero", "{f}");
    }
}

#[test]
fn quadratic_l72_solutions_hold_on_derived_constraints() {
    let a = symbolic("l72_quadratic_a.expr");
    assert!(!a.passed);
    assert_eq!(a.fields["verdict"]["constraints"][0], "C4 + c2 = 0");
    let b = symbolic("l72_quadratic_b.expr");
    assert!(!b.passed);
    assert_eq!(b.fields["verdict"]["constraints"][0], "M - a = 0");
    let opts = SolutionOptions { accept_constraints: true, ..Default::default() };
    assert!(verify_solution(&path("l72_quadratic_b.expr"), &opts).unwrap().passed);
}

#[test]
fn reduced_profiles_satisfy_printed_odes() {
    for (f, ode) in [("g136_omega.expr", PRINTED_G136_ODE), ("l74_omega.expr", PRINTED_L74_ODE)] {
        let opts = SolutionOptions { ode: Some(ode.to_string()), ..Default::default() };
        let r = verify_solution(&path(f), &opts).unwrap();
        assert!(r.passed, "{f}: {}", r.fields["residual"]);
        assert_eq!(kind(&r), "identically-zero");
    }
}

/// The G136 radical solution satisfies the printed reduced equation but not
/// the full equation, in line with the derived G136 reduction.
#[test]
fn g136_radical_solution_is_not_a_full_solution() {
    let r = symbolic("g136_radical.expr");
    assert_eq!(kind(&r), "nonzero");
}

/// Both readings of the doubly periodic solution leave an O(1) residual.
#[test]
fn elliptic_solution_outcome() {
    for f in ["l72_elliptic_amplitude.expr", "l72_elliptic_sine.expr"] {
        let opts = SolutionOptions { numeric: true, complex: true, ..Default::default() };
        let r = verify_solution(&path(f), &opts).unwrap();
        let max = r.fields["max_abs_residual"].as_f64().unwrap();
        assert!(!r.passed && max > 1e-3, "{f}: {max}");
    }
}

#[test]
fn numeric_mode_uses_sampled_constants() {
    let src = susyms::parse_source("sign eps;\neven A, B;\nsample A = 1/2, B = -1, eps = 1;\ntheta1*theta2*(2*A*y + B*x + eps*A)\n").unwrap();
    let opts = SolutionOptions { numeric: true, tolerance: 1e-10, ..Default::default() };
    let r = susyms::commands::verify_source("inline", &src, &opts).unwrap();
    assert!(r.passed);
    let src = susyms::parse_source("even A;\nsample A = 2;\nA*x*y*theta1*theta2\n").unwrap();
    let r = susyms::commands::verify_source("inline", &src, &opts).unwrap();
    assert!(!r.passed);
    let src = susyms::parse_source("even A;\nA*x*y*theta1*theta2\n").unwrap();
    assert!(susyms::commands::verify_source("inline", &src, &opts).unwrap_err().is_usage());
}
