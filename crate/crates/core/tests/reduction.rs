use std::collections::BTreeMap;

use susyms_core::classification::Label;
use susyms_core::numeric::{eval, Env};
use susyms_core::reduction::*;
use susyms_core::simplify::ConstraintVerdict;
use susyms_core::superfield::{residual_for, ResidualForm};
use susyms_core::{Atom, Error, Exponent, GradedExpr};

fn var(s: &str) -> GradedExpr {
    GradedExpr::var(s)
}

fn t12() -> GradedExpr {
    GradedExpr::theta1().gmul(&GradedExpr::theta2())
}

#[test]
fn invariants_are_annihilated() {
    for label in WORKED_LABELS {
        let set = invariants_for(label).unwrap();
        for (name, r) in set.annihilation().unwrap() {
            assert!(r.is_zero(), "{label}: {name} -> {r}");
        }
    }
}

#[test]
fn l74_invariants() {
    let set = invariants_for(Label::L(74)).unwrap();
    let x = var("x");
    assert_eq!(set.get("xi").unwrap(), &var("y").gmul(&x.inv().unwrap()));
    let eta1 = GradedExpr::theta1().gadd(&GradedExpr::odd_const("mu")).gmul(&x.powr(Exponent::new(-1, 2)).unwrap());
    assert_eq!(set.get("eta1").unwrap(), &eta1);
}

#[test]
fn unsupported_labels_are_rejected() {
    assert!(matches!(invariants_for(Label::L(2)), Err(Error::UnsupportedSubalgebra(_))));
    assert!(matches!(reduce_bodiless(Label::L(1)), Err(Error::UnsupportedSubalgebra(_)) | Err(Error::Reduction(_))));
}

#[test]
fn bodiless_odes() {
    assert_eq!(reduce_bodiless(Label::L(74)).unwrap().to_string(), "(1 + w^2 + xi^2)*w'' = 0");
    assert_eq!(reduce_bodiless(Label::L(72)).unwrap().to_string(), "(1 + w^2 + xi^2)*w'' = 0");
    // differs from the printed (2 xi w w' + 6 w^2 + xi^2 + 4) factor
    assert_eq!(reduce_bodiless(Label::G(136)).unwrap().to_string(), "(4 + 4*w^2 + xi^2)*w'' = 0");
}

#[test]
fn l74_solution_branches() {
    let ode = reduce_bodiless(Label::L(74)).unwrap();
    let xi = var("xi");
    let radical = GradedExpr::i().gmul(&xi.gmul(&xi).gadd(&GradedExpr::one()).powr(Exponent::new(1, 2)).unwrap());
    assert!(ode.substitute_factor(&radical).unwrap().is_zero());
    assert!(ode.substitute_factor(&radical.gneg()).unwrap().is_zero());
    let linear = GradedExpr::konst("A").gmul(&xi).gadd(&GradedExpr::konst("B"));
    assert!(ode.substitute(&linear).unwrap().is_zero());
}

/// Evaluate the reduced L72 equation on `w = xi^3 + 2 xi` and compare with
/// the theta1 theta2 part of the full residual of `Phi = x w(y/x) theta1 theta2`
/// at sample points: the two agree up to the factor `1/x`.
#[test]
fn l72_ode_numeric_cross_check() {
    let (x, y) = (var("x"), var("y"));
    let cubic = |s: &GradedExpr| s.gmul(s).gmul(s).gadd(&s.scale_int(2));
    let xi_xy = y.gmul(&x.inv().unwrap());
    let phi = x.gmul(&cubic(&xi_xy)).gmul(&t12());
    let r = residual_for(&phi, ResidualForm::Operator).unwrap();
    let comp = r.odd_coefficient(&[Atom::theta1(), Atom::theta2()]);
    let ode = reduce_bodiless(Label::L(72)).unwrap();
    let lhs = ode.substitute(&cubic(&var("xi"))).unwrap();
    let grid = GridSpec { x: (0.5, 3.0), y: (-2.0, 2.0), nx: 9, ny: 9 };
    for (px, py) in grid.points() {
        let mut e = Env::new(true);
        e.set(Atom::var("x"), px).set(Atom::var("y"), py);
        let full = eval(&comp, &e).unwrap().re;
        let mut e = Env::new(true);
        e.set(Atom::var("xi"), py / px);
        let reduced = eval(&lhs, &e).unwrap().re;
        assert!((px * full - reduced).abs() <= 1e-9 * reduced.abs().max(1.0), "at ({px}, {py}): {full} vs {reduced}");
    }
}

#[test]
fn translation_solutions_vanish() {
    let y = var("y");
    let (t1, t2) = (GradedExpr::theta1(), GradedExpr::theta2());
    let c = GradedExpr::konst;
    let o = GradedExpr::odd_const;
    let phi = c("C1")
        .gadd(&c("C2").gmul(&y))
        .gadd(&o("C3").gmul(&t1))
        .gadd(&o("C4").gmul(&y).gmul(&t1))
        .gadd(&o("C5").gmul(&t2))
        .gadd(&o("C6").gmul(&y).gmul(&t2))
        .gadd(&c("C7").gmul(&t12()))
        .gadd(&c("C8").gmul(&y).gmul(&t12()));
    assert_eq!(verify_symbolic(&phi).unwrap().verdict, ConstraintVerdict::IdenticallyZero);
}

#[test]
fn quadratic_with_constant_bodiless_term_has_a_constraint() {
    let (x, y) = (var("x"), var("y"));
    let c = GradedExpr::konst;
    let phi = c("a").gmul(&y).gmul(&y).gadd(&c("C").gmul(&x).gmul(&y)).gsub(&c("M").gmul(&x).gmul(&x)).gadd(&c("N").gmul(&t12()));
    let rep = verify_symbolic(&phi).unwrap();
    // hand check: every nonlinear term carries two theta derivatives of a
    // bodiless constant, leaving Phi_xx + Phi_yy = 2a - 2M
    assert_eq!(rep.residual, c("a").gsub(&c("M")).scale_int(2));
    assert_eq!(rep.verdict, ConstraintVerdict::ZeroOn(vec![c("M").gsub(&c("a"))]));
}

#[test]
fn numeric_mode_flags_domain_errors() {
    let (x, y) = (var("x"), var("y"));
    let phi = y.gsub(&x.scale_int(4)).powr(Exponent::new(1, 2)).unwrap().gmul(&t12());
    let err = verify_numeric(&phi, &GridSpec::default(), &BTreeMap::new(), true).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "{err}");
    let ok = verify_numeric(&x.scale_int(3).gadd(&y).gmul(&t12()), &GridSpec::default(), &BTreeMap::new(), true).unwrap();
    assert!(ok.max_abs < 1e-12);
}
