use susyms_core::superfield::*;
use susyms_core::{Atom, GradedExpr};

#[test]
fn operator_identities_on_generic_superfield() {
    let checks = check_operator_identities().unwrap();
    assert_eq!(checks.len(), 10);
    for c in &checks {
        assert!(c.passed, "{}: {}", c.name, c.residual);
    }
}

#[test]
fn operator_identities_on_polynomial_superfield() {
    let (x, y) = (GradedExpr::var("x"), GradedExpr::var("y"));
    let (t1, t2) = (GradedExpr::theta1(), GradedExpr::theta2());
    let f = x.gmul(&x).gmul(&y).gadd(&GradedExpr::odd_const("mu").gmul(&t1).gmul(&y)).gadd(&t1.gmul(&t2).gmul(&x).gmul(&x).gmul(&x));
    for c in check_operator_identities_on(&f).unwrap() {
        assert!(c.passed, "{}: {}", c.name, c.residual);
    }
}

#[test]
fn q1_squared_by_hand() {
    // Q1 = d/dtheta1 - theta1 d/dx: Q1(theta1 x) = x - theta1 theta1 = x,
    // then Q1(x) = -theta1, so Q1^2 (theta1 x) = -theta1 = -dx(theta1 x)
    let f = GradedExpr::theta1().gmul(&GradedExpr::var("x"));
    let once = apply_operator(SuperOperator::Q1, &f).unwrap();
    let twice = apply_operator(SuperOperator::Q1, &once).unwrap();
    let dx = apply_operator(SuperOperator::Dx, &f).unwrap();
    assert_eq!(twice, dx.gneg());
}

#[test]
fn extension_holds_only_in_standard_convention() {
    for conv in Convention::all() {
        let d = extension_discrepancy(conv).unwrap();
        assert_eq!(d.is_zero(), conv == Convention::STANDARD, "{conv:?}: {} terms", d.len());
    }
}

#[test]
fn operator_and_component_forms_agree_on_examples() {
    let (x, y) = (GradedExpr::var("x"), GradedExpr::var("y"));
    let (t1, t2) = (GradedExpr::theta1(), GradedExpr::theta2());
    let examples = [
        x.gmul(&y).gmul(&y),
        t1.gmul(&t2).gmul(&x).gmul(&x).gadd(&y),
        GradedExpr::odd_const("mu").gmul(&t2).gmul(&x).gadd(&x.gmul(&x).gmul(&x)),
        x.gmul(&x).gadd(&y.gmul(&y)).powr(susyms_core::Exponent::new(1, 2)).unwrap().gmul(&t1).gmul(&t2),
    ];
    for f in &examples {
        let a = residual_for(f, ResidualForm::Operator).unwrap();
        let b = residual_for(f, ResidualForm::Component).unwrap();
        assert!(a.gsub(&b).is_zero(), "{f}: {a} vs {b}");
    }
}

#[test]
fn residual_of_bodiless_x_profile_is_its_second_derivative() {
    // Phi = theta1 theta2 x^3: nonlinear terms carry two theta factors each
    // and cancel, leaving Phi_xx
    let x = GradedExpr::var("x");
    let f = GradedExpr::theta1().gmul(&GradedExpr::theta2()).gmul(&x.gmul(&x).gmul(&x));
    let r = residual_for(&f, ResidualForm::Operator).unwrap();
    assert_eq!(r, GradedExpr::theta1().gmul(&GradedExpr::theta2()).gmul(&x).scale_int(6));
    assert!(superfield_expansion().atoms().contains(&Atom::theta1()));
}
