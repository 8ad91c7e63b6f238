mod common;

use proptest::prelude::*;
use susyms::{parse_expression, parse_ode, parse_source, serialize, Error};
use susyms_core::atom::FieldDecl;
use susyms_core::calculus::jet_from_list;
use susyms_core::{Atom, Exponent, GradedExpr, Parity};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serialize_then_parse_is_identity(e in common::expr()) {
        let text = serialize(&e);
        let back = parse_source(&text).map_err(|err| TestCaseError::fail(format!("{err}\n{text}")))?;
        prop_assert_eq!(&back.expr, &e, "text:\n{}", text);
        prop_assert_eq!(serialize(&back.expr), text);
    }
}

#[test]
fn solution_files_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/solutions");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let src = parse_source(&text).unwrap();
        let again = parse_source(&serialize(&src.expr)).unwrap();
        assert_eq!(again.expr, src.expr, "{}", path.display());
        n += 1;
    }
    assert!(n >= 13);
}

#[test]
fn grammar_examples() {
    let e = parse_expression("odd mu;\n(theta1 + mu)*theta2").unwrap();
    assert_eq!(e, GradedExpr::theta1().gadd(&GradedExpr::odd_const("mu")).gmul(&GradedExpr::theta2()));
    assert_eq!(parse_expression("0.25*x").unwrap(), GradedExpr::frac(1, 4).gmul(&GradedExpr::var("x")));
    assert_eq!(parse_expression("sqrt(x)").unwrap(), GradedExpr::var("x").powr(Exponent::new(1, 2)).unwrap());
    assert_eq!(parse_expression("x^(-1/2)").unwrap(), GradedExpr::var("x").powr(Exponent::new(-1, 2)).unwrap());
    assert_eq!(parse_expression("x = y").unwrap(), GradedExpr::var("x").gsub(&GradedExpr::var("y")));
    assert_eq!(parse_expression("# comment\n-x").unwrap(), GradedExpr::var("x").gneg());
    let jet = parse_expression("even u(x,y,theta1,theta2);\nD(x,theta1;u)").unwrap();
    let field = FieldDecl::new("u", Parity::Even, &["x", "y", "theta1", "theta2"]);
    assert_eq!(jet, jet_from_list(&field, &[Atom::var("x"), Atom::theta1()]).unwrap());
    assert_eq!(jet.to_string(), "D(x,theta1;u)");
}

#[test]
fn theta_squared_vanishes() {
    assert!(parse_expression("theta1*theta1").unwrap().is_zero());
    assert_eq!(parse_expression("theta2*theta1").unwrap(), GradedExpr::theta1().gmul(&GradedExpr::theta2()).gneg());
}

#[test]
fn ode_grammar() {
    let e = parse_ode("(w^2 + xi^2 + 1)*w'' = 0").unwrap();
    let w = GradedExpr::var("w");
    let xi = GradedExpr::var("xi");
    let want = w.gmul(&w).gadd(&xi.gmul(&xi)).gadd(&GradedExpr::one()).gmul(&GradedExpr::var("w''"));
    assert_eq!(e, want);
}

#[test]
fn errors_carry_positions() {
    match parse_expression("x +\n  zz") {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_expression("x +"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expression("odd mu;\nsin(mu)"), Err(Error::Located { .. }) | Err(Error::Syntax { .. })));
    assert!(matches!(parse_expression("even i;\nx"), Err(Error::Syntax { .. })));
    assert!(parse_expression("x +").unwrap_err().is_usage());
}
