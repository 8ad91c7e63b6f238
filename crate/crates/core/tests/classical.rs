use susyms_core::classical::*;
use susyms_core::funcs::func_expr;
use susyms_core::{Exponent, FuncHead, GradedExpr};

#[test]
fn table_matches_published_relations() {
    let t = classical_table().unwrap();
    let published = published_classical_table();
    for (i, row) in t.entries.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let got: Vec<_> = cell.iter().map(|e| e.as_coeff().unwrap()).collect();
            assert_eq!(got, published[i][j], "[e{}, e{}]", i + 1, j + 1);
        }
    }
}

#[test]
fn all_generators_are_symmetries() {
    for (i, g) in classical_generators().iter().enumerate() {
        let r = prolong2_symmetry_check(g).unwrap();
        assert!(r.is_zero(), "e{}: {r}", i + 1);
    }
    let control = ClassicalVectorField::new(GradedExpr::zero(), GradedExpr::zero(), GradedExpr::var("x"));
    assert!(!prolong2_symmetry_check(&control).unwrap().is_zero());
}

#[test]
fn scherk_surface_is_minimal() {
    // u = ln cos y - ln cos x
    let c = |v: &str| func_expr(FuncHead::Cos, vec![GradedExpr::var(v)]).unwrap();
    let ln = |e: GradedExpr| func_expr(FuncHead::Ln, vec![e]).unwrap();
    let u = ln(c("y")).gsub(&ln(c("x")));
    assert!(ms_residual(&u).unwrap().is_zero());
    let not_minimal = GradedExpr::var("x").gmul(&GradedExpr::var("x"));
    assert!(!ms_residual(&not_minimal).unwrap().is_zero());
}

#[test]
fn variational_structure() {
    let v = euler_lagrange_check().unwrap();
    assert!(v.euler_lagrange_matches && v.conservation_matches && v.wick_matches && v.wick_involution);
}

/// Independent central differences on the radial solution, relative to the
/// largest of the three terms of the equation.
#[test]
fn radial_solution_finite_differences() {
    let h0 = 1e-3;
    let mut worst: f64 = 0.0;
    for s0 in [0.5, 1.0, 2.0] {
        for k0 in [0.0, 1.0] {
            let u = |x: f64, y: f64| e4_solution_value(s0, k0, x, y);
            let h = h0 / s0.sqrt();
            for (x, y) in annulus_points(s0, FD_ANNULUS, 12, 24, false) {
                let c = u(x, y);
                let ux = (u(x + h, y) - u(x - h, y)) / (2.0 * h);
                let uy = (u(x, y + h) - u(x, y - h)) / (2.0 * h);
                let uxx = (u(x + h, y) - 2.0 * c + u(x - h, y)) / (h * h);
                let uyy = (u(x, y + h) - 2.0 * c + u(x, y - h)) / (h * h);
                let uxy = (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h)) / (4.0 * h * h);
                let terms = [(1.0 + ux * ux) * uyy, -2.0 * ux * uy * uxy, (1.0 + uy * uy) * uxx];
                let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
                worst = worst.max((terms[0] + terms[1] + terms[2]).abs() / scale);
            }
            assert!(e4_solution_fd_max(s0, k0, h0) <= 1e-6);
        }
    }
    assert!(worst <= 1e-6, "max relative residual {worst:e}");
}

#[test]
fn radial_solution_abel_residual() {
    for s0 in [Exponent::new(1, 2), Exponent::from_integer(1), Exponent::from_integer(2)] {
        let r = e4_abel_residual_max(s0, Exponent::from_integer(0), 50).unwrap();
        assert!(r <= 1e-8, "{r:e}");
    }
}

#[test]
fn reductions_match_printed_equations() {
    assert!(reduce_classical(None).unwrap().matches);
    assert!(reduce_classical(Some(&GradedExpr::konst("m"))).unwrap().matches);
    assert_eq!(classical_rhs(&GradedExpr::zero()).unwrap(), reduce_classical(None).unwrap().rhs);
}

#[test]
fn classification_structure() {
    let c = classical_classify().unwrap();
    assert!(c.killing_negative_definite);
    for (name, ok) in &c.checks {
        assert!(ok, "{name}");
    }
    let names: Vec<_> = c.representatives.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["e1", "e4", "e4 + m e3", "e7"]);
}
