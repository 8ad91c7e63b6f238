use proptest::prelude::*;
use susyms_core::classification::*;
use susyms_core::superalgebra::{adjoint_action, Algebra, Element, Generator};
use susyms_core::GradedExpr;

fn alg() -> Algebra {
    Algebra::susy().unwrap()
}

#[test]
fn stage_counts() {
    let a = alg();
    let counts: Vec<usize> =
        [Stage::S1, Stage::S2, Stage::S, Stage::TildeS, Stage::Full].iter().map(|s| classify_stage(&a, *s).unwrap().len()).collect();
    assert_eq!(counts, [7, 7, 63, 127, 255]);
}

#[test]
fn full_list_matches_published_g_list() {
    let a = alg();
    let ours = classify_full(&a).unwrap();
    let published = published_g().unwrap();
    assert_eq!(ours.len(), published.len());
    for (c, (n, e)) in ours.iter().zip(&published) {
        assert_eq!(c.label, Label::G(*n));
        assert!(c.element.sub(e).is_zero(), "G{n}: {} vs {}", render_element(&c.element), render_element(e));
    }
}

#[test]
fn dedupe_matches_published_l_list() {
    let a = alg();
    let full = classify_full(&a).unwrap();
    let dd = reflect_and_dedupe(&a, &full).unwrap();
    let published = published_l().unwrap();
    assert_eq!(dd.classes.len(), 143);
    for (c, (n, e)) in dd.classes.iter().zip(&published) {
        assert_eq!(c.label, Label::L(*n));
        assert!(c.element.sub(e).is_zero(), "L{n}");
    }
    for (g, h) in &dd.pairing {
        let back = dd.pairing.iter().find(|(a, _)| a == h).unwrap().1;
        assert_eq!(back, *g);
    }
}

#[test]
fn non_standard_classes_are_the_purely_odd_ones() {
    let a = alg();
    let dd = reflect_and_dedupe(&a, &classify_full(&a).unwrap()).unwrap();
    let pure_odd: Vec<u16> = dd
        .classes
        .iter()
        .filter(|c| c.support.iter().all(|g| g.parity().is_odd()))
        .map(|c| match c.label {
            Label::L(n) => n,
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(pure_odd, NON_STANDARD);
    for c in &dd.classes {
        let Label::L(n) = c.label else { unreachable!() };
        assert_eq!(c.standard_invariants, !NON_STANDARD.contains(&n));
    }
}

#[test]
fn listed_entries() {
    let a = alg();
    let s1 = classify_stage(&a, Stage::S1).unwrap();
    assert_eq!(render_element(&s1[6].element), "P1 + mu P3 + nu Q1");
    let s = classify_stage(&a, Stage::S).unwrap();
    assert_eq!(render_element(&s[14].element), "P1 + k P2");
    assert_eq!(s.len() - 14, 49);
    let t = classify_stage(&a, Stage::TildeS).unwrap();
    assert_eq!(t.len() - s.len(), 64);
}

#[test]
fn reflection_preserves_brackets() {
    assert!(reflection_is_automorphism(&alg()));
}

fn g4() -> Element {
    let mut e = Element::zero();
    e.set(Generator::P1.index(), GradedExpr::one());
    e.set(Generator::P3.index(), GradedExpr::odd_const("mu"));
    e
}

fn nilpotent_y() -> impl Strategy<Value = Element> {
    let odd = || prop_oneof![Just(GradedExpr::zero()), prop::sample::select(vec!["rho", "sigma", "lambda"]).prop_map(GradedExpr::odd_const)];
    ((-3i64..=3), (-3i64..=3), (-3i64..=3), odd(), odd(), odd(), odd()).prop_map(|(a, b, c, p3, q1, p4, q2)| {
        let mut y = Element::zero();
        y.set(Generator::P1.index(), GradedExpr::int(a));
        y.set(Generator::P2.index(), GradedExpr::int(b));
        y.set(Generator::P5.index(), GradedExpr::int(c));
        y.set(Generator::P3.index(), p3);
        y.set(Generator::Q1.index(), q1);
        y.set(Generator::P4.index(), p4);
        y.set(Generator::Q2.index(), q2);
        y
    })
}

/// A random even element of the full algebra with integer bodies.
fn element() -> impl Strategy<Value = Element> {
    let body = || prop_oneof![Just(0i64), -3i64..=3];
    let odd = || prop_oneof![Just(GradedExpr::zero()), prop::sample::select(vec!["mu", "nu"]).prop_map(GradedExpr::odd_const)];
    (body(), body(), body(), body(), odd(), odd(), odd(), odd()).prop_map(|(d, p1, p2, p5, p3, q1, p4, q2)| {
        let mut x = Element::zero();
        x.set(Generator::D.index(), GradedExpr::int(d));
        x.set(Generator::P1.index(), GradedExpr::int(p1));
        x.set(Generator::P2.index(), GradedExpr::int(p2));
        x.set(Generator::P5.index(), GradedExpr::int(p5));
        x.set(Generator::P3.index(), p3);
        x.set(Generator::Q1.index(), q1);
        x.set(Generator::P4.index(), p4);
        x.set(Generator::Q2.index(), q2);
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn g4_only_moves_the_p1_coefficient(y in nilpotent_y()) {
        let a = alg();
        let moved = adjoint_action(&a, &y, &g4()).unwrap();
        let diff = moved.sub(&g4());
        for (i, c) in &diff.coeffs {
            if !c.is_zero() {
                prop_assert_eq!(*i, Generator::P1.index());
            }
        }
        prop_assert!(moved.coefficient(Generator::Q1.index()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Normalize a random element and its conjugate; the recorded steps must
    /// reproduce the listed representative in both cases. The label is
    /// conjugation invariant only for D-free elements: the list keeps
    /// D + eps P1, D + mu P4, ... apart from D although translations link them.
    #[test]
    fn normalization_round_trip(x in element(), y in nilpotent_y()) {
        let a = alg();
        let full = classify_full(&a).unwrap();
        let conj = adjoint_action(&a, &y, &x).unwrap();
        let n0 = normalize_to_representative(&a, &x, Stage::Full);
        let n1 = normalize_to_representative(&a, &conj, Stage::Full);
        for (e, n) in [(&x, &n0), (&conj, &n1)] {
            if let Ok(n) = n {
                let Label::G(g) = n.label else { unreachable!() };
                let rep = &full[g as usize - 1].element;
                prop_assert!(verify_normalization(&a, e, n, rep).unwrap(), "{}", e.render(&a));
            }
        }
        if x.coefficient(Generator::D.index()).is_zero() {
            match (&n0, &n1) {
                (Ok(n0), Ok(n1)) => prop_assert_eq!(n0.label, n1.label, "x = {}, y = {}", x.render(&a), y.render(&a)),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "normalization succeeds on only one of x = {}, Ad(y) x", x.render(&a)),
            }
        }
    }
}

#[test]
fn translated_d_is_listed_separately() {
    let a = alg();
    let mut d = Element::zero();
    d.set(Generator::D.index(), GradedExpr::one());
    let y = Element::basis(Generator::P4.index(), GradedExpr::odd_const("mu"));
    let moved = adjoint_action(&a, &y, &d).unwrap();
    assert_eq!(normalize_to_representative(&a, &d, Stage::Full).unwrap().label, Label::G(128));
    assert_eq!(normalize_to_representative(&a, &moved, Stage::Full).unwrap().label, Label::G(137));
    let y = Element::basis(Generator::P1.index(), GradedExpr::frac(1, 2));
    let moved = adjoint_action(&a, &y, &d).unwrap();
    assert_eq!(render_element(&moved), "D + P1");
    assert_eq!(normalize_to_representative(&a, &moved, Stage::Full).unwrap().label, Label::G(129));
}
