//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use susyms_core::atom::FieldDecl;
use susyms_core::calculus::jet_from_list;
use susyms_core::funcs::func_expr;
use susyms_core::superalgebra::{Element, Generator};
use susyms_core::{Atom, Exponent, FuncHead, GradedExpr, Parity};

/// Brute-force exterior algebra on four generators; monomials are bitmasks.
#[derive(Clone, Debug, PartialEq)]
pub struct Grass(pub BTreeMap<u8, i64>);

impl Grass {
    pub fn mul(&self, o: &Grass) -> Grass {
        let mut out = BTreeMap::new();
        for (&a, &ca) in &self.0 {
            for (&b, &cb) in &o.0 {
                if a & b != 0 {
                    continue;
                }
                let mut swaps = 0;
                for i in 0..4 {
                    if a & (1 << i) != 0 {
                        swaps += (b & ((1u8 << i) - 1)).count_ones();
                    }
                }
                let s = if swaps % 2 == 0 { 1 } else { -1 };
                *out.entry(a | b).or_insert(0) += s * ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        Grass(out)
    }

    pub fn add(&self, o: &Grass) -> Grass {
        let mut out = self.0.clone();
        for (&m, &c) in &o.0 {
            *out.entry(m).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        Grass(out)
    }

    pub fn to_expr(&self) -> GradedExpr {
        let gens = [GradedExpr::theta1(), GradedExpr::theta2(), GradedExpr::odd_const("mu"), GradedExpr::odd_const("nu")];
        let mut out = GradedExpr::zero();
        for (&m, &c) in &self.0 {
            let mut t = GradedExpr::int(c);
            for (i, g) in gens.iter().enumerate() {
                if m & (1 << i) != 0 {
                    t = t.gmul(g);
                }
            }
            out = out.gadd(&t);
        }
        out
    }
}

pub fn grass() -> impl Strategy<Value = Grass> {
    prop::collection::btree_map(0u8..16, -5i64..=5, 0..6).prop_map(|mut m| {
        m.retain(|_, c| *c != 0);
        Grass(m)
    })
}

fn field() -> Arc<FieldDecl> {
    FieldDecl::new("u", Parity::Even, &["x", "y", "theta1", "theta2"])
}

fn leaf() -> impl Strategy<Value = GradedExpr> {
    prop_oneof![
        (-9i64..=9).prop_map(GradedExpr::int),
        ((-9i64..=9), (1i64..=7)).prop_map(|(n, d)| GradedExpr::frac(n, d)),
        Just(GradedExpr::var("x")),
        Just(GradedExpr::var("y")),
        Just(GradedExpr::konst("a")),
        Just(GradedExpr::konst("b")),
        Just(GradedExpr::odd_const("mu")),
        Just(GradedExpr::odd_const("nu")),
        Just(GradedExpr::theta1()),
        Just(GradedExpr::theta2()),
        Just(GradedExpr::i()),
        Just(GradedExpr::atom(Atom::sign("eps"))),
        prop::sample::subsequence(vec![Atom::var("x"), Atom::theta1(), Atom::var("y"), Atom::theta2()], 0..3)
            .prop_map(|d| jet_from_list(&field(), &d).unwrap()),
    ]
}

/// Random canonical expressions over the parser's vocabulary.
pub fn expr() -> impl Strategy<Value = GradedExpr> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.gadd(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.gsub(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.gmul(&b)),
            (inner.clone(), 2i64..=3).prop_filter_map("power", |(a, n)| a.pow_int(n).ok()),
            inner.clone().prop_filter_map("inverse", |a| a.inv().ok()),
            inner.clone().prop_filter_map("radical", |a| a.powr(Exponent::new(1, 2)).ok()),
            (prop::sample::select(vec![FuncHead::Sin, FuncHead::Exp, FuncHead::Ln]), inner)
                .prop_filter_map("function", |(h, a)| func_expr(h, vec![a]).ok()),
        ]
    })
}

fn even_coeff() -> impl Strategy<Value = GradedExpr> {
    prop_oneof![(-3i64..=3).prop_map(GradedExpr::int), prop::sample::select(vec!["a", "b", "k"]).prop_map(GradedExpr::konst)]
}

fn odd_coeff() -> impl Strategy<Value = GradedExpr> {
    prop_oneof![Just(GradedExpr::zero()), prop::sample::select(vec!["mu", "nu", "rho", "sigma"]).prop_map(GradedExpr::odd_const)]
}

/// A general even element of the superalgebra; D is included on request.
pub fn element(with_d: bool) -> impl Strategy<Value = Element> {
    (prop::collection::vec(even_coeff(), 4), prop::collection::vec(odd_coeff(), 4)).prop_map(move |(ev, od)| {
        let mut e = Element::zero();
        for (g, c) in [Generator::D, Generator::P1, Generator::P2, Generator::P5].iter().zip(ev) {
            if with_d || *g != Generator::D {
                e.set(g.index(), c);
            }
        }
        for (g, c) in [Generator::P3, Generator::Q1, Generator::P4, Generator::Q2].iter().zip(od) {
            e.set(g.index(), c);
        }
        e
    })
}

/// Adaptive Simpson quadrature.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Legendre form of F (`first = true`) or E by quadrature over the amplitude.
pub fn elliptic_oracle(first: bool, phi: f64, k: f64) -> f64 {
    let f = move |t: f64| {
        let d = (1.0 - k * k * t.sin().powi(2)).sqrt();
        if first {
            1.0 / d
        } else {
            d
        }
    };
    simpson(&f, 0.0, phi, 1e-14)
}
