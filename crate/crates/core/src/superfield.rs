//! Superspace operators, superfield expansion and the SUSY minimal surface
//! residual in operator and component form.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::atom::{Atom, FieldDecl, Jet, Parity};
use crate::calculus::partial_derivative;
use crate::error::{Error, Result};
use crate::expr::GradedExpr;

pub fn x() -> Atom {
    Atom::var("x")
}
pub fn y() -> Atom {
    Atom::var("y")
}
pub fn th1() -> Atom {
    Atom::theta1()
}
pub fn th2() -> Atom {
    Atom::theta2()
}

/// The bosonic superfield `Phi(x, y, theta1, theta2)`.
pub fn phi_field() -> Arc<FieldDecl> {
    FieldDecl::new("Phi", Parity::Even, &["x", "y", "theta1", "theta2"])
}

pub fn phi() -> GradedExpr {
    GradedExpr::atom(Atom::Jet(Jet::base(&phi_field())))
}

/// Component fields of the expansion `Phi = v + theta1 phi + theta2 psi + theta1 theta2 u`.
pub fn component_fields() -> [Arc<FieldDecl>; 4] {
    [
        FieldDecl::new("v", Parity::Even, &["x", "y"]),
        FieldDecl::new("phi", Parity::Odd, &["x", "y"]),
        FieldDecl::new("psi", Parity::Odd, &["x", "y"]),
        FieldDecl::new("u", Parity::Even, &["x", "y"]),
    ]
}

/// Which odd derivative is used: left (acting from the left, the default) or
/// right (acting from the right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DerivativeSide {
    Left,
    Right,
}

/// How a subscript list `f_{a b c}` is read: `Listed` applies `a` first
/// (innermost), `Reversed` applies `c` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubscriptOrder {
    Listed,
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Convention {
    pub side: DerivativeSide,
    pub order: SubscriptOrder,
}

impl Convention {
    pub const STANDARD: Convention = Convention { side: DerivativeSide::Left, order: SubscriptOrder::Listed };

    pub fn all() -> [Convention; 4] {
        [
            Convention { side: DerivativeSide::Left, order: SubscriptOrder::Listed },
            Convention { side: DerivativeSide::Left, order: SubscriptOrder::Reversed },
            Convention { side: DerivativeSide::Right, order: SubscriptOrder::Listed },
            Convention { side: DerivativeSide::Right, order: SubscriptOrder::Reversed },
        ]
    }
}

/// Derivative with respect to a coordinate on the chosen side. For an odd
/// coordinate the right derivative of a homogeneous `f` is
/// `(-1)^{p(f)+1}` times the left derivative.
pub fn sided_derivative(e: &GradedExpr, var: &Atom, side: DerivativeSide) -> Result<GradedExpr> {
    if side == DerivativeSide::Left || var.parity() == Parity::Even {
        return partial_derivative(e, var);
    }
    let even = e.map_terms(|m, c| if m.odd.len() % 2 == 0 { GradedExpr::term(m.clone(), c.clone()) } else { GradedExpr::zero() });
    let odd = e.gsub(&even);
    Ok(partial_derivative(&odd, var)?.gsub(&partial_derivative(&even, var)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuperOperator {
    Dx,
    Dy,
    Dtheta1,
    Dtheta2,
    D1,
    D2,
    Q1,
    Q2,
}

impl SuperOperator {
    pub fn name(self) -> &'static str {
        match self {
            SuperOperator::Dx => "dx",
            SuperOperator::Dy => "dy",
            SuperOperator::Dtheta1 => "dtheta1",
            SuperOperator::Dtheta2 => "dtheta2",
            SuperOperator::D1 => "D1",
            SuperOperator::D2 => "D2",
            SuperOperator::Q1 => "Q1",
            SuperOperator::Q2 => "Q2",
        }
    }
}

pub fn apply_operator(op: SuperOperator, e: &GradedExpr) -> Result<GradedExpr> {
    apply_operator_with(op, e, DerivativeSide::Left)
}

pub fn apply_operator_with(op: SuperOperator, e: &GradedExpr, side: DerivativeSide) -> Result<GradedExpr> {
    let d = |v: Atom| sided_derivative(e, &v, side);
    Ok(match op {
        SuperOperator::Dx => d(x())?,
        SuperOperator::Dy => d(y())?,
        SuperOperator::Dtheta1 => d(th1())?,
        SuperOperator::Dtheta2 => d(th2())?,
        SuperOperator::D1 => d(th1())?.gadd(&GradedExpr::theta1().gmul(&d(x())?)),
        SuperOperator::D2 => d(th2())?.gadd(&GradedExpr::theta2().gmul(&d(y())?)),
        SuperOperator::Q1 => d(th1())?.gsub(&GradedExpr::theta1().gmul(&d(x())?)),
        SuperOperator::Q2 => d(th2())?.gsub(&GradedExpr::theta2().gmul(&d(y())?)),
    })
}

/// Apply a word of operators; the last entry acts first.
pub fn apply_word(word: &[SuperOperator], e: &GradedExpr, side: DerivativeSide) -> Result<GradedExpr> {
    let mut out = e.clone();
    for op in word.iter().rev() {
        out = apply_operator_with(*op, &out, side)?;
    }
    Ok(out)
}

/// The theta-expansion of the superfield in terms of its component fields.
pub fn superfield_expansion() -> GradedExpr {
    let [v, ph, ps, u] = component_fields();
    let f = |d: &Arc<FieldDecl>| GradedExpr::atom(Atom::Jet(Jet::base(d)));
    f(&v).gadd(&GradedExpr::theta1().gmul(&f(&ph)))
        .gadd(&GradedExpr::theta2().gmul(&f(&ps)))
        .gadd(&GradedExpr::theta1().gmul(&GradedExpr::theta2()).gmul(&f(&u)))
}

/// Evaluate a superfield jet on a concrete expression: the odd derivatives are
/// applied innermost (theta2 before theta1), then the bosonic ones.
pub fn jet_on(j: &Jet, target: &GradedExpr) -> Result<GradedExpr> {
    let mut e = target.clone();
    for (v, set) in j.field.odd_deps.iter().zip(&j.odd).rev() {
        if *set {
            e = partial_derivative(&e, &Atom::OddVar(v.clone()))?;
        }
    }
    for (v, c) in j.field.even_deps.iter().zip(&j.counts) {
        for _ in 0..*c {
            e = partial_derivative(&e, &Atom::Var(v.clone()))?;
        }
    }
    Ok(e)
}

/// Replace every jet of the field named `field` by the corresponding
/// derivative of `target`.
pub fn substitute_field(e: &GradedExpr, field: &str, target: &GradedExpr) -> Result<GradedExpr> {
    let mut cache: BTreeMap<Jet, GradedExpr> = BTreeMap::new();
    let mut err: Option<Error> = None;
    let out = e.substitute_with(&mut |a| match a {
        Atom::Jet(j) if &*j.field.name == field => {
            if let Some(v) = cache.get(j) {
                return Some(v.clone());
            }
            match jet_on(j, target) {
                Ok(v) => {
                    cache.insert(j.clone(), v.clone());
                    Some(v)
                }
                Err(e) => {
                    err = Some(e);
                    Some(GradedExpr::zero())
                }
            }
        }
        _ => None,
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Replace superfield jets by the theta-expansion in component fields.
pub fn expand_superfield(e: &GradedExpr) -> Result<GradedExpr> {
    substitute_field(e, "Phi", &superfield_expansion())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualForm {
    Operator,
    Component,
}

/// Left-hand side of the SUSY minimal surface equation on the abstract superfield.
pub fn susy_ms_residual(form: ResidualForm) -> Result<GradedExpr> {
    match form {
        ResidualForm::Operator => operator_residual(&phi(), DerivativeSide::Left),
        ResidualForm::Component => component_residual(Convention::STANDARD),
    }
}

/// The operator form built from covariant derivatives applied to `f`:
/// `D2^4 f + (D1^2 f)(D1^3 D2 f)(D1 D2^5 f) - 2 (D1^2 f)(D1 D2^3 f)(D1^3 D2^3 f)
///  + D1^4 f + (D2^2 f)(D1 D2^3 f)(D1^5 D2 f)`.
pub fn operator_residual(f: &GradedExpr, side: DerivativeSide) -> Result<GradedExpr> {
    use SuperOperator::{D1, D2};
    let w = |word: Vec<SuperOperator>| apply_word(&word, f, side);
    let d2_4 = w(vec![D2; 4])?;
    let d1_4 = w(vec![D1; 4])?;
    let d1_2 = w(vec![D1; 2])?;
    let d2_2 = w(vec![D2; 2])?;
    let d1_3d2 = w(vec![D1, D1, D1, D2])?;
    let d1d2_5 = w(vec![D1, D2, D2, D2, D2, D2])?;
    let d1d2_3 = w(vec![D1, D2, D2, D2])?;
    let d1_3d2_3 = w(vec![D1, D1, D1, D2, D2, D2])?;
    let d1_5d2 = w(vec![D1, D1, D1, D1, D1, D2])?;
    let mut out = d2_4;
    out.add_assign(&d1_2.gmul(&d1_3d2).gmul(&d1d2_5));
    out.add_assign(&d1_2.gmul(&d1d2_3).gmul(&d1_3d2_3).scale_int(-2));
    out.add_assign(&d1_4);
    out.add_assign(&d2_2.gmul(&d1d2_3).gmul(&d1_5d2));
    Ok(out)
}

/// A superfield derivative written with a subscript list, read under `conv`.
pub fn subscript_jet(list: &str, conv: Convention) -> Result<GradedExpr> {
    let mut vars: Vec<Atom> = Vec::new();
    let mut chars = list.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'x' => vars.push(x()),
            'y' => vars.push(y()),
            '1' => vars.push(th1()),
            '2' => vars.push(th2()),
            _ => return Err(Error::Usage(alloc::format!("bad subscript `{c}` in `{list}`"))),
        }
    }
    if conv.order == SubscriptOrder::Reversed {
        vars.reverse();
    }
    let mut e = phi();
    for v in &vars {
        e = sided_derivative(&e, v, conv.side)?;
    }
    Ok(e)
}

/// Build a bracket whose subscripts are transcribed verbatim from the
/// printed equation: `[a12, b2, c1, d]`.
fn printed_bracket(subs: [&str; 4], conv: Convention) -> Result<GradedExpr> {
    let t1 = GradedExpr::theta1();
    let t2 = GradedExpr::theta2();
    let j = |s: &str| subscript_jet(s, conv);
    let mut out = j(subs[0])?.gneg();
    out.add_assign(&t1.gmul(&j(subs[1])?));
    out.add_assign(&t2.gmul(&j(subs[2])?).gneg());
    out.add_assign(&t1.gmul(&t2).gmul(&j(subs[3])?));
    Ok(out)
}

/// The component form transcribed term by term from the printed equation,
/// reading every subscript list under `conv`. The factor printed as
/// `-Phi_yy theta1 theta2` is read as `-Phi_{yy theta1 theta2}`.
pub fn component_residual(conv: Convention) -> Result<GradedExpr> {
    let j = |s: &str| subscript_jet(s, conv);
    let mut out = j("yy")?.gadd(&j("xx")?);
    let b1 = printed_bracket(["x12", "xx2", "xy1", "xxy"], conv)?;
    let b2 = printed_bracket(["yy12", "xyy2", "yyy1", "xyyy"], conv)?;
    out.add_assign(&j("x")?.gmul(&b1).gmul(&b2));
    let b3 = printed_bracket(["y12", "xy2", "yy1", "xyy"], conv)?;
    let b4 = printed_bracket(["xy12", "xxy2", "xyy1", "xxyy"], conv)?;
    out.add_assign(&j("x")?.gmul(&b3).gmul(&b4).scale_int(-2));
    let b5 = printed_bracket(["y12", "xy2", "yy1", "xyy"], conv)?;
    let b6 = printed_bracket(["xx12", "xxx2", "xxy1", "xxxy"], conv)?;
    out.add_assign(&j("y")?.gmul(&b5).gmul(&b6));
    Ok(out)
}

/// The component form with the factor `-Phi_yy theta1 theta2` read literally
/// as a product of `Phi_yy` with `theta1 theta2`.
pub fn component_residual_literal(conv: Convention) -> Result<GradedExpr> {
    let t12 = GradedExpr::theta1().gmul(&GradedExpr::theta2());
    let lit = printed_bracket(["yy12", "xyy2", "yyy1", "xyyy"], conv)?
        .gadd(&subscript_jet("yy12", conv)?)
        .gsub(&subscript_jet("yy", conv)?.gmul(&t12));
    let j = |s: &str| subscript_jet(s, conv);
    let full = component_residual(conv)?;
    let b1 = printed_bracket(["x12", "xx2", "xy1", "xxy"], conv)?;
    let b2 = printed_bracket(["yy12", "xyy2", "yyy1", "xyyy"], conv)?;
    let correct_term = j("x")?.gmul(&b1).gmul(&b2);
    let literal_term = j("x")?.gmul(&b1).gmul(&lit);
    Ok(full.gsub(&correct_term).gadd(&literal_term))
}

/// Difference between the expanded operator form and the expanded component
/// form under one convention (the same side is used for the covariant
/// derivatives).
pub fn extension_discrepancy(conv: Convention) -> Result<GradedExpr> {
    let op = expand_superfield(&operator_residual(&phi(), conv.side)?)?;
    let comp = expand_superfield(&component_residual(conv)?)?;
    Ok(op.gsub(&comp))
}

/// Result of checking one operator identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub residual: GradedExpr,
}

/// Verify the anticommutation relations of the supersymmetry generators and
/// covariant derivatives on the generic superfield.
pub fn check_operator_identities() -> Result<Vec<IdentityCheck>> {
    check_operator_identities_on(&phi())
}

pub fn check_operator_identities_on(f: &GradedExpr) -> Result<Vec<IdentityCheck>> {
    use SuperOperator::*;
    let anti = |a: SuperOperator, b: SuperOperator| -> Result<GradedExpr> {
        Ok(apply_operator(a, &apply_operator(b, f)?)?.gadd(&apply_operator(b, &apply_operator(a, f)?)?))
    };
    let fx = apply_operator(Dx, f)?;
    let fy = apply_operator(Dy, f)?;
    let cases: Vec<(&'static str, GradedExpr)> = vec![
        ("{Q1,Q1} = -2 dx", anti(Q1, Q1)?.gadd(&fx.scale_int(2))),
        ("{Q2,Q2} = -2 dy", anti(Q2, Q2)?.gadd(&fy.scale_int(2))),
        ("{Q1,Q2} = 0", anti(Q1, Q2)?),
        ("D1^2 = dx", apply_operator(D1, &apply_operator(D1, f)?)?.gsub(&fx)),
        ("D2^2 = dy", apply_operator(D2, &apply_operator(D2, f)?)?.gsub(&fy)),
        ("{D1,D2} = 0", anti(D1, D2)?),
        ("{D1,Q1} = 0", anti(D1, Q1)?),
        ("{D1,Q2} = 0", anti(D1, Q2)?),
        ("{D2,Q1} = 0", anti(D2, Q1)?),
        ("{D2,Q2} = 0", anti(D2, Q2)?),
    ];
    Ok(cases.into_iter().map(|(name, r)| IdentityCheck { name, passed: r.is_zero(), residual: r }).collect())
}

/// Residual of the SUSY minimal surface equation for a concrete superfield.
pub fn residual_for(target: &GradedExpr, form: ResidualForm) -> Result<GradedExpr> {
    match form {
        ResidualForm::Operator => operator_residual(target, DerivativeSide::Left),
        ResidualForm::Component => substitute_field(&component_residual(Convention::STANDARD)?, "Phi", target),
    }
}
