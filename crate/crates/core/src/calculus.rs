//! Graded differentiation.
//!
//! Odd derivations act from the left and obey
//! `d(fg) = (df)g + (-1)^{p(f)} f(dg)`. Chain-rule factors are placed with the
//! inner Jacobian on the left.

use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::atom::{Atom, Jet, Parity};
use crate::error::{Error, Result};
use crate::expr::{GradedExpr, Monomial};
use crate::funcs::arg_derivative;
use crate::number::{Coeff, Exponent};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Coordinates; field jets depend on them.
    Total,
    /// Every atom is an independent symbol.
    Independent,
}

/// Left partial derivative with respect to a coordinate. Field jets that
/// depend on the coordinate are incremented.
pub fn partial_derivative(e: &GradedExpr, var: &Atom) -> Result<GradedExpr> {
    if !var.is_coordinate() {
        return Err(Error::Usage(format!("cannot differentiate with respect to {var}")));
    }
    derive(e, var, Mode::Total)
}

/// Derivative treating every atom (jets included) as an independent symbol.
pub fn derivative_wrt_atom(e: &GradedExpr, atom: &Atom) -> Result<GradedExpr> {
    derive(e, atom, Mode::Independent)
}

/// Repeated partial derivative; `vars` are applied left to right.
pub fn partial_derivatives(e: &GradedExpr, vars: &[Atom]) -> Result<GradedExpr> {
    let mut out = e.clone();
    for v in vars {
        out = partial_derivative(&out, v)?;
    }
    Ok(out)
}

fn derive(e: &GradedExpr, var: &Atom, mode: Mode) -> Result<GradedExpr> {
    let odd = var.parity() == Parity::Odd;
    let mut out = GradedExpr::zero();
    for (m, c) in e.terms() {
        for (a, ex) in &m.even {
            let da = derive_atom(a, var, mode)?;
            if da.is_zero() {
                continue;
            }
            let mut rest = m.clone();
            let slot = rest.even.get_mut(a).unwrap();
            *slot -= Exponent::one();
            let rest = GradedExpr::term(rest, c.mul(&Coeff::from_exponent(*ex)));
            out.add_assign(&da.gmul(&rest));
        }
        for j in 0..m.odd.len() {
            let d = derive_atom(&m.odd[j], var, mode)?;
            if d.is_zero() {
                continue;
            }
            let left = Monomial { even: m.even.clone(), odd: m.odd[..j].to_vec() };
            let right = Monomial { even: Default::default(), odd: m.odd[j + 1..].to_vec() };
            let sign = if odd && j % 2 == 1 { c.neg() } else { c.clone() };
            let t = GradedExpr::term(left, sign).gmul(&d).gmul(&GradedExpr::term(right, Coeff::one()));
            out.add_assign(&t);
        }
    }
    Ok(out)
}

fn derive_atom(a: &Atom, var: &Atom, mode: Mode) -> Result<GradedExpr> {
    if a == var {
        return Ok(GradedExpr::one());
    }
    match a {
        Atom::Var(_) | Atom::OddVar(_) | Atom::Const(_) | Atom::OddConst(_) | Atom::Sign(_) => Ok(GradedExpr::zero()),
        Atom::Jet(j) => {
            if mode == Mode::Independent {
                return Ok(GradedExpr::zero());
            }
            Ok(jet_derivative(j, var).unwrap_or_else(GradedExpr::zero))
        }
        Atom::Func(f) => {
            let mut out = GradedExpr::zero();
            for (i, arg) in f.args.iter().enumerate() {
                let d = derive(arg, var, mode)?;
                if d.is_zero() {
                    continue;
                }
                out.add_assign(&d.gmul(&arg_derivative(f, i)?));
            }
            Ok(out)
        }
        Atom::Power(b) => derive(b, var, mode),
    }
}

/// Apply a coordinate derivative to a jet. Returns `None` when the field does
/// not depend on the coordinate or the odd slot is already occupied.
pub fn jet_derivative(j: &Jet, var: &Atom) -> Option<GradedExpr> {
    match var {
        Atom::Var(s) => {
            let i = j.field.even_deps.iter().position(|d| d == s)?;
            let mut n = j.clone();
            n.counts[i] += 1;
            Some(GradedExpr::atom(Atom::Jet(n)))
        }
        Atom::OddVar(v) => {
            let i = j.field.odd_deps.iter().position(|d| d == v)?;
            if j.odd[i] {
                return Some(GradedExpr::zero());
            }
            let before = j.odd[..i].iter().filter(|b| **b).count();
            let mut n = j.clone();
            n.odd[i] = true;
            let e = GradedExpr::atom(Atom::Jet(n));
            Some(if before % 2 == 1 { e.gneg() } else { e })
        }
        _ => None,
    }
}

/// Jet of a field with the given derivative list applied innermost-last
/// (the list reads left to right as outermost to innermost).
pub fn jet_from_list(field: &alloc::sync::Arc<crate::atom::FieldDecl>, outer_to_inner: &[Atom]) -> Result<GradedExpr> {
    let mut e = GradedExpr::atom(Atom::Jet(Jet::base(field)));
    let list: Vec<&Atom> = outer_to_inner.iter().rev().collect();
    for v in list {
        e = partial_derivative(&e, v)?;
    }
    Ok(e)
}

