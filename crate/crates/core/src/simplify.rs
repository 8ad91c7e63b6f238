//! Zero testing and constraint discovery.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::atom::Atom;
use crate::error::Result;
use crate::expr::{GradedExpr, Monomial};
use crate::number::Exponent;

/// Multiply by powers of atoms so that no atom carries a negative exponent.
/// The factor is nonzero wherever the expression is defined, so the zero set
/// is unchanged.
pub fn clear_denominators(e: &GradedExpr) -> Result<GradedExpr> {
    let mut cur = e.clone();
    for _ in 0..16 {
        let mut mins: BTreeMap<Atom, Exponent> = BTreeMap::new();
        for (m, _) in cur.terms() {
            for (a, ex) in &m.even {
                if *ex < Exponent::zero() {
                    let slot = mins.entry(a.clone()).or_insert(*ex);
                    if *ex < *slot {
                        *slot = *ex;
                    }
                }
            }
        }
        if mins.is_empty() {
            return Ok(cur);
        }
        cur = cur.map_terms(|m, c| {
            let mut m = m.clone();
            for (a, ex) in &mins {
                *m.even.entry(a.clone()).or_insert_with(Exponent::zero) -= *ex;
            }
            GradedExpr::term(m, c.clone())
        });
    }
    Ok(cur)
}

/// Exact zero test: structural after clearing denominators.
pub fn is_zero_exact(e: &GradedExpr) -> Result<bool> {
    if e.is_zero() {
        return Ok(true);
    }
    Ok(clear_denominators(e)?.is_zero())
}

/// Outcome of checking a residual that may depend on free constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintVerdict {
    IdenticallyZero,
    /// Zero exactly when every listed expression in the constants vanishes.
    ZeroOn(Vec<GradedExpr>),
    NonZero,
}

/// Split a monomial into a constant factor and a non-constant factor,
/// `m = sign * constant * variable`.
fn split_constant(m: &Monomial) -> (bool, Monomial, Monomial) {
    let mut cm = Monomial::one();
    let mut vm = Monomial::one();
    for (a, e) in &m.even {
        if a.is_constant() {
            cm.even.insert(a.clone(), *e);
        } else {
            vm.even.insert(a.clone(), *e);
        }
    }
    let mut flips = 0usize;
    let mut seen_var = 0usize;
    for a in &m.odd {
        if a.is_constant() {
            flips += seen_var;
            cm.odd.push(a.clone());
        } else {
            seen_var += 1;
            vm.odd.push(a.clone());
        }
    }
    (flips % 2 == 1, cm, vm)
}

/// Atoms that never vanish: sign constants and powers of nonzero numbers.
fn is_unit_atom(a: &Atom) -> bool {
    match a {
        Atom::Sign(_) => true,
        Atom::Power(b) => b.as_coeff().map(|c| !c.is_zero()).unwrap_or(false),
        _ => false,
    }
}

/// Remove unit atoms common to every term.
fn strip_units(p: &GradedExpr) -> GradedExpr {
    let mut common: Option<BTreeMap<Atom, Exponent>> = None;
    for (m, _) in p.terms() {
        let units: BTreeMap<Atom, Exponent> = m.even.iter().filter(|(a, _)| is_unit_atom(a)).map(|(a, e)| (a.clone(), *e)).collect();
        common = Some(match common {
            None => units,
            Some(c) => c
                .into_iter()
                .filter_map(|(a, e)| units.get(&a).map(|f| (a, if *f < e { *f } else { e })))
                .collect(),
        });
    }
    let common = common.unwrap_or_default();
    if common.is_empty() {
        return p.clone();
    }
    p.map_terms(|m, c| {
        let mut m = m.clone();
        for (a, e) in &common {
            *m.even.get_mut(a).unwrap() -= *e;
        }
        m.even.retain(|_, e| !e.is_zero());
        GradedExpr::term(m, c.clone())
    })
}

/// Normalize an equation `p = 0`: scale so that the leading coefficient is 1.
fn normalize_equation(p: &GradedExpr) -> GradedExpr {
    match p.terms().next() {
        Some((_, c)) => p.scale(&c.inv().unwrap()),
        None => p.clone(),
    }
}

/// Decide whether a residual vanishes identically, on a variety of the free
/// constants, or not at all.
pub fn constraint_locus(residual: &GradedExpr) -> Result<ConstraintVerdict> {
    let r = clear_denominators(residual)?;
    if r.is_zero() {
        return Ok(ConstraintVerdict::IdenticallyZero);
    }
    let mut groups: BTreeMap<Monomial, GradedExpr> = BTreeMap::new();
    for (m, c) in r.terms() {
        let (flip, cm, vm) = split_constant(m);
        let c = if flip { c.neg() } else { c.clone() };
        groups.entry(vm).or_default().add_assign(&GradedExpr::term(cm, c));
    }
    let mut eqs: BTreeSet<GradedExpr> = BTreeSet::new();
    for (_, p) in groups {
        if p.is_zero() {
            continue;
        }
        let p = strip_units(&p);
        if p.as_coeff().is_some() {
            return Ok(ConstraintVerdict::NonZero);
        }
        eqs.insert(normalize_equation(&p));
    }
    Ok(ConstraintVerdict::ZeroOn(eqs.into_iter().collect()))
}
