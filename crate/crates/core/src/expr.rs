//! Canonical graded expressions.
//!
//! A [`GradedExpr`] is a finite sum of monomials `c * e * o` where `c` is an
//! exact Gaussian rational, `e` a product of even atoms with rational
//! exponents and `o` a strictly increasing product of distinct odd atoms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use alloc::boxed::Box;

use crate::atom::{Atom, Parity};
use crate::error::{Error, Result};
use crate::number::{binomial, exponent_floor, factor_integer, Coeff, Exponent, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub even: BTreeMap<Atom, Exponent>,
    pub odd: Vec<Atom>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.odd.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Multiply two monomials. Returns `None` when an odd atom repeats, otherwise
/// the product together with a flag telling whether the sign flipped.
fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let mut odd = Vec::with_capacity(a.odd.len() + b.odd.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.odd.len() && j < b.odd.len() {
        match a.odd[i].cmp(&b.odd[j]) {
            core::cmp::Ordering::Equal => return None,
            core::cmp::Ordering::Less => {
                odd.push(a.odd[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                odd.push(b.odd[j].clone());
                inversions += a.odd.len() - i;
                j += 1;
            }
        }
    }
    odd.extend_from_slice(&a.odd[i..]);
    odd.extend_from_slice(&b.odd[j..]);
    let mut even = a.even.clone();
    for (k, e) in &b.even {
        let slot = even.entry(k.clone()).or_insert_with(Exponent::zero);
        *slot += *e;
    }
    Some((inversions % 2 == 1, Monomial { even, odd }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedExpr {
    terms: BTreeMap<Monomial, Coeff>,
}

/// Grading classification of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityClass {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl GradedExpr {
    pub fn zero() -> Self {
        GradedExpr::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::from_int(n))
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(Coeff::real(q))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(crate::number::rat(n, d))
    }

    pub fn i() -> Self {
        Self::constant(Coeff::i())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn atom(a: Atom) -> Self {
        let mut m = Monomial::one();
        match a.parity() {
            Parity::Odd => m.odd.push(a),
            Parity::Even => {
                m.even.insert(a, Exponent::one());
            }
        }
        Self::term(m, Coeff::one())
    }

    pub fn var(name: &str) -> Self {
        Self::atom(Atom::var(name))
    }

    pub fn konst(name: &str) -> Self {
        Self::atom(Atom::konst(name))
    }

    pub fn odd_const(name: &str) -> Self {
        Self::atom(Atom::odd_const(name))
    }

    pub fn theta1() -> Self {
        Self::atom(Atom::theta1())
    }

    pub fn theta2() -> Self {
        Self::atom(Atom::theta2())
    }

    /// Build a canonical expression from one monomial, expanding integer parts
    /// of composite powers and reducing sign-constant exponents. Numeric
    /// power atoms keep an exponent in (0, 1).
    pub fn term(mut mono: Monomial, coeff: Coeff) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut extra: Vec<(Arc<GradedExpr>, i64)> = Vec::new();
        for (a, e) in mono.even.iter_mut() {
            match a {
                Atom::Power(b) if *e >= Exponent::one() || (*e < Exponent::zero() && b.as_coeff().is_some()) => {
                    let n = exponent_floor(*e);
                    *e -= Exponent::from_integer(n);
                    extra.push((b.clone(), n));
                }
                Atom::Sign(_) => {
                    if e.is_integer() {
                        *e = Exponent::from_integer(e.to_integer().rem_euclid(2));
                    }
                }
                _ => {}
            }
        }
        mono.even.retain(|_, e| !e.is_zero());
        let mut out = GradedExpr { terms: BTreeMap::new() };
        out.terms.insert(mono, coeff);
        for (b, n) in extra {
            out = out.mul(&b.pow_int(n).expect("positive power or nonzero number"));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Coeff> {
        self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_assign(&Self::term(m, c));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_coeff().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value of a purely numeric expression.
    pub fn as_coeff(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        match self.single_term() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The single atom of an expression of the form `1 * a`.
    pub fn as_atom(&self) -> Option<&Atom> {
        let (m, c) = self.single_term()?;
        if !c.is_one() {
            return None;
        }
        if m.odd.len() == 1 && m.even.is_empty() {
            return Some(&m.odd[0]);
        }
        if m.odd.is_empty() && m.even.len() == 1 {
            let (a, e) = m.even.iter().next()?;
            if e.is_one() {
                return Some(a);
            }
        }
        None
    }

    fn add_term_in_place(&mut self, m: &Monomial, c: &Coeff) {
        if let Some(slot) = self.terms.get_mut(m) {
            *slot = slot.add(c);
            if slot.is_zero() {
                self.terms.remove(m);
            }
        } else if !c.is_zero() {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    pub fn add_assign(&mut self, o: &GradedExpr) {
        for (m, c) in &o.terms {
            self.add_term_in_place(m, c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> GradedExpr {
        if c.is_zero() {
            return Self::zero();
        }
        GradedExpr { terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect() }
    }

    pub fn scale_int(&self, n: i64) -> GradedExpr {
        self.scale(&Coeff::from_int(n))
    }

    pub fn gadd(&self, o: &GradedExpr) -> GradedExpr {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn gsub(&self, o: &GradedExpr) -> GradedExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term_in_place(m, &c.neg());
        }
        out
    }

    pub fn gneg(&self) -> GradedExpr {
        self.scale(&Coeff::from_int(-1))
    }

    /// Graded ring multiplication.
    pub fn gmul(&self, o: &GradedExpr) -> GradedExpr {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((flip, m)) = mul_monomials(ma, mb) {
                    let mut c = ca.mul(cb);
                    if flip {
                        c = c.neg();
                    }
                    let needs_expansion = m.even.iter().any(|(a, e)| {
                        matches!(a, Atom::Power(_)) && *e >= Exponent::one()
                            || matches!(a, Atom::Sign(_)) && (*e > Exponent::one() || e.is_zero())
                    }) || m.even.values().any(|e| e.is_zero());
                    if needs_expansion {
                        out.add_assign(&Self::term(m, c));
                    } else {
                        out.add_term_in_place(&m, &c);
                    }
                }
            }
        }
        out
    }

    pub fn pow_int(&self, n: i64) -> Result<GradedExpr> {
        if n < 0 {
            return self.powr(Exponent::from_integer(n));
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.gmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.gmul(&base);
            }
        }
        Ok(acc)
    }

    /// Terms without odd atoms.
    pub fn body(&self) -> GradedExpr {
        GradedExpr { terms: self.terms.iter().filter(|(m, _)| m.odd.is_empty()).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Terms containing at least one odd atom.
    pub fn soul(&self) -> GradedExpr {
        GradedExpr { terms: self.terms.iter().filter(|(m, _)| !m.odd.is_empty()).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn parity_of(&self) -> ParityClass {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            match m.parity() {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        match (even, odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Mixed,
        }
    }

    /// Parity of a homogeneous (or zero) expression.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        match self.parity_of() {
            ParityClass::Zero | ParityClass::Even => Some(Parity::Even),
            ParityClass::Odd => Some(Parity::Odd),
            ParityClass::Mixed => None,
        }
    }

    pub fn is_even_or_zero(&self) -> bool {
        matches!(self.parity_of(), ParityClass::Zero | ParityClass::Even)
    }

    /// Multiplicative inverse; exact when the body is invertible.
    pub fn inv(&self) -> Result<GradedExpr> {
        self.powr(Exponent::from_integer(-1))
    }

    /// `self^s` for rational `s`, using principal branches and treating
    /// symbolic bases as positive reals when splitting products.
    pub fn powr(&self, s: Exponent) -> Result<GradedExpr> {
        if s.is_integer() && s >= Exponent::zero() {
            return self.pow_int(s.to_integer());
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.is_even_or_zero() {
            return Err(Error::Parity(format!("power of a non-even expression {self}")));
        }
        let body = self.body();
        let nil = self.soul();
        if nil.is_zero() {
            return pow_body(&body, s);
        }
        if body.is_zero() {
            return Err(Error::Unsupported(format!("power {s} of a nilpotent expression {self}")));
        }
        let mut out = Self::zero();
        let mut nk = Self::one();
        let mut k = 0u32;
        while !nk.is_zero() {
            let c = binomial(s, k);
            let bp = pow_body(&body, s - Exponent::from_integer(k as i64))?;
            out.add_assign(&bp.gmul(&nk).scale(&Coeff::real(c)));
            nk = nk.gmul(&nil);
            k += 1;
        }
        Ok(out)
    }

    /// True if no atom depends on a coordinate or field.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.even.keys().all(Atom::is_constant) && m.odd.iter().all(Atom::is_constant))
    }

    /// Visit every atom, descending into function arguments and power bases.
    pub fn visit_atoms<F: FnMut(&Atom)>(&self, f: &mut F) {
        for m in self.terms.keys() {
            for a in m.even.keys().chain(m.odd.iter()) {
                f(a);
                match a {
                    Atom::Func(func) => func.args.iter().for_each(|x| x.visit_atoms(f)),
                    Atom::Power(b) => b.visit_atoms(f),
                    _ => {}
                }
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            s.insert(a.clone());
        });
        s
    }

    pub fn contains_atom<P: Fn(&Atom) -> bool>(&self, p: P) -> bool {
        let mut found = false;
        self.visit_atoms(&mut |a| {
            if p(a) {
                found = true;
            }
        });
        found
    }

    /// Simultaneous substitution driven by a callback; atoms for which the
    /// callback returns `None` are kept (with their function arguments and
    /// power bases substituted recursively).
    pub fn substitute_with<F: FnMut(&Atom) -> Option<GradedExpr>>(&self, f: &mut F) -> Result<GradedExpr> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for (a, e) in &m.even {
                let v = match f(a) {
                    Some(v) => {
                        if !v.is_even_or_zero() {
                            return Err(Error::Parity(format!("even atom {a} bound to non-even {v}")));
                        }
                        v.powr(*e)?
                    }
                    None => match a {
                        Atom::Func(func) => {
                            let args = func.args.iter().map(|x| x.substitute_with(f)).collect::<Result<Vec<_>>>()?;
                            if args == func.args {
                                Self::term(single_even(a.clone(), *e), Coeff::one())
                            } else {
                                crate::funcs::func_expr(func.head.clone(), args)?.powr(*e)?
                            }
                        }
                        Atom::Power(b) => {
                            let nb = b.substitute_with(f)?;
                            if nb == **b {
                                Self::term(single_even(a.clone(), *e), Coeff::one())
                            } else {
                                nb.powr(*e)?
                            }
                        }
                        _ => Self::term(single_even(a.clone(), *e), Coeff::one()),
                    },
                };
                acc = acc.gmul(&v);
            }
            for a in &m.odd {
                let v = match f(a) {
                    Some(v) => {
                        if !matches!(v.parity_of(), ParityClass::Odd | ParityClass::Zero) {
                            return Err(Error::Parity(format!("odd atom {a} bound to non-odd {v}")));
                        }
                        v
                    }
                    None => Self::atom(a.clone()),
                };
                acc = acc.gmul(&v);
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Simultaneous substitution of atoms by expressions.
    pub fn gsubstitute(&self, bindings: &BTreeMap<Atom, GradedExpr>) -> Result<GradedExpr> {
        self.substitute_with(&mut |a| bindings.get(a).cloned())
    }

    pub fn subs(&self, a: &Atom, v: &GradedExpr) -> Result<GradedExpr> {
        self.substitute_with(&mut |b| if b == a { Some(v.clone()) } else { None })
    }

    /// Coefficient of a given odd part: the even expression `c` such that the
    /// terms of `self` with exactly this odd part equal `c * odd`.
    pub fn odd_coefficient(&self, odd: &[Atom]) -> GradedExpr {
        GradedExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd.as_slice() == odd)
                .map(|(m, c)| (Monomial { even: m.even.clone(), odd: Vec::new() }, c.clone()))
                .collect(),
        }
    }

    /// The distinct odd parts present, in canonical order.
    pub fn odd_parts(&self) -> BTreeSet<Vec<Atom>> {
        self.terms.keys().map(|m| m.odd.clone()).collect()
    }

    pub fn map_terms<F: FnMut(&Monomial, &Coeff) -> GradedExpr>(&self, mut f: F) -> GradedExpr {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_assign(&f(m, c));
        }
        out
    }

    pub fn real_part(&self) -> GradedExpr {
        GradedExpr {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.re.is_zero())
                .map(|(m, c)| (m.clone(), Coeff::real(c.re.clone())))
                .collect(),
        }
    }
}

fn single_even(a: Atom, e: Exponent) -> Monomial {
    let mut m = Monomial::one();
    m.even.insert(a, e);
    m
}

/// Power of an expression without odd atoms.
fn pow_body(b: &GradedExpr, s: Exponent) -> Result<GradedExpr> {
    if s.is_integer() && s >= Exponent::zero() {
        return b.pow_int(s.to_integer());
    }
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some((m, c)) = b.single_term() {
        return pow_monomial(m, c, s);
    }
    // pull out the monomial content (including denominators), repeating
    // while composite powers keep expanding
    let mut base = b.clone();
    let mut content = GradedExpr::one();
    for _ in 0..8 {
        let mut all: BTreeSet<Atom> = BTreeSet::new();
        for m in base.terms.keys() {
            all.extend(m.even.keys().filter(|a| !matches!(a, Atom::Sign(_))).cloned());
        }
        let mut mins: BTreeMap<Atom, Exponent> = BTreeMap::new();
        for a in all {
            let e = base.terms.keys().map(|m| m.even.get(&a).copied().unwrap_or_else(Exponent::zero)).min().unwrap();
            mins.insert(a, e);
        }
        mins.retain(|_, e| !e.is_zero());
        if mins.is_empty() {
            break;
        }
        base = base.map_terms(|m, c| {
            let mut m = m.clone();
            for (a, e) in &mins {
                *m.even.entry(a.clone()).or_insert_with(Exponent::zero) -= *e;
            }
            GradedExpr::term(m, c.clone())
        });
        let cm = Monomial { even: mins, odd: Vec::new() };
        content = content.gmul(&GradedExpr::term(cm, Coeff::one()));
        if base.single_term().is_some() {
            break;
        }
    }
    let content_pow = pow_body(&content, s)?;
    if let Some((m, c)) = base.single_term() {
        return Ok(content_pow.gmul(&pow_monomial(m, c, s)?));
    }
    // normalize the leading coefficient to +-1
    let lc = base.terms.values().next().cloned().unwrap();
    let mut scale_pow = GradedExpr::one();
    if lc.is_real() {
        let q = lc.re.abs();
        if !q.is_one() {
            base = base.scale(&Coeff::real(q.recip()));
            scale_pow = numeric_power(&Coeff::real(q), s)?;
        }
    }
    let atom = Atom::Power(Arc::new(base));
    let mut m = Monomial::one();
    m.even.insert(atom, s);
    Ok(content_pow.gmul(&scale_pow).gmul(&GradedExpr::term(m, Coeff::one())))
}

fn pow_monomial(m: &Monomial, c: &Coeff, s: Exponent) -> Result<GradedExpr> {
    if !m.odd.is_empty() {
        return Err(Error::Parity(String::from("power of a monomial with odd atoms")));
    }
    let mut out = numeric_power(c, s)?;
    let mut mono = Monomial::one();
    for (a, e) in &m.even {
        let t = *e * s;
        if let Atom::Sign(_) = a {
            if !t.is_integer() {
                return Err(Error::Unsupported(format!("non-integer power of sign constant {a}")));
            }
        }
        mono.even.insert(a.clone(), t);
    }
    out = out.gmul(&GradedExpr::term(mono, Coeff::one()));
    Ok(out)
}

fn numeric_atom_power(base: Coeff, f: Exponent) -> GradedExpr {
    let mut m = Monomial::one();
    m.even.insert(Atom::Power(Arc::new(GradedExpr::constant(base))), f);
    GradedExpr::term(m, Coeff::one())
}

/// Exact power of a number, leaving irreducible radicals as numeric power
/// atoms over prime bases.
pub fn numeric_power(c: &Coeff, s: Exponent) -> Result<GradedExpr> {
    if s.is_integer() {
        return c.pow_int(s.to_integer()).map(GradedExpr::constant).ok_or(Error::DivisionByZero);
    }
    if c.is_zero() {
        return if s > Exponent::zero() { Ok(GradedExpr::zero()) } else { Err(Error::DivisionByZero) };
    }
    if !c.is_real() {
        return Ok(numeric_atom_power(c.clone(), s));
    }
    let mut out = GradedExpr::one();
    if c.re.is_negative() {
        let two_s = s * Exponent::from_integer(2);
        if two_s.is_integer() {
            let n = two_s.to_integer().rem_euclid(4);
            out = GradedExpr::constant(Coeff::i().pow_int(n).unwrap());
        } else {
            out = numeric_atom_power(Coeff::from_int(-1), s);
        }
    }
    let q = c.re.abs();
    let parts: Vec<(BigInt, i64)> = factor_integer(q.numer())
        .into_iter()
        .chain(factor_integer(q.denom()).into_iter().map(|(p, e)| (p, -e)))
        .collect();
    for (p, e) in parts {
        let t = s * Exponent::from_integer(e);
        let n = exponent_floor(t);
        let f = t - Exponent::from_integer(n);
        let pc = Coeff::real(Rational::from_integer(p.clone()));
        out = out.gmul(&GradedExpr::constant(pc.pow_int(n).unwrap()));
        if !f.is_zero() {
            out = out.gmul(&numeric_atom_power(pc, f));
        }
    }
    Ok(out)
}

fn fmt_exponent(e: &Exponent) -> String {
    if e.is_integer() && *e > Exponent::zero() {
        format!("{}", e.to_integer())
    } else {
        format!("({e})")
    }
}

fn fmt_term(m: &Monomial, c: &Coeff) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (a, e) in &m.even {
        let base = format!("{a}");
        if e.is_one() {
            factors.push(base);
        } else {
            factors.push(format!("{base}^{}", fmt_exponent(e)));
        }
    }
    for a in &m.odd {
        factors.push(format!("{a}"));
    }
    if factors.is_empty() {
        return format!("{c}");
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else if c.neg().is_one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

impl fmt::Display for GradedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let t = fmt_term(m, c);
            if i == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&GradedExpr> for &GradedExpr {
            type Output = GradedExpr;
            fn $method(self, o: &GradedExpr) -> GradedExpr {
                self.$inner(o)
            }
        }
        impl $tr<GradedExpr> for GradedExpr {
            type Output = GradedExpr;
            fn $method(self, o: GradedExpr) -> GradedExpr {
                self.$inner(&o)
            }
        }
        impl $tr<&GradedExpr> for GradedExpr {
            type Output = GradedExpr;
            fn $method(self, o: &GradedExpr) -> GradedExpr {
                self.$inner(o)
            }
        }
        impl $tr<GradedExpr> for &GradedExpr {
            type Output = GradedExpr;
            fn $method(self, o: GradedExpr) -> GradedExpr {
                self.$inner(&o)
            }
        }
    };
}

binop!(Add, add, gadd);
binop!(Sub, sub, gsub);
binop!(Mul, mul, gmul);

impl Neg for GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        self.gneg()
    }
}

impl Neg for &GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        self.gneg()
    }
}

/// A raw expression tree, normalized by [`normalize`].
#[derive(Clone, Debug)]
pub enum Raw {
    Atom(Atom),
    Num(Coeff),
    Sum(Vec<Raw>),
    Prod(Vec<Raw>),
    Neg(Box<Raw>),
    Pow(Box<Raw>, Exponent),
    Func(crate::atom::FuncHead, Vec<Raw>),
}

/// Bring a raw tree into canonical form.
pub fn normalize(raw: &Raw) -> Result<GradedExpr> {
    Ok(match raw {
        Raw::Atom(a) => GradedExpr::atom(a.clone()),
        Raw::Num(c) => GradedExpr::constant(c.clone()),
        Raw::Sum(xs) => {
            let mut out = GradedExpr::zero();
            for x in xs {
                out.add_assign(&normalize(x)?);
            }
            out
        }
        Raw::Prod(xs) => {
            let mut out = GradedExpr::one();
            for x in xs {
                out = out.gmul(&normalize(x)?);
            }
            out
        }
        Raw::Neg(x) => normalize(x)?.gneg(),
        Raw::Pow(x, e) => normalize(x)?.powr(*e)?,
        Raw::Func(h, args) => {
            let args = args.iter().map(normalize).collect::<Result<Vec<_>>>()?;
            crate::funcs::func_expr(h.clone(), args)?
        }
    })
}

impl From<i64> for GradedExpr {
    fn from(n: i64) -> Self {
        GradedExpr::int(n)
    }
}
