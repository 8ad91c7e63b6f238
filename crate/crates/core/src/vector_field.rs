//! First-order differential operators with graded coefficients, their
//! brackets, and decomposition in a basis.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, FieldDecl, Jet, Parity};
use crate::calculus::partial_derivative;
use crate::error::{Error, Result};
use crate::expr::{GradedExpr, Monomial};
use crate::number::Coeff;

/// A vector field `sum_i c_i d/dz_i` over an ordered coordinate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub components: Vec<(Atom, GradedExpr)>,
}

impl VectorField {
    pub fn new(components: Vec<(Atom, GradedExpr)>) -> Self {
        VectorField { components }
    }

    pub fn zero(coords: &[Atom]) -> Self {
        VectorField { components: coords.iter().map(|c| (c.clone(), GradedExpr::zero())).collect() }
    }

    /// The basis field `d/dz` for one coordinate of `coords`.
    pub fn unit(coords: &[Atom], which: &Atom) -> Self {
        let mut v = Self::zero(coords);
        v.set(which, GradedExpr::one());
        v
    }

    pub fn coords(&self) -> Vec<Atom> {
        self.components.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn coefficient(&self, coord: &Atom) -> GradedExpr {
        self.components.iter().find(|(a, _)| a == coord).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn set(&mut self, coord: &Atom, c: GradedExpr) {
        if let Some(slot) = self.components.iter_mut().find(|(a, _)| a == coord) {
            slot.1 = c;
        } else {
            self.components.push((coord.clone(), c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|(_, c)| c.is_zero())
    }

    /// Act on a function as a derivation.
    pub fn apply(&self, f: &GradedExpr) -> Result<GradedExpr> {
        let mut out = GradedExpr::zero();
        for (z, c) in &self.components {
            if c.is_zero() {
                continue;
            }
            out.add_assign(&c.gmul(&partial_derivative(f, z)?));
        }
        Ok(out)
    }

    /// Parity of a homogeneous field; the zero field is even.
    pub fn parity(&self) -> Result<Parity> {
        let mut p: Option<Parity> = None;
        for (z, c) in &self.components {
            if c.is_zero() {
                continue;
            }
            let cp = c.homogeneous_parity().ok_or_else(|| Error::Parity(format!("mixed coefficient {c} on d/d{z}")))?;
            let q = cp.add(z.parity());
            match p {
                None => p = Some(q),
                Some(old) if old != q => return Err(Error::Parity(format!("field {self} is not homogeneous"))),
                _ => {}
            }
        }
        Ok(p.unwrap_or(Parity::Even))
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (z, c) in &o.components {
            let cur = out.coefficient(z);
            out.set(z, cur.gadd(c));
        }
        out
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        self.add(&o.scale_left(&GradedExpr::int(-1)))
    }

    /// Multiply every coefficient on the left by `a`.
    pub fn scale_left(&self, a: &GradedExpr) -> VectorField {
        VectorField { components: self.components.iter().map(|(z, c)| (z.clone(), a.gmul(c))).collect() }
    }

    /// Supercommutator `[X, Y] = XY - (-1)^{p(X)p(Y)} YX`, read off from the
    /// first-order part of the composition.
    pub fn bracket(&self, o: &VectorField) -> Result<VectorField> {
        let px = self.parity()?;
        let py = o.parity()?;
        let anti = px.is_odd() && py.is_odd();
        let mut coords = self.coords();
        for z in o.coords() {
            if !coords.contains(&z) {
                coords.push(z);
            }
        }
        let mut out = VectorField::zero(&coords);
        for z in &coords {
            let a = self.apply(&o.coefficient(z))?;
            let b = o.apply(&self.coefficient(z))?;
            out.set(z, if anti { a.gadd(&b) } else { a.gsub(&b) });
        }
        Ok(out)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (z, c) in &self.components {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "d_{z}")?;
            } else {
                write!(f, "({c})*d_{z}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A generic function of the given coordinates, used to test operator
/// identities by composition.
pub fn generic_function(coords: &[Atom]) -> GradedExpr {
    let names: Vec<String> = coords.iter().map(|a| format!("{a}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let decl = FieldDecl::new("F", Parity::Even, &refs);
    GradedExpr::atom(Atom::Jet(Jet::base(&decl)))
}

/// Check `[X, Y] F == XY F - (-1)^{p(X)p(Y)} YX F` on a generic function.
pub fn bracket_matches_composition(x: &VectorField, y: &VectorField) -> Result<bool> {
    let mut coords = x.coords();
    for z in y.coords() {
        if !coords.contains(&z) {
            coords.push(z);
        }
    }
    let f = generic_function(&coords);
    let anti = x.parity()?.is_odd() && y.parity()?.is_odd();
    let xy = x.apply(&y.apply(&f)?)?;
    let yx = y.apply(&x.apply(&f)?)?;
    let comp = if anti { xy.gadd(&yx) } else { xy.gsub(&yx) };
    Ok(comp.gsub(&x.bracket(y)?.apply(&f)?).is_zero())
}

/// Split a monomial as `sign * parameter_part * coordinate_part`, where the
/// coordinate part collects the atoms that are not constants.
fn split_parameters(m: &Monomial) -> (bool, Monomial, Monomial) {
    let mut pm = Monomial::one();
    let mut cm = Monomial::one();
    for (a, e) in &m.even {
        if a.is_constant() {
            pm.even.insert(a.clone(), *e);
        } else {
            cm.even.insert(a.clone(), *e);
        }
    }
    let mut flips = 0usize;
    let mut coord_seen = 0usize;
    for a in &m.odd {
        if a.is_constant() {
            flips += coord_seen;
            pm.odd.push(a.clone());
        } else {
            coord_seen += 1;
            cm.odd.push(a.clone());
        }
    }
    (flips % 2 == 1, pm, cm)
}

type Signature = BTreeMap<(usize, Monomial), GradedExpr>;

fn signature(v: &VectorField, coords: &[Atom]) -> Result<Signature> {
    let mut out: Signature = BTreeMap::new();
    for (z, c) in &v.components {
        let i = coords.iter().position(|a| a == z).ok_or_else(|| Error::Usage(format!("unknown coordinate {z}")))?;
        for (m, k) in c.terms() {
            let (flip, pm, cm) = split_parameters(m);
            let k = if flip { k.neg() } else { k.clone() };
            out.entry((i, cm)).or_default().add_assign(&GradedExpr::term(pm, k));
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Coefficients `a_g` (possibly containing constants) with
/// `v = sum_g a_g * basis_g`. The basis fields must have numeric coefficients.
pub fn decompose(v: &VectorField, basis: &[VectorField]) -> Result<Vec<GradedExpr>> {
    let mut coords: Vec<Atom> = Vec::new();
    for b in basis.iter().chain(core::iter::once(v)) {
        for z in b.coords() {
            if !coords.contains(&z) {
                coords.push(z);
            }
        }
    }
    let bsigs: Vec<Signature> = basis.iter().map(|b| signature(b, &coords)).collect::<Result<_>>()?;
    let vsig = signature(v, &coords)?;
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    for s in bsigs.iter().chain(core::iter::once(&vsig)) {
        for k in s.keys() {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    let n = basis.len();
    // rows: [coefficients of the basis | right-hand side]
    let mut rows: Vec<(Vec<Coeff>, GradedExpr)> = Vec::new();
    for k in &keys {
        let mut row = Vec::with_capacity(n);
        for s in &bsigs {
            let c = match s.get(k) {
                Some(e) => e.as_coeff().ok_or_else(|| Error::Unsupported(format!("basis coefficient {e} is not numeric")))?,
                None => Coeff::zero(),
            };
            row.push(c);
        }
        rows.push((row, vsig.get(k).cloned().unwrap_or_default()));
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv().unwrap();
        let (prow, prhs) = rows[r].clone();
        let prow: Vec<Coeff> = prow.iter().map(|c| c.mul(&inv)).collect();
        let prhs = prhs.scale(&inv);
        rows[r] = (prow.clone(), prhs.clone());
        for i in 0..rows.len() {
            if i == r || rows[i].0[col].is_zero() {
                continue;
            }
            let f = rows[i].0[col].clone();
            for j in 0..n {
                rows[i].0[j] = rows[i].0[j].sub(&f.mul(&prow[j]));
            }
            rows[i].1 = rows[i].1.gsub(&prhs.scale(&f));
        }
        pivots.push((r, col));
        r += 1;
    }
    for (i, (_, rhs)) in rows.iter().enumerate() {
        if i >= r && !rhs.is_zero() {
            let residual = reconstruct_residual(v, basis, &pivots, &rows)?;
            return Err(Error::Closure(format!("{residual}")));
        }
    }
    let mut out = alloc::vec![GradedExpr::zero(); n];
    for (row, col) in pivots {
        out[col] = rows[row].1.clone();
    }
    Ok(out)
}

fn reconstruct_residual(
    v: &VectorField,
    basis: &[VectorField],
    pivots: &[(usize, usize)],
    rows: &[(Vec<Coeff>, GradedExpr)],
) -> Result<VectorField> {
    let mut acc = v.clone();
    for (row, col) in pivots {
        acc = acc.sub(&basis[*col].scale_left(&rows[*row].1));
    }
    Ok(acc)
}
