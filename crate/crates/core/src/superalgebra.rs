//! The symmetry superalgebra: generators as vector fields on superspace,
//! structure tables computed by composition, abstract elements with formal
//! coefficients, and the adjoint action.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, FuncHead, Parity};
use crate::error::{Error, Result};
use crate::expr::GradedExpr;
use crate::funcs::func_expr;
use crate::number::{Coeff, Exponent};
use crate::vector_field::{decompose, VectorField};

/// Generators of the symmetry superalgebra, in the order of the
/// supercommutation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    D,
    P1,
    P3,
    Q1,
    P2,
    P4,
    Q2,
    P5,
}

impl Generator {
    pub const TABLE_ORDER: [Generator; 8] =
        [Generator::D, Generator::P1, Generator::P3, Generator::Q1, Generator::P2, Generator::P4, Generator::Q2, Generator::P5];

    pub fn index(self) -> usize {
        Self::TABLE_ORDER.iter().position(|g| *g == self).unwrap()
    }

    pub fn from_index(i: usize) -> Generator {
        Self::TABLE_ORDER[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::D => "D",
            Generator::P1 => "P1",
            Generator::P2 => "P2",
            Generator::P3 => "P3",
            Generator::P4 => "P4",
            Generator::P5 => "P5",
            Generator::Q1 => "Q1",
            Generator::Q2 => "Q2",
        }
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Self::TABLE_ORDER.iter().copied().find(|g| g.name() == s)
    }

    pub fn parity(self) -> Parity {
        match self {
            Generator::P3 | Generator::P4 | Generator::Q1 | Generator::Q2 => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// The discrete reflection x <-> y, theta1 <-> theta2.
    pub fn reflect(self) -> Generator {
        match self {
            Generator::P1 => Generator::P2,
            Generator::P2 => Generator::P1,
            Generator::P3 => Generator::P4,
            Generator::P4 => Generator::P3,
            Generator::Q1 => Generator::Q2,
            Generator::Q2 => Generator::Q1,
            g => g,
        }
    }

    pub fn vector_field(self) -> VectorField {
        let c = superspace_coords();
        let (x, y, t1, t2, f) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
        let unit = |a: &Atom| VectorField::unit(&c, a);
        match self {
            Generator::P1 => unit(x),
            Generator::P2 => unit(y),
            Generator::P3 => unit(t1),
            Generator::P4 => unit(t2),
            Generator::P5 => unit(f),
            Generator::D => VectorField::new(vec![
                (x.clone(), GradedExpr::var("x").scale_int(2)),
                (y.clone(), GradedExpr::var("y").scale_int(2)),
                (t1.clone(), GradedExpr::theta1()),
                (t2.clone(), GradedExpr::theta2()),
                (f.clone(), GradedExpr::var("Phi").scale_int(4)),
            ]),
            Generator::Q1 => unit(t1).sub(&unit(x).scale_left(&GradedExpr::theta1())),
            Generator::Q2 => unit(t2).sub(&unit(y).scale_left(&GradedExpr::theta2())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinates of superspace with the dependent variable: x, y, theta1, theta2, Phi.
pub fn superspace_coords() -> Vec<Atom> {
    vec![Atom::var("x"), Atom::var("y"), Atom::theta1(), Atom::theta2(), Atom::var("Phi")]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// A table of brackets of basis elements, each expanded in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    /// `entries[i][j][k]`: coefficient of basis element `k` in `[b_i, b_j]`.
    pub entries: Vec<Vec<Vec<GradedExpr>>>,
}

impl StructureTable {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn kind(&self, i: usize, j: usize) -> BracketKind {
        if self.parities[i].is_odd() && self.parities[j].is_odd() {
            BracketKind::Anticommutator
        } else {
            BracketKind::Commutator
        }
    }

    /// Render a cell as a combination such as `-2P1` or `0`.
    pub fn cell_string(&self, i: usize, j: usize) -> String {
        render_combination(&self.entries[i][j], &self.names)
    }
}

pub fn render_combination(coeffs: &[GradedExpr], names: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c.as_coeff() {
            Some(q) if q.is_real() && q.re < num_traits::Zero::zero() => (true, GradedExpr::constant(q.neg())),
            _ => (false, c.clone()),
        };
        let body = if mag.is_one() {
            names[k].clone()
        } else if mag.as_coeff().is_some() {
            format!("{mag}{}", names[k])
        } else if mag.as_atom().is_some() {
            format!("{mag} {}", names[k])
        } else {
            format!("({mag}) {}", names[k])
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Compute all brackets of a basis by composition and expand them in the
/// basis; fails with a closure error if some bracket leaves the span.
pub fn structure_table(names: &[String], basis: &[VectorField]) -> Result<StructureTable> {
    let parities = basis.iter().map(|b| b.parity()).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(basis.len());
    for a in basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            row.push(decompose(&a.bracket(b)?, basis)?);
        }
        entries.push(row);
    }
    Ok(StructureTable { names: names.to_vec(), parities, entries })
}

/// The supercommutation table of the eight symmetry generators.
pub fn susy_table() -> Result<StructureTable> {
    let names: Vec<String> = Generator::TABLE_ORDER.iter().map(|g| g.name().to_string()).collect();
    let basis: Vec<VectorField> = Generator::TABLE_ORDER.iter().map(|g| g.vector_field()).collect();
    structure_table(&names, &basis)
}

/// The supercommutation table as printed, row `X`, column `Y`, cell `[X, Y]`.
pub const PUBLISHED_TABLE: [[&str; 8]; 8] = [
    ["0", "-2P1", "-P3", "-Q1", "-2P2", "-P4", "-Q2", "-4P5"],
    ["2P1", "0", "0", "0", "0", "0", "0", "0"],
    ["P3", "0", "0", "-P1", "0", "0", "0", "0"],
    ["Q1", "0", "-P1", "-2P1", "0", "0", "0", "0"],
    ["2P2", "0", "0", "0", "0", "0", "0", "0"],
    ["P4", "0", "0", "0", "0", "0", "-P2", "0"],
    ["Q2", "0", "0", "0", "0", "-P2", "-2P2", "0"],
    ["4P5", "0", "0", "0", "0", "0", "0", "0"],
];

/// A Lie superalgebra given by numeric structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    pub structure: Vec<Vec<Vec<Coeff>>>,
}

impl Algebra {
    pub fn from_table(t: &StructureTable) -> Result<Algebra> {
        let mut structure = Vec::new();
        for row in &t.entries {
            let mut r = Vec::new();
            for cell in row {
                let c = cell
                    .iter()
                    .map(|e| e.as_coeff().ok_or_else(|| Error::Unsupported(format!("non-numeric structure constant {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                r.push(c);
            }
            structure.push(r);
        }
        Ok(Algebra { names: t.names.clone(), parities: t.parities.clone(), structure })
    }

    /// The symmetry superalgebra with basis in table order.
    pub fn susy() -> Result<Algebra> {
        Algebra::from_table(&susy_table()?)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// If `ad(b_g)` is diagonal in the basis, its eigenvalues.
    pub fn diagonal_weights(&self, g: usize) -> Option<Vec<Coeff>> {
        let mut w = Vec::with_capacity(self.dim());
        for h in 0..self.dim() {
            for k in 0..self.dim() {
                if k != h && !self.structure[g][h][k].is_zero() {
                    return None;
                }
            }
            w.push(self.structure[g][h][h].clone());
        }
        Some(w)
    }

    /// The graded Jacobi expression for a triple of basis elements, expanded
    /// in the basis.
    pub fn jacobi(&self, i: usize, j: usize, k: usize) -> Vec<Coeff> {
        let n = self.dim();
        let p = |a: usize| if self.parities[a].is_odd() { 1 } else { 0 };
        let nested = |a: usize, b: usize, c: usize| -> Vec<Coeff> {
            let mut out = vec![Coeff::zero(); n];
            for m in 0..n {
                let inner = &self.structure[b][c][m];
                if inner.is_zero() {
                    continue;
                }
                for (q, o) in out.iter_mut().enumerate() {
                    *o = o.add(&inner.mul(&self.structure[a][m][q]));
                }
            }
            out
        };
        let sign = |a: usize, c: usize| if p(a) * p(c) % 2 == 1 { Coeff::from_int(-1) } else { Coeff::one() };
        let t1 = nested(i, j, k);
        let t2 = nested(j, k, i);
        let t3 = nested(k, i, j);
        (0..n)
            .map(|q| sign(i, k).mul(&t1[q]).add(&sign(j, i).mul(&t2[q])).add(&sign(k, j).mul(&t3[q])))
            .collect()
    }

    /// Killing form of the subalgebra spanned by `idx` (assumed closed and even).
    pub fn killing_form(&self, idx: &[usize]) -> Vec<Vec<Coeff>> {
        let ad = |a: usize| -> Vec<Vec<Coeff>> {
            idx.iter().map(|&j| idx.iter().map(|&k| self.structure[a][j][k].clone()).collect()).collect()
        };
        let m = idx.len();
        let mut out = vec![vec![Coeff::zero(); m]; m];
        for (r, &a) in idx.iter().enumerate() {
            for (c, &b) in idx.iter().enumerate() {
                let (aa, bb) = (ad(a), ad(b));
                // tr(ad_a ad_b) with matrices acting on rows: ad_a[j][k] = coefficient of k in [a, j]
                let mut tr = Coeff::zero();
                for j in 0..m {
                    for k in 0..m {
                        tr = tr.add(&bb[j][k].mul(&aa[k][j]));
                    }
                }
                out[r][c] = tr;
            }
        }
        out
    }
}

/// An element `sum_g c_g b_g` with formal coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub coeffs: BTreeMap<usize, GradedExpr>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(i: usize, c: GradedExpr) -> Element {
        let mut e = Element::zero();
        e.set(i, c);
        e
    }

    pub fn coefficient(&self, i: usize) -> GradedExpr {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, c: GradedExpr) {
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &o.coeffs {
            let cur = out.coefficient(*i);
            out.set(*i, cur.gadd(c));
        }
        out
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.scale_left(&GradedExpr::int(-1)))
    }

    pub fn scale_left(&self, a: &GradedExpr) -> Element {
        let mut out = Element::zero();
        for (i, c) in &self.coeffs {
            out.set(*i, a.gmul(c));
        }
        out
    }

    pub fn map_coeffs<F: FnMut(usize, &GradedExpr) -> Result<GradedExpr>>(&self, mut f: F) -> Result<Element> {
        let mut out = Element::zero();
        for (i, c) in &self.coeffs {
            out.set(*i, f(*i, c)?);
        }
        Ok(out)
    }

    /// True if every term `c_g b_g` is even.
    pub fn is_even(&self, alg: &Algebra) -> bool {
        self.coeffs.iter().all(|(i, c)| match c.homogeneous_parity() {
            Some(p) => p.add(alg.parities[*i]) == Parity::Even,
            None => false,
        })
    }

    pub fn to_vector_field(&self, basis: &[VectorField]) -> VectorField {
        let mut out = VectorField::zero(&basis[0].coords());
        for (i, c) in &self.coeffs {
            out = out.add(&basis[*i].scale_left(c));
        }
        out
    }

    pub fn render(&self, alg: &Algebra) -> String {
        let v: Vec<GradedExpr> = (0..alg.dim()).map(|i| self.coefficient(i)).collect();
        render_combination(&v, &alg.names)
    }
}

/// Bracket of two elements: `[a b_g, c b_h} = (-1)^{p(g) p(c)} a c [b_g, b_h}`.
pub fn bracket(alg: &Algebra, a: &Element, b: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (g, ca) in &a.coeffs {
        for (h, cb) in &b.coeffs {
            let cell = &alg.structure[*g][*h];
            if cell.iter().all(|c| c.is_zero()) {
                continue;
            }
            let pb = cb.homogeneous_parity().ok_or_else(|| Error::Parity(format!("mixed coefficient {cb}")))?;
            let mut prod = ca.gmul(cb);
            if alg.parities[*g].is_odd() && pb.is_odd() {
                prod = prod.gneg();
            }
            for (k, c) in cell.iter().enumerate() {
                if !c.is_zero() {
                    let cur = out.coefficient(k);
                    out.set(k, cur.gadd(&prod.scale(c)));
                }
            }
        }
    }
    Ok(out)
}

pub const ADJOINT_DEPTH: usize = 8;

/// `Ad_exp(Y) X = X + [Y, X] + [Y, [Y, X]]/2! + ...`.
///
/// When `Y` is a multiple of a single basis element acting diagonally the
/// action is evaluated in closed form with exponentials.
pub fn adjoint_action(alg: &Algebra, y: &Element, x: &Element) -> Result<Element> {
    if y.coeffs.len() == 1 {
        let (g, t) = y.coeffs.iter().next().unwrap();
        if t.is_even_or_zero() {
            if let Some(w) = alg.diagonal_weights(*g) {
                if w.iter().any(|c| !c.is_zero()) {
                    return x.map_coeffs(|h, c| {
                        if w[h].is_zero() {
                            return Ok(c.clone());
                        }
                        let e = func_expr(FuncHead::Exp, vec![t.scale(&w[h])])?;
                        Ok(e.gmul(c))
                    });
                }
            }
        }
    }
    let mut out = x.clone();
    let mut term = x.clone();
    for n in 1..=ADJOINT_DEPTH + 1 {
        term = bracket(alg, y, &term)?;
        term = term.scale_left(&GradedExpr::frac(1, n as i64));
        if term.is_zero() {
            return Ok(out);
        }
        if n > ADJOINT_DEPTH {
            break;
        }
        out = out.add(&term);
    }
    Err(Error::Truncation(ADJOINT_DEPTH))
}

/// The action of `exp(ln(s) b_g)` for a diagonally acting `b_g`: every
/// coefficient `c_h` becomes `s^{w_h} c_h`.
pub fn dilate(alg: &Algebra, g: usize, x: &Element, s: &GradedExpr) -> Result<Element> {
    let w = alg.diagonal_weights(g).ok_or_else(|| Error::Usage(format!("{} does not act diagonally", alg.names[g])))?;
    x.map_coeffs(|h, c| {
        let q = &w[h];
        if !q.is_real() || q.re.denom() != &num_bigint::BigInt::from(1) {
            return Err(Error::Unsupported(format!("weight {q}")));
        }
        let n: i64 = num_traits::ToPrimitive::to_i64(q.re.numer()).unwrap();
        Ok(s.powr(Exponent::from_integer(n))?.gmul(c))
    })
}

/// One check of the decomposition report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub description: String,
    pub passed: bool,
}

/// Check that each summand closes, that brackets between distinct summands
/// vanish, and that the acting part maps every summand into itself.
pub fn verify_decomposition_with(alg: &Algebra, summands: &[Vec<usize>], acting: &[usize]) -> Vec<DecompositionCheck> {
    let names = |s: &[usize]| s.iter().map(|i| alg.names[*i].clone()).collect::<Vec<_>>().join(",");
    let inside = |cell: &[Coeff], s: &[usize]| cell.iter().enumerate().all(|(k, c)| c.is_zero() || s.contains(&k));
    let mut out = Vec::new();
    for s in summands {
        let ok = s.iter().all(|&a| s.iter().all(|&b| inside(&alg.structure[a][b], s)));
        out.push(DecompositionCheck { description: format!("{{{}}} is a subalgebra", names(s)), passed: ok });
    }
    for (i, s) in summands.iter().enumerate() {
        for t in summands.iter().skip(i + 1) {
            let ok = s.iter().all(|&a| t.iter().all(|&b| alg.structure[a][b].iter().all(|c| c.is_zero())));
            out.push(DecompositionCheck { description: format!("[{{{}}}, {{{}}}] = 0", names(s), names(t)), passed: ok });
        }
    }
    for &d in acting {
        for s in summands {
            let ok = s.iter().all(|&b| inside(&alg.structure[d][b], s));
            out.push(DecompositionCheck { description: format!("{} preserves {{{}}}", alg.names[d], names(s)), passed: ok });
        }
    }
    out
}

/// Decomposition `{D} semidirect ({P1,P3,Q1} + {P2,P4,Q2} + {P5})`.
pub fn verify_decomposition(alg: &Algebra) -> Vec<DecompositionCheck> {
    use Generator::*;
    let s = |gs: &[Generator]| gs.iter().map(|g| g.index()).collect::<Vec<_>>();
    verify_decomposition_with(alg, &[s(&[P1, P3, Q1]), s(&[P2, P4, Q2]), s(&[P5])], &[D.index()])
}
